#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "crn/analytics.hpp"
#include "crn/simulator.hpp"

namespace crn {

/// Malformed or inconsistent user configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepVariable { R, LambdaP, ThetaP, ThetaS };

std::string_view to_string(SweepVariable variable);
SweepVariable parse_sweep_variable(std::string_view text);

NetworkParams with_value(NetworkParams base, SweepVariable variable, double value);

struct SweepSpec {
  SweepVariable variable = SweepVariable::R;
  std::vector<double> values;
  NetworkParams base_params;
  std::vector<Regime> regimes;
  std::optional<SimulationConfig> sim;  // absent: analytics only
  OmnForm omn_form = OmnForm::Reduced;

  /// Throws ConfigError naming the offending value.
  void validate() const;
};

struct SweepRow {
  SweepVariable variable = SweepVariable::R;
  double value = 0.0;
  Regime regime = Regime::Dir;
  ConnectivityBreakdown analytic;
  std::optional<EstimateResult> simulated;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// One row per (value, regime), in spec order.
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);

inline constexpr std::string_view kCsvHeader =
    "variable,value,regime,p_spectrum,p_topological,p_connection,p_spectrum_hat,p_topological_hat,"
    "p_connection_hat,stderr,omega,seed";

void write_csv(const SweepResult& result, std::ostream& out);
/// Throws std::runtime_error carrying the path on I/O failure.
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

// Configuration files. Keys are the snake_case field names; unknown keys are
// rejected with ConfigError.
NetworkParams network_params_from_json(const nlohmann::json& j, NetworkParams defaults = {});
SimulationConfig simulation_config_from_json(const nlohmann::json& j, SimulationConfig defaults = {});
SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// Figure-reproduction presets: fig4, fig6, fig7, fig8, fig9, fig10, fig11.
/// `quick` shortens the simulation to 500 realizations.
SweepSpec preset(std::string_view name, bool quick);
std::vector<std::string> preset_names();

// Verification report

enum class CheckStatus { Pass, Fail, Discrepancy };
std::string_view to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t omega = 3000;
  std::uint64_t seed = 1;
  int workers = 0;
  bool quick = false;
  bool include_simulation = true;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  /// Discrepancy entries are ledger notes and never fail the report.
  bool passed() const;
};

VerifyReport verify_all(const VerifyOptions& options);
void print_report(const VerifyReport& report, std::ostream& out);

}  // namespace crn
