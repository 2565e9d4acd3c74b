// crnconn: connectivity of secondary-user pairs in underlay cognitive radio
// networks with sector antennas. Subcommands: analytic, simulate, sweep,
// verify, preset.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "crn/analytics.hpp"
#include "crn/experiments.hpp"
#include "crn/simulator.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

struct Overrides {
  std::string config;
  std::string regimes;
  std::optional<double> alpha, lambda_p, lambda_s, r, theta_p, theta_s;
  std::optional<std::uint64_t> omega, seed;
  std::string out;
  bool quick = false;
  bool as_printed = false;
  int workers = 0;
};

void add_param_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--regime", o.regimes, "omn|omndir|dir (comma-separated list for sweeps)");
  cmd->add_option("--alpha", o.alpha, "path-loss exponent");
  cmd->add_option("--lambda-p", o.lambda_p, "primary density");
  cmd->add_option("--lambda-s", o.lambda_s, "secondary density");
  cmd->add_option("--r", o.r, "reference pair distance");
  cmd->add_option("--theta-p", o.theta_p, "primary beamwidth (radians)");
  cmd->add_option("--theta-s", o.theta_s, "secondary beamwidth (radians)");
  cmd->add_flag("--as-printed", o.as_printed, "use the printed omni topological corollary");
}

void add_sim_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--omega", o.omega, "Monte Carlo realizations");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--workers", o.workers, "OpenMP threads (0 = default)");
  cmd->add_flag("--quick", o.quick, "500 realizations");
}

std::vector<crn::Regime> parse_regimes(const std::string& text) {
  std::vector<crn::Regime> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(crn::parse_regime(item));
  }
  return out;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw crn::ConfigError("bad number '" + item + "' in --values");
    }
  }
  return out;
}

crn::SweepSpec base_spec(const Overrides& o) {
  crn::SweepSpec spec;
  spec.regimes = {crn::Regime::Dir};
  if (!o.config.empty()) spec = crn::load_sweep_spec(o.config);
  return spec;
}

void apply_overrides(crn::SweepSpec& spec, const Overrides& o, bool want_sim) {
  crn::NetworkParams& p = spec.base_params;
  if (o.alpha) p.alpha = *o.alpha;
  if (o.lambda_p) p.lambda_p = *o.lambda_p;
  if (o.lambda_s) p.lambda_s = *o.lambda_s;
  if (o.r) p.r = *o.r;
  if (o.theta_p) p.theta_p = *o.theta_p;
  if (o.theta_s) p.theta_s = *o.theta_s;
  if (!o.regimes.empty()) spec.regimes = parse_regimes(o.regimes);
  if (o.as_printed) spec.omn_form = crn::OmnForm::AsPrinted;
  if (want_sim && !spec.sim) spec.sim = crn::SimulationConfig{};
  if (spec.sim) {
    if (o.quick) spec.sim->realizations = 500;
    if (o.omega) spec.sim->realizations = *o.omega;
    if (o.seed) spec.sim->seed = *o.seed;
  }
}

nlohmann::json params_json(const crn::NetworkParams& p) {
  return {{"lambda_p", p.lambda_p}, {"lambda_s", p.lambda_s}, {"p_d", p.p_d},         {"p_p", p.p_p},
          {"p_s", p.p_s},           {"eta", p.eta},           {"sigma2", p.sigma2},   {"delta", p.delta},
          {"alpha", p.alpha},       {"theta_p", p.theta_p},   {"theta_s", p.theta_s}, {"r", p.r}};
}

void write_sweep(const crn::SweepResult& result, const std::string& out) {
  if (out.empty()) {
    crn::write_csv(result, std::cout);
  } else {
    crn::emit_csv(result, out);
  }
}

int run_point(const Overrides& o, bool simulate) {
  crn::SweepSpec spec = base_spec(o);
  apply_overrides(spec, o, simulate);
  spec.base_params.validate();
  nlohmann::json out = nlohmann::json::array();
  for (crn::Regime regime : spec.regimes) {
    const crn::ConnectivityBreakdown a = crn::connection_probability(spec.base_params, regime, spec.omn_form);
    nlohmann::json row{{"regime", std::string(crn::to_string(regime))},
                       {"params", params_json(spec.base_params)},
                       {"p_spectrum", a.p_spectrum},
                       {"p_topological", a.p_topological},
                       {"p_connection", a.p_connection}};
    if (simulate) {
      const crn::EstimateResult s = crn::estimate(spec.base_params, *spec.sim, regime, o.workers);
      row["p_spectrum_hat"] = s.p_spectrum_hat;
      row["p_topological_hat"] = s.p_topological_hat;
      row["p_connection_hat"] = s.p_connection_hat;
      row["stderr"] = {{"spectrum", s.se_spectrum}, {"topological", s.se_topological}, {"connection", s.se_connection}};
      row["omega"] = s.realizations_used;
      row["seed"] = spec.sim->seed;
    }
    out.push_back(row);
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connectivity of secondary users in underlay cognitive radio networks"};
  app.require_subcommand(1);

  Overrides o;
  std::string variable;
  std::string values;
  bool with_sim = false;
  bool no_sim = false;
  std::string figure;

  auto* analytic = app.add_subcommand("analytic", "closed-form breakdown at one parameter point");
  add_param_flags(analytic, o);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate at one parameter point");
  add_param_flags(simulate, o);
  add_sim_flags(simulate, o);

  auto* sweep = app.add_subcommand("sweep", "sweep one variable and write CSV");
  add_param_flags(sweep, o);
  add_sim_flags(sweep, o);
  sweep->add_option("--variable", variable, "r|lambda_p|theta_p|theta_s");
  sweep->add_option("--values", values, "comma-separated, strictly increasing");
  sweep->add_flag("--with-sim", with_sim, "add Monte Carlo columns");
  sweep->add_option("--out", o.out, "CSV path (default stdout)");

  auto* verify = app.add_subcommand("verify", "oracle cross-checks and discrepancy ledger");
  add_sim_flags(verify, o);
  verify->add_flag("--no-sim", no_sim, "skip the Monte Carlo agreement checks");

  auto* preset = app.add_subcommand("preset", "reproduce a figure's sweep");
  preset->add_option("figure", figure, "fig4|fig6|fig7|fig8|fig9|fig10|fig11")->required();
  add_param_flags(preset, o);
  add_sim_flags(preset, o);
  preset->add_option("--out", o.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analytic) return run_point(o, false);
    if (*simulate) return run_point(o, true);
    if (*sweep) {
      crn::SweepSpec spec = base_spec(o);
      if (!variable.empty()) spec.variable = crn::parse_sweep_variable(variable);
      if (!values.empty()) spec.values = parse_values(values);
      apply_overrides(spec, o, with_sim);
      write_sweep(crn::run_sweep(spec, o.workers), o.out);
      return 0;
    }
    if (*preset) {
      crn::SweepSpec spec = crn::preset(figure, o.quick);
      const bool had_sim = spec.sim.has_value();
      apply_overrides(spec, o, had_sim);
      write_sweep(crn::run_sweep(spec, o.workers), o.out);
      return 0;
    }
    if (*verify) {
      crn::VerifyOptions options;
      options.quick = o.quick;
      options.omega = o.omega.value_or(o.quick ? 500 : 3000);
      options.seed = o.seed.value_or(1);
      options.workers = o.workers;
      options.include_simulation = !no_sim;
      const crn::VerifyReport report = crn::verify_all(options);
      crn::print_report(report, std::cout);
      return report.passed() ? 0 : kExitVerify;
    }
  } catch (const crn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
