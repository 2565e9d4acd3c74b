#include "crn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "crn/oracles.hpp"

namespace crn {

using nlohmann::json;

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::R: return "r";
    case SweepVariable::LambdaP: return "lambda_p";
    case SweepVariable::ThetaP: return "theta_p";
    case SweepVariable::ThetaS: return "theta_s";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view text) {
  if (text == "r") return SweepVariable::R;
  if (text == "lambda_p") return SweepVariable::LambdaP;
  if (text == "theta_p") return SweepVariable::ThetaP;
  if (text == "theta_s") return SweepVariable::ThetaS;
  throw ConfigError("unknown sweep variable '" + std::string(text) + "' (expected r, lambda_p, theta_p, theta_s)");
}

NetworkParams with_value(NetworkParams base, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::R: base.r = value; break;
    case SweepVariable::LambdaP: base.lambda_p = value; break;
    case SweepVariable::ThetaP: base.theta_p = value; break;
    case SweepVariable::ThetaS: base.theta_s = value; break;
  }
  return base;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep values must not be empty");
  if (regimes.empty()) throw ConfigError("sweep needs at least one regime");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0 && !(values[k] > values[k - 1])) {
      throw ConfigError("sweep values must be strictly increasing; " + std::to_string(values[k]) + " follows " +
                        std::to_string(values[k - 1]));
    }
    try {
      with_value(base_params, variable, values[k]).validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("invalid sweep point " + std::string(to_string(variable)) + " = " + std::to_string(values[k]) +
                        ": " + e.what());
    }
  }
  if (sim) {
    try {
      sim->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid simulation config: ") + e.what());
    }
  }
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  SweepResult result;
  for (double value : spec.values) {
    const NetworkParams params = with_value(spec.base_params, spec.variable, value);
    for (Regime regime : spec.regimes) {
      SweepRow row;
      row.variable = spec.variable;
      row.value = value;
      row.regime = regime;
      try {
        row.analytic = connection_probability(params, regime, spec.omn_form);
      } catch (const std::exception& e) {
        throw ConfigError("sweep point " + std::string(to_string(spec.variable)) + " = " + std::to_string(value) +
                          ": " + e.what());
      }
      if (spec.sim) {
        row.simulated = estimate(params, *spec.sim, regime, workers);
        row.seed = spec.sim->seed;
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

namespace {

std::string fmt_g10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    out << to_string(row.variable) << ',' << fmt_g10(row.value) << ',' << to_string(row.regime) << ','
        << fmt_g10(row.analytic.p_spectrum) << ',' << fmt_g10(row.analytic.p_topological) << ','
        << fmt_g10(row.analytic.p_connection) << ',';
    if (row.simulated) {
      const EstimateResult& s = *row.simulated;
      out << fmt_g10(s.p_spectrum_hat) << ',' << fmt_g10(s.p_topological_hat) << ',' << fmt_g10(s.p_connection_hat)
          << ',' << fmt_g10(s.se_connection) << ',' << s.realizations_used << ',' << row.seed;
    } else {
      out << ",,,,,";
    }
    out << '\n';
  }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(result, file);
  file.flush();
  if (!file) throw std::runtime_error("write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// JSON configuration

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + what);
  }
}

double number(const json& j, const std::string& key) {
  if (!j.at(key).is_number()) throw ConfigError("'" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::uint64_t count(const json& j, const std::string& key) {
  if (!j.at(key).is_number_unsigned() && !(j.at(key).is_number_integer() && j.at(key).get<std::int64_t>() >= 0)) {
    throw ConfigError("'" + key + "' must be a non-negative integer");
  }
  return j.at(key).get<std::uint64_t>();
}

Window window_from(const json& j, const std::string& key) {
  const json& w = j.at(key);
  if (w.is_array() && w.size() == 2 && w[0].is_number() && w[1].is_number()) {
    return {w[0].get<double>(), w[1].get<double>()};
  }
  if (w.is_object()) {
    reject_unknown(w, {"width", "height"}, key.c_str());
    return {number(w, "width"), number(w, "height")};
  }
  throw ConfigError("'" + key + "' must be [width, height] or {\"width\":..,\"height\":..}");
}

}  // namespace

NetworkParams network_params_from_json(const json& j, NetworkParams p) {
  reject_unknown(j,
                 {"lambda_p", "lambda_s", "p_d", "p_p", "p_s", "eta", "sigma2", "delta", "alpha", "theta_p", "theta_s",
                  "r"},
                 "base_params");
  const std::pair<const char*, double*> fields[] = {
      {"lambda_p", &p.lambda_p}, {"lambda_s", &p.lambda_s}, {"p_d", &p.p_d},         {"p_p", &p.p_p},
      {"p_s", &p.p_s},           {"eta", &p.eta},           {"sigma2", &p.sigma2},   {"delta", &p.delta},
      {"alpha", &p.alpha},       {"theta_p", &p.theta_p},   {"theta_s", &p.theta_s}, {"r", &p.r}};
  for (const auto& [key, slot] : fields) {
    if (j.contains(key)) *slot = number(j, key);
  }
  return p;
}

SimulationConfig simulation_config_from_json(const json& j, SimulationConfig c) {
  reject_unknown(j,
                 {"outer_window", "inner_window", "realizations", "seed", "primary_link_radius", "st_activity_mode",
                  "link_direction_mode", "interference_truncation_radius"},
                 "sim");
  try {
    if (j.contains("outer_window")) c.outer_window = window_from(j, "outer_window");
    if (j.contains("inner_window")) c.inner_window = window_from(j, "inner_window");
    if (j.contains("realizations")) c.realizations = count(j, "realizations");
    if (j.contains("seed")) c.seed = count(j, "seed");
    if (j.contains("primary_link_radius")) c.primary_link_radius = number(j, "primary_link_radius");
    if (j.contains("st_activity_mode")) c.st_activity_mode = parse_st_activity_mode(j.at("st_activity_mode").get<std::string>());
    if (j.contains("link_direction_mode")) {
      c.link_direction_mode = parse_link_direction_mode(j.at("link_direction_mode").get<std::string>());
    }
    if (j.contains("interference_truncation_radius")) {
      const json& t = j.at("interference_truncation_radius");
      c.interference_truncation_radius = t.is_null() ? std::nullopt : std::optional<double>(number(j, "interference_truncation_radius"));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sim: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sim: ") + e.what());
  }
  return c;
}

SweepSpec sweep_spec_from_json(const json& j) {
  reject_unknown(j, {"variable", "values", "base_params", "regimes", "sim"}, "config");
  SweepSpec spec;
  spec.regimes = {Regime::Omn, Regime::OmnDir, Regime::Dir};
  try {
    if (j.contains("variable")) spec.variable = parse_sweep_variable(j.at("variable").get<std::string>());
    if (j.contains("values")) spec.values = j.at("values").get<std::vector<double>>();
    if (j.contains("base_params")) spec.base_params = network_params_from_json(j.at("base_params"));
    if (j.contains("regimes")) {
      spec.regimes.clear();
      for (const auto& name : j.at("regimes").get<std::vector<std::string>>()) spec.regimes.push_back(parse_regime(name));
    }
    if (j.contains("sim")) spec.sim = simulation_config_from_json(j.at("sim"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return sweep_spec_from_json(j);
}

// ---------------------------------------------------------------------------
// Presets

namespace {

std::vector<double> lambda_grid() {
  std::vector<double> v;
  for (int k = 1; k <= 10; ++k) v.push_back(0.005 * k);
  return v;
}

std::vector<double> beamwidth_grid() {
  std::vector<double> v;
  for (int k = 1; k <= 9; ++k) v.push_back(k * kPi / 18.0);
  return v;
}

const std::vector<Regime> kAllRegimes{Regime::Omn, Regime::OmnDir, Regime::Dir};

}  // namespace

std::vector<std::string> preset_names() { return {"fig4", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11"}; }

SweepSpec preset(std::string_view name, bool quick) {
  SweepSpec spec;
  SimulationConfig sim;
  sim.realizations = quick ? 500 : 3000;

  if (name == "fig4" || name == "fig6") {
    // spectrum availability / topological connectivity against PU density
    spec.variable = SweepVariable::LambdaP;
    spec.values = lambda_grid();
    spec.regimes = kAllRegimes;
  } else if (name == "fig7") {
    spec.variable = SweepVariable::ThetaP;
    spec.values = beamwidth_grid();
    spec.regimes = {Regime::Dir};
  } else if (name == "fig8") {
    spec.variable = SweepVariable::R;
    for (int k = 2; k <= 12; ++k) spec.values.push_back(0.5 * k);
    spec.regimes = kAllRegimes;
    spec.sim = sim;
  } else if (name == "fig9") {
    spec.variable = SweepVariable::LambdaP;
    spec.values = lambda_grid();
    spec.regimes = kAllRegimes;
    spec.sim = sim;
  } else if (name == "fig10" || name == "fig11") {
    spec.variable = name == "fig10" ? SweepVariable::ThetaP : SweepVariable::ThetaS;
    spec.values = beamwidth_grid();
    spec.regimes = {Regime::Dir};
    spec.base_params.lambda_p = 0.01;
    spec.sim = sim;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Verification

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Discrepancy: return "DISCREPANCY";
  }
  return "?";
}

bool VerifyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

namespace {

std::string sci(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << std::scientific << v;
  return s.str();
}

std::string fixed(double v, int digits = 5) {
  std::ostringstream s;
  s << std::setprecision(digits) << std::fixed << v;
  return s.str();
}

CheckResult check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

void verify_laplace_grid(VerifyReport& report) {
  const double alphas[] = {2.5, 3.0, 4.0, 5.0};
  const double thetas[] = {kPi / 9.0, kPi / 6.0, kPi / 3.0, kTwoPi};
  double worst_pt = 0.0;
  double worst_st = 0.0;
  for (double a : alphas) {
    for (double tp : thetas) {
      for (double ts : thetas) {
        NetworkParams p;
        p.alpha = a;
        p.theta_p = tp;
        p.theta_s = ts;
        worst_pt = std::max(worst_pt, rel_err(laplace_pt_interference_numeric(p, Regime::Dir),
                                              laplace_pt_interference(p, Regime::Dir)));
        worst_st = std::max(worst_st, rel_err(laplace_st_interference_numeric(p, Regime::Dir),
                                              laplace_st_interference(p, Regime::Dir)));
      }
    }
  }
  report.checks.push_back(check("laplace_pt closed form vs quadrature (64-point grid)", worst_pt <= 1e-6,
                                "max relative error " + sci(worst_pt)));
  report.checks.push_back(check("laplace_st closed form vs quadrature (64-point grid)", worst_st <= 1e-6,
                                "max relative error " + sci(worst_st)));
}

void verify_union_area(VerifyReport& report) {
  const double coefficient = omn_union_area_numeric(1.0);
  report.checks.push_back(check("union area l-average coefficient", rel_err(coefficient, kOmnUnionCoefficient) <= 1e-6,
                                "quadrature " + fixed(coefficient, 9) + " vs pi + 3*sqrt(3)/4 = " +
                                    fixed(kOmnUnionCoefficient, 9)));
  const double r = 7.0;
  const double at0 = union_area(0.0, r);
  const double at_r = union_area(r, r);
  const double exact_r = (4.0 * kPi / 3.0 + std::sqrt(3.0) / 2.0) * r * r;
  report.checks.push_back(check("union area spot values", rel_err(at0, kPi * r * r) <= 4e-16 && rel_err(at_r, exact_r) <= 4e-16,
                                "S_o(0) rel err " + sci(rel_err(at0, kPi * r * r)) + ", S_o(R) rel err " +
                                    sci(rel_err(at_r, exact_r))));
  NetworkParams p;
  double worst = 0.0;
  for (Regime g : kAllRegimes) worst = std::max(worst, rel_err(expected_detection_area_numeric(p, g), expected_detection_area(p, g)));
  report.checks.push_back(check("fading-averaged detection area vs quadrature", worst <= 1e-6, "max relative error " + sci(worst)));
}

void verify_reductions(VerifyReport& report) {
  bool spectrum_exact = true;
  bool topo_exact = true;
  bool remark_exact = true;
  double worst_printed = 0.0;
  for (double a : {2.5, 3.0, 4.0, 5.0}) {
    for (double lp : {0.005, 0.02, 0.05}) {
      NetworkParams p;
      p.alpha = a;
      p.lambda_p = lp;
      NetworkParams at_omni = p;
      at_omni.theta_p = kTwoPi;
      spectrum_exact &= spectrum_availability(at_omni, Regime::Dir) == spectrum_availability(p, Regime::OmnDir);
      topo_exact &= topological_connectivity(at_omni, Regime::Dir) == topological_connectivity_printed(p, Regime::OmnDir);
      for (Regime g : {Regime::Dir, Regime::OmnDir}) {
        worst_printed = std::max(worst_printed, rel_err(connection_probability_printed(p, g), connection_probability(p, g).p_connection));
      }
      worst_printed = std::max(worst_printed, rel_err(connection_probability_printed(p, Regime::Omn),
                                                      connection_probability(p, Regime::Omn, OmnForm::AsPrinted).p_connection));
    }
  }
  NetworkParams p;
  p.alpha = 2.0;
  const double reference = spectrum_availability(p, Regime::Dir);
  for (double tp : {kPi / 9.0, kPi / 3.0, kPi, kTwoPi}) {
    for (double ts : {kPi / 9.0, kPi / 2.0, kTwoPi}) {
      p.theta_p = tp;
      p.theta_s = ts;
      remark_exact &= spectrum_availability(p, Regime::Dir) == reference;
    }
  }
  report.checks.push_back(check("Dir spectrum availability at theta_p = 2pi equals OmnDir (bit-exact)", spectrum_exact, ""));
  report.checks.push_back(check("Dir topological connectivity at theta_p = 2pi equals OmnDir corollary (bit-exact)", topo_exact, ""));
  report.checks.push_back(check("alpha = 2 spectrum availability independent of beamwidths (bit-exact)", remark_exact, ""));
  report.checks.push_back(check("single-exponential connection formulas equal spectrum x topological", worst_printed <= 1e-12,
                                "max relative error " + sci(worst_printed)));
}

void verify_known_discrepancies(VerifyReport& report) {
  NetworkParams p;
  const double reduced = -std::log(topological_connectivity(p, Regime::Omn, OmnForm::Reduced));
  const double printed = -std::log(topological_connectivity(p, Regime::Omn, OmnForm::AsPrinted));
  const double noise = p.delta * p.sigma2 * std::pow(p.r, p.alpha) / p.p_s;
  const double factor = (reduced - noise) / (printed - noise);
  report.checks.push_back({"omni topological: reduction of the general form vs printed corollary", CheckStatus::Discrepancy,
                           "interference exponents differ by factor " + fixed(factor, 6) + " (2*pi^2 = " +
                               fixed(2.0 * kPi * kPi, 6) + ")"});

  NetworkParams q = p;
  q.theta_p = kTwoPi;
  q.theta_s = kTwoPi;
  const double dir_at_omni = -std::log(spectrum_availability(q, Regime::Dir));
  const double omn = -std::log(spectrum_availability(p, Regime::Omn));
  report.checks.push_back({"spectrum availability: sector form at 2pi vs omni union-area form", CheckStatus::Discrepancy,
                           "exponent ratio " + fixed(dir_at_omni / omn, 6) + " = 2pi / (pi + 3*sqrt(3)/4) = " +
                               fixed(kTwoPi / kOmnUnionCoefficient, 6)});

  const double fixed_r = omn_spectrum_fixed_distance(p, p.r);
  report.checks.push_back({"omni spectrum availability: fixed r = 3 vs l-averaged closed form", CheckStatus::Discrepancy,
                           "fixed-r " + fixed(fixed_r) + " vs closed form " + fixed(spectrum_availability(p, Regime::Omn)) +
                               " at lambda_p = 0.02, alpha = 3"});

  NetworkParams steep = p;
  steep.alpha = 5.0;
  report.checks.push_back({"OmnDir spectrum availability: closed form vs PRs in both facing beams counted once",
                           CheckStatus::Discrepancy,
                           "quadrature " + fixed(sector_pair_spectrum_numeric(steep, Regime::OmnDir)) + " vs closed form " +
                               fixed(spectrum_availability(steep, Regime::OmnDir)) + " at lambda_p = 0.02, alpha = 5"});
}

void verify_simulation(VerifyReport& report, const VerifyOptions& opt) {
  SimulationConfig sim;
  sim.realizations = opt.omega;
  sim.seed = opt.seed;
  const double slack_spectrum = opt.quick ? 0.02 : 0.01;
  const double slack_connection = opt.quick ? 0.03 : 0.02;
  NetworkParams p;

  for (Regime g : {Regime::Dir, Regime::OmnDir}) {
    const EstimateResult est = estimate(p, sim, g, opt.workers);
    const ConnectivityBreakdown a = connection_probability(p, g);
    const double tol_s = 3.0 * est.se_spectrum + slack_spectrum;
    const double tol_c = 3.0 * est.se_connection + slack_connection;
    report.checks.push_back(check("simulated spectrum availability, " + std::string(to_string(g)),
                                  std::fabs(est.p_spectrum_hat - a.p_spectrum) <= tol_s,
                                  "sim " + fixed(est.p_spectrum_hat) + " vs analytic " + fixed(a.p_spectrum) + " (tol " + fixed(tol_s) + ")"));
    const double shared_once = sector_pair_spectrum_numeric(p, g);
    report.checks.push_back(check("simulated spectrum availability vs shared-PR quadrature, " + std::string(to_string(g)),
                                  std::fabs(est.p_spectrum_hat - shared_once) <= tol_s,
                                  "sim " + fixed(est.p_spectrum_hat) + " vs quadrature " + fixed(shared_once) + " (tol " + fixed(tol_s) + ")"));
    report.checks.push_back(check("simulated connection probability, " + std::string(to_string(g)),
                                  std::fabs(est.p_connection_hat - a.p_connection) <= tol_c,
                                  "sim " + fixed(est.p_connection_hat) + " vs analytic " + fixed(a.p_connection) + " (tol " + fixed(tol_c) + ")"));
  }

  const ProportionEstimate l_avg = estimate_omn_spectrum_l_averaged(p, sim, opt.workers);
  const double closed = spectrum_availability(p, Regime::Omn);
  const double tol_l = 3.0 * l_avg.standard_error + slack_spectrum;
  report.checks.push_back(check("omni spectrum availability, l-averaged simulation vs closed form",
                                std::fabs(l_avg.p_hat - closed) <= tol_l,
                                "sim " + fixed(l_avg.p_hat) + " vs analytic " + fixed(closed) + " (tol " + fixed(tol_l) + ")"));

  const EstimateResult omn = estimate(p, sim, Regime::Omn, opt.workers);
  const double fixed_r = omn_spectrum_fixed_distance(p, p.r);
  const double tol_f = 3.0 * omn.se_spectrum + slack_spectrum;
  report.checks.push_back(check("omni spectrum availability, fixed-r simulation vs fixed-r quadrature",
                                std::fabs(omn.p_spectrum_hat - fixed_r) <= tol_f,
                                "sim " + fixed(omn.p_spectrum_hat) + " vs quadrature " + fixed(fixed_r) + " (tol " + fixed(tol_f) + ")"));

  const double reduced = topological_connectivity(p, Regime::Omn, OmnForm::Reduced);
  const double printed = topological_connectivity(p, Regime::Omn, OmnForm::AsPrinted);
  const double gap_reduced = std::fabs(omn.p_topological_hat - reduced);
  const double gap_printed = std::fabs(omn.p_topological_hat - printed);
  const bool supports_reduced = gap_reduced < gap_printed;
  report.checks.push_back({"omni topological variant supported by simulation", CheckStatus::Discrepancy,
                           std::string(supports_reduced ? "reduced general form" : "printed corollary") + " (sim " +
                               fixed(omn.p_topological_hat) + ", reduced " + fixed(reduced) + ", printed " + fixed(printed) + ")"});
  const double tol_t = 3.0 * omn.se_topological + slack_connection;
  report.checks.push_back(check("simulated omni topological connectivity vs reduced form", gap_reduced <= tol_t,
                                "sim " + fixed(omn.p_topological_hat) + " vs " + fixed(reduced) + " (tol " + fixed(tol_t) + ")"));
}

}  // namespace

VerifyReport verify_all(const VerifyOptions& options) {
  VerifyReport report;
  const auto guarded = [&](const char* stage, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report.checks.push_back({stage, CheckStatus::Fail, e.what()});
    }
  };
  guarded("closed form vs quadrature", [&] { verify_laplace_grid(report); });
  guarded("union area", [&] { verify_union_area(report); });
  guarded("regime reductions", [&] { verify_reductions(report); });
  guarded("known discrepancies", [&] { verify_known_discrepancies(report); });
  if (options.include_simulation) guarded("simulation agreement", [&] { verify_simulation(report, options); });
  return report;
}

void print_report(const VerifyReport& report, std::ostream& out) {
  for (const CheckResult& c : report.checks) {
    out << '[' << to_string(c.status) << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  out << (report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
}

}  // namespace crn
