#include "crn/analytics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crn {

namespace {

void require(bool ok, const char* field, double value, const char* rule) {
  if (!ok) {
    throw std::invalid_argument(std::string(field) + " = " + std::to_string(value) + " violates " + rule);
  }
}

void require_topological_alpha(double alpha) {
  if (!(alpha > 2.0)) {
    throw std::domain_error("topological closed forms need alpha > 2 (sin(2π/α) must be positive), got " +
                            std::to_string(alpha));
  }
}

double gamma_factor(double alpha) { return std::tgamma(1.0 + 2.0 / alpha); }

/// 2α sin(2π/α), the common denominator of the interference exponents.
double interference_denominator(double alpha) { return 2.0 * alpha * std::sin(kTwoPi / alpha); }

double omn_spectrum_availability(const NetworkParams& p) {
  return std::exp(-kOmnUnionCoefficient * std::pow(p.p_d / p.eta, 2.0 / p.alpha) * p.lambda_p *
                  gamma_factor(p.alpha));
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Omn: return "omn";
    case Regime::OmnDir: return "omndir";
    case Regime::Dir: return "dir";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "omn") return Regime::Omn;
  if (lower == "omndir" || lower == "omn-dir") return Regime::OmnDir;
  if (lower == "dir") return Regime::Dir;
  throw std::invalid_argument("unknown regime '" + std::string(text) + "' (expected omn, omndir or dir)");
}

void NetworkParams::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  require(finite(lambda_p) && lambda_p >= 0.0, "lambda_p", lambda_p, ">= 0");
  require(finite(lambda_s) && lambda_s >= 0.0, "lambda_s", lambda_s, ">= 0");
  require(finite(p_d) && p_d > 0.0, "p_d", p_d, "> 0");
  require(finite(p_p) && p_p > 0.0, "p_p", p_p, "> 0");
  require(finite(p_s) && p_s > 0.0, "p_s", p_s, "> 0");
  require(finite(eta) && eta > 0.0, "eta", eta, "> 0");
  require(finite(sigma2) && sigma2 >= 0.0, "sigma2", sigma2, ">= 0");
  require(finite(delta) && delta > 0.0, "delta", delta, "> 0");
  require(alpha >= 2.0 && alpha <= 6.0, "alpha", alpha, "[2, 6]");
  require(theta_p > 0.0 && theta_p <= kTwoPi, "theta_p", theta_p, "(0, 2π]");
  require(theta_s > 0.0 && theta_s <= kTwoPi, "theta_s", theta_s, "(0, 2π]");
  require(finite(r) && r > 0.0, "r", r, "> 0");
}

Beamwidths effective_beamwidths(const NetworkParams& params, Regime regime) {
  switch (regime) {
    case Regime::Omn: return {kTwoPi, kTwoPi};
    case Regime::OmnDir: return {kTwoPi, params.theta_s};
    case Regime::Dir: return {params.theta_p, params.theta_s};
  }
  return {params.theta_p, params.theta_s};
}

double detection_range(Regime regime, const NetworkParams& params, FadingSample h) {
  if (regime == Regime::Omn) {
    return std::pow(params.p_d * h.h / params.eta, 1.0 / params.alpha);
  }
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  return std::pow(4.0 * kPi * kPi * params.p_d * h.h / (theta_p * theta_s * params.eta), 1.0 / params.alpha);
}

double directional_spectrum_availability(double lambda_p, double p_d, double eta, double alpha,
                                         double theta_p, double theta_s) {
  return std::exp(-(lambda_p / kTwoPi) * std::pow(4.0 * kPi * kPi * p_d / eta, 2.0 / alpha) *
                  std::pow(theta_p * theta_s, 1.0 - 2.0 / alpha) * gamma_factor(alpha));
}

double spectrum_availability(const NetworkParams& params, Regime regime) {
  params.validate();
  if (regime == Regime::Omn) return omn_spectrum_availability(params);
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  return directional_spectrum_availability(params.lambda_p, params.p_d, params.eta, params.alpha, theta_p,
                                           theta_s);
}

double thinned_su_density(const NetworkParams& params, Regime regime) {
  return params.lambda_s * spectrum_availability(params, regime);
}

double laplace_argument(const NetworkParams& params, Regime regime) {
  const double theta_s = effective_beamwidths(params, regime).secondary;
  return params.delta * std::pow(params.r, params.alpha) * theta_s * theta_s / (4.0 * kPi * kPi);
}

double laplace_pt_interference(const NetworkParams& params, Regime regime) {
  params.validate();
  require_topological_alpha(params.alpha);
  const double a = params.alpha;
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  const double b = laplace_argument(params, regime);
  return std::exp(-params.lambda_p * std::pow(kTwoPi, 4.0 / a) * std::pow(b * params.p_p / params.p_s, 2.0 / a) *
                  std::pow(theta_s * theta_p, 1.0 - 2.0 / a) / interference_denominator(a));
}

double laplace_st_interference(const NetworkParams& params, Regime regime) {
  params.validate();
  require_topological_alpha(params.alpha);
  const double a = params.alpha;
  const double theta_s = effective_beamwidths(params, regime).secondary;
  const double b = laplace_argument(params, regime);
  return std::exp(-thinned_su_density(params, regime) * std::pow(kTwoPi, 4.0 / a) * std::pow(b, 2.0 / a) *
                  std::pow(theta_s, 2.0 - 4.0 / a) / interference_denominator(a));
}

double directional_topological_connectivity(const NetworkParams& params, double theta_p, double theta_s,
                                            double p_spectrum) {
  require_topological_alpha(params.alpha);
  const double a = params.alpha;
  const double noise =
      params.delta * params.sigma2 * std::pow(params.r, a) * theta_s * theta_s / (4.0 * kPi * kPi * params.p_s);
  const double interference =
      std::pow(params.delta, 2.0 / a) * params.r * params.r *
      (params.lambda_p * std::pow(theta_s, 1.0 + 2.0 / a) * std::pow(theta_p, 1.0 - 2.0 / a) *
           std::pow(params.p_p / params.p_s, 2.0 / a) +
       params.lambda_s * p_spectrum * theta_s * theta_s) /
      interference_denominator(a);
  return std::exp(-noise - interference);
}

double topological_connectivity(const NetworkParams& params, Regime regime, OmnForm omn_form) {
  params.validate();
  require_topological_alpha(params.alpha);
  if (regime == Regime::Omn && omn_form == OmnForm::AsPrinted) {
    return topological_connectivity_printed(params, Regime::Omn);
  }
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  return directional_topological_connectivity(params, theta_p, theta_s, spectrum_availability(params, regime));
}

double topological_connectivity_printed(const NetworkParams& params, Regime regime) {
  params.validate();
  require_topological_alpha(params.alpha);
  const double a = params.alpha;
  const double p_ij = spectrum_availability(params, regime);
  const double pp_ratio = std::pow(params.p_p / params.p_s, 2.0 / a);
  const double d2r2 = std::pow(params.delta, 2.0 / a) * params.r * params.r;
  const double ts = params.theta_s;
  switch (regime) {
    case Regime::Dir:
      return directional_topological_connectivity(params, params.theta_p, ts, p_ij);
    case Regime::OmnDir:
      return std::exp(-params.delta * params.sigma2 * std::pow(params.r, a) * ts * ts / (4.0 * kPi * kPi * params.p_s) -
                      d2r2 *
                          (params.lambda_p * std::pow(ts, 1.0 + 2.0 / a) * std::pow(kTwoPi, 1.0 - 2.0 / a) * pp_ratio +
                           params.lambda_s * p_ij * ts * ts) /
                          interference_denominator(a));
    case Regime::Omn:
      return std::exp(-params.delta * params.sigma2 * std::pow(params.r, a) / params.p_s -
                      d2r2 * (params.lambda_p * pp_ratio + params.lambda_s * p_ij) / (a * std::sin(kTwoPi / a)));
  }
  return 0.0;
}

ConnectivityBreakdown connection_probability(const NetworkParams& params, Regime regime, OmnForm omn_form) {
  ConnectivityBreakdown out;
  out.p_spectrum = spectrum_availability(params, regime);
  out.p_topological = topological_connectivity(params, regime, omn_form);
  out.p_connection = out.p_spectrum * out.p_topological;
  return out;
}

double connection_probability_printed(const NetworkParams& params, Regime regime) {
  params.validate();
  require_topological_alpha(params.alpha);
  const double a = params.alpha;
  const double g = std::tgamma((2.0 + a) / a);
  const double tp = params.theta_p;
  const double ts = params.theta_s;
  const double pp_ratio = std::pow(params.p_p / params.p_s, 2.0 / a);
  const double d2r2 = std::pow(params.delta, 2.0 / a) * params.r * params.r;
  const double dir_noise = params.delta * params.sigma2 * std::pow(params.r, a) * ts * ts / (4.0 * kPi * kPi * params.p_s);
  const double p_ij = spectrum_availability(params, regime);
  switch (regime) {
    case Regime::Dir:
      return std::exp(-std::pow(4.0 * kPi * kPi * params.p_d / (tp * ts * params.eta), 2.0 / a) * params.lambda_p * tp *
                          ts / kTwoPi * g -
                      dir_noise -
                      d2r2 *
                          (params.lambda_p * std::pow(ts, 1.0 + 2.0 / a) * std::pow(tp, 1.0 - 2.0 / a) * pp_ratio +
                           p_ij * params.lambda_s * ts * ts) /
                          interference_denominator(a));
    case Regime::OmnDir:
      return std::exp(-std::pow(kTwoPi * params.p_d / (ts * params.eta), 2.0 / a) * params.lambda_p * ts * g -
                      dir_noise -
                      d2r2 *
                          (params.lambda_p * std::pow(ts, 1.0 + 2.0 / a) * std::pow(kTwoPi, 1.0 - 2.0 / a) * pp_ratio +
                           p_ij * params.lambda_s * ts * ts) /
                          interference_denominator(a));
    case Regime::Omn:
      return std::exp(-kOmnUnionCoefficient * std::pow(params.p_d / params.eta, 2.0 / a) * params.lambda_p * g -
                      params.delta * params.sigma2 * std::pow(params.r, a) / params.p_s -
                      d2r2 * (params.lambda_p * pp_ratio + params.lambda_s * p_ij) / (a * std::sin(kTwoPi / a)));
  }
  return 0.0;
}

double union_area(double l, double radius) {
  if (!(radius > 0.0) || l < 0.0 || l > 2.0 * radius) {
    throw std::invalid_argument("union_area needs radius > 0 and 0 <= l <= 2R");
  }
  const double theta0 = 2.0 * std::acos(l / (2.0 * radius));
  return (kTwoPi - theta0) * radius * radius + l * radius * std::sin(theta0 / 2.0);
}

double expected_detection_area(const NetworkParams& params, Regime regime) {
  params.validate();
  const double a = params.alpha;
  if (regime == Regime::Omn) {
    return kOmnUnionCoefficient * std::pow(params.p_d / params.eta, 2.0 / a) * gamma_factor(a);
  }
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  return theta_s / 2.0 * std::pow(4.0 * kPi * kPi * params.p_d / (theta_s * theta_p * params.eta), 2.0 / a) *
         gamma_factor(a);
}

}  // namespace crn
