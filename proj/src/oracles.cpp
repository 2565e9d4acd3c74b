#include "crn/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace crn {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kMaxDepth = 20;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

template <class F>
double adaptive(F f, double a, double b, QuadratureTolerance tol, const char* what) {
  double error = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth, tol.relative * 1e-2, &error);
  if (!std::isfinite(value) || error > std::max(tol.absolute, tol.relative * std::fabs(value))) {
    throw QuadratureError(std::string(what) + ": no convergence on [" + std::to_string(a) + ", " + std::to_string(b) +
                          "], estimate " + sci(value) + " error " + sci(error));
  }
  return value;
}

/// Sorted cut points in [0, 2π] where a sector centred at `centre` changes gain.
std::vector<double> sector_breaks(double centre, double beamwidth) {
  std::vector<double> cuts{0.0, kTwoPi};
  if (beamwidth < kTwoPi) {
    cuts.push_back(normalize_angle(centre - 0.5 * beamwidth));
    cuts.push_back(normalize_angle(centre + 0.5 * beamwidth));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

template <class F>
double integrate_circle(F f, const std::vector<double>& cuts, QuadratureTolerance tol, const char* what) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] > cuts[k]) total += adaptive(f, cuts[k], cuts[k + 1], tol, what);
  }
  return total;
}

/// ∫₀^∞ ρ K ρ^-α / (1 + K ρ^-α) dρ, the fading-averaged outage mass of one
/// interferer with gain-scaled power K. Dyadic panels until the tail bound
/// K ρ^(2-α)/(α-2) drops below the absolute tolerance.
double radial_outage_integral(double k_power, double alpha, QuadratureTolerance tol) {
  if (k_power == 0.0) return 0.0;
  const auto integrand = [&](double rho) { return k_power * rho / (k_power + std::pow(rho, alpha)); };
  double total = adaptive(integrand, 0.0, 1.0, tol, "radial integral");
  double lo = 1.0;
  for (int panel = 0; panel < 400; ++panel) {
    const double tail_bound = k_power * std::pow(lo, 2.0 - alpha) / (alpha - 2.0);
    if (tail_bound < tol.absolute) return total;
    total += adaptive(integrand, lo, 2.0 * lo, tol, "radial integral");
    lo *= 2.0;
  }
  throw QuadratureError("radial integral: tail bound still " +
                        std::to_string(k_power * std::pow(lo, 2.0 - alpha) / (alpha - 2.0)) + " at rho = " +
                        std::to_string(lo));
}

}  // namespace

double laplace_shot_noise_numeric(double density, double scaled_power, double rx_beamwidth, double tx_beamwidth,
                                  double alpha, QuadratureTolerance tol) {
  if (!(alpha > 2.0)) throw QuadratureError("shot-noise transform diverges for alpha <= 2");
  if (density == 0.0 || scaled_power == 0.0) return 1.0;

  const SectorBeam rx(0.0, rx_beamwidth);
  std::map<double, double> radial_cache;
  const auto radial = [&](double gain_product) {
    auto it = radial_cache.find(gain_product);
    if (it == radial_cache.end()) {
      it = radial_cache.emplace(gain_product, radial_outage_integral(scaled_power * gain_product, alpha, tol)).first;
    }
    return it->second;
  };

  // psi: bearing of the interferer seen from the receiver; phi: interferer orientation.
  const auto over_orientation = [&](double psi) {
    const double g_rx = sector_gain(rx, psi);
    if (g_rx == 0.0) return 0.0;
    const double toward_rx = psi + kPi;
    const auto inner = [&](double phi) { return radial(g_rx * sector_gain(SectorBeam(phi, tx_beamwidth), toward_rx)); };
    return integrate_circle(inner, sector_breaks(toward_rx, tx_beamwidth), tol, "orientation integral");
  };
  const double mass = integrate_circle(over_orientation, sector_breaks(0.0, rx_beamwidth), tol, "bearing integral");
  return std::exp(-density / kTwoPi * mass);
}

double laplace_pt_interference_numeric(const NetworkParams& params, Regime regime) {
  params.validate();
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  const double g_s = kTwoPi / theta_s;
  const double b = params.delta * std::pow(params.r, params.alpha) / (g_s * g_s);
  return laplace_shot_noise_numeric(params.lambda_p, b * params.p_p / params.p_s, theta_s, theta_p, params.alpha);
}

double laplace_st_interference_numeric(const NetworkParams& params, Regime regime) {
  params.validate();
  const double theta_s = effective_beamwidths(params, regime).secondary;
  const double g_s = kTwoPi / theta_s;
  const double b = params.delta * std::pow(params.r, params.alpha) / (g_s * g_s);
  return laplace_shot_noise_numeric(thinned_su_density(params, regime), b, theta_s, theta_s, params.alpha);
}

double omn_union_area_numeric(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  const auto integrand = [radius](double l) { return union_area(l, radius) * 2.0 * l / (radius * radius); };
  return adaptive(integrand, 0.0, radius, QuadratureTolerance{1e-14 * radius * radius, 1e-12}, "union area");
}

double expected_detection_area_numeric(const NetworkParams& params, Regime regime) {
  params.validate();
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  // The union area scales as R², so one quadrature at R = 1 serves every h.
  const double union_per_r2 = regime == Regime::Omn ? omn_union_area_numeric(1.0) : 0.0;
  const auto area_at = [&](double h) {
    if (h <= 0.0) return 0.0;
    const double range = detection_range(regime, params, FadingSample{h});
    return regime == Regime::Omn ? union_per_r2 * range * range : 0.5 * theta_s * range * range;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  const double value = integrator.integrate([&](double h) { return area_at(h) * std::exp(-h); }, 0.0,
                                            std::numeric_limits<double>::infinity(), 1e-12, &error);
  if (error > 1e-8 * std::fabs(value)) {
    throw QuadratureError("detection area: error estimate " + std::to_string(error));
  }
  return value;
}

double omn_spectrum_fixed_distance(const NetworkParams& params, double l) {
  params.validate();
  if (l < 0.0) throw std::invalid_argument("pair distance must be non-negative");
  const double a = params.alpha;
  // Probability that a preamble from distance d survives fading above η.
  const auto blocks = [&](double d) { return std::exp(-params.eta * std::pow(d, a) / params.p_d); };
  const double reach = std::pow(60.0 * params.p_d / params.eta, 1.0 / a);
  const QuadratureTolerance tol{1e-12, 1e-10};

  const double single = adaptive([&](double rho) { return kTwoPi * rho * blocks(rho); }, 0.0, reach, tol, "disc mass");
  const auto ring = [&](double rho) {
    const auto at_angle = [&](double psi) {
      return blocks(std::sqrt(std::max(0.0, rho * rho + l * l - 2.0 * rho * l * std::cos(psi))));
    };
    return 2.0 * rho * blocks(rho) * adaptive(at_angle, 0.0, kPi, tol, "overlap angle");
  };
  const double overlap = l == 0.0 ? adaptive([&](double rho) { return kTwoPi * rho * blocks(rho) * blocks(rho); }, 0.0,
                                             reach, tol, "overlap")
                                  : adaptive(ring, 0.0, reach, tol, "overlap");
  return std::exp(-params.lambda_p * (2.0 * single - overlap));
}

double sector_pair_spectrum_numeric(const NetworkParams& params, Regime regime) {
  params.validate();
  if (regime == Regime::Omn) throw std::invalid_argument("omni pairs use omn_spectrum_fixed_distance");
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  if (!(theta_s < kPi)) throw std::invalid_argument("SU beamwidth must be below pi");
  const double a = params.alpha;
  const double gain = (kTwoPi / theta_p) * (kTwoPi / theta_s);
  const auto survives = [&](double d) { return std::exp(-params.eta * std::pow(d, a) / (params.p_d * gain)); };
  const double reach = std::pow(60.0 * params.p_d * gain / params.eta, 1.0 / a);
  const QuadratureTolerance tol{1e-12, 1e-10};

  // One SU: its beam sector, thinned by the chance the PR beam faces it.
  const double single =
      (theta_p / kTwoPi) * theta_s * adaptive([&](double rho) { return rho * survives(rho); }, 0.0, reach, tol, "sector mass");

  // Both SUs: SU i at the origin facing +x, SU j at (r, 0) facing -x. Along
  // the ray from i at bearing ψ, j's beam is entered at once and left at
  // ρ = r sin β / sin(β + |ψ|), β = θ_s / 2. A PR there must also hold both
  // SUs in one beam, which for a uniform orientation has probability
  // max(0, θ_p - Δ) / 2π, Δ being the angle the pair subtends at the PR.
  const double r = params.r;
  const double beta = 0.5 * theta_s;
  const auto covers_both = [&](double x, double y) {
    if (theta_p >= kTwoPi) return 1.0;
    const double cos_delta = ((-x) * (r - x) + y * y) / (std::hypot(x, y) * std::hypot(r - x, y));
    const double delta = std::acos(std::clamp(cos_delta, -1.0, 1.0));
    return std::max(0.0, theta_p - delta) / kTwoPi;
  };
  // Both integrands are smooth apart from the kink where Δ = θ_p, so a fixed
  // composite Gauss-Legendre rule is used; nesting the adaptive one stalls
  // on its own error estimates.
  const auto composite = [](auto f, double lo, double hi) {
    constexpr int kPanels = 32;
    const double step = (hi - lo) / kPanels;
    double total = 0.0;
    for (int k = 0; k < kPanels; ++k) total += gauss<double, 30>::integrate(f, lo + k * step, lo + (k + 1) * step);
    return total;
  };
  const auto along_ray = [&](double psi) {
    const double end = r * std::sin(beta) / std::sin(beta + psi);
    return composite(
        [&](double rho) {
          const double x = rho * std::cos(psi);
          const double y = rho * std::sin(psi);
          return rho * survives(rho) * survives(std::hypot(r - x, y)) * covers_both(x, y);
        },
        0.0, end);
  };
  const double overlap = 2.0 * composite(along_ray, 0.0, beta);
  return std::exp(-params.lambda_p * (2.0 * single - overlap));
}

}  // namespace crn
