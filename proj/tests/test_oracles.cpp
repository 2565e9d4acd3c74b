#include <cmath>
#include <stdexcept>

#include "crn/analytics.hpp"
#include "crn/oracles.hpp"
#include "doctest.h"

using namespace crn;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("laplace quadrature matches the closed forms at the reference point") {
  NetworkParams p;
  for (Regime g : {Regime::Omn, Regime::OmnDir, Regime::Dir}) {
    CHECK(rel(laplace_pt_interference_numeric(p, g), laplace_pt_interference(p, g)) < 1e-6);
    CHECK(rel(laplace_st_interference_numeric(p, g), laplace_st_interference(p, g)) < 1e-6);
  }
}

TEST_CASE("laplace quadrature off the reference point") {
  for (double alpha : {2.5, 4.0}) {
    for (double tp : {kPi / 9, kTwoPi}) {
      NetworkParams p;
      p.alpha = alpha;
      p.theta_p = tp;
      p.theta_s = kPi / 6;
      p.r = 2.0;
      CHECK(rel(laplace_pt_interference_numeric(p, Regime::Dir), laplace_pt_interference(p, Regime::Dir)) < 1e-6);
      CHECK(rel(laplace_st_interference_numeric(p, Regime::Dir), laplace_st_interference(p, Regime::Dir)) < 1e-6);
    }
  }
}

TEST_CASE("laplace quadrature trivial limits") {
  NetworkParams p;
  p.lambda_p = 0.0;
  CHECK(laplace_pt_interference_numeric(p, Regime::Dir) == 1.0);
  p = {};
  p.lambda_s = 0.0;
  CHECK(laplace_st_interference_numeric(p, Regime::Dir) == 1.0);
  p = {};
  p.lambda_p = 50.0;  // no spectrum left for interfering STs
  CHECK(laplace_st_interference_numeric(p, Regime::Dir) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(laplace_shot_noise_numeric(0.02, 1e-12, kPi / 3, kPi / 3, 3.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("shot-noise transform scales with density as a power") {
  const double one = laplace_shot_noise_numeric(0.01, 2.0, kPi / 3, kPi / 2, 3.5);
  const double two = laplace_shot_noise_numeric(0.02, 2.0, kPi / 3, kPi / 2, 3.5);
  CHECK(two == doctest::Approx(one * one).epsilon(1e-9));
}

TEST_CASE("union area quadrature reproduces the coefficient") {
  CHECK(rel(omn_union_area_numeric(1.0), kOmnUnionCoefficient) < 1e-6);
  CHECK(rel(omn_union_area_numeric(1.0), kPi + 3.0 * std::sqrt(3.0) / 4.0) < 1e-6);
  CHECK(rel(omn_union_area_numeric(12.5), kOmnUnionCoefficient * 12.5 * 12.5) < 1e-6);
  CHECK_THROWS_AS(omn_union_area_numeric(0.0), std::invalid_argument);
}

TEST_CASE("detection area quadrature matches the closed form") {
  for (double alpha : {2.0, 3.0, 5.0}) {
    NetworkParams p;
    p.alpha = alpha;
    for (Regime g : {Regime::Omn, Regime::OmnDir, Regime::Dir}) {
      CHECK(rel(expected_detection_area_numeric(p, g), expected_detection_area(p, g)) < 1e-6);
    }
  }
}

TEST_CASE("fixed-distance omni spectrum falls as the pair separates") {
  NetworkParams p;
  const double at0 = omn_spectrum_fixed_distance(p, 0.0);
  // At l = 0 both SUs see the same PRs through independent fading: a PR
  // misses both with probability (1 - q)², and ∫q² is ∫q scaled by 2^(-2/α).
  const double disc = kPi * std::pow(p.p_d / p.eta, 2.0 / p.alpha) * std::tgamma(1.0 + 2.0 / p.alpha);
  CHECK(at0 == doctest::Approx(std::exp(-p.lambda_p * disc * (2.0 - std::pow(2.0, -2.0 / p.alpha)))).epsilon(1e-8));
  double previous = at0;
  for (double l : {1.0, 3.0, 10.0, 40.0}) {
    const double now = omn_spectrum_fixed_distance(p, l);
    CHECK(now < previous);
    previous = now;
  }
  CHECK_THROWS_AS(omn_spectrum_fixed_distance(p, -1.0), std::invalid_argument);
}

TEST_CASE("sector pair spectrum counts shared PRs once") {
  NetworkParams p;
  // Facing pi/3 beams overlap where the pair subtends at least 2pi/3, which
  // no pi/3 PR beam can span, so Dir has nothing to correct.
  CHECK(rel(sector_pair_spectrum_numeric(p, Regime::Dir), spectrum_availability(p, Regime::Dir)) < 1e-8);

  for (double a : {3.0, 5.0}) {
    p.alpha = a;
    const double closed = spectrum_availability(p, Regime::OmnDir);
    const double exact = sector_pair_spectrum_numeric(p, Regime::OmnDir);
    CHECK(exact > closed);
    // The correction is exp(λ_p o) with o at most the area of the beam overlap.
    const double rhombus = 0.5 * p.r * p.r * std::tan(p.theta_s / 2.0);
    CHECK(std::log(exact / closed) <= p.lambda_p * rhombus);
    CHECK(std::log(exact / closed) > 0.5 * p.lambda_p * rhombus);
  }

  p.alpha = 3.0;
  p.r = 1e-3;
  CHECK(rel(sector_pair_spectrum_numeric(p, Regime::OmnDir), spectrum_availability(p, Regime::OmnDir)) < 1e-6);

  p.r = 3.0;
  p.theta_p = 5.0 * kPi / 3.0;
  const double wide = sector_pair_spectrum_numeric(p, Regime::Dir);
  const double wide_gain = std::log(wide / spectrum_availability(p, Regime::Dir));
  // a PR beam short of 2pi spans the pair less often than an omni PR does
  CHECK(wide_gain > 0.0);
  CHECK(wide_gain < std::log(sector_pair_spectrum_numeric(p, Regime::OmnDir) / spectrum_availability(p, Regime::OmnDir)));

  CHECK_THROWS_AS(sector_pair_spectrum_numeric(p, Regime::Omn), std::invalid_argument);
  p.theta_s = kPi;
  CHECK_THROWS_AS(sector_pair_spectrum_numeric(p, Regime::Dir), std::invalid_argument);
}
