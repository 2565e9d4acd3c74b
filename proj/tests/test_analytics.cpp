#include <cmath>
#include <stdexcept>
#include <vector>

#include "crn/analytics.hpp"
#include "doctest.h"

using namespace crn;

namespace {

const std::vector<Regime> kRegimes{Regime::Omn, Regime::OmnDir, Regime::Dir};

NetworkParams quiet() {
  NetworkParams p;
  p.lambda_p = 0.0;
  p.lambda_s = 0.0;
  return p;
}

}  // namespace

TEST_CASE("regime names round-trip") {
  for (Regime g : kRegimes) CHECK(parse_regime(to_string(g)) == g);
  CHECK(parse_regime("OmnDir") == Regime::OmnDir);
  CHECK(parse_regime("DIR") == Regime::Dir);
  CHECK_THROWS_AS(parse_regime("sideways"), std::invalid_argument);
}

TEST_CASE("parameter validation names the field") {
  NetworkParams p;
  p.eta = -1.0;
  try {
    p.validate();
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("eta") != std::string::npos);
  }
  p = {};
  p.theta_s = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.alpha = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("regimes force omni beams") {
  NetworkParams p;
  CHECK(effective_beamwidths(p, Regime::Omn).primary == kTwoPi);
  CHECK(effective_beamwidths(p, Regime::Omn).secondary == kTwoPi);
  CHECK(effective_beamwidths(p, Regime::OmnDir).primary == kTwoPi);
  CHECK(effective_beamwidths(p, Regime::OmnDir).secondary == p.theta_s);
  CHECK(effective_beamwidths(p, Regime::Dir).primary == p.theta_p);
}

TEST_CASE("detection range") {
  NetworkParams p;
  p.alpha = 2.0;
  CHECK(detection_range(Regime::Omn, p, {1.0}) == doctest::Approx(std::sqrt(200.0)).epsilon(1e-12));
  p.alpha = 3.0;
  CHECK(detection_range(Regime::Dir, p, {1.0}) == doctest::Approx(std::cbrt(7200.0)).epsilon(1e-12));
  CHECK(detection_range(Regime::Dir, p, {1.0}) == doctest::Approx(19.3098).epsilon(1e-5));
  for (Regime g : kRegimes) CHECK(detection_range(g, p, {0.0}) == 0.0);
  NetworkParams wide = p;
  wide.theta_p = kTwoPi;
  CHECK(detection_range(Regime::OmnDir, p, {2.0}) == detection_range(Regime::Dir, wide, {2.0}));
}

TEST_CASE("spectrum availability spot values") {
  NetworkParams p;
  p.alpha = 2.0;
  p.lambda_p = 1e-4;
  CHECK(spectrum_availability(p, Regime::Dir) == doctest::Approx(std::exp(-0.04 * kPi)).epsilon(1e-12));
  CHECK(spectrum_availability(p, Regime::Dir) == doctest::Approx(0.8819).epsilon(1e-4));
  CHECK(spectrum_availability(p, Regime::Omn) ==
        doctest::Approx(std::exp(-kOmnUnionCoefficient * 0.02)).epsilon(1e-12));
  CHECK(spectrum_availability(p, Regime::Omn) == doctest::Approx(0.9150).epsilon(1e-4));

  NetworkParams none;
  none.lambda_p = 0.0;
  for (Regime g : kRegimes) CHECK(spectrum_availability(none, g) == 1.0);
}

TEST_CASE("spectrum availability at alpha = 2 ignores beamwidths") {
  NetworkParams p;
  p.alpha = 2.0;
  const double reference = spectrum_availability(p, Regime::Dir);
  for (double tp : {kPi / 9, kPi / 6, kPi / 3, kPi, kTwoPi}) {
    for (double ts : {kPi / 9, kPi / 6, kPi / 3, kPi, kTwoPi}) {
      p.theta_p = tp;
      p.theta_s = ts;
      CHECK(spectrum_availability(p, Regime::Dir) == reference);
    }
  }
}

TEST_CASE("gamma factor") { CHECK(std::tgamma(1.5) == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-15)); }

TEST_CASE("thinned density") {
  NetworkParams p = quiet();
  p.lambda_s = 0.0002;
  for (Regime g : kRegimes) CHECK(thinned_su_density(p, g) == 0.0002);
  p.lambda_s = 0.0;
  p.lambda_p = 0.02;
  CHECK(thinned_su_density(p, Regime::Dir) == 0.0);
  NetworkParams paper;
  CHECK(thinned_su_density(paper, Regime::Dir) == paper.lambda_s * spectrum_availability(paper, Regime::Dir));
}

TEST_CASE("topological connectivity limits") {
  NetworkParams p = quiet();
  p.sigma2 = 0.0;
  for (Regime g : kRegimes) CHECK(topological_connectivity(p, g) == 1.0);

  p = quiet();
  CHECK(topological_connectivity(p, Regime::Omn) == doctest::Approx(std::exp(-0.225)).epsilon(1e-14));
  CHECK(topological_connectivity(p, Regime::Omn) == doctest::Approx(0.7985).epsilon(1e-4));

  NetworkParams alpha2;
  alpha2.alpha = 2.0;
  CHECK_THROWS_AS(topological_connectivity(alpha2, Regime::Dir), std::domain_error);
  CHECK_THROWS_AS(laplace_pt_interference(alpha2, Regime::Dir), std::domain_error);
  CHECK_THROWS_AS(connection_probability(alpha2, Regime::Omn), std::domain_error);
}

TEST_CASE("topological connectivity factors into noise and interference") {
  NetworkParams p;
  for (Regime g : kRegimes) {
    const auto [tp, ts] = effective_beamwidths(p, g);
    const double noise = std::exp(-p.delta * p.sigma2 * std::pow(p.r, p.alpha) * ts * ts / (4 * kPi * kPi * p.p_s));
    const double product = noise * laplace_pt_interference(p, g) * laplace_st_interference(p, g);
    CHECK(topological_connectivity(p, g) == doctest::Approx(product).epsilon(1e-13));
    CHECK(laplace_argument(p, g) == doctest::Approx(p.delta * std::pow(p.r, p.alpha) * ts * ts / (4 * kPi * kPi)));
    (void)tp;
  }
}

TEST_CASE("OmnDir corollaries are the Dir forms at theta_p = 2pi, bit for bit") {
  for (double alpha : {2.5, 3.0, 4.0, 5.0}) {
    NetworkParams p;
    p.alpha = alpha;
    NetworkParams wide = p;
    wide.theta_p = kTwoPi;
    CHECK(spectrum_availability(p, Regime::OmnDir) == spectrum_availability(wide, Regime::Dir));
    CHECK(topological_connectivity_printed(p, Regime::OmnDir) == topological_connectivity(wide, Regime::Dir));
    CHECK(topological_connectivity(p, Regime::OmnDir) == topological_connectivity(wide, Regime::Dir));
  }
}

TEST_CASE("omni topological: reduction vs printed corollary") {
  NetworkParams p;
  CHECK(topological_connectivity(p, Regime::Omn, OmnForm::Reduced) ==
        directional_topological_connectivity(p, kTwoPi, kTwoPi, spectrum_availability(p, Regime::Omn)));
  CHECK(topological_connectivity(p, Regime::Omn, OmnForm::AsPrinted) == topological_connectivity_printed(p, Regime::Omn));

  // The printed form's interference exponent is 2π² times smaller.
  const double noise = p.delta * p.sigma2 * std::pow(p.r, p.alpha) / p.p_s;
  const double reduced = -std::log(topological_connectivity(p, Regime::Omn)) - noise;
  const double printed = -std::log(topological_connectivity_printed(p, Regime::Omn)) - noise;
  CHECK(reduced / printed == doctest::Approx(2 * kPi * kPi).epsilon(1e-9));
}

TEST_CASE("connection probability is the product") {
  NetworkParams p;
  for (Regime g : kRegimes) {
    const ConnectivityBreakdown c = connection_probability(p, g);
    CHECK(c.p_connection == c.p_spectrum * c.p_topological);
    CHECK(c.p_spectrum == spectrum_availability(p, g));
    CHECK(c.p_topological == topological_connectivity(p, g));
    const double printed = connection_probability_printed(p, g);
    const double expected = g == Regime::Omn ? c.p_spectrum * topological_connectivity_printed(p, g) : c.p_connection;
    CHECK(printed == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("connection probability limits and ordering") {
  NetworkParams p = quiet();
  p.sigma2 = 0.0;
  for (Regime g : kRegimes) {
    const ConnectivityBreakdown c = connection_probability(p, g);
    CHECK(c.p_spectrum == 1.0);
    CHECK(c.p_topological == 1.0);
    CHECK(c.p_connection == 1.0);
  }
  NetworkParams dense;
  dense.lambda_p = 1e3;
  for (Regime g : kRegimes) CHECK(connection_probability(dense, g).p_connection < 1e-6);

  NetworkParams paper;
  const double dir = connection_probability(paper, Regime::Dir).p_connection;
  const double omndir = connection_probability(paper, Regime::OmnDir).p_connection;
  const double omn = connection_probability(paper, Regime::Omn).p_connection;
  CHECK(dir > omndir);
  CHECK(omndir > omn);
}

TEST_CASE("probabilities stay in [0, 1] and fall with r, lambda_p and beamwidth") {
  for (double alpha : {2.5, 3.0, 4.0, 5.0}) {
    for (Regime g : kRegimes) {
      NetworkParams p;
      p.alpha = alpha;
      double previous = 2.0;
      for (double r = 0.5; r <= 8.0; r += 0.5) {
        p.r = r;
        const ConnectivityBreakdown c = connection_probability(p, g);
        CHECK(c.p_spectrum >= 0.0);
        CHECK(c.p_spectrum <= 1.0);
        CHECK(c.p_topological >= 0.0);
        CHECK(c.p_topological <= 1.0);
        CHECK(c.p_connection < previous);
        previous = c.p_connection;
      }
      p = {};
      p.alpha = alpha;
      previous = 2.0;
      for (double lp = 0.001; lp <= 0.1; lp *= 1.5) {
        p.lambda_p = lp;
        const double now = connection_probability(p, g).p_connection;
        CHECK(now < previous);
        previous = now;
      }
    }
    NetworkParams p;
    p.alpha = alpha;
    double previous_p = 2.0, previous_s = 2.0;
    for (int k = 1; k <= 18; ++k) {
      NetworkParams a = p, b = p;
      a.theta_p = k * kPi / 9;
      b.theta_s = k * kPi / 9;
      const double by_p = connection_probability(a, Regime::Dir).p_connection;
      const double by_s = connection_probability(b, Regime::Dir).p_connection;
      CHECK(by_p < previous_p);
      CHECK(by_s < previous_s);
      previous_p = by_p;
      previous_s = by_s;
    }
  }
}

TEST_CASE("union area") {
  const double r = 3.0;
  CHECK(union_area(0.0, r) == doctest::Approx(kPi * r * r).epsilon(1e-15));
  CHECK(union_area(r, r) == doctest::Approx((4 * kPi / 3 + std::sqrt(3.0) / 2) * r * r).epsilon(1e-15));
  CHECK(union_area(2 * r, r) == doctest::Approx(2 * kPi * r * r).epsilon(1e-15));
  double previous = 0.0;
  for (double l = 0.0; l <= 2 * r; l += 0.1) {
    const double s = union_area(l, r);
    CHECK(s >= previous);
    previous = s;
  }
  CHECK(kOmnUnionCoefficient == doctest::Approx(kPi + 3 * std::sqrt(3.0) / 4).epsilon(1e-15));
}

TEST_CASE("expected detection area sets the spectrum exponent") {
  for (double alpha : {2.0, 3.0, 5.0}) {
    NetworkParams p;
    p.alpha = alpha;
    for (Regime g : kRegimes) {
      // Dir and OmnDir: two disjoint sectors, each reached only by PRs whose
      // beam points back at the SU (a θ_p/2π fraction of them).
      const double theta_p = effective_beamwidths(p, g).primary;
      const double pair_area =
          g == Regime::Omn ? expected_detection_area(p, g) : 2 * theta_p / kTwoPi * expected_detection_area(p, g);
      CHECK(spectrum_availability(p, g) == doctest::Approx(std::exp(-p.lambda_p * pair_area)).epsilon(1e-12));
    }
  }
}
