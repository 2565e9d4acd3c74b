#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "crn/geometry.hpp"
#include "doctest.h"

using namespace crn;

TEST_CASE("sector gain inside, outside, omni") {
  CHECK(sector_gain(SectorBeam(0.0, kPi / 3.0), 0.1) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(sector_gain(SectorBeam(0.0, kPi / 3.0), kPi) == 0.0);
  CHECK(sector_gain(SectorBeam(1.0, kTwoPi), 4.0) == 1.0);
}

TEST_CASE("sector gain wraps around the circle") {
  const SectorBeam beam(kTwoPi - 0.05, 0.2);
  CHECK(sector_gain(beam, 0.02) > 0.0);
  CHECK(sector_gain(beam, -0.1) > 0.0);
  CHECK(sector_gain(beam, 0.06) == 0.0);
  CHECK(beam.orientation() == doctest::Approx(kTwoPi - 0.05));
  CHECK(SectorBeam(-0.5, 1.0).orientation() == doctest::Approx(kTwoPi - 0.5));
}

TEST_CASE("beam_covers") {
  const SectorBeam beam(0.0, kPi / 3.0);
  CHECK(beam_covers({0, 0}, beam, {5, 0}));
  CHECK_FALSE(beam_covers({0, 0}, beam, {-5, 0}));
  CHECK_THROWS_AS(beam_covers({1, 2}, beam, {1, 2}), std::domain_error);

  // bearing of (1,1) is exactly π/4, the edge of a π/2 beam: open boundary
  CHECK_FALSE(beam_covers({0, 0}, SectorBeam(0.0, kPi / 2.0), {1, 1}));
  CHECK(beam_covers({0, 0}, SectorBeam(0.0, kPi / 2.0 + 1e-12), {1, 1}));
}

TEST_CASE("invalid beams are rejected") {
  CHECK_THROWS_AS(SectorBeam(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SectorBeam(0.0, 7.0), std::invalid_argument);
  CHECK_THROWS_AS(SectorBeam(NAN, 1.0), std::invalid_argument);
}

TEST_CASE("received power") {
  CHECK(received_power(6, 1, 3, {1.0}, 1, 1) == doctest::Approx(6.0));
  CHECK(received_power(6, 2, 3, {1.0}, 1, 1) == doctest::Approx(0.75));
  CHECK(received_power(10, 2, 2, {0.5}, 6, 6) == doctest::Approx(45.0));
  CHECK_THROWS_AS(received_power(6, 0, 3, {1.0}, 1, 1), std::domain_error);
}

TEST_CASE("received power is linear in power, fading and gains and decreasing in distance") {
  Rng rng(99);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double p = u(rng), r = u(rng), h = u(rng), gt = u(rng), gr = u(rng), a = 2.0 + 0.4 * u(rng);
    const double base = received_power(p, r, a, {h}, gt, gr);
    CHECK(received_power(2 * p, r, a, {h}, gt, gr) == doctest::Approx(2 * base));
    CHECK(received_power(p, r, a, {3 * h}, gt, gr) == doctest::Approx(3 * base));
    CHECK(received_power(p, r, a, {h}, 0.5 * gt, 4 * gr) == doctest::Approx(2 * base));
    CHECK(received_power(p, r * 1.01, a, {h}, gt, gr) < base);
  }
}

TEST_CASE("sector gain integrates to 2π over the circle") {
  using boost::math::quadrature::gauss_kronrod;
  Rng rng(5);
  std::uniform_real_distribution<double> orient(-10.0, 10.0);
  std::uniform_real_distribution<double> width(0.01, kTwoPi);
  for (int k = 0; k < 50; ++k) {
    const SectorBeam beam(orient(rng), k == 0 ? kTwoPi : width(rng));
    std::vector<double> cuts{0.0, kTwoPi};
    if (!beam.is_omni()) {
      cuts.push_back(normalize_angle(beam.orientation() - beam.beamwidth() / 2));
      cuts.push_back(normalize_angle(beam.orientation() + beam.beamwidth() / 2));
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      total += gauss_kronrod<double, 15>::integrate([&](double t) { return sector_gain(beam, t); }, cuts[c], cuts[c + 1]);
    }
    CHECK(std::fabs(total - kTwoPi) < 1e-9);
  }
}

TEST_CASE("sector gain is rotation equivariant") {
  Rng rng(17);
  std::uniform_real_distribution<double> angle(-20.0, 20.0);
  std::uniform_real_distribution<double> width(0.05, 6.0);
  for (int k = 0; k < 2000; ++k) {
    const double o = angle(rng), w = width(rng), d = angle(rng), shift = angle(rng);
    // skip draws within rounding distance of the lobe edge
    if (std::fabs(angular_distance(d, o) - w / 2) < 1e-9) continue;
    CHECK(sector_gain(SectorBeam(o, w), d) == sector_gain(SectorBeam(o + shift, w), d + shift));
  }
}

TEST_CASE("fading samples are exponential with unit mean") {
  Rng rng(2024);
  const int n = 1'000'000;
  double sum = 0.0;
  int above_one = 0;
  double lowest = 1.0;
  for (int k = 0; k < n; ++k) {
    const double h = sample_fading(rng).h;
    lowest = std::min(lowest, h);
    sum += h;
    above_one += h > 1.0;
  }
  CHECK(lowest >= 0.0);
  CHECK(std::fabs(sum / n - 1.0) < 0.01);
  CHECK(std::fabs(static_cast<double>(above_one) / n - std::exp(-1.0)) < 0.005);
}

TEST_CASE("fading streams are reproducible") {
  Rng a = make_stream_rng(42, 7);
  Rng b = make_stream_rng(42, 7);
  Rng c = make_stream_rng(42, 8);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const double x = sample_fading(a).h;
    CHECK(x == sample_fading(b).h);
    differs |= x != sample_fading(c).h;
  }
  CHECK(differs);
}
