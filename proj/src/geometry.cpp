#include "crn/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crn {

double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace detail {

double wrap_angle(double angle) {
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of a tiny negative value can round back up to exactly 2π
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

void throw_bad_beam(double orientation, double beamwidth) {
  if (!std::isfinite(orientation)) {
    throw std::invalid_argument("beam orientation must be finite");
  }
  throw std::invalid_argument("beamwidth must lie in (0, 2π], got " + std::to_string(beamwidth));
}

}  // namespace detail

double angular_distance(double a, double b) {
  const double d = std::fabs(normalize_angle(a) - normalize_angle(b));
  return d > kPi ? kTwoPi - d : d;
}

double bearing(Point2D from, Point2D to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) {
    throw std::domain_error("bearing undefined between coincident points");
  }
  return normalize_angle(std::atan2(dy, dx));
}

double sector_gain(const SectorBeam& beam, double direction) {
  if (beam.is_omni()) return 1.0;
  return angular_distance(direction, beam.orientation()) < 0.5 * beam.beamwidth()
             ? beam.main_lobe_gain()
             : 0.0;
}

bool beam_covers(Point2D source, const SectorBeam& beam, Point2D target) {
  return sector_gain(beam, bearing(source, target)) > 0.0;
}

double received_power(double p_t, double r, double alpha, FadingSample h, double g_t, double g_r) {
  if (!(r > 0.0)) {
    throw std::domain_error("path loss is singular at zero distance");
  }
  return p_t * std::pow(r, -alpha) * h.h * g_t * g_r;
}

Rng make_stream_rng(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser over the (seed, index) pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  std::seed_seq seq{static_cast<std::uint32_t>(z), static_cast<std::uint32_t>(z >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(seed)};
  return Rng(seq);
}

}  // namespace crn
