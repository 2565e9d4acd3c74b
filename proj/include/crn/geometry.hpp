#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace crn {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Rng = std::mt19937_64;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double distance(Point2D a, Point2D b);

namespace detail {
double wrap_angle(double angle);
[[noreturn]] void throw_bad_beam(double orientation, double beamwidth);
}  // namespace detail

/// Wraps any finite angle into [0, 2π).
inline double normalize_angle(double angle) {
  if (angle >= 0.0 && angle < kTwoPi) return angle;
  // exact by Sterbenz, and equal to what fmod would return
  if (angle >= kTwoPi && angle < 2.0 * kTwoPi) return angle - kTwoPi;
  return detail::wrap_angle(angle);
}

/// Shortest angular separation on the circle, in [0, π].
double angular_distance(double a, double b);

/// Direction from `from` to `to` measured from the x-axis, in [0, 2π).
/// Throws std::domain_error when the points coincide.
double bearing(Point2D from, Point2D to);

/// Idealised sector antenna: a single main lobe of uniform gain 2π/beamwidth,
/// nothing outside it. A beamwidth of 2π is an omni-directional antenna.
class SectorBeam {
 public:
  SectorBeam(double orientation, double beamwidth) : orientation_(0.0), beamwidth_(beamwidth) {
    if (!std::isfinite(orientation) || !(beamwidth > 0.0) || beamwidth > kTwoPi) {
      detail::throw_bad_beam(orientation, beamwidth);
    }
    orientation_ = normalize_angle(orientation);
  }

  static SectorBeam omni(double orientation = 0.0) { return {orientation, kTwoPi}; }

  double orientation() const { return orientation_; }
  double beamwidth() const { return beamwidth_; }
  bool is_omni() const { return beamwidth_ >= kTwoPi; }
  double main_lobe_gain() const { return is_omni() ? 1.0 : kTwoPi / beamwidth_; }

  friend bool operator==(const SectorBeam&, const SectorBeam&) = default;

 private:
  double orientation_;
  double beamwidth_;
};

/// Gain of `beam` toward absolute direction `direction`. The lobe is open:
/// a direction exactly on the edge (±beamwidth/2) gets zero gain.
double sector_gain(const SectorBeam& beam, double direction);

/// True iff a beam at `source` radiates toward `target` with nonzero gain.
bool beam_covers(Point2D source, const SectorBeam& beam, Point2D target);

struct FadingSample {
  double h = 1.0;
};

/// Link budget P_t r^-α h G_t G_r. Throws on r <= 0.
double received_power(double p_t, double r, double alpha, FadingSample h, double g_t, double g_r);

/// Uniform on [0, 1) from the top 53 bits of one draw. The standard
/// distributions go through long double here, which dominates trial cost.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Rayleigh power fading: exponential with unit mean.
inline FadingSample sample_fading(Rng& rng) { return {-std::log1p(-uniform01(rng))}; }

/// Seeds an independent generator for stream `index` of a run with master
/// `seed`. The mapping is fixed so results do not depend on scheduling.
Rng make_stream_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace crn
