#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "crn/analytics.hpp"
#include "crn/geometry.hpp"

namespace crn {

/// Axis-aligned rectangle centred on the origin.
struct Window {
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
  bool contains(Point2D p) const { return std::fabs(p.x) <= 0.5 * width && std::fabs(p.y) <= 0.5 * height; }
};

enum class StActivityMode { Simulated, Thinned };
enum class LinkDirectionMode { OneWay, Bidirectional };

std::string_view to_string(StActivityMode mode);
std::string_view to_string(LinkDirectionMode mode);
StActivityMode parse_st_activity_mode(std::string_view text);
LinkDirectionMode parse_link_direction_mode(std::string_view text);

struct SimulationConfig {
  Window outer_window{1200.0, 1200.0};
  Window inner_window{1000.0, 1000.0};
  std::uint64_t realizations = 3000;
  std::uint64_t seed = 1;
  double primary_link_radius = 10.0;
  StActivityMode st_activity_mode = StActivityMode::Simulated;
  LinkDirectionMode link_direction_mode = LinkDirectionMode::OneWay;
  std::optional<double> interference_truncation_radius;

  void validate() const;
};

struct Station {
  Point2D position;
  SectorBeam beam;
};

struct SecondaryStation {
  Point2D position;
  SectorBeam beam;
  bool active = false;
};

/// One network snapshot. prs[k] is the receiver of pts[k]. su_i transmits
/// to su_j; their beams face each other.
struct Deployment {
  std::vector<Station> pts;
  std::vector<Station> prs;
  std::vector<SecondaryStation> sts;
  Station su_i{{}, SectorBeam::omni()};
  Station su_j{{}, SectorBeam::omni()};
};

struct TrialOutcome {
  bool spectrum_available = false;
  bool topologically_connected = false;
  bool connected = false;
  double sinr = 0.0;
  std::size_t detecting_pr_count = 0;
};

struct EstimateResult {
  double p_spectrum_hat = 0.0;
  double p_topological_hat = 0.0;
  double p_connection_hat = 0.0;
  double se_spectrum = 0.0;
  double se_topological = 0.0;
  double se_connection = 0.0;
  std::uint64_t realizations_used = 0;

  friend bool operator==(const EstimateResult&, const EstimateResult&) = default;
};

struct ProportionEstimate {
  double p_hat = 0.0;
  double standard_error = 0.0;
  std::uint64_t realizations_used = 0;
};

/// Fading draws whose blocking probability P(h > t) = e^-t is below e^-40
/// are skipped without consuming randomness.
inline constexpr double kFadingTailCutoff = 40.0;

// ---------------------------------------------------------------------------
// Sampling

/// Homogeneous Poisson point process on `window`.
std::vector<Point2D> sample_ppp(double density, Window window, Rng& rng);

/// Draws PTs over the outer window with their receivers displaced uniformly
/// in a disc, interfering STs over the inner window, and the reference pair
/// at the inner-window centre. All orientations are uniform; STs start inactive.
Deployment build_deployment(const NetworkParams& params, const SimulationConfig& config, Regime regime, Rng& rng);

// ---------------------------------------------------------------------------
// Per-link kernels

/// Uniform grid over station positions for radius queries.
class PointGrid {
 public:
  PointGrid(std::span<const Station> stations, Window window, double cell_size);

  /// Indices of all stations within `radius` of `centre`, ascending.
  std::vector<std::size_t> near(Point2D centre, double radius) const;

 private:
  std::span<const Station> stations_;
  double cell_size_;
  double x0_;
  double y0_;
  std::size_t nx_;
  std::size_t ny_;
  std::vector<std::size_t> cell_start_;
  std::vector<std::size_t> members_;
};

/// Distance beyond which no PR can silence an SU with these beamwidths.
double detection_reach(const NetworkParams& params, double pr_beamwidth, double su_beamwidth);

struct DetectionResult {
  bool available = true;
  std::size_t detecting = 0;
};

namespace detail {

// Cheap vector test that rejects directions well outside a lobe before the
// exact angular test runs. The margin keeps it from ever rejecting a
// direction the exact test would accept.
struct LobeFilter {
  explicit LobeFilter(const SectorBeam& beam)
      : omni(beam.is_omni()),
        ux(std::cos(beam.orientation())),
        uy(std::sin(beam.orientation())),
        cos_half(std::cos(0.5 * beam.beamwidth())) {}

  bool clearly_outside(double dx, double dy, double d) const {
    return !omni && dx * ux + dy * uy < (cos_half - 1e-9) * d;
  }

  bool omni;
  double ux, uy, cos_half;
};

template <class Fading>
bool pr_blocks(const Station& pr, const Station& su, const LobeFilter& su_lobe, const NetworkParams& params,
               Fading& fading) {
  const double dx = pr.position.x - su.position.x;
  const double dy = pr.position.y - su.position.y;
  const double d = std::sqrt(dx * dx + dy * dy);
  if (d == 0.0) return true;
  double g = 1.0;
  if (!pr.beam.is_omni() || !su.beam.is_omni()) {
    if (su_lobe.clearly_outside(dx, dy, d)) return false;
    const double toward_su = normalize_angle(std::atan2(-dy, -dx));
    g = sector_gain(pr.beam, toward_su) * sector_gain(su.beam, toward_su + kPi);
    if (g == 0.0) return false;
  }
  const double threshold = params.eta * std::pow(d, params.alpha) / (params.p_d * g);
  if (threshold > kFadingTailCutoff) return false;
  return fading().h > threshold;
}

}  // namespace detail

/// Whether `pr`'s preamble, with one fresh fading draw, exceeds η at `su`.
/// A PR sitting on the SU always blocks.
template <class Fading>
bool pr_blocks(const Station& pr, const Station& su, const NetworkParams& params, Fading&& fading) {
  return detail::pr_blocks(pr, su, detail::LobeFilter(su.beam), params, fading);
}

/// Detect-and-avoid test for one SU against every PR (brute force).
template <class Fading>
DetectionResult check_spectrum_available(const Station& su, std::span<const Station> prs, const NetworkParams& params,
                                         Fading&& fading) {
  const detail::LobeFilter lobe(su.beam);
  DetectionResult out;
  for (const Station& pr : prs) {
    if (detail::pr_blocks(pr, su, lobe, params, fading)) ++out.detecting;
  }
  out.available = out.detecting == 0;
  return out;
}

/// Same test restricted to PRs the grid returns within reach. Visits PRs in
/// index order, so it consumes randomness exactly like the brute-force form.
template <class Fading>
DetectionResult check_spectrum_available(const Station& su, std::span<const Station> prs, const PointGrid& grid,
                                         double reach, const NetworkParams& params, Fading&& fading) {
  const detail::LobeFilter lobe(su.beam);
  DetectionResult out;
  for (std::size_t k : grid.near(su.position, reach)) {
    if (detail::pr_blocks(prs[k], su, lobe, params, fading)) ++out.detecting;
  }
  out.available = out.detecting == 0;
  return out;
}

namespace detail {

// d^-α from the squared distance, skipping pow for the common exponents.
inline double path_gain_sq(double d2, double alpha) {
  if (alpha == 3.0) return 1.0 / (d2 * std::sqrt(d2));
  if (alpha == 4.0) return 1.0 / (d2 * d2);
  if (alpha == 5.0) return 1.0 / (d2 * d2 * std::sqrt(d2));
  return std::pow(d2, -0.5 * alpha);
}

template <class Fading>
double interference_from(const Station& rx, const LobeFilter& rx_lobe, Point2D position, const SectorBeam& beam,
                         double power, const NetworkParams& params, std::optional<double> truncation,
                         Fading& fading) {
  const double dx = position.x - rx.position.x;
  const double dy = position.y - rx.position.y;
  const double d2 = dx * dx + dy * dy;
  if (d2 == 0.0) throw std::domain_error("interferer coincides with receiver");
  if (truncation && d2 > *truncation * *truncation) return 0.0;
  double g = 1.0;
  if (!rx.beam.is_omni() || !beam.is_omni()) {
    if (rx_lobe.clearly_outside(dx, dy, std::sqrt(d2))) return 0.0;
    const double toward_tx = normalize_angle(std::atan2(dy, dx));
    g = sector_gain(rx.beam, toward_tx) * sector_gain(beam, toward_tx + kPi);
    if (g == 0.0) return 0.0;
  }
  return power * path_gain_sq(d2, params.alpha) * fading().h * g;
}

}  // namespace detail

/// SINR at `rx` for a transmission from `tx`: PT interference from every PT,
/// ST interference from active STs, fresh fading per link.
template <class Fading>
double compute_sinr(const Station& tx, const Station& rx, const Deployment& deployment, const NetworkParams& params,
                    std::optional<double> truncation, Fading&& fading) {
  const double r = distance(tx.position, rx.position);
  const double toward_rx = bearing(tx.position, rx.position);
  const double signal = received_power(params.p_s, r, params.alpha, fading(), sector_gain(tx.beam, toward_rx),
                                       sector_gain(rx.beam, toward_rx + kPi));
  const detail::LobeFilter lobe(rx.beam);
  double interference = 0.0;
  for (const Station& pt : deployment.pts) {
    interference += detail::interference_from(rx, lobe, pt.position, pt.beam, params.p_p, params, truncation, fading);
  }
  for (const SecondaryStation& st : deployment.sts) {
    if (!st.active) continue;
    interference +=
        detail::interference_from(rx, lobe, st.position, st.beam, params.p_s, params, truncation, fading);
  }
  return signal / (interference + params.sigma2);
}

// ---------------------------------------------------------------------------
// Trials and estimators

/// One realization: deployment, detect-and-avoid for both SUs, ST activity,
/// SINR test.
TrialOutcome run_trial(const NetworkParams& params, const SimulationConfig& config, Regime regime, Rng& rng);

/// Monte Carlo estimate over config.realizations trials, parallelised with
/// OpenMP. `workers` <= 0 uses the OpenMP default. Results are identical for
/// any worker count.
EstimateResult estimate(const NetworkParams& params, const SimulationConfig& config, Regime regime, int workers = 0);

/// Single-threaded reference for `estimate`.
EstimateResult estimate_serial(const NetworkParams& params, const SimulationConfig& config, Regime regime);

/// Omni spectrum availability under the l-averaged union-area model: every
/// PR carries its own fading and its own pair distance l drawn with density
/// 2l/R_o², so the silencing region is the two-disc union of the closed form.
ProportionEstimate estimate_omn_spectrum_l_averaged(const NetworkParams& params, const SimulationConfig& config,
                                                    int workers = 0);

}  // namespace crn
