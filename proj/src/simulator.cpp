#include "crn/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crn {

std::string_view to_string(StActivityMode mode) {
  return mode == StActivityMode::Simulated ? "simulated" : "thinned";
}

std::string_view to_string(LinkDirectionMode mode) {
  return mode == LinkDirectionMode::OneWay ? "one_way" : "bidirectional";
}

StActivityMode parse_st_activity_mode(std::string_view text) {
  if (text == "simulated" || text == "Simulated") return StActivityMode::Simulated;
  if (text == "thinned" || text == "Thinned") return StActivityMode::Thinned;
  throw std::invalid_argument("unknown st_activity_mode '" + std::string(text) + "'");
}

LinkDirectionMode parse_link_direction_mode(std::string_view text) {
  if (text == "one_way" || text == "OneWay") return LinkDirectionMode::OneWay;
  if (text == "bidirectional" || text == "Bidirectional") return LinkDirectionMode::Bidirectional;
  throw std::invalid_argument("unknown link_direction_mode '" + std::string(text) + "'");
}

void SimulationConfig::validate() const {
  if (!(outer_window.width > 0.0 && outer_window.height > 0.0)) {
    throw std::invalid_argument("outer_window must have positive extent");
  }
  if (!(inner_window.width > 0.0 && inner_window.height > 0.0) || inner_window.width > outer_window.width ||
      inner_window.height > outer_window.height) {
    throw std::invalid_argument("inner_window must have positive extent and fit inside outer_window");
  }
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (!(primary_link_radius >= 0.0)) throw std::invalid_argument("primary_link_radius must be >= 0");
  if (interference_truncation_radius && !(*interference_truncation_radius > 0.0)) {
    throw std::invalid_argument("interference_truncation_radius must be > 0");
  }
}

std::vector<Point2D> sample_ppp(double density, Window window, Rng& rng) {
  if (!(density >= 0.0)) throw std::invalid_argument("PPP density must be non-negative");
  std::vector<Point2D> points;
  if (density == 0.0) return points;
  std::poisson_distribution<std::uint64_t> count(density * window.area());
  const auto n = count(rng);
  points.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double x = window.width * (uniform01(rng) - 0.5);
    points.push_back({x, window.height * (uniform01(rng) - 0.5)});
  }
  return points;
}

namespace {

// Refills `dep` in place so trial loops can reuse its buffers.
void fill_deployment(const NetworkParams& params, const SimulationConfig& config, Regime regime, Rng& rng,
                     Deployment& dep) {
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  const auto angle = [&rng] { return kTwoPi * uniform01(rng); };

  dep.pts.clear();
  dep.prs.clear();
  dep.sts.clear();
  const Window outer = config.outer_window;
  const std::uint64_t n = params.lambda_p > 0.0
                              ? std::poisson_distribution<std::uint64_t>(params.lambda_p * outer.area())(rng)
                              : 0;
  dep.pts.reserve(n);
  dep.prs.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    const Point2D pt{outer.width * (uniform01(rng) - 0.5), outer.height * (uniform01(rng) - 0.5)};
    dep.pts.push_back({pt, SectorBeam(angle(), theta_p)});
    // uniform in the disc by rejection from the enclosing square
    double u = 0.0, v = 0.0;
    do {
      u = 2.0 * uniform01(rng) - 1.0;
      v = 2.0 * uniform01(rng) - 1.0;
    } while (u * u + v * v >= 1.0);
    const Point2D pr{pt.x + config.primary_link_radius * u, pt.y + config.primary_link_radius * v};
    dep.prs.push_back({pr, SectorBeam(angle(), theta_p)});
  }

  for (const Point2D& st : sample_ppp(params.lambda_s, config.inner_window, rng)) {
    dep.sts.push_back({st, SectorBeam(angle(), theta_s), false});
  }

  const Point2D su_i{-0.5 * params.r, 0.0};
  const Point2D su_j{0.5 * params.r, 0.0};
  dep.su_i = {su_i, SectorBeam(bearing(su_i, su_j), theta_s)};
  dep.su_j = {su_j, SectorBeam(bearing(su_j, su_i), theta_s)};
}

}  // namespace

Deployment build_deployment(const NetworkParams& params, const SimulationConfig& config, Regime regime, Rng& rng) {
  Deployment dep;
  fill_deployment(params, config, regime, rng, dep);
  return dep;
}

PointGrid::PointGrid(std::span<const Station> stations, Window window, double cell_size)
    : stations_(stations), cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("grid cell size must be positive");
  // Displaced receivers may fall slightly outside the sampling window.
  double half_w = 0.5 * window.width;
  double half_h = 0.5 * window.height;
  for (const Station& s : stations) {
    half_w = std::max(half_w, std::fabs(s.position.x));
    half_h = std::max(half_h, std::fabs(s.position.y));
  }
  x0_ = -half_w;
  y0_ = -half_h;
  nx_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * half_w / cell_size)));
  ny_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * half_h / cell_size)));
  // Very fine grids over large windows are not worth the memory.
  while (nx_ * ny_ > 4 * stations.size() + 64) {
    cell_size_ *= 2.0;
    nx_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * half_w / cell_size_)));
    ny_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * half_h / cell_size_)));
  }

  const auto cell_of = [&](Point2D p) {
    const auto cx = std::min(nx_ - 1, static_cast<std::size_t>((p.x - x0_) / cell_size_));
    const auto cy = std::min(ny_ - 1, static_cast<std::size_t>((p.y - y0_) / cell_size_));
    return cy * nx_ + cx;
  };
  cell_start_.assign(nx_ * ny_ + 1, 0);
  for (const Station& s : stations) ++cell_start_[cell_of(s.position) + 1];
  for (std::size_t c = 0; c < nx_ * ny_; ++c) cell_start_[c + 1] += cell_start_[c];
  members_.resize(stations.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t k = 0; k < stations.size(); ++k) members_[fill[cell_of(stations[k].position)]++] = k;
}

std::vector<std::size_t> PointGrid::near(Point2D centre, double radius) const {
  std::vector<std::size_t> found;
  const auto clamp_cell = [](double v, std::size_t n) {
    if (v < 0.0) return std::size_t{0};
    return std::min(n - 1, static_cast<std::size_t>(v));
  };
  const std::size_t cx0 = clamp_cell((centre.x - radius - x0_) / cell_size_, nx_);
  const std::size_t cx1 = clamp_cell((centre.x + radius - x0_) / cell_size_, nx_);
  const std::size_t cy0 = clamp_cell((centre.y - radius - y0_) / cell_size_, ny_);
  const std::size_t cy1 = clamp_cell((centre.y + radius - y0_) / cell_size_, ny_);
  const double r2 = radius * radius;
  for (std::size_t cy = cy0; cy <= cy1; ++cy) {
    for (std::size_t cx = cx0; cx <= cx1; ++cx) {
      const std::size_t c = cy * nx_ + cx;
      for (std::size_t m = cell_start_[c]; m < cell_start_[c + 1]; ++m) {
        const Point2D p = stations_[members_[m]].position;
        const double dx = p.x - centre.x;
        const double dy = p.y - centre.y;
        if (dx * dx + dy * dy <= r2) found.push_back(members_[m]);
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

double detection_reach(const NetworkParams& params, double pr_beamwidth, double su_beamwidth) {
  const double g_max = SectorBeam(0.0, pr_beamwidth).main_lobe_gain() * SectorBeam(0.0, su_beamwidth).main_lobe_gain();
  // widened slightly so rounding never drops a PR the brute-force scan would test
  return std::pow(kFadingTailCutoff * params.p_d * g_max / params.eta, 1.0 / params.alpha) * (1.0 + 1e-9);
}

namespace {

/// Everything a trial needs that does not change between trials.
struct TrialContext {
  const NetworkParams& params;
  const SimulationConfig& config;
  Regime regime;
  double reach;
  double thinned_activity;
};

TrialContext make_context(const NetworkParams& params, const SimulationConfig& config, Regime regime) {
  params.validate();
  config.validate();
  const auto [theta_p, theta_s] = effective_beamwidths(params, regime);
  const double thinned =
      config.st_activity_mode == StActivityMode::Thinned ? spectrum_availability(params, regime) : 0.0;
  return {params, config, regime, detection_reach(params, theta_p, theta_s), thinned};
}

// False when the ST's signal can never land at `rx`: the gain product is zero
// or the link is beyond the truncation radius.
bool can_interfere(const SecondaryStation& st, const Station& rx, const SimulationConfig& config) {
  const double d = distance(st.position, rx.position);
  if (d == 0.0) return true;
  if (config.interference_truncation_radius && d > *config.interference_truncation_radius) return false;
  if (st.beam.is_omni() && rx.beam.is_omni()) return true;
  const double toward_rx = bearing(st.position, rx.position);
  return sector_gain(st.beam, toward_rx) * sector_gain(rx.beam, toward_rx + kPi) > 0.0;
}

TrialOutcome run_trial(const TrialContext& ctx, Rng& rng) {
  const NetworkParams& params = ctx.params;
  thread_local Deployment dep;
  fill_deployment(params, ctx.config, ctx.regime, rng, dep);
  const auto fading = [&rng] { return sample_fading(rng); };

  const PointGrid grid(dep.prs, ctx.config.outer_window, ctx.reach);
  const auto detect = [&](const Station& su) {
    return check_spectrum_available(su, dep.prs, grid, ctx.reach, params, fading);
  };

  TrialOutcome out;
  const DetectionResult at_i = detect(dep.su_i);
  const DetectionResult at_j = detect(dep.su_j);
  out.detecting_pr_count = at_i.detecting + at_j.detecting;
  out.spectrum_available = at_i.available && at_j.available;

  if (ctx.config.st_activity_mode == StActivityMode::Thinned) {
    for (SecondaryStation& st : dep.sts) st.active = uniform01(rng) < ctx.thinned_activity;
  } else {
    // Each interfering ST talks to a partner SR at distance r along its beam;
    // the ST is active only if that pair has spectrum. Only STs that can
    // reach a receiver are resolved, on their own stream so the outcome does
    // not depend on how many were skipped.
    Rng activity_rng(rng());
    const auto activity_fading = [&activity_rng] { return sample_fading(activity_rng); };
    const bool both_ways = ctx.config.link_direction_mode == LinkDirectionMode::Bidirectional;
    for (SecondaryStation& st : dep.sts) {
      if (!can_interfere(st, dep.su_j, ctx.config) && !(both_ways && can_interfere(st, dep.su_i, ctx.config))) {
        continue;
      }
      const double phi = st.beam.orientation();
      const Station tx{st.position, st.beam};
      const Station rx{{st.position.x + params.r * std::cos(phi), st.position.y + params.r * std::sin(phi)},
                       SectorBeam(phi + kPi, st.beam.beamwidth())};
      st.active = check_spectrum_available(tx, dep.prs, grid, ctx.reach, params, activity_fading).available &&
                  check_spectrum_available(rx, dep.prs, grid, ctx.reach, params, activity_fading).available;
    }
  }

  const auto truncation = ctx.config.interference_truncation_radius;
  out.sinr = compute_sinr(dep.su_i, dep.su_j, dep, params, truncation, fading);
  if (ctx.config.link_direction_mode == LinkDirectionMode::Bidirectional) {
    out.sinr = std::min(out.sinr, compute_sinr(dep.su_j, dep.su_i, dep, params, truncation, fading));
  }
  out.topologically_connected = out.sinr >= params.delta;
  out.connected = out.spectrum_available && out.topologically_connected;
  return out;
}

struct Tally {
  std::uint64_t spectrum = 0;
  std::uint64_t topological = 0;
  std::uint64_t connected = 0;
};

double standard_error(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

EstimateResult finish(const Tally& t, std::uint64_t n) {
  EstimateResult out;
  const double omega = static_cast<double>(n);
  out.p_spectrum_hat = static_cast<double>(t.spectrum) / omega;
  out.p_topological_hat = static_cast<double>(t.topological) / omega;
  out.p_connection_hat = static_cast<double>(t.connected) / omega;
  out.se_spectrum = standard_error(out.p_spectrum_hat, n);
  out.se_topological = standard_error(out.p_topological_hat, n);
  out.se_connection = standard_error(out.p_connection_hat, n);
  out.realizations_used = n;
  return out;
}

/// Runs body(trial, rng) for every trial on an OpenMP team. Exceptions are
/// captured and the first one rethrown after the loop.
template <class Body>
void parallel_trials(std::uint64_t count, std::uint64_t seed, int workers, Body&& body) {
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(count);
#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
#endif
  for (std::int64_t k = 0; k < n; ++k) {
    try {
      Rng rng = make_stream_rng(seed, static_cast<std::uint64_t>(k));
      body(static_cast<std::uint64_t>(k), rng);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(crn_trial_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  (void)workers;
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

TrialOutcome run_trial(const NetworkParams& params, const SimulationConfig& config, Regime regime, Rng& rng) {
  return run_trial(make_context(params, config, regime), rng);
}

EstimateResult estimate(const NetworkParams& params, const SimulationConfig& config, Regime regime, int workers) {
  const TrialContext ctx = make_context(params, config, regime);
  std::vector<unsigned char> outcome(config.realizations);
  parallel_trials(config.realizations, config.seed, workers, [&](std::uint64_t k, Rng& rng) {
    const TrialOutcome o = run_trial(ctx, rng);
    outcome[k] = static_cast<unsigned char>(o.spectrum_available | (o.topologically_connected << 1) | (o.connected << 2));
  });
  Tally t;
  for (unsigned char bits : outcome) {
    t.spectrum += bits & 1u;
    t.topological += (bits >> 1) & 1u;
    t.connected += (bits >> 2) & 1u;
  }
  return finish(t, config.realizations);
}

EstimateResult estimate_serial(const NetworkParams& params, const SimulationConfig& config, Regime regime) {
  const TrialContext ctx = make_context(params, config, regime);
  Tally t;
  for (std::uint64_t k = 0; k < config.realizations; ++k) {
    Rng rng = make_stream_rng(config.seed, k);
    const TrialOutcome o = run_trial(ctx, rng);
    t.spectrum += o.spectrum_available;
    t.topological += o.topologically_connected;
    t.connected += o.connected;
  }
  return finish(t, config.realizations);
}

ProportionEstimate estimate_omn_spectrum_l_averaged(const NetworkParams& params, const SimulationConfig& config,
                                                    int workers) {
  params.validate();
  config.validate();
  const double one_disc_reach = detection_reach(params, kTwoPi, kTwoPi);
  std::vector<unsigned char> clear(config.realizations);
  parallel_trials(config.realizations, config.seed, workers, [&](std::uint64_t k, Rng& rng) {
    const auto angle = [](Rng& g) { return kTwoPi * uniform01(g); };
    const auto unit = [](Rng& g) { return uniform01(g); };
    std::vector<Station> prs;
    for (const Point2D& p : sample_ppp(params.lambda_p, config.outer_window, rng)) {
      prs.push_back({p, SectorBeam::omni()});
    }
    // The union of two discs of radius R whose centres are l <= R apart
    // lies within 2R of the first centre.
    const PointGrid grid(prs, config.outer_window, 2.0 * one_disc_reach);
    const Point2D su{0.0, 0.0};
    bool available = true;
    for (std::size_t idx : grid.near(su, 2.0 * one_disc_reach)) {
      const Point2D pr = prs[idx].position;
      const double h = sample_fading(rng).h;
      const double radius = std::pow(params.p_d * h / params.eta, 1.0 / params.alpha);
      const double l = radius * std::sqrt(unit(rng));
      const double psi = angle(rng);
      const Point2D partner{l * std::cos(psi), l * std::sin(psi)};
      if (distance(pr, su) < radius || distance(pr, partner) < radius) available = false;
    }
    clear[k] = available;
  });
  std::uint64_t hits = 0;
  for (unsigned char c : clear) hits += c;
  ProportionEstimate out;
  out.realizations_used = config.realizations;
  out.p_hat = static_cast<double>(hits) / static_cast<double>(config.realizations);
  out.standard_error = standard_error(out.p_hat, config.realizations);
  return out;
}

}  // namespace crn
