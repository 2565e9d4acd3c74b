#pragma once

#include <stdexcept>
#include <string>

#include "crn/analytics.hpp"

// Numerical re-derivations of the closed forms. Nothing here calls the
// closed-form expressions; each quantity is rebuilt from its defining
// integral over the actual sector-gain geometry.

namespace crn {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureTolerance {
  double absolute = 1e-10;
  double relative = 1e-8;
};

/// Laplace transform E[exp(-s I)] of the shot-noise interference seen by a
/// receiver whose sector points along the x-axis, from a Poisson field of
/// density `density` of transmitters with i.i.d. uniform orientations and unit
/// mean Rayleigh fading. The field contributes s * P * h * G_rx * G_tx * d^-α;
/// `scaled_power` is s * P. Integrates over receiver bearing, transmitter
/// orientation and distance.
double laplace_shot_noise_numeric(double density, double scaled_power, double rx_beamwidth, double tx_beamwidth,
                                  double alpha, QuadratureTolerance tol = {});

/// PT interference transform at b/P_s, by quadrature.
double laplace_pt_interference_numeric(const NetworkParams& params, Regime regime);
/// Active-ST interference transform at b/P_s, by quadrature.
double laplace_st_interference_numeric(const NetworkParams& params, Regime regime);

/// ∫₀^R S_o(l) f_l(l) dl with f_l(l) = 2l/R².
double omn_union_area_numeric(double radius);

/// Fading-averaged detection area by quadrature over h.
double expected_detection_area_numeric(const NetworkParams& params, Regime regime);

/// Omni spectrum availability for a pair at fixed separation `l`, with
/// independent fading on every PR-SU link. Diagnostic counterpart of the
/// l-averaged closed form, and what the simulator measures.
double omn_spectrum_fixed_distance(const NetworkParams& params, double l);

/// Sector spectrum availability for the beam-locked pair at separation r,
/// with independent fading on every PR-SU link. Unlike the closed form, a PR
/// lying in both SU beams is counted once: the exponent is
/// λ_p (2 m - o), where m is the mean blocking mass of one SU and o the mass
/// of PRs that would block both. Dir and OmnDir only; needs θ_s < π so that
/// the facing beams overlap in a convex region.
double sector_pair_spectrum_numeric(const NetworkParams& params, Regime regime);

}  // namespace crn
