#pragma once

#include <string_view>

#include "crn/geometry.hpp"

namespace crn {

/// Antenna deployment of the network. Omn: everything omni-directional;
/// OmnDir: omni primaries, sector secondaries; Dir: sector antennas on both.
enum class Regime { Omn, OmnDir, Dir };

std::string_view to_string(Regime regime);
/// Accepts "omn", "omndir", "dir" (case-insensitive). Throws std::invalid_argument.
Regime parse_regime(std::string_view text);

/// Scalar model parameters. Defaults are the reference evaluation point:
/// P_d=10, P_p=8, P_s=6, η=0.05, σ²=0.01, δ=5, λ_s=0.0002, λ_p=0.02,
/// α=3, θ_p=θ_s=π/3, r=3.
struct NetworkParams {
  double lambda_p = 0.02;   // primary density (per unit area)
  double lambda_s = 0.0002; // secondary density
  double p_d = 10.0;        // detection preamble power
  double p_p = 8.0;         // primary transmit power
  double p_s = 6.0;         // secondary transmit power
  double eta = 0.05;        // detection threshold
  double sigma2 = 0.01;     // noise power
  double delta = 5.0;       // SINR threshold
  double alpha = 3.0;       // path-loss exponent
  double theta_p = kPi / 3.0;
  double theta_s = kPi / 3.0;
  double r = 3.0;           // reference pair separation

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

struct Beamwidths {
  double primary;
  double secondary;
};

/// Beamwidths after the regime has forced omni antennas where it applies.
Beamwidths effective_beamwidths(const NetworkParams& params, Regime regime);

struct ConnectivityBreakdown {
  double p_spectrum = 0.0;
  double p_topological = 0.0;
  double p_connection = 0.0;
};

/// Selects how the omni-only topological closed form is evaluated.
/// Reduced substitutes θ_p = θ_s = 2π into the general directional
/// expression; AsPrinted uses the published omni corollary verbatim, which
/// lacks a 2π² factor on both interference terms.
enum class OmnForm { Reduced, AsPrinted };

/// Largest SU–PR distance at which a preamble with fading `h` still exceeds η.
double detection_range(Regime regime, const NetworkParams& params, FadingSample h);

/// Sector-detection spectrum availability for arbitrary beamwidths. Used for
/// Dir directly and for OmnDir with θ_p = 2π.
double directional_spectrum_availability(double lambda_p, double p_d, double eta, double alpha,
                                         double theta_p, double theta_s);

/// Probability that neither SU of a pair is silenced by a primary receiver.
double spectrum_availability(const NetworkParams& params, Regime regime);

/// Density of active (non-silenced) secondary transmitters.
double thinned_su_density(const NetworkParams& params, Regime regime);

/// b = δ r^α / G_s², the Laplace argument scale for the SINR test.
double laplace_argument(const NetworkParams& params, Regime regime);

/// Closed-form Laplace transform of primary interference at b/P_s.
double laplace_pt_interference(const NetworkParams& params, Regime regime);
/// Closed-form Laplace transform of active-ST interference at b/P_s.
double laplace_st_interference(const NetworkParams& params, Regime regime);

/// General topological connectivity evaluated at given beamwidths, with the
/// active-ST thinning factor supplied by the caller.
double directional_topological_connectivity(const NetworkParams& params, double theta_p,
                                            double theta_s, double p_spectrum);

/// P[SINR >= δ] at the receiving SU. Requires α > 2.
double topological_connectivity(const NetworkParams& params, Regime regime,
                                OmnForm omn_form = OmnForm::Reduced);

/// Literal transcriptions of the published per-regime topological formulas
/// (the Dir form, the OmnDir corollary, the omni corollary).
double topological_connectivity_printed(const NetworkParams& params, Regime regime);

/// p_connection is exactly p_spectrum * p_topological.
ConnectivityBreakdown connection_probability(const NetworkParams& params, Regime regime,
                                             OmnForm omn_form = OmnForm::Reduced);

/// Literal transcriptions of the published single-exponential connection
/// probabilities. The omni one follows the printed corollary.
double connection_probability_printed(const NetworkParams& params, Regime regime);

/// Area of the union of two discs of radius `radius` whose centres are `l` apart (l <= 2R).
double union_area(double l, double radius);

/// The constant π + 3√3/4 multiplying R² in the l-averaged union area.
inline constexpr double kOmnUnionCoefficient = kPi + 3.0 * 1.7320508075688772 / 4.0;

/// Fading-averaged detection area: a single SU's sector for Dir/OmnDir, the
/// l-averaged two-disc union for Omn.
double expected_detection_area(const NetworkParams& params, Regime regime);

}  // namespace crn
