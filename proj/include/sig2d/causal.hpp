// sig2d - null directions, Killing causal character, stationary stripes,
// causal trapping experiments

#ifndef SIG2D_CAUSAL_HPP_
#define SIG2D_CAUSAL_HPP_

#include <cstdint>
#include <optional>
#include <random>

#include "sig2d/dynamics.hpp"

namespace sig2d {

struct NullSlope {
  bool vertical = false;  // dx = 0 cone leg
  double value = 0.0;     // dt/dx when not vertical
};

// The two null directions as dt/dx slopes, ascending; a vertical leg sorts
// last. Throws on non-Lorentzian points.
std::pair<NullSlope, NullSlope> null_slopes(const MetricField& m, const ChartPoint& p);

// Unit (Euclidean) null direction vectors at p, same order as the slopes.
std::pair<TangentVector, TangentVector> null_directions(const MetricField& m,
                                                        const ChartPoint& p);

// Closed-form null curves of the rotating metric (angle rate pi):
// branch 1: t(x) = -(1/pi) log|sin(pi x) + cos(pi x)| + C
// branch 2: t(x) = -(1/pi) log|cos(pi x) - sin(pi x)| + C
double null_curve_closed_form(int branch, double x, double C);

// Slope field dt/dx of the given branch (rotating metric, rate pi).
double null_branch_slope(int branch, double x);

enum class CausalCharacter { Timelike, Null, Spacelike };

struct KillingCharacter {
  CausalCharacter character;
  double value;  // g(d/dt, d/dt) = -cos(2 pi x)
};

// Causal character of the Killing field d/dt of the rotating metric (rate pi).
KillingCharacter killing_character(double x, double tol = 1e-12);

struct StripeId {
  int k;
  double x_lo, x_hi;  // ((4k-1)/4, (4k+1)/4)
};

// Stationary stripe containing x, if x lies strictly inside one.
std::optional<StripeId> stripe_of(double x);

enum class DirectionKind { Timelike, Null, Spacelike };

// Random direction at p of the requested causal kind, future-directed with
// respect to the orientation field (g(V_orient, v) < 0). Timelike draws are
// uniform in the cone-interior mixing parameter between the two null legs.
TangentVector sample_causal_direction(const MetricField& m, const ChartPoint& p,
                                      std::mt19937_64& rng, DirectionKind kind,
                                      const VectorField& orientation);

enum class CurveMix { GeodesicsOnly, PolylinesOnly, Mixed };

struct TrappingOptions {
  int n_curves = 200;
  double lambda_max = 10.0;
  double dlambda = kDefaultGeodesicStep;
  double poly_dlambda = 0.05;  // straight-segment length of polyline curves
  double margin = 1e-6;        // escape margin inside the stripe boundary
  double t_lo = -1.0, t_hi = 1.0;  // launch window in t
  std::uint64_t seed = 1;
  CurveMix mix = CurveMix::Mixed;
  DirectionKind kind = DirectionKind::Timelike;  // Spacelike gives the control run
};

struct TrappingReport {
  int k = 0;
  int n_curves = 0;
  int n_escaped = 0;
  double max_excursion = 0.0;  // max |x - k| attained
  double min_E = 0.0, max_E = 0.0;
  bool all_E_negative = true;
  std::uint64_t seed = 0;
};

// Launches future-directed causal curves (geodesics and/or resampled
// polylines) from random points of stationary stripe M_k of the rotating
// metric and reports whether any left the stripe.
TrappingReport trapping_experiment(const MetricField& m, int k, const TrappingOptions& opt);

}  // namespace sig2d

#endif
