// sig2d - Christoffel symbols, scalar curvature, geodesic integration

#ifndef SIG2D_DYNAMICS_HPP_
#define SIG2D_DYNAMICS_HPP_

#include <string>
#include <vector>

#include "sig2d/prescription.hpp"
#include "sig2d/quotient.hpp"

namespace sig2d {

constexpr double kDefaultFdStep = 1e-5;
constexpr double kDefaultGeodesicStep = 1e-3;

struct ChristoffelSample {
  ChartPoint point;
  // upper index, then symmetric lower pair
  double t_tt, t_tx, t_xx;
  double x_tt, x_tx, x_xx;
};

// Levi-Civita connection coefficients by central differences of the
// components (step h). Throws on degenerate points.
ChristoffelSample christoffel_numeric(const MetricField& m, const ChartPoint& p,
                                      double h = kDefaultFdStep);

// Closed forms for the rotating family (phi = angle_rate * x); every
// coefficient scales linearly with angle_rate.
ChristoffelSample christoffel_closed_rotating(double angle_rate, const ChartPoint& p);

// R = 2K via the Brioschi formula with central differences (step h).
double scalar_curvature(const MetricField& m, const ChartPoint& p, double h = kDefaultFdStep);

enum class TraceStatus { Completed, HitDegeneracy, LeftWindow, StepFailure };

struct TraceSample {
  double lambda;
  ChartPoint point;
  double vt, vx;
  double energy;  // g(d/dt, velocity)
  double norm2;   // g(velocity, velocity)
};

struct SeamEvent {
  double lambda;
  std::string seam;
};

struct GeodesicTrace {
  std::vector<TraceSample> samples;
  std::vector<SeamEvent> seam_events;
  TraceStatus status = TraceStatus::Completed;
};

struct IntegratorOptions {
  double lambda_max = 10.0;
  double dlambda = kDefaultGeodesicStep;
  Rect window{-50.0, 50.0, -50.0, 50.0};
  double tol_deg = kDefaultTolDeg;
  int sample_stride = 1;    // record every n-th step
  double speed_cap = 1e3;   // |vt|+|vx| bound; above it the trace ends
};

// Fixed-step RK4 on the geodesic equation; the state is canonicalized
// through the manifold's deck maps after each full step. Stops with
// HitDegeneracy when |det| drops below 10*tol_deg or the step straddles a
// sign change of det.
//
// Steps are internally subdivided in proportion to the coordinate speed:
// the coordinate velocity blows up in finite affine parameter both at
// degenerate curves and at Killing horizons (reached at t -> inf), and a
// fixed step loses stability there. Once |vt|+|vx| exceeds speed_cap the
// trace ends: HitDegeneracy when det has collapsed relative to its starting
// value, StepFailure otherwise.
GeodesicTrace integrate_geodesic(const MetricField& m, const Manifold& man,
                                 const TangentVector& init, const IntegratorOptions& opt);

}  // namespace sig2d

#endif
