// sig2d - transformation prescription, degeneracy loci, radical analysis

#ifndef SIG2D_PRESCRIPTION_HPP_
#define SIG2D_PRESCRIPTION_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "sig2d/geometry.hpp"

namespace sig2d {

constexpr double kDefaultTolTangent = 1e-6;  // |cross| threshold for tangency
constexpr double kDefaultTolGrad = 1e-8;

struct Rect {
  double t_min, t_max, x_min, x_max;
  bool contains(const ChartPoint& p) const {
    return p.t >= t_min && p.t <= t_max && p.x >= x_min && p.x <= x_max;
  }
};

struct Polyline {
  std::vector<ChartPoint> pts;
  bool closed = false;
  double arclength() const;
};

enum class RadicalClass { Transverse, Tangent };

struct RadicalReport {
  double s = 0.0;               // arclength parameter along the locus
  ChartPoint point;             // on H
  TangentVector radical_dir;    // unit Euclidean norm, first nonzero component positive
  TangentVector h_tangent_dir;  // unit tangent of H (grad h rotated by 90 degrees)
  RadicalClass cls = RadicalClass::Transverse;
  double alignment = 0.0;       // |cross| of the two unit directions
  bool gradient_ok = true;      // false when grad h vanished and the point was skipped
};

struct RadicalScan {
  std::vector<RadicalReport> reports;           // one per locus vertex, in locus order
  std::vector<ChartPoint> tangency_points;      // refined alignment zero crossings
  int n_skipped = 0;
};

struct ConditionReport {
  bool condition1_holds = false;  // d(det) = df != 0 on H
  bool condition2_holds = false;  // V(f) != 0 on H
  double min_grad_f = 0.0;
  double min_abs_Vf = 0.0;
  std::vector<ChartPoint> violation_points;  // refined roots of V(f) along the locus
  int n_checked = 0;
};

// g~ = g + f * (V_flat (x) V_flat). Alias of MetricField::transformed.
MetricField transform_metric(const MetricField& g, const VectorField& V, const ScalarField& f);

// Max over n random window points of |det(g~) - det(g) * (1 + f * g(V,V))|
// (matrix determinant lemma; reduces to det(g~) = f - 1 for the rotating preset).
double det_identity_max_error(const MetricField& g, const VectorField& V, const ScalarField& f,
                              int n, const Rect& window, std::uint64_t seed);

// Marching-squares extraction of {det = 0}, with bisection refinement of each
// edge crossing to 1e-12 in the coordinate. Polylines are ordered by
// connected component in grid-scan order; empty when det has no sign change.
std::vector<Polyline> degeneracy_locus(const MetricField& m, const Rect& window, int grid_n);

// Radical direction at a degeneracy point: the null direction of the 2x2
// component matrix. Residual |G dir| <= 1e-8 is enforced.
TangentVector radical_at(const MetricField& m, const ChartPoint& p,
                         double tol_deg = kDefaultTolDeg);

// Classifies the radical as transverse or tangent to H along the locus.
// h is a defining function of H (h = det by default; f - 1 is better
// conditioned for transformed metrics); the H tangent is grad h rotated by
// 90 degrees. Tangency points are bisection-refined zero crossings of the
// signed alignment, with locus reprojection at each probe.
RadicalScan radical_classification(const MetricField& m, const Polyline& locus,
                                   const std::function<double(ChartPoint)>& h,
                                   double tol_tangent = kDefaultTolTangent,
                                   double tol_deg = kDefaultTolDeg);

// Defining function h = det(m) for radical_classification.
std::function<double(ChartPoint)> det_function(const MetricField& m);
// Defining function h = f - 1.
std::function<double(ChartPoint)> level_function(const ScalarField& f);

// Transversality conditions of the prescription along the locus:
// condition1: min |grad f| > tol_grad; condition2: V(f) has no root along
// the locus (sign changes between vertices are bisection-refined, grazing
// zeros caught by min |V(f)| <= tol_grad); roots are reported as violations.
ConditionReport condition_checks(const ScalarField& f, const VectorField& V,
                                 const Polyline& locus, double tol_grad = kDefaultTolGrad);

// Closed-form curve t(x) = -(1/pi) ln|sin(pi x)| + C along which the rotating
// preset V is tangent to a hypersurface candidate. x_range must avoid integers.
Polyline tangency_locus_curve(double x_lo, double x_hi, double C, int n_samples);

// Cross-validation of the curve against its defining ODE (integrated as
// dt/dx = -cot(pi x), the graph form of dx/dt = -tan(pi x)); returns the max
// deviation between the RK4 solution started at x_hi and the closed form.
double tangency_curve_ode_deviation(double x_lo, double x_hi, double C, int n_steps);

// Numeric gradient of a scalar function (central differences).
void numeric_gradient(const std::function<double(ChartPoint)>& h, const ChartPoint& p,
                      double& dt, double& dx, double step = 1e-6);

}  // namespace sig2d

#endif
