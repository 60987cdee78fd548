// sig2d - points, tangent objects, metric fields, signature classification

#ifndef SIG2D_GEOMETRY_HPP_
#define SIG2D_GEOMETRY_HPP_

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "sig2d/expr.hpp"

namespace sig2d {

constexpr double kDefaultTolDeg = 1e-9;  // degeneracy classification tolerance

struct ChartPoint {
  double t = 0.0;
  double x = 0.0;
};

struct TangentVector {
  ChartPoint base;
  double vt = 0.0;
  double vx = 0.0;
};

struct Covector {
  ChartPoint base;
  double wt = 0.0;
  double wx = 0.0;
};

enum class SignatureClass { Lorentzian, Riemannian, NegativeDefinite, Degenerate };

char signature_code(SignatureClass c);  // 'L', 'R', 'N', 'D'

// Raw metric components at a point; symmetric, so three entries.
struct MetricComponents {
  double tt = 0.0;
  double tx = 0.0;
  double xx = 0.0;
  double det() const { return tt * xx - tx * tx; }
};

struct MetricSample {
  double g_tt, g_tx, g_xx;
  double det;
  SignatureClass cls;
};

SignatureClass classify(const MetricComponents& g, double tol_deg);

// Vector field given by two component fields (vt, vx) in the coordinate basis.
class VectorField {
 public:
  VectorField() = default;
  VectorField(ScalarField vt, ScalarField vx) : vt_(std::move(vt)), vx_(std::move(vx)) {}

  // Preset V = (cos(pi x), -sin(pi x)); unit timelike for the rotating metric.
  static VectorField rotating_unit_timelike();
  // Preset V = d/dt.
  static VectorField coordinate_time();

  TangentVector at(const ChartPoint& p) const {
    return TangentVector{p, vt_(p.t, p.x), vx_(p.t, p.x)};
  }
  const ScalarField& vt() const { return vt_; }
  const ScalarField& vx() const { return vx_; }

 private:
  ScalarField vt_, vx_;
};

// Symmetric (0,2) tensor field on the (t,x) chart. Immutable; cheap to copy.
class MetricField {
 public:
  enum class Kind { Flat, Rotating, Crosscap, Custom, Transformed };

  MetricField() = default;

  static MetricField flat();
  // g_tt = -cos(2 phi), g_tx = sin(2 phi), g_xx = cos(2 phi), phi = angle_rate * x.
  static MetricField rotating(double angle_rate = M_PI);
  // g = (1 - t^2) dt^2 + 2 t x dt dx + (1 - x^2) dx^2.
  static MetricField crosscap_quadratic();
  static MetricField custom(ScalarField g_tt, ScalarField g_tx, ScalarField g_xx);
  // g~ = base + f * (V_flat (x) V_flat).
  static MetricField transformed(MetricField base, ScalarField f, VectorField V);

  MetricComponents at(const ChartPoint& p) const;
  MetricSample sample(const ChartPoint& p, double tol_deg = kDefaultTolDeg) const;

  Kind kind() const;
  double angle_rate() const;           // Rotating only
  const MetricField& base() const;     // Transformed only
  const ScalarField& f() const;        // Transformed only
  const VectorField& V() const;        // Transformed only

  struct Impl;

 private:
  explicit MetricField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

double inner(const MetricField& m, const TangentVector& u, const TangentVector& v);

Covector lower_index(const MetricField& m, const VectorField& V, const ChartPoint& p);

// Completes a timelike V at p to an orthonormal pair {V, E1} and returns E1
// with inner(E1,E1) = +1 and inner(V,E1) = 0. Sign convention: positive
// x-component, ties broken toward positive t-component.
TangentVector complete_orthonormal_frame(const MetricField& m, const VectorField& V,
                                         const ChartPoint& p);

}  // namespace sig2d

#endif
