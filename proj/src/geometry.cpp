// sig2d - metric field evaluation and index gymnastics

#include "sig2d/geometry.hpp"

#include <cmath>

namespace sig2d {

char signature_code(SignatureClass c) {
  switch (c) {
    case SignatureClass::Lorentzian: return 'L';
    case SignatureClass::Riemannian: return 'R';
    case SignatureClass::NegativeDefinite: return 'N';
    case SignatureClass::Degenerate: return 'D';
  }
  return '?';
}

SignatureClass classify(const MetricComponents& g, double tol_deg) {
  double det = g.det();
  if (det < -tol_deg) return SignatureClass::Lorentzian;
  if (std::abs(det) <= tol_deg) return SignatureClass::Degenerate;
  return g.tt > 0.0 ? SignatureClass::Riemannian : SignatureClass::NegativeDefinite;
}

VectorField VectorField::rotating_unit_timelike() {
  return VectorField(ScalarField::parse("cos(pi*x)"), ScalarField::parse("-sin(pi*x)"));
}

VectorField VectorField::coordinate_time() {
  return VectorField(ScalarField::constant(1.0), ScalarField::constant(0.0));
}

struct MetricField::Impl {
  Kind kind;
  double angle_rate = 0.0;                 // Rotating
  ScalarField c_tt, c_tx, c_xx;            // Custom
  MetricField base;                        // Transformed
  ScalarField f;                           // Transformed
  VectorField V;                           // Transformed

  MetricComponents at(const ChartPoint& p) const {
    switch (kind) {
      case Kind::Flat:
        return MetricComponents{-1.0, 0.0, 1.0};
      case Kind::Rotating: {
        double two_phi = 2.0 * angle_rate * p.x;
        double c = std::cos(two_phi), s = std::sin(two_phi);
        return MetricComponents{-c, s, c};
      }
      case Kind::Crosscap:
        return MetricComponents{1.0 - p.t * p.t, p.t * p.x, 1.0 - p.x * p.x};
      case Kind::Custom:
        return MetricComponents{c_tt(p.t, p.x), c_tx(p.t, p.x), c_xx(p.t, p.x)};
      case Kind::Transformed: {
        MetricComponents g = base.at(p);
        TangentVector v = V.at(p);
        double wt = g.tt * v.vt + g.tx * v.vx;
        double wx = g.tx * v.vt + g.xx * v.vx;
        double fv = f(p.t, p.x);
        return MetricComponents{g.tt + fv * wt * wt, g.tx + fv * wt * wx,
                                g.xx + fv * wx * wx};
      }
    }
    throw std::logic_error("corrupt metric impl");
  }
};

MetricField MetricField::flat() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Flat;
  return MetricField(std::move(impl));
}

MetricField MetricField::rotating(double angle_rate) {
  if (!std::isfinite(angle_rate)) throw std::invalid_argument("angle_rate must be finite");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Rotating;
  impl->angle_rate = angle_rate;
  return MetricField(std::move(impl));
}

MetricField MetricField::crosscap_quadratic() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Crosscap;
  return MetricField(std::move(impl));
}

MetricField MetricField::custom(ScalarField g_tt, ScalarField g_tx, ScalarField g_xx) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Custom;
  impl->c_tt = std::move(g_tt);
  impl->c_tx = std::move(g_tx);
  impl->c_xx = std::move(g_xx);
  return MetricField(std::move(impl));
}

MetricField MetricField::transformed(MetricField base, ScalarField f, VectorField V) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Transformed;
  impl->base = std::move(base);
  impl->f = std::move(f);
  impl->V = std::move(V);
  return MetricField(std::move(impl));
}

MetricComponents MetricField::at(const ChartPoint& p) const {
  if (!impl_) throw std::logic_error("empty metric field");
  if (!std::isfinite(p.t) || !std::isfinite(p.x))
    throw std::invalid_argument("non-finite chart point");
  return impl_->at(p);
}

MetricSample MetricField::sample(const ChartPoint& p, double tol_deg) const {
  MetricComponents g = at(p);
  return MetricSample{g.tt, g.tx, g.xx, g.det(), classify(g, tol_deg)};
}

MetricField::Kind MetricField::kind() const { return impl_->kind; }
double MetricField::angle_rate() const { return impl_->angle_rate; }
const MetricField& MetricField::base() const { return impl_->base; }
const ScalarField& MetricField::f() const { return impl_->f; }
const VectorField& MetricField::V() const { return impl_->V; }

double inner(const MetricField& m, const TangentVector& u, const TangentVector& v) {
  if (u.base.t != v.base.t || u.base.x != v.base.x)
    throw std::invalid_argument("inner: mismatched base points");
  MetricComponents g = m.at(u.base);
  return g.tt * u.vt * v.vt + g.tx * (u.vt * v.vx + u.vx * v.vt) + g.xx * u.vx * v.vx;
}

Covector lower_index(const MetricField& m, const VectorField& V, const ChartPoint& p) {
  MetricComponents g = m.at(p);
  TangentVector v = V.at(p);
  return Covector{p, g.tt * v.vt + g.tx * v.vx, g.tx * v.vt + g.xx * v.vx};
}

TangentVector complete_orthonormal_frame(const MetricField& m, const VectorField& V,
                                         const ChartPoint& p) {
  MetricComponents g = m.at(p);
  if (classify(g, kDefaultTolDeg) != SignatureClass::Lorentzian)
    throw std::domain_error("complete_orthonormal_frame: metric not Lorentzian at point");
  TangentVector v = V.at(p);
  if (inner(m, v, v) >= 0.0)
    throw std::domain_error("complete_orthonormal_frame: V not timelike at point");

  // Orthogonal complement of V: annihilated by V_flat = (a, b).
  double a = g.tt * v.vt + g.tx * v.vx;
  double b = g.tx * v.vt + g.xx * v.vx;
  TangentVector e{p, b, -a};
  double n2 = inner(m, e, e);
  if (n2 <= 0.0)
    throw std::domain_error("complete_orthonormal_frame: complement not spacelike");
  double inv = 1.0 / std::sqrt(n2);
  e.vt *= inv;
  e.vx *= inv;
  if (e.vx < 0.0 || (e.vx == 0.0 && e.vt < 0.0)) {
    e.vt = -e.vt;
    e.vx = -e.vx;
  }
  return e;
}

}  // namespace sig2d
