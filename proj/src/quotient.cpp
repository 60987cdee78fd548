// sig2d - deck transformations and seam compatibility checks

#include "sig2d/quotient.hpp"

#include <cmath>
#include <stdexcept>

namespace sig2d {

namespace {

constexpr double kRoot2 = 1.4142135623730951;
constexpr double kSeamFdStep = 1e-5;

Mat2 inverse(const Mat2& m) {
  double det = m.det();
  if (det == 0.0) throw std::domain_error("singular Jacobian");
  double inv = 1.0 / det;
  return Mat2{m.d * inv, -m.b * inv, -m.c * inv, m.a * inv};
}

// J^T G J for symmetric G given as (tt, tx, xx).
MetricComponents pullback(const MetricComponents& g, const Mat2& j) {
  // columns of J are the images of the basis vectors
  double ut = j.a, ux = j.c;  // J * e_t
  double wt = j.b, wx = j.d;  // J * e_x
  auto form = [&](double at, double ax, double bt, double bx) {
    return g.tt * at * bt + g.tx * (at * bx + ax * bt) + g.xx * ax * bx;
  };
  return MetricComponents{form(ut, ux, ut, ux), form(ut, ux, wt, wx), form(wt, wx, wt, wx)};
}

}  // namespace

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::Plane: return "plane";
    case Topology::InfiniteMobius: return "mobius-inf";
    case Topology::CompactMobius: return "mobius-compact";
    case Topology::RP2Square: return "rp2";
  }
  return "?";
}

bool Mat2::is_identity(double tol) const {
  return std::abs(a - 1.0) <= tol && std::abs(b) <= tol && std::abs(c) <= tol &&
         std::abs(d - 1.0) <= tol;
}

Manifold::Manifold(Topology topo) : topo_(topo) {
  switch (topo) {
    case Topology::Plane:
      break;
    case Topology::InfiniteMobius:
      // (t, x) ~ ((-1)^k t, x + k); fundamental domain x in [0, 1)
      seams_.push_back(SeamGerm{
          "x0~x1",
          [](double s) { return ChartPoint{-1.0 + 2.0 * s, 0.0}; },
          [](ChartPoint p) { return ChartPoint{-p.t, p.x + 1.0}; },
          Mat2::diag(-1.0, 1.0), 0.0, 1.0});
      break;
    case Topology::CompactMobius:
      // (t, 0) ~ (1 - t, 1); domain [0,1] x [0,1)
      seams_.push_back(SeamGerm{
          "x0~x1",
          [](double s) { return ChartPoint{s, 0.0}; },
          [](ChartPoint p) { return ChartPoint{1.0 - p.t, p.x + 1.0}; },
          Mat2::diag(-1.0, 1.0), 0.0, 1.0});
      break;
    case Topology::RP2Square:
      // (t, -r) ~ (-t, r) and (-r, x) ~ (r, -x), r = sqrt(2)
      seams_.push_back(SeamGerm{
          "x=-r~x=+r",
          [](double s) { return ChartPoint{-kRoot2 + 2.0 * kRoot2 * s, -kRoot2}; },
          [](ChartPoint p) { return ChartPoint{-p.t, p.x + 2.0 * kRoot2}; },
          Mat2::diag(-1.0, 1.0), 0.0, 1.0});
      seams_.push_back(SeamGerm{
          "t=-r~t=+r",
          [](double s) { return ChartPoint{-kRoot2, -kRoot2 + 2.0 * kRoot2 * s}; },
          [](ChartPoint p) { return ChartPoint{p.t + 2.0 * kRoot2, -p.x}; },
          Mat2::diag(1.0, -1.0), 1.0, 0.0});
      break;
  }
}

CanonicalResult Manifold::canonicalize(const ChartPoint& raw) const {
  if (!std::isfinite(raw.t) || !std::isfinite(raw.x))
    throw std::invalid_argument("canonicalize: non-finite point");
  CanonicalResult res;
  res.point = raw;

  switch (topo_) {
    case Topology::Plane:
      return res;

    case Topology::InfiniteMobius: {
      double k = std::floor(raw.x);
      if (k == 0.0) return res;
      bool odd = std::fmod(std::abs(k), 2.0) == 1.0;
      res.point = ChartPoint{odd ? -raw.t : raw.t, raw.x - k};
      res.jacobian = Mat2::diag(odd ? -1.0 : 1.0, 1.0);
      res.moved = true;
      res.seam = seams_[0].id;
      return res;
    }

    case Topology::CompactMobius: {
      double k = std::floor(raw.x);
      if (k == 0.0) return res;
      bool odd = std::fmod(std::abs(k), 2.0) == 1.0;
      res.point = ChartPoint{odd ? 1.0 - raw.t : raw.t, raw.x - k};
      res.jacobian = Mat2::diag(odd ? -1.0 : 1.0, 1.0);
      res.moved = true;
      res.seam = seams_[0].id;
      return res;
    }

    case Topology::RP2Square: {
      ChartPoint p = raw;
      // one germ per edge pair, x first then t
      if (p.x < -kRoot2 || p.x > kRoot2) {
        double shift = p.x < -kRoot2 ? 2.0 * kRoot2 : -2.0 * kRoot2;
        p = ChartPoint{-p.t, p.x + shift};
        res.jacobian = Mat2::diag(-1.0, 1.0) * res.jacobian;
        res.moved = true;
        res.seam = seams_[0].id;
      }
      if (p.t < -kRoot2 || p.t > kRoot2) {
        double shift = p.t < -kRoot2 ? 2.0 * kRoot2 : -2.0 * kRoot2;
        p = ChartPoint{p.t + shift, -p.x};
        res.jacobian = Mat2::diag(1.0, -1.0) * res.jacobian;
        res.moved = true;
        res.seam = seams_[1].id;
      }
      if (p.t < -kRoot2 || p.t > kRoot2 || p.x < -kRoot2 || p.x > kRoot2)
        throw std::domain_error(
            "canonicalize: point outside the RP2 square beyond a single-germ collar");
      res.point = p;
      return res;
    }
  }
  throw std::logic_error("corrupt topology");
}

TangentVector Manifold::transport_vector(const TangentVector& v) const {
  CanonicalResult c = canonicalize(v.base);
  TangentVector out{c.point, v.vt, v.vx};
  c.jacobian.apply(out.vt, out.vx);
  return out;
}

std::vector<SeamReport> Manifold::seam_compatibility(const MetricField& m, int order,
                                                     int n_samples) const {
  if (n_samples < 2) throw std::invalid_argument("seam_compatibility: n_samples >= 2");
  if (order != 0 && order != 1) throw std::invalid_argument("seam order must be 0 or 1");
  std::vector<SeamReport> reports;
  for (const SeamGerm& seam : seams_) {
    SeamReport rep;
    rep.seam = seam.id;
    rep.order = order;
    for (int i = 0; i < n_samples; ++i) {
      double s = static_cast<double>(i) / (n_samples - 1);
      ChartPoint p = seam.near(s);
      MetricComponents dg;
      if (order == 0) {
        MetricComponents a = m.at(p);
        MetricComponents b = pullback(m.at(seam.deck(p)), seam.jac);
        dg = MetricComponents{a.tt - b.tt, a.tx - b.tx, a.xx - b.xx};
      } else {
        const double h = kSeamFdStep;
        auto near_at = [&](double u) {
          return m.at(ChartPoint{p.t + u * seam.nt, p.x + u * seam.nx});
        };
        auto far_at = [&](double u) {
          return pullback(m.at(seam.deck(ChartPoint{p.t + u * seam.nt, p.x + u * seam.nx})),
                          seam.jac);
        };
        MetricComponents np = near_at(h), nm = near_at(-h);
        MetricComponents fp = far_at(h), fm = far_at(-h);
        dg = MetricComponents{(np.tt - nm.tt - fp.tt + fm.tt) / (2.0 * h),
                              (np.tx - nm.tx - fp.tx + fm.tx) / (2.0 * h),
                              (np.xx - nm.xx - fp.xx + fm.xx) / (2.0 * h)};
      }
      rep.samples.push_back(SeamSample{s, dg.tt, dg.tx, dg.xx});
      double mm = std::max({std::abs(dg.tt), std::abs(dg.tx), std::abs(dg.xx)});
      rep.max_abs_mismatch = std::max(rep.max_abs_mismatch, mm);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<SeamReport> Manifold::vector_field_seam_check(const VectorField& V,
                                                          int n_samples) const {
  if (n_samples < 2) throw std::invalid_argument("vector_field_seam_check: n_samples >= 2");
  std::vector<SeamReport> reports;
  for (const SeamGerm& seam : seams_) {
    SeamReport rep;
    rep.seam = seam.id;
    rep.order = 0;
    Mat2 jinv = inverse(seam.jac);
    for (int i = 0; i < n_samples; ++i) {
      double s = static_cast<double>(i) / (n_samples - 1);
      ChartPoint p = seam.near(s);
      TangentVector vn = V.at(p);
      TangentVector vf = V.at(seam.deck(p));
      jinv.apply(vf.vt, vf.vx);
      double dt = vf.vt - vn.vt;
      double dx = vf.vx - vn.vx;
      rep.samples.push_back(SeamSample{s, dt, dx, 0.0});
      rep.max_abs_mismatch = std::max(rep.max_abs_mismatch, std::max(std::abs(dt), std::abs(dx)));
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

ChartPoint attach_psi(double theta) {
  if (!(theta >= 0.0 && theta < 2.0 * M_PI))
    throw std::domain_error("attach_psi: theta must lie in [0, 2*pi)");
  if (theta <= M_PI) return ChartPoint{1.0, theta / M_PI};
  return ChartPoint{0.0, theta / M_PI - 1.0};
}

}  // namespace sig2d
