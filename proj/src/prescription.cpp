// sig2d - transformation prescription, locus extraction, radical classification

#include "sig2d/prescription.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace sig2d {

namespace {

constexpr double kEdgeBisectTol = 1e-12;
constexpr double kRadicalResidualTol = 1e-8;

double dist(const ChartPoint& a, const ChartPoint& b) {
  return std::hypot(a.t - b.t, a.x - b.x);
}

ChartPoint lerp(const ChartPoint& a, const ChartPoint& b, double u) {
  return ChartPoint{a.t + u * (b.t - a.t), a.x + u * (b.x - a.x)};
}

// Newton projection of p onto the zero set of h along grad h.
ChartPoint project_to_level(const std::function<double(ChartPoint)>& h, ChartPoint p) {
  for (int it = 0; it < 8; ++it) {
    double v = h(p);
    if (std::abs(v) < 1e-14) break;
    double gt, gx;
    numeric_gradient(h, p, gt, gx);
    double g2 = gt * gt + gx * gx;
    if (g2 < 1e-24) break;
    p.t -= v * gt / g2;
    p.x -= v * gx / g2;
  }
  return p;
}

// Unit tangent of the level set {h = 0}: grad h rotated by 90 degrees.
// Returns false when the gradient vanishes.
bool level_tangent(const std::function<double(ChartPoint)>& h, const ChartPoint& p,
                   double& ut, double& ux) {
  double gt, gx;
  numeric_gradient(h, p, gt, gx);
  double n = std::hypot(gt, gx);
  if (n < 1e-12) return false;
  ut = -gx / n;
  ux = gt / n;
  return true;
}

}  // namespace

void numeric_gradient(const std::function<double(ChartPoint)>& h, const ChartPoint& p,
                      double& dt, double& dx, double step) {
  dt = (h(ChartPoint{p.t + step, p.x}) - h(ChartPoint{p.t - step, p.x})) / (2.0 * step);
  dx = (h(ChartPoint{p.t, p.x + step}) - h(ChartPoint{p.t, p.x - step})) / (2.0 * step);
}

double Polyline::arclength() const {
  double s = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) s += dist(pts[i - 1], pts[i]);
  if (closed && pts.size() > 2) s += dist(pts.back(), pts.front());
  return s;
}

MetricField transform_metric(const MetricField& g, const VectorField& V, const ScalarField& f) {
  return MetricField::transformed(g, f, V);
}

double det_identity_max_error(const MetricField& g, const VectorField& V, const ScalarField& f,
                              int n, const Rect& window, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("det_identity_max_error: n >= 1");
  MetricField gt = MetricField::transformed(g, f, V);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(window.t_min, window.t_max);
  std::uniform_real_distribution<double> ux(window.x_min, window.x_max);
  double max_err = 0.0;
  for (int i = 0; i < n; ++i) {
    ChartPoint p{ut(rng), ux(rng)};
    TangentVector v = V.at(p);
    double gvv = inner(g, v, v);
    double expected = g.at(p).det() * (1.0 + f(p.t, p.x) * gvv);
    max_err = std::max(max_err, std::abs(gt.at(p).det() - expected));
  }
  return max_err;
}

namespace {

struct Segment {
  long long e0, e1;  // edge keys of the two endpoints
};

// Marching-squares extraction state; edge keys index refined crossing points.
class LocusExtractor {
 public:
  LocusExtractor(const MetricField& m, const Rect& window, int grid_n)
      : m_(m), window_(window), n_(grid_n) {}

  std::vector<Polyline> run() {
    const int nn = n_ + 1;
    values_.resize(static_cast<std::size_t>(nn) * nn);
    for (int j = 0; j < nn; ++j)
      for (int i = 0; i < nn; ++i)
        values_[static_cast<std::size_t>(j) * nn + i] = det_at(node(i, j));

    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i) emit_cell(i, j);

    return stitch();
  }

 private:
  const MetricField& m_;
  Rect window_;
  int n_;
  std::vector<double> values_;
  std::map<long long, ChartPoint> edge_points_;
  std::vector<Segment> segments_;

  ChartPoint node(int i, int j) const {
    return ChartPoint{window_.t_min + (window_.t_max - window_.t_min) * i / n_,
                      window_.x_min + (window_.x_max - window_.x_min) * j / n_};
  }

  double det_at(const ChartPoint& p) const { return m_.at(p).det(); }

  double value(int i, int j) const {
    return values_[static_cast<std::size_t>(j) * (n_ + 1) + i];
  }

  // dir 0: edge from (i,j) to (i+1,j); dir 1: edge from (i,j) to (i,j+1)
  long long edge_key(int i, int j, int dir) const {
    return (static_cast<long long>(j) * (n_ + 1) + i) * 2 + dir;
  }

  long long crossing(int i, int j, int dir) {
    long long key = edge_key(i, j, dir);
    auto it = edge_points_.find(key);
    if (it != edge_points_.end()) return key;
    ChartPoint a = node(i, j);
    ChartPoint b = dir == 0 ? node(i + 1, j) : node(i, j + 1);
    double fa = dir == 0 ? value(i, j) : value(i, j);
    double fb = dir == 0 ? value(i + 1, j) : value(i, j + 1);
    // bisection on the actual det, not an interpolant
    for (int it2 = 0; it2 < 200; ++it2) {
      ChartPoint mid = lerp(a, b, 0.5);
      if (dist(a, b) <= kEdgeBisectTol) break;
      double fm = det_at(mid);
      if ((fa < 0.0) == (fm < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
        fb = fm;
      }
    }
    (void)fb;
    edge_points_[key] = lerp(a, b, 0.5);
    return key;
  }

  void emit_cell(int i, int j) {
    bool s00 = value(i, j) < 0.0;
    bool s10 = value(i + 1, j) < 0.0;
    bool s01 = value(i, j + 1) < 0.0;
    bool s11 = value(i + 1, j + 1) < 0.0;
    int code = (s00 ? 1 : 0) | (s10 ? 2 : 0) | (s11 ? 4 : 0) | (s01 ? 8 : 0);
    if (code == 0 || code == 15) return;

    long long bottom = -1, right = -1, top = -1, left = -1;
    if (s00 != s10) bottom = crossing(i, j, 0);
    if (s10 != s11) right = crossing(i + 1, j, 1);
    if (s01 != s11) top = crossing(i, j + 1, 0);
    if (s00 != s01) left = crossing(i, j, 1);

    auto add = [&](long long a, long long b) { segments_.push_back(Segment{a, b}); };
    switch (code) {
      case 1: case 14: add(left, bottom); break;
      case 2: case 13: add(bottom, right); break;
      case 3: case 12: add(left, right); break;
      case 4: case 11: add(right, top); break;
      case 6: case 9: add(bottom, top); break;
      case 7: case 8: add(left, top); break;
      case 5: case 10: {
        // saddle: disambiguate with the center sample
        ChartPoint c = lerp(node(i, j), node(i + 1, j + 1), 0.5);
        bool sc = det_at(c) < 0.0;
        bool pair_with_s00 = (sc == s00);
        if (code == 5) {
          if (pair_with_s00) { add(left, top); add(bottom, right); }
          else { add(left, bottom); add(right, top); }
        } else {
          if (pair_with_s00) { add(left, bottom); add(right, top); }
          else { add(left, top); add(bottom, right); }
        }
        break;
      }
      default: break;
    }
  }

  std::vector<Polyline> stitch() {
    // adjacency: edge key -> indices of incident segments
    std::map<long long, std::vector<std::size_t>> adj;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      adj[segments_[k].e0].push_back(k);
      adj[segments_[k].e1].push_back(k);
    }
    std::vector<bool> used(segments_.size(), false);
    std::vector<Polyline> out;

    auto walk = [&](std::size_t start, long long from, std::vector<long long>& chain) {
      std::size_t seg = start;
      long long at = from;
      for (;;) {
        used[seg] = true;
        long long next = segments_[seg].e0 == at ? segments_[seg].e1 : segments_[seg].e0;
        chain.push_back(next);
        at = next;
        std::size_t cont = segments_.size();
        for (std::size_t c : adj[at])
          if (!used[c]) { cont = c; break; }
        if (cont == segments_.size()) return;
        seg = cont;
      }
    };

    for (std::size_t k = 0; k < segments_.size(); ++k) {
      if (used[k]) continue;
      std::vector<long long> fwd{segments_[k].e0};
      walk(k, segments_[k].e0, fwd);
      bool closed = fwd.size() > 2 && fwd.front() == fwd.back();
      if (closed) fwd.pop_back();
      std::vector<long long> chain;
      if (!closed) {
        // extend backwards from the start endpoint
        std::vector<long long> bwd;
        std::size_t cont = segments_.size();
        for (std::size_t c : adj[fwd.front()])
          if (!used[c]) { cont = c; break; }
        if (cont != segments_.size()) {
          bwd.push_back(fwd.front());
          walk(cont, fwd.front(), bwd);
          std::reverse(bwd.begin(), bwd.end());
          bwd.pop_back();  // shared endpoint
          chain = std::move(bwd);
        }
      }
      chain.insert(chain.end(), fwd.begin(), fwd.end());
      Polyline pl;
      pl.closed = closed;
      for (long long key : chain) pl.pts.push_back(edge_points_.at(key));
      out.push_back(std::move(pl));
    }
    return out;
  }
};

}  // namespace

std::vector<Polyline> degeneracy_locus(const MetricField& m, const Rect& window, int grid_n) {
  if (grid_n < 8) throw std::invalid_argument("degeneracy_locus: grid_n >= 8");
  return LocusExtractor(m, window, grid_n).run();
}

TangentVector radical_at(const MetricField& m, const ChartPoint& p, double tol_deg) {
  MetricComponents g = m.at(p);
  if (std::abs(g.det()) > tol_deg)
    throw std::domain_error("radical_at: point is not degenerate");
  double scale = std::max({std::abs(g.tt), std::abs(g.tx), std::abs(g.xx)});
  if (scale < 1e-12)
    throw std::domain_error("radical_at: metric numerically zero, radical not 1-dimensional");

  // eigenvector of the smallest-magnitude eigenvalue of [[tt,tx],[tx,xx]]
  double mean = 0.5 * (g.tt + g.xx);
  double disc = std::hypot(0.5 * (g.tt - g.xx), g.tx);
  double lam = std::abs(mean - disc) < std::abs(mean + disc) ? mean - disc : mean + disc;
  // both rows of (g - lam) give an eigenvector; keep the better-conditioned one
  double vt, vx;
  if (std::hypot(lam - g.xx, g.tx) >= std::hypot(g.tx, lam - g.tt)) {
    vt = lam - g.xx;
    vx = g.tx;
  } else {
    vt = g.tx;
    vx = lam - g.tt;
  }
  double n = std::hypot(vt, vx);
  if (n == 0.0) {  // diagonal matrix: pick the axis of the small entry
    if (std::abs(g.tt) <= std::abs(g.xx)) { vt = 1.0; vx = 0.0; }
    else { vt = 0.0; vx = 1.0; }
    n = 1.0;
  }
  vt /= n;
  vx /= n;
  if (vt < -1e-15 || (std::abs(vt) <= 1e-15 && vx < 0.0)) {
    vt = -vt;
    vx = -vx;
  }
  double rt = g.tt * vt + g.tx * vx;
  double rx = g.tx * vt + g.xx * vx;
  if (std::max(std::abs(rt), std::abs(rx)) > kRadicalResidualTol)
    throw std::domain_error("radical_at: residual exceeds tolerance");
  return TangentVector{p, vt, vx};
}

std::function<double(ChartPoint)> det_function(const MetricField& m) {
  return [m](ChartPoint p) { return m.at(p).det(); };
}

std::function<double(ChartPoint)> level_function(const ScalarField& f) {
  return [f](ChartPoint p) { return f(p.t, p.x) - 1.0; };
}

namespace {

// Signed cross product of the radical direction (sign-fixed against a
// reference) with the H tangent at the projected point.
bool signed_alignment(const MetricField& m, const std::function<double(ChartPoint)>& h,
                      ChartPoint probe, const TangentVector& ref, double tol_deg,
                      double& cross_out, ChartPoint& proj_out) {
  ChartPoint p = project_to_level(h, probe);
  double ut, ux;
  if (!level_tangent(h, p, ut, ux)) return false;
  TangentVector r = radical_at(m, p, tol_deg);
  if (r.vt * ref.vt + r.vx * ref.vx < 0.0) {
    r.vt = -r.vt;
    r.vx = -r.vx;
  }
  cross_out = r.vt * ux - r.vx * ut;
  proj_out = p;
  return true;
}

}  // namespace

RadicalScan radical_classification(const MetricField& m, const Polyline& locus,
                                   const std::function<double(ChartPoint)>& h,
                                   double tol_tangent, double tol_deg) {
  if (locus.pts.empty()) throw std::invalid_argument("radical_classification: empty locus");
  RadicalScan scan;
  double s = 0.0;
  std::vector<double> signed_cross(locus.pts.size(), 0.0);
  std::vector<bool> ok(locus.pts.size(), false);

  for (std::size_t i = 0; i < locus.pts.size(); ++i) {
    const ChartPoint& p = locus.pts[i];
    if (i > 0) s += dist(locus.pts[i - 1], p);
    RadicalReport rep;
    rep.s = s;
    rep.point = p;
    double ut, ux;
    if (!level_tangent(h, p, ut, ux)) {
      rep.gradient_ok = false;
      ++scan.n_skipped;
      scan.reports.push_back(rep);
      continue;
    }
    rep.h_tangent_dir = TangentVector{p, ut, ux};
    rep.radical_dir = radical_at(m, p, tol_deg);
    double cross = rep.radical_dir.vt * ux - rep.radical_dir.vx * ut;
    rep.alignment = std::abs(cross);
    rep.cls = rep.alignment <= tol_tangent ? RadicalClass::Tangent : RadicalClass::Transverse;
    signed_cross[i] = cross;
    ok[i] = true;
    scan.reports.push_back(rep);
  }

  // refine tangency points between consecutive vertices where the sign-fixed
  // cross product changes sign
  std::size_t n = locus.pts.size();
  std::size_t n_pairs = locus.closed ? n : n - 1;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    std::size_t j = (i + 1) % n;
    if (!ok[i] || !ok[j]) continue;
    const TangentVector ref = scan.reports[i].radical_dir;
    ChartPoint pa = locus.pts[i], pb = locus.pts[j];
    double ca, cb;
    ChartPoint proja, projb;
    if (!signed_alignment(m, h, pa, ref, tol_deg, ca, proja)) continue;
    if (!signed_alignment(m, h, pb, ref, tol_deg, cb, projb)) continue;

    ChartPoint root;
    bool have_root = false;
    if (std::abs(ca) < 1e-13) {
      root = proja;
      have_root = true;
    } else if (ca * cb < 0.0) {
      double lo = 0.0, hi = 1.0;
      double clo = ca;
      ChartPoint proj = proja;
      double seg_len = dist(pa, pb);
      while ((hi - lo) * seg_len > 1e-12) {
        double mid = 0.5 * (lo + hi);
        double cm;
        if (!signed_alignment(m, h, lerp(pa, pb, mid), ref, tol_deg, cm, proj)) break;
        if ((cm < 0.0) == (clo < 0.0)) {
          lo = mid;
          clo = cm;
        } else {
          hi = mid;
        }
      }
      double cfin;
      if (signed_alignment(m, h, lerp(pa, pb, 0.5 * (lo + hi)), ref, tol_deg, cfin, proj) &&
          std::abs(cfin) <= 1e-6) {  // reject sign-convention artifacts
        root = proj;
        have_root = true;
      }
    }
    if (have_root) {
      bool dup = false;
      for (const ChartPoint& q : scan.tangency_points)
        if (dist(q, root) < 1e-8) dup = true;
      if (!dup) scan.tangency_points.push_back(root);
    }
  }
  return scan;
}

ConditionReport condition_checks(const ScalarField& f, const VectorField& V,
                                 const Polyline& locus, double tol_grad) {
  if (locus.pts.empty()) throw std::invalid_argument("condition_checks: empty locus");
  auto h = level_function(f);
  auto fval = [&f](ChartPoint p) { return f(p.t, p.x); };
  auto vf = [&](ChartPoint p) {
    double gt, gx;
    numeric_gradient(fval, p, gt, gx);
    TangentVector v = V.at(p);
    return v.vt * gt + v.vx * gx;
  };

  ConditionReport rep;
  rep.n_checked = static_cast<int>(locus.pts.size());
  rep.min_grad_f = std::numeric_limits<double>::infinity();
  rep.min_abs_Vf = std::numeric_limits<double>::infinity();
  std::vector<double> vfs(locus.pts.size());
  for (std::size_t i = 0; i < locus.pts.size(); ++i) {
    const ChartPoint& p = locus.pts[i];
    double gt, gx;
    numeric_gradient(fval, p, gt, gx);
    rep.min_grad_f = std::min(rep.min_grad_f, std::hypot(gt, gx));
    vfs[i] = vf(p);
    rep.min_abs_Vf = std::min(rep.min_abs_Vf, std::abs(vfs[i]));
  }
  rep.condition1_holds = rep.min_grad_f > tol_grad;

  // the directional derivative fails the condition wherever it has a root
  // along the locus: scan for sign changes between consecutive vertices
  {
    std::size_t n = locus.pts.size();
    std::size_t n_pairs = locus.closed ? n : n - 1;
    for (std::size_t i = 0; i < n_pairs; ++i) {
      std::size_t j = (i + 1) % n;
      ChartPoint pa = locus.pts[i], pb = locus.pts[j];
      double va = vfs[i], vb = vfs[j];
      ChartPoint root;
      bool have_root = false;
      if (std::abs(va) < 1e-13) {
        root = project_to_level(h, pa);
        have_root = true;
      } else if (va * vb < 0.0) {
        double lo = 0.0, hi = 1.0, vlo = va;
        double seg_len = dist(pa, pb);
        while ((hi - lo) * seg_len > 1e-12) {
          double mid = 0.5 * (lo + hi);
          double vm = vf(project_to_level(h, lerp(pa, pb, mid)));
          if ((vm < 0.0) == (vlo < 0.0)) {
            lo = mid;
            vlo = vm;
          } else {
            hi = mid;
          }
        }
        root = project_to_level(h, lerp(pa, pb, 0.5 * (lo + hi)));
        have_root = true;
      }
      if (have_root) {
        bool dup = false;
        for (const ChartPoint& q : rep.violation_points)
          if (dist(q, root) < 1e-8) dup = true;
        if (!dup) rep.violation_points.push_back(root);
      }
    }
    if (rep.violation_points.empty() && rep.min_abs_Vf <= tol_grad) {
      // tangential zero without a sign change: report the argmin vertex
      std::size_t arg = 0;
      for (std::size_t i = 1; i < vfs.size(); ++i)
        if (std::abs(vfs[i]) < std::abs(vfs[arg])) arg = i;
      rep.violation_points.push_back(locus.pts[arg]);
    }
  }
  rep.condition2_holds = rep.violation_points.empty();
  if (!rep.condition1_holds && rep.violation_points.empty()) {
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < locus.pts.size(); ++i) {
      double gt, gx;
      numeric_gradient(fval, locus.pts[i], gt, gx);
      double g = std::hypot(gt, gx);
      if (g < best) { best = g; arg = i; }
    }
    rep.violation_points.push_back(locus.pts[arg]);
  }
  return rep;
}

Polyline tangency_locus_curve(double x_lo, double x_hi, double C, int n_samples) {
  if (!(x_lo < x_hi)) throw std::invalid_argument("tangency_locus_curve: empty range");
  if (std::floor(x_lo) != std::floor(x_hi) || x_lo == std::floor(x_lo))
    throw std::domain_error("tangency_locus_curve: range must avoid integer x");
  if (n_samples < 2) throw std::invalid_argument("tangency_locus_curve: n_samples >= 2");
  Polyline pl;
  for (int i = 0; i < n_samples; ++i) {
    double x = x_lo + (x_hi - x_lo) * i / (n_samples - 1);
    double t = -std::log(std::abs(std::sin(M_PI * x))) / M_PI + C;
    pl.pts.push_back(ChartPoint{t, x});
  }
  return pl;
}

double tangency_curve_ode_deviation(double x_lo, double x_hi, double C, int n_steps) {
  if (!(x_lo < x_hi)) throw std::invalid_argument("tangency_curve_ode_deviation: empty range");
  if (n_steps < 1) throw std::invalid_argument("tangency_curve_ode_deviation: n_steps >= 1");
  auto closed = [C](double x) { return -std::log(std::abs(std::sin(M_PI * x))) / M_PI + C; };
  auto slope = [](double x) { return -1.0 / std::tan(M_PI * x); };  // dt/dx = -cot(pi x)
  double h = (x_lo - x_hi) / n_steps;  // integrate downward from x_hi
  double x = x_hi;
  double t = closed(x_hi);
  double max_dev = 0.0;
  for (int i = 0; i < n_steps; ++i) {
    double k1 = slope(x);
    double k2 = slope(x + 0.5 * h);
    double k3 = slope(x + 0.5 * h);
    double k4 = slope(x + h);
    t += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    x += h;
    max_dev = std::max(max_dev, std::abs(t - closed(x)));
  }
  return max_dev;
}

}  // namespace sig2d
