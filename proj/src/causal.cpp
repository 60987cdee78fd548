// sig2d - cone fields, Killing character, stripe trapping experiment

#include "sig2d/causal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sig2d {

namespace {

constexpr double kVerticalTol = 1e-12;

TangentVector unit_euclidean(const ChartPoint& p, double vt, double vx) {
  double n = std::hypot(vt, vx);
  if (n == 0.0) throw std::domain_error("zero direction");
  return TangentVector{p, vt / n, vx / n};
}

}  // namespace

std::pair<NullSlope, NullSlope> null_slopes(const MetricField& m, const ChartPoint& p) {
  MetricComponents g = m.at(p);
  if (classify(g, kDefaultTolDeg) != SignatureClass::Lorentzian)
    throw std::domain_error("null_slopes: no real cone at a non-Lorentzian point");

  if (std::abs(g.tt) <= kVerticalTol) {
    // quadratic degenerates: one leg vertical, the other from the linear part
    NullSlope finite{false, -g.xx / (2.0 * g.tx)};
    return {finite, NullSlope{true, 0.0}};
  }
  double disc = g.tx * g.tx - g.tt * g.xx;  // = -det > 0
  double root = std::sqrt(disc);
  // stable quadratic roots of g_tt s^2 + 2 g_tx s + g_xx = 0
  double q = -(g.tx + std::copysign(root, g.tx));
  double s1, s2;
  if (std::abs(q) > 0.0) {
    s1 = q / g.tt;
    s2 = g.xx / q;
  } else {  // g_tx == 0
    s1 = root / g.tt;
    s2 = -s1;
  }
  if (s1 > s2) std::swap(s1, s2);
  return {NullSlope{false, s1}, NullSlope{false, s2}};
}

std::pair<TangentVector, TangentVector> null_directions(const MetricField& m,
                                                        const ChartPoint& p) {
  auto [a, b] = null_slopes(m, p);
  TangentVector v1 = a.vertical ? unit_euclidean(p, 1.0, 0.0) : unit_euclidean(p, a.value, 1.0);
  TangentVector v2 = b.vertical ? unit_euclidean(p, 1.0, 0.0) : unit_euclidean(p, b.value, 1.0);
  return {v1, v2};
}

double null_curve_closed_form(int branch, double x, double C) {
  double s = std::sin(M_PI * x), c = std::cos(M_PI * x);
  double arg = (branch == 1) ? s + c : c - s;
  if (branch != 1 && branch != 2) throw std::invalid_argument("null_curve: branch is 1 or 2");
  if (std::abs(arg) < 1e-14)
    throw std::domain_error("null_curve: vertical cone tangent at this x");
  return -std::log(std::abs(arg)) / M_PI + C;
}

double null_branch_slope(int branch, double x) {
  double s = std::sin(M_PI * x), c = std::cos(M_PI * x);
  if (branch == 1) {
    if (std::abs(s + c) < 1e-14) throw std::domain_error("null_branch_slope: singular x");
    return (s - c) / (s + c);
  }
  if (branch == 2) {
    if (std::abs(c - s) < 1e-14) throw std::domain_error("null_branch_slope: singular x");
    return (s + c) / (c - s);
  }
  throw std::invalid_argument("null_branch_slope: branch is 1 or 2");
}

KillingCharacter killing_character(double x, double tol) {
  double value = -std::cos(2.0 * M_PI * x);
  if (std::abs(value) <= tol) return {CausalCharacter::Null, value};
  return {value < 0.0 ? CausalCharacter::Timelike : CausalCharacter::Spacelike, value};
}

std::optional<StripeId> stripe_of(double x) {
  int k = static_cast<int>(std::lround(x));
  if (std::abs(x - k) < 0.25) return StripeId{k, k - 0.25, k + 0.25};
  return std::nullopt;
}

TangentVector sample_causal_direction(const MetricField& m, const ChartPoint& p,
                                      std::mt19937_64& rng, DirectionKind kind,
                                      const VectorField& orientation) {
  auto [n1, n2] = null_directions(m, p);
  TangentVector vo = orientation.at(p);
  auto future = [&](TangentVector n) {
    double e = inner(m, vo, n);
    if (e > 0.0) {
      n.vt = -n.vt;
      n.vx = -n.vx;
    }
    return n;
  };
  n1 = future(n1);
  n2 = future(n2);

  if (kind == DirectionKind::Null) {
    return (rng() & 1u) ? n1 : n2;
  }
  if (kind == DirectionKind::Spacelike) {
    // n1 - w n2 flips the sign of the cross term g(n1,n2) < 0
    std::uniform_real_distribution<double> wd(0.2, 5.0);
    double w = wd(rng);
    return unit_euclidean(p, n1.vt - w * n2.vt, n1.vx - w * n2.vx);
  }

  // uniform Euclidean angle strictly inside the future cone
  double a1 = std::atan2(n1.vx, n1.vt);
  double a2 = std::atan2(n2.vx, n2.vt);
  double delta = std::remainder(a2 - a1, 2.0 * M_PI);
  std::uniform_real_distribution<double> ud(1e-3, 1.0 - 1e-3);
  double theta = a1 + ud(rng) * delta;
  TangentVector v{p, std::cos(theta), std::sin(theta)};
  if (inner(m, v, v) >= 0.0 || inner(m, vo, v) >= 0.0)
    throw std::logic_error("sample_causal_direction: sampled outside the future cone");
  return v;
}

TrappingReport trapping_experiment(const MetricField& m, int k, const TrappingOptions& opt) {
  if (opt.n_curves <= 0) throw std::invalid_argument("trapping_experiment: n_curves > 0");
  const double x_lo = k - 0.25, x_hi = k + 0.25;
  const double inset = 1e-3;  // keeps launch energies bounded away from 0
  const double escape_at = 0.25 - opt.margin;
  // orient along the Killing field: in every stationary stripe the trapped
  // class is the curves moving in the cone of d/dt (negative Killing energy)
  const VectorField orient = VectorField::coordinate_time();
  const Manifold plane(Topology::Plane);
  const VectorField dt_field = VectorField::coordinate_time();

  TrappingReport rep;
  rep.k = k;
  rep.n_curves = opt.n_curves;
  rep.seed = opt.seed;
  bool have_E = false;

  auto note_E = [&](double E) {
    if (!have_E) {
      rep.min_E = rep.max_E = E;
      have_E = true;
    } else {
      rep.min_E = std::min(rep.min_E, E);
      rep.max_E = std::max(rep.max_E, E);
    }
    if (E >= 0.0) rep.all_E_negative = false;
  };
  auto note_x = [&](double x, bool& escaped) {
    double exc = std::abs(x - k);
    rep.max_excursion = std::max(rep.max_excursion, exc);
    if (exc >= escape_at) escaped = true;
  };

  for (int i = 0; i < opt.n_curves; ++i) {
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> td(opt.t_lo, opt.t_hi);
    std::uniform_real_distribution<double> xd(x_lo + inset, x_hi - inset);
    ChartPoint p0{td(rng), xd(rng)};

    bool geodesic = (opt.mix == CurveMix::GeodesicsOnly) ||
                    (opt.mix == CurveMix::Mixed && i % 2 == 0);
    bool escaped = false;

    if (geodesic) {
      TangentVector v = sample_causal_direction(m, p0, rng, opt.kind, orient);
      double n2 = inner(m, v, v);
      if (opt.kind != DirectionKind::Null) {
        double scale = 1.0 / std::sqrt(std::abs(n2));
        v.vt *= scale;
        v.vx *= scale;
      }
      IntegratorOptions iopt;
      iopt.lambda_max = opt.lambda_max;
      iopt.dlambda = opt.dlambda;
      iopt.window = Rect{p0.t - 10.0 * opt.lambda_max - 10.0,
                         p0.t + 10.0 * opt.lambda_max + 10.0, x_lo - 1.0, x_hi + 1.0};
      GeodesicTrace tr = integrate_geodesic(m, plane, v, iopt);
      for (const TraceSample& s : tr.samples) {
        note_E(s.energy);
        note_x(s.point.x, escaped);
      }
    } else {
      ChartPoint p = p0;
      long long n_steps = static_cast<long long>(std::ceil(opt.lambda_max / opt.poly_dlambda));
      for (long long step = 0; step < n_steps && !escaped; ++step) {
        TangentVector v = sample_causal_direction(m, p, rng, opt.kind, orient);
        note_E(inner(m, dt_field.at(p), v));
        p.t += opt.poly_dlambda * v.vt;
        p.x += opt.poly_dlambda * v.vx;
        note_x(p.x, escaped);
      }
    }
    if (escaped) ++rep.n_escaped;
  }
  return rep;
}

}  // namespace sig2d
