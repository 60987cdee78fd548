// sig2d - connection coefficients, curvature, geodesic RK4

#include "sig2d/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace sig2d {

namespace {

struct State {
  double t, x, vt, vx;
  bool finite() const {
    return std::isfinite(t) && std::isfinite(x) && std::isfinite(vt) && std::isfinite(vx);
  }
};

class DegenerateMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Christoffels used by the integrator: closed forms where available.
ChristoffelSample connection(const MetricField& m, const ChartPoint& p, double stop_det) {
  MetricComponents g = m.at(p);
  if (std::abs(g.det()) < stop_det) throw DegenerateMetric("degenerate point");
  switch (m.kind()) {
    case MetricField::Kind::Flat:
      return ChristoffelSample{p, 0, 0, 0, 0, 0, 0};
    case MetricField::Kind::Rotating:
      return christoffel_closed_rotating(m.angle_rate(), p);
    default:
      return christoffel_numeric(m, p, kDefaultFdStep);
  }
}

}  // namespace

ChristoffelSample christoffel_numeric(const MetricField& m, const ChartPoint& p, double h) {
  if (h <= 0.0) throw std::invalid_argument("christoffel_numeric: h > 0");
  MetricComponents g = m.at(p);
  double det = g.det();
  if (std::abs(det) <= kDefaultTolDeg)
    throw std::domain_error("christoffel_numeric: degenerate point, no inverse metric");

  // inverse components
  double inv = 1.0 / det;
  double itt = g.xx * inv, itx = -g.tx * inv, ixx = g.tt * inv;

  MetricComponents gtp = m.at(ChartPoint{p.t + h, p.x});
  MetricComponents gtm = m.at(ChartPoint{p.t - h, p.x});
  MetricComponents gxp = m.at(ChartPoint{p.t, p.x + h});
  MetricComponents gxm = m.at(ChartPoint{p.t, p.x - h});
  double dt_tt = (gtp.tt - gtm.tt) / (2 * h), dx_tt = (gxp.tt - gxm.tt) / (2 * h);
  double dt_tx = (gtp.tx - gtm.tx) / (2 * h), dx_tx = (gxp.tx - gxm.tx) / (2 * h);
  double dt_xx = (gtp.xx - gtm.xx) / (2 * h), dx_xx = (gxp.xx - gxm.xx) / (2 * h);

  // lowered symbols [bc,d] = (d_b g_dc + d_c g_bd - d_d g_bc) / 2
  double l_tt_t = 0.5 * dt_tt;
  double l_tt_x = dt_tx - 0.5 * dx_tt;
  double l_tx_t = 0.5 * dx_tt;
  double l_tx_x = 0.5 * dt_xx;
  double l_xx_t = dx_tx - 0.5 * dt_xx;
  double l_xx_x = 0.5 * dx_xx;

  return ChristoffelSample{
      p,
      itt * l_tt_t + itx * l_tt_x,
      itt * l_tx_t + itx * l_tx_x,
      itt * l_xx_t + itx * l_xx_x,
      itx * l_tt_t + ixx * l_tt_x,
      itx * l_tx_t + ixx * l_tx_x,
      itx * l_xx_t + ixx * l_xx_x,
  };
}

ChristoffelSample christoffel_closed_rotating(double angle_rate, const ChartPoint& p) {
  double a = angle_rate;
  double two_phi = 2.0 * a * p.x;
  double s2 = std::sin(two_phi), c2 = std::cos(two_phi);
  double s4_half = a * s2 * c2;               // (a/2) sin(4 phi)
  double s2sq = a * s2 * s2;                  // a sin^2(2 phi)
  return ChristoffelSample{
      p,
      -s2sq,                                  // t_tt
      -s4_half,                               // t_tx
      -a * (1.0 + c2 * c2),                   // t_xx
      -s4_half,                               // x_tt
      s2sq,                                   // x_tx
      s4_half,                                // x_xx
  };
}

double scalar_curvature(const MetricField& m, const ChartPoint& p, double h) {
  MetricComponents g0 = m.at(p);
  double det = g0.det();
  if (std::abs(det) <= kDefaultTolDeg)
    throw std::domain_error("scalar_curvature: degenerate point");

  auto E = [&](double t, double x) { return m.at(ChartPoint{t, x}).tt; };
  auto F = [&](double t, double x) { return m.at(ChartPoint{t, x}).tx; };
  auto G = [&](double t, double x) { return m.at(ChartPoint{t, x}).xx; };
  double t = p.t, x = p.x;

  double Eu = (E(t + h, x) - E(t - h, x)) / (2 * h);
  double Ev = (E(t, x + h) - E(t, x - h)) / (2 * h);
  double Gu = (G(t + h, x) - G(t - h, x)) / (2 * h);
  double Gv = (G(t, x + h) - G(t, x - h)) / (2 * h);
  double Fu = (F(t + h, x) - F(t - h, x)) / (2 * h);
  double Fv = (F(t, x + h) - F(t, x - h)) / (2 * h);
  double Evv = (E(t, x + h) - 2 * E(t, x) + E(t, x - h)) / (h * h);
  double Guu = (G(t + h, x) - 2 * G(t, x) + G(t - h, x)) / (h * h);
  double Fuv = (F(t + h, x + h) - F(t + h, x - h) - F(t - h, x + h) + F(t - h, x - h)) /
               (4 * h * h);

  double e = g0.tt, f = g0.tx, g = g0.xx;
  auto det3 = [](double a00, double a01, double a02, double a10, double a11, double a12,
                 double a20, double a21, double a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
           a02 * (a10 * a21 - a11 * a20);
  };
  double A = det3(-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
                  Fv - 0.5 * Gu, e, f,
                  0.5 * Gv, f, g);
  double B = det3(0.0, 0.5 * Ev, 0.5 * Gu,
                  0.5 * Ev, e, f,
                  0.5 * Gu, f, g);
  double K = (A - B) / (det * det);
  return 2.0 * K;
}

GeodesicTrace integrate_geodesic(const MetricField& m, const Manifold& man,
                                 const TangentVector& init, const IntegratorOptions& opt) {
  if (opt.dlambda <= 0.0) throw std::invalid_argument("integrate_geodesic: dlambda > 0");
  double stop_det = 10.0 * opt.tol_deg;

  GeodesicTrace trace;
  State y{init.base.t, init.base.x, init.vt, init.vx};

  auto record = [&](double lam) {
    ChartPoint p{y.t, y.x};
    MetricComponents g = m.at(p);
    double energy = g.tt * y.vt + g.tx * y.vx;
    double norm2 = g.tt * y.vt * y.vt + 2 * g.tx * y.vt * y.vx + g.xx * y.vx * y.vx;
    trace.samples.push_back(TraceSample{lam, p, y.vt, y.vx, energy, norm2});
  };

  auto rhs = [&](const State& s) {
    ChristoffelSample c = connection(m, ChartPoint{s.t, s.x}, stop_det);
    double at = -(c.t_tt * s.vt * s.vt + 2 * c.t_tx * s.vt * s.vx + c.t_xx * s.vx * s.vx);
    double ax = -(c.x_tt * s.vt * s.vt + 2 * c.x_tx * s.vt * s.vx + c.x_xx * s.vx * s.vx);
    return State{s.vt, s.vx, at, ax};
  };

  auto rk4 = [&](const State& s, double h) {
    State k1 = rhs(s);
    State k2 = rhs(State{s.t + 0.5 * h * k1.t, s.x + 0.5 * h * k1.x,
                         s.vt + 0.5 * h * k1.vt, s.vx + 0.5 * h * k1.vx});
    State k3 = rhs(State{s.t + 0.5 * h * k2.t, s.x + 0.5 * h * k2.x,
                         s.vt + 0.5 * h * k2.vt, s.vx + 0.5 * h * k2.vx});
    State k4 = rhs(State{s.t + h * k3.t, s.x + h * k3.x,
                         s.vt + h * k3.vt, s.vx + h * k3.vx});
    return State{s.t + h * (k1.t + 2 * k2.t + 2 * k3.t + k4.t) / 6.0,
                 s.x + h * (k1.x + 2 * k2.x + 2 * k3.x + k4.x) / 6.0,
                 s.vt + h * (k1.vt + 2 * k2.vt + 2 * k3.vt + k4.vt) / 6.0,
                 s.vx + h * (k1.vx + 2 * k2.vx + 2 * k3.vx + k4.vx) / 6.0};
  };

  {
    MetricComponents g = m.at(init.base);
    if (std::abs(g.det()) < stop_det)
      throw std::domain_error("integrate_geodesic: degenerate initial point");
  }

  record(0.0);
  long long n_steps = static_cast<long long>(std::ceil(opt.lambda_max / opt.dlambda));
  const double init_det = m.at(init.base).det();
  double prev_det = init_det;

  for (long long step = 0; step < n_steps; ++step) {
    double lam = (step + 1) * opt.dlambda;
    double dl = opt.dlambda;

    double done = 0.0;
    int budget = 100000;  // substep attempts per outer step

    while (done < dl) {
      if (--budget < 0) {
        trace.status = TraceStatus::StepFailure;
        return trace;
      }
      // coordinate-velocity blow-up happens at finite affine parameter, both
      // at degenerate curves and at Killing horizons (reached at t -> inf);
      // stop before the step becomes unresolvable. A collapsing det means
      // the blow-up is degeneracy-driven.
      double speed = std::abs(y.vt) + std::abs(y.vx);
      if (speed > opt.speed_cap) {
        trace.status = std::abs(prev_det) < 1e-3 * std::abs(init_det)
                           ? TraceStatus::HitDegeneracy
                           : TraceStatus::StepFailure;
        return trace;
      }

      // step-doubling control: halve h until one full step matches two half
      // steps, then keep the more accurate half-step result
      double h = std::min(dl - done, dl / std::max(1.0, speed));
      const double h_min = dl * 1e-12;
      State y1;
      bool accepted = false;
      while (!accepted) {
        try {
          State full = rk4(y, h);
          State half = rk4(rk4(y, 0.5 * h), 0.5 * h);
          double err = std::max(std::max(std::abs(full.t - half.t), std::abs(full.x - half.x)),
                                std::max(std::abs(full.vt - half.vt), std::abs(full.vx - half.vx)));
          if (err <= 1e-11 * (1.0 + speed) || h <= h_min) {
            y1 = half;
            accepted = true;
          }
        } catch (const DegenerateMetric&) {
          // stage reached into the stop band; resolve the approach, or stop
          if (h <= h_min) {
            trace.status = TraceStatus::HitDegeneracy;
            return trace;
          }
        } catch (const std::exception&) {
          // a stage left the domain of the metric (overflowed coordinates)
          trace.status = TraceStatus::StepFailure;
          return trace;
        }
        if (!accepted) {
          h *= 0.5;
          if (--budget < 0) {
            trace.status = TraceStatus::StepFailure;
            return trace;
          }
        }
      }
      if (!y1.finite()) {
        trace.status = TraceStatus::StepFailure;
        return trace;
      }
      done += h;
      double lam_sub = step * opt.dlambda + done;

      double new_det;
      try {
        new_det = m.at(ChartPoint{y1.t, y1.x}).det();
      } catch (const std::exception&) {
        trace.status = TraceStatus::StepFailure;
        return trace;
      }
      // a step that lands inside the stop band or straddles det = 0 reaches H
      if (std::abs(new_det) < stop_det || new_det * prev_det < 0.0) {
        trace.status = TraceStatus::HitDegeneracy;
        return trace;
      }
      prev_det = new_det;

      // fold through the quotient; at most one germ per step
      CanonicalResult canon = man.canonicalize(ChartPoint{y1.t, y1.x});
      if (canon.moved) {
        if (man.topology() == Topology::InfiniteMobius ||
            man.topology() == Topology::CompactMobius) {
          // reject double wrap (|x jump| >= 2)
          if (std::abs(y1.x - canon.point.x) >= 2.0) {
            trace.status = TraceStatus::StepFailure;
            return trace;
          }
        }
        y1.t = canon.point.t;
        y1.x = canon.point.x;
        canon.jacobian.apply(y1.vt, y1.vx);
        trace.seam_events.push_back(SeamEvent{lam_sub, canon.seam});
      }

      y = y1;
    }
    if ((step + 1) % opt.sample_stride == 0 || step + 1 == n_steps) record(lam);

    if (!opt.window.contains(ChartPoint{y.t, y.x})) {
      trace.status = TraceStatus::LeftWindow;
      return trace;
    }
  }
  trace.status = TraceStatus::Completed;
  return trace;
}

}  // namespace sig2d
