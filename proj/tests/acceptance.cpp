// acceptance gate: one PASS/FAIL line per criterion

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sig2d/causal.hpp"
#include "sig2d/io.hpp"

using namespace sig2d;

namespace {

struct Clock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

double christoffel_diff(const ChristoffelSample& a, const ChristoffelSample& b) {
  double m = 0.0;
  m = std::max(m, std::abs(a.t_tt - b.t_tt));
  m = std::max(m, std::abs(a.t_tx - b.t_tx));
  m = std::max(m, std::abs(a.t_xx - b.t_xx));
  m = std::max(m, std::abs(a.x_tt - b.x_tt));
  m = std::max(m, std::abs(a.x_tx - b.x_tx));
  m = std::max(m, std::abs(a.x_xx - b.x_xx));
  return m;
}

double dist(const ChartPoint& a, const ChartPoint& b) {
  return std::hypot(a.t - b.t, a.x - b.x);
}

bool criterion_1(std::string& detail) {
  Clock clk;
  MetricField m = MetricField::rotating();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j)
      worst = std::max(worst,
                       std::abs(m.at({-2.0 + 4.0 * i / 199, -2.0 + 4.0 * j / 199}).det() + 1.0));
  double secs = clk.seconds();
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |det+1| = %.3g, %.3fs", worst, secs);
  detail = buf;
  return worst <= 1e-12 && secs < 1.0;
}

bool criterion_2(std::string& detail) {
  MetricField m = MetricField::rotating();
  VectorField V = VectorField::rotating_unit_timelike();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) {
      ChartPoint p{-2.0 + 4.0 * i / 199, -2.0 + 4.0 * j / 199};
      TangentVector v = V.at(p);
      worst = std::max(worst, std::abs(inner(m, v, v) + 1.0));
    }
  detail = "max |g(V,V)+1| = " + fmt17(worst);
  return worst <= 1e-12;
}

bool criterion_3(std::string& detail) {
  MetricField rot = MetricField::rotating();
  VectorField V = VectorField::rotating_unit_timelike();
  const char* pool[] = {"t^2 + x^2", "2 + sin(t)", "x^2 - t", "1 + t*x", "cos(t) + 3"};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  double worst = 0.0;
  for (const char* src : pool) {
    ScalarField f = ScalarField::parse(src);
    MetricField tr = MetricField::transformed(rot, f, V);
    for (int i = 0; i < 2000; ++i) {
      double t = d(rng), x = d(rng);
      worst = std::max(worst, std::abs(tr.at({t, x}).det() - (f(t, x) - 1.0)));
    }
  }
  MetricField cust = MetricField::custom(ScalarField::parse("-(2 + cos(x))"),
                                         ScalarField::parse("sin(t)/2"),
                                         ScalarField::parse("2 + sin(x)"));
  VectorField W(ScalarField::parse("1 + t^2/10"), ScalarField::parse("cos(x)"));
  double lemma = det_identity_max_error(cust, W, ScalarField::parse("t - x"), 5000,
                                        {-2, 2, -2, 2}, 9);
  char buf[128];
  std::snprintf(buf, sizeof buf, "preset err %.3g (<=1e-10), lemma err %.3g (<=1e-9)", worst,
                lemma);
  detail = buf;
  return worst <= 1e-10 && lemma <= 1e-9;
}

bool criterion_4(std::string& detail) {
  MetricField rot = MetricField::rotating();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  double worst = 0.0, per = 0.0;
  for (int i = 0; i < 50; ++i) {
    ChartPoint p{d(rng), d(rng)};
    worst = std::max(worst, christoffel_diff(christoffel_closed_rotating(M_PI, p),
                                             christoffel_numeric(rot, p, 1e-5)));
    per = std::max(per, christoffel_diff(christoffel_closed_rotating(M_PI, p),
                                         christoffel_closed_rotating(M_PI, {p.t, p.x + 0.5})));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "closed-vs-numeric %.3g (<=1e-4), period %.3g (<=1e-12)",
                worst, per);
  detail = buf;
  return worst <= 1e-4 && per <= 1e-12;
}

bool criterion_5(std::string& detail) {
  MetricField rot = MetricField::rotating();
  double worst = 0.0;
  bool signs = true;
  for (int i = 0; i <= 1000; ++i) {
    double x = i / 1000.0;
    double R = scalar_curvature(rot, {0.3, x});
    double c = std::cos(2.0 * M_PI * x);
    worst = std::max(worst, std::abs(R - 4.0 * M_PI * M_PI * c * c * c));
    double dk = std::abs(x - std::round(x));
    if (dk < 0.2 && R <= 0.0) signs = false;
    if (dk > 0.3 && R >= 0.0) signs = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max |R - 4pi^2 cos^3| = %.4g (<=1e-3), sign pattern %s", worst,
                signs ? "ok" : "violated");
  detail = buf;
  return worst <= 1e-3 && signs;
}

bool criterion_6(std::string& detail) {
  double worst = 0.0;
  for (int branch : {1, 2}) {
    double t = null_curve_closed_form(branch, 0.0, 0.0), x = 0.0;
    const int n = 2000;
    double h = 0.2 / n;
    for (int i = 0; i < n; ++i) {
      double k1 = null_branch_slope(branch, x);
      double k2 = null_branch_slope(branch, x + 0.5 * h);
      double k4 = null_branch_slope(branch, x + h);
      t += h * (k1 + 4 * k2 + k4) / 6.0;
      x += h;
      worst = std::max(worst, std::abs(t - null_curve_closed_form(branch, x, 0.0)));
    }
  }
  detail = "max closed-form deviation = " + fmt17(worst);
  return worst <= 1e-6;
}

bool criterion_7(std::string& detail) {
  Clock clk;
  MetricField rot = MetricField::rotating();
  VectorField V = VectorField::rotating_unit_timelike();
  Manifold plane(Topology::Plane);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(700 + i);
    std::uniform_real_distribution<double> td(-1.0, 1.0), xd(-0.2, 0.2);
    ChartPoint p0{td(rng), xd(rng)};
    TangentVector v = sample_causal_direction(rot, p0, rng, DirectionKind::Timelike, V);
    double s = 1.0 / std::sqrt(-inner(rot, v, v));
    v.vt *= s;
    v.vx *= s;
    IntegratorOptions opt;  // lambda_max 10, dlambda 1e-3
    opt.sample_stride = 5;
    GeodesicTrace tr = integrate_geodesic(rot, plane, v, opt);
    double E0 = tr.samples.front().energy;
    for (const TraceSample& smp : tr.samples) {
      worst = std::max(worst, std::abs(smp.energy - E0));
      worst = std::max(worst, std::abs(smp.norm2 + 1.0));
    }
  }
  double secs = clk.seconds();
  char buf[128];
  std::snprintf(buf, sizeof buf, "max drift %.3g (<=1e-8), %.2fs (<10s)", worst, secs);
  detail = buf;
  return worst <= 1e-8 && secs < 10.0;
}

bool criterion_8(std::string& detail) {
  MetricField rot = MetricField::rotating();
  TrappingOptions opt;  // 200 curves, mixed 100/100, margin 1e-6
  opt.seed = 8;
  TrappingReport causal = trapping_experiment(rot, 0, opt);
  TrappingOptions copt = opt;
  copt.n_curves = 50;
  copt.kind = DirectionKind::Spacelike;
  TrappingReport control = trapping_experiment(rot, 0, copt);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "escapes %d/200, max|x| %.6f, max E %.3g, control escapes %d/50",
                causal.n_escaped, causal.max_excursion, causal.max_E, control.n_escaped);
  detail = buf;
  return causal.n_escaped == 0 && causal.all_E_negative && control.n_escaped > 0;
}

bool criterion_9(std::string& detail) {
  MetricField cc = MetricField::crosscap_quadratic();
  auto loci = degeneracy_locus(cc, {-1.4, 1.4, -1.4, 1.4}, 256);
  if (loci.size() != 1) {
    detail = "expected a single locus component";
    return false;
  }
  double worst_r = 0.0;
  for (const ChartPoint& p : loci[0].pts)
    worst_r = std::max(worst_r, std::abs(std::hypot(p.t, p.x) - 1.0));

  RadicalScan scan = radical_classification(cc, loci[0], det_function(cc));
  const double r2 = 1.0 / std::sqrt(2.0);
  double worst_t = scan.tangency_points.size() == 4 ? 0.0 : 1e9;
  for (const ChartPoint& p : scan.tangency_points) {
    double best = 1e9;
    for (double st : {-r2, r2})
      for (double sx : {-r2, r2}) best = std::min(best, dist(p, {st, sx}));
    worst_t = std::max(worst_t, best);
  }
  int stray_tangent = 0;
  for (const RadicalReport& r : scan.reports) {
    if (r.cls != RadicalClass::Tangent) continue;
    double best = 1e9;
    for (double st : {-r2, r2})
      for (double sx : {-r2, r2}) best = std::min(best, dist(r.point, {st, sx}));
    if (best > 1e-3) ++stray_tangent;  // tangent class away from the four points
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "radial dev %.3g (<=1e-6), %zu tangency pts, worst offset %.3g (<=1e-9), "
                "stray tangents %d",
                worst_r, scan.tangency_points.size(), worst_t, stray_tangent);
  detail = buf;
  return worst_r <= 1e-6 && scan.tangency_points.size() == 4 && worst_t <= 1e-9 &&
         stray_tangent == 0;
}

bool criterion_10(std::string& detail) {
  ScalarField f = ScalarField::sum_of_squares();
  VectorField V = VectorField::rotating_unit_timelike();
  MetricField tr = MetricField::transformed(MetricField::rotating(), f, V);
  auto loci = degeneracy_locus(tr, {-1.4, 1.4, -1.4, 1.4}, 256);
  if (loci.size() != 1) {
    detail = "expected a single locus component";
    return false;
  }
  ConditionReport cr = condition_checks(f, V, loci[0]);
  RadicalScan scan = radical_classification(tr, loci[0], level_function(f));
  double match = 0.0;
  bool counts = cr.violation_points.size() == scan.tangency_points.size() &&
                !cr.violation_points.empty();
  if (counts) {
    for (const ChartPoint& a : cr.violation_points) {
      double best = 1e9;
      for (const ChartPoint& b : scan.tangency_points) best = std::min(best, dist(a, b));
      match = std::max(match, best);
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "min|grad f| %.9f (=2), cond2 %s, %zu roots, match %.3g (<=1e-8)",
                cr.min_grad_f, cr.condition2_holds ? "holds" : "fails",
                cr.violation_points.size(), match);
  detail = buf;
  return cr.condition1_holds && std::abs(cr.min_grad_f - 2.0) <= 1e-6 &&
         !cr.condition2_holds && counts && match <= 1e-8;
}

bool criterion_11(std::string& detail) {
  MetricField rot = MetricField::rotating();
  VectorField V = VectorField::rotating_unit_timelike();
  const char* fs[] = {"t^2 + x^2", "1 + t", "2 - t^2 - x^2"};
  double worst = 0.0;
  int n_points = 0;
  for (const char* src : fs) {
    ScalarField f = ScalarField::parse(src);
    MetricField tr = MetricField::transformed(rot, f, V);
    for (const Polyline& locus : degeneracy_locus(tr, {-1.6, 1.6, -1.6, 1.6}, 200)) {
      for (const ChartPoint& p : locus.pts) {
        TangentVector r = radical_at(tr, p);
        TangentVector v = V.at(p);
        double n = std::hypot(v.vt, v.vx);
        worst = std::max(worst, 1.0 - std::abs(r.vt * v.vt / n + r.vx * v.vx / n));
        ++n_points;
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "worst 1-|alignment| = %.3g over %d points (<=1e-8)", worst,
                n_points);
  detail = buf;
  return n_points > 0 && worst <= 1e-8;
}

bool criterion_12(std::string& detail) {
  std::mt19937_64 rng(12);
  double idem = 0.0;
  for (Topology topo :
       {Topology::InfiniteMobius, Topology::CompactMobius, Topology::RP2Square}) {
    Manifold man(topo);
    double span = topo == Topology::RP2Square ? std::sqrt(2.0) + 0.9 : 3.0;
    std::uniform_real_distribution<double> d(-span, span);
    for (int i = 0; i < 10000; ++i) {
      CanonicalResult once = man.canonicalize({d(rng), d(rng)});
      CanonicalResult twice = man.canonicalize(once.point);
      idem = std::max(idem, dist(once.point, twice.point));
      if (twice.moved) idem = std::max(idem, 1.0);
    }
  }
  Manifold mob(Topology::InfiniteMobius);
  double v_mis = 0.0, dt_mis = 0.0, c0 = 0.0, c1 = 0.0, cc0 = 0.0;
  for (const auto& r : mob.vector_field_seam_check(VectorField::rotating_unit_timelike(), 101))
    v_mis = std::max(v_mis, r.max_abs_mismatch);
  for (const auto& r : mob.vector_field_seam_check(VectorField::coordinate_time(), 101))
    dt_mis = std::max(dt_mis, r.max_abs_mismatch);
  for (const auto& r : mob.seam_compatibility(MetricField::rotating(), 0, 101))
    c0 = std::max(c0, r.max_abs_mismatch);
  for (const auto& r : mob.seam_compatibility(MetricField::rotating(), 1, 101))
    c1 = std::max(c1, r.max_abs_mismatch);
  Manifold rp2(Topology::RP2Square);
  for (const auto& r : rp2.seam_compatibility(MetricField::crosscap_quadratic(), 0, 101))
    cc0 = std::max(cc0, r.max_abs_mismatch);
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "idem %.3g, V seam %.3g (<=1e-12), dt seam %.15g (=2), C0 %.3g (<=1e-12); "
                "findings: C1 jump %.6f (4pi), crosscap C0 jump %.9f (2*sqrt2*|t|max=4)",
                idem, v_mis, dt_mis, c0, c1, cc0);
  detail = buf;
  return idem <= 1e-12 && v_mis <= 1e-12 && std::abs(dt_mis - 2.0) <= 1e-12 && c0 <= 1e-12 &&
         std::abs(c1 - 4.0 * M_PI) <= 1e-5 && std::abs(cc0 - 4.0) <= 1e-9;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool criterion_13(std::string& detail) {
#ifdef SIG2D_CLI_PATH
  std::string cli = SIG2D_CLI_PATH;
#else
  std::string cli = "./sig2d";
#endif
  std::string a = "acceptance_verify_a.json", b = "acceptance_verify_b.json";
  int ra = std::system((cli + " verify --seed 5 --out " + a).c_str());
  int rb = std::system((cli + " verify --seed 5 --out " + b).c_str());
  std::string ca = slurp(a), cb = slurp(b);
  char buf[128];
  std::snprintf(buf, sizeof buf, "exit codes %d/%d, %zu bytes, identical: %s", ra, rb,
                ca.size(), ca == cb && !ca.empty() ? "yes" : "no");
  detail = buf;
  return ra == 0 && rb == 0 && !ca.empty() && ca == cb;
}

using Criterion = bool (*)(std::string&);

}  // namespace

int main(int argc, char** argv) {
  Criterion table[] = {criterion_1, criterion_2, criterion_3,  criterion_4,  criterion_5,
                       criterion_6, criterion_7, criterion_8,  criterion_9,  criterion_10,
                       criterion_11, criterion_12, criterion_13};
  int lo = 1, hi = 13;
  if (argc > 1) {
    lo = hi = std::atoi(argv[1]);
    if (lo < 1 || lo > 13) {
      std::fprintf(stderr, "usage: %s [1..13]\n", argv[0]);
      return 2;
    }
  }
  bool all_ok = true;
  for (int n = lo; n <= hi; ++n) {
    std::string detail;
    bool ok = table[n - 1](detail);
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
    std::fflush(stdout);
    if (!ok) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
