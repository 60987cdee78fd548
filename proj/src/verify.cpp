// sig2d - property suite: every check the CLI `verify` command runs

#include "sig2d/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sig2d/causal.hpp"

namespace sig2d {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

Verdict required(std::string check, double measured, double threshold, std::string oracle) {
  return Verdict{std::move(check), true, measured <= threshold, measured, threshold,
                 std::move(oracle)};
}

Verdict report_only(std::string check, bool passed, double measured, double threshold,
                    std::string oracle) {
  return Verdict{std::move(check), false, passed, measured, threshold, std::move(oracle)};
}

double max_abs_diff_christoffel(const ChristoffelSample& a, const ChristoffelSample& b) {
  double m = 0.0;
  m = std::max(m, std::abs(a.t_tt - b.t_tt));
  m = std::max(m, std::abs(a.t_tx - b.t_tx));
  m = std::max(m, std::abs(a.t_xx - b.t_xx));
  m = std::max(m, std::abs(a.x_tt - b.x_tt));
  m = std::max(m, std::abs(a.x_tx - b.x_tx));
  m = std::max(m, std::abs(a.x_xx - b.x_xx));
  return m;
}

// RK4 on dt/dx along one cone branch, fixed step.
double integrate_null_branch(int branch, double x0, double x1, double t0, int n_steps) {
  double h = (x1 - x0) / n_steps;
  double t = t0, x = x0;
  for (int i = 0; i < n_steps; ++i) {
    double k1 = null_branch_slope(branch, x);
    double k2 = null_branch_slope(branch, x + 0.5 * h);
    double k3 = k2;
    double k4 = null_branch_slope(branch, x + h);
    t += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
    x += h;
  }
  return t;
}

double dist(const ChartPoint& a, const ChartPoint& b) {
  return std::hypot(a.t - b.t, a.x - b.x);
}

}  // namespace

int VerifyResult::required_failures() const {
  int n = 0;
  for (const Verdict& v : verdicts)
    if (v.required && !v.passed) ++n;
  return n;
}

nlohmann::json VerifyResult::to_json() const {
  return nlohmann::json{{"verdicts", verdicts_json(verdicts)},
                        {"required_failures", required_failures()},
                        {"reports", reports}};
}

VerifyResult run_verification(std::uint64_t seed) {
  VerifyResult out;
  auto& V = out.verdicts;
  const MetricField rot = MetricField::rotating();
  const VectorField vrot = VectorField::rotating_unit_timelike();

  // --- determinant of the rotating family is identically -1
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j < 200; ++j) {
        ChartPoint p{-2.0 + 4.0 * i / 199, -2.0 + 4.0 * j / 199};
        worst = std::max(worst, std::abs(rot.at(p).det() + 1.0));
      }
    V.push_back(required("rotating-det-constant", worst, 1e-12, "constant -1"));
  }

  // --- the rotating V preset is unit timelike everywhere
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j < 200; ++j) {
        ChartPoint p{-2.0 + 4.0 * i / 199, -2.0 + 4.0 * j / 199};
        TangentVector v = vrot.at(p);
        worst = std::max(worst, std::abs(inner(rot, v, v) + 1.0));
      }
    V.push_back(required("rotating-V-unit-timelike", worst, 1e-12, "constant -1"));
  }

  // --- det(g~) = f - 1 for the transformed rotating family
  {
    const char* pool[] = {"t^2 + x^2",      "2 + sin(t)",  "x^2 - t",
                          "1 + t*x",        "cos(t) + 3",  "exp(x/4)"};
    std::mt19937_64 rng(seed ^ 0x3c6ef372fe94f82aULL);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    double worst = 0.0;
    for (const char* src : pool) {
      ScalarField f = ScalarField::parse(src);
      MetricField tr = MetricField::transformed(rot, f, vrot);
      for (int i = 0; i < 10000 / 6 + 1; ++i) {
        double t = coord(rng), x = coord(rng);
        worst = std::max(worst, std::abs(tr.at({t, x}).det() - (f(t, x) - 1.0)));
      }
    }
    V.push_back(required("transformed-det-equals-f-minus-1", worst, 1e-10,
                         "closed-form determinant"));
  }

  // --- general rank-one update determinant identity on custom metrics
  {
    double worst = 0.0;
    Rect win{-2, 2, -2, 2};
    struct Case {
      const char *tt, *tx, *xx, *vt, *vx, *f;
    };
    const Case cases[] = {
        {"-(2 + cos(x))", "sin(t)/2", "2 + sin(x)", "1 + t^2/10", "cos(x)", "t - x"},
        {"-1 - t^2/4", "t*x/8", "1 + x^2/4", "sin(t + x)", "2 - cos(t)", "sin(t)*x"},
        {"cos(t)/2 - 2", "1/4", "3 + sin(x)/2", "x/3", "1 + t/5", "t^2 - x^2"},
    };
    int idx = 0;
    for (const Case& c : cases) {
      MetricField g = MetricField::custom(ScalarField::parse(c.tt), ScalarField::parse(c.tx),
                                          ScalarField::parse(c.xx));
      VectorField Vf(ScalarField::parse(c.vt), ScalarField::parse(c.vx));
      ScalarField f = ScalarField::parse(c.f);
      worst = std::max(worst, det_identity_max_error(g, Vf, f, 2000, win, seed + idx++));
    }
    V.push_back(required("rank-one-update-det-identity", worst, 1e-9,
                         "matrix determinant lemma"));
  }

  // --- closed-form connection coefficients vs central differences
  {
    std::mt19937_64 rng(seed ^ 0x94d049bb133111ebULL);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      ChartPoint p{coord(rng), coord(rng)};
      worst = std::max(worst, max_abs_diff_christoffel(christoffel_closed_rotating(M_PI, p),
                                                       christoffel_numeric(rot, p, 1e-5)));
    }
    V.push_back(required("connection-closed-vs-numeric", worst, 1e-4,
                         "central-difference Levi-Civita"));
    V.push_back(report_only("connection-closed-form-list", worst <= 1e-4, worst, 1e-4,
                            "central-difference Levi-Civita"));

    double period_worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      double x = coord(rng), t = coord(rng);
      period_worst = std::max(
          period_worst, max_abs_diff_christoffel(christoffel_closed_rotating(M_PI, {t, x}),
                                                 christoffel_closed_rotating(M_PI, {t, x + 0.5})));
    }
    V.push_back(required("connection-half-period", period_worst, 1e-12, "closed form shift"));
  }

  // --- scalar curvature: numeric Brioschi vs closed profile and sign pattern
  {
    double worst = 0.0, worst_cubed = 0.0;
    bool signs_ok = true;
    for (int i = 0; i <= 1000; ++i) {
      double x = i / 1000.0;
      double R = scalar_curvature(rot, {0.3, x});
      double c = std::cos(kTwoPi * x);
      worst = std::max(worst, std::abs(R - 4.0 * M_PI * M_PI * c));
      worst_cubed = std::max(worst_cubed, std::abs(R - 4.0 * M_PI * M_PI * c * c * c));
      double d = std::abs(x - std::round(x));
      if (d < 0.2 && R <= 0.0) signs_ok = false;           // stationary stripe interior
      if (d > 0.3 && d < 0.5 + 1e-12 && R >= 0.0) signs_ok = false;  // complement interior
    }
    V.push_back(required("curvature-numeric-vs-cos-profile", worst, 1e-3,
                         "closed form 4*pi^2*cos(2*pi*x)"));
    V.push_back(Verdict{"curvature-sign-pattern", true, signs_ok, signs_ok ? 0.0 : 1.0, 0.5,
                        "sign sampling on stripe interiors"});
    V.push_back(report_only("curvature-cubed-profile", worst_cubed <= 1e-3, worst_cubed, 1e-3,
                            "closed form 4*pi^2*cos(2*pi*x)^3"));
  }

  // --- null curves: branch integration matches the log closed forms
  {
    double worst = 0.0;
    for (int branch : {1, 2}) {
      double t_num = integrate_null_branch(branch, 0.0, 0.2, null_curve_closed_form(branch, 0.0, 0.0),
                                           2000);
      worst = std::max(worst, std::abs(t_num - null_curve_closed_form(branch, 0.2, 0.0)));
      // ODE residual of the closed form against the cone quadratic
      for (int i = 0; i <= 1000; ++i) {
        double x = 0.2 * i / 1000.0;
        double s = null_branch_slope(branch, x);
        auto [a, b] = null_slopes(rot, {0.0, x});
        double res = std::min(a.vertical ? 1e9 : std::abs(s - a.value),
                              b.vertical ? 1e9 : std::abs(s - b.value));
        worst = std::max(worst, res);
      }
    }
    V.push_back(required("null-curve-branches", worst, 1e-6, "closed-form log curves"));
  }

  // --- Killing-energy and norm conservation along timelike geodesics
  {
    double worst = 0.0;
    Manifold plane(Topology::Plane);
    for (int i = 0; i < 20; ++i) {
      std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1000 + i);
      std::uniform_real_distribution<double> td(-1.0, 1.0), xd(-0.2, 0.2);
      ChartPoint p0{td(rng), xd(rng)};
      TangentVector v =
          sample_causal_direction(rot, p0, rng, DirectionKind::Timelike, vrot);
      double scale = 1.0 / std::sqrt(-inner(rot, v, v));
      v.vt *= scale;
      v.vx *= scale;
      IntegratorOptions opt;
      opt.sample_stride = 10;
      GeodesicTrace tr = integrate_geodesic(rot, plane, v, opt);
      double E0 = tr.samples.front().energy;
      for (const TraceSample& s : tr.samples) {
        worst = std::max(worst, std::abs(s.energy - E0));
        worst = std::max(worst, std::abs(s.norm2 + 1.0));
      }
    }
    V.push_back(required("geodesic-conservation-drift", worst, 1e-8,
                         "Killing energy and norm invariants"));
  }

  // --- stripe trapping with a spacelike control ensemble
  {
    TrappingOptions topt;
    topt.n_curves = 200;
    topt.seed = seed;
    TrappingReport causal = trapping_experiment(rot, 0, topt);
    out.reports["trapping"] = trapping_json(causal);
    V.push_back(required("stripe-trapping-escapes", causal.n_escaped, 0.0,
                         "stripe-exit counter"));
    V.push_back(Verdict{"stripe-trapping-energy-sign", true, causal.all_E_negative,
                        causal.max_E, 0.0, "per-sample Killing energy"});

    TrappingOptions copt = topt;
    copt.n_curves = 50;
    copt.kind = DirectionKind::Spacelike;
    TrappingReport control = trapping_experiment(rot, 0, copt);
    out.reports["trapping_control"] = trapping_json(control);
    V.push_back(Verdict{"spacelike-control-escapes", true, control.n_escaped > 0,
                        static_cast<double>(control.n_escaped), 1.0,
                        "precondition-violating ensemble"});
  }

  // --- crosscap degeneracy circle and radical tangency points
  {
    MetricField cc = MetricField::crosscap_quadratic();
    Rect win{-1.5, 1.5, -1.5, 1.5};
    auto loci = degeneracy_locus(cc, win, 201);
    double worst_r = loci.empty() ? 1e9 : 0.0;
    size_t n_vertices = 0;
    for (const Polyline& locus : loci) {
      for (const ChartPoint& p : locus.pts) {
        worst_r = std::max(worst_r, std::abs(std::hypot(p.t, p.x) - 1.0));
        ++n_vertices;
      }
    }
    V.push_back(required("crosscap-locus-unit-circle", worst_r, 1e-6,
                         "radial deviation on extracted locus"));

    std::vector<ChartPoint> tang;
    double worst_align = 0.0;  // min |dot| with (t,-x), tracked as 1-|dot|
    int n_tangent_class = 0;
    for (const Polyline& locus : loci) {
      RadicalScan scan = radical_classification(cc, locus, det_function(cc));
      for (const ChartPoint& p : scan.tangency_points) tang.push_back(p);
      for (const RadicalReport& r : scan.reports) {
        if (r.cls == RadicalClass::Tangent) ++n_tangent_class;
        double n = std::hypot(r.point.t, r.point.x);
        double dot = std::abs(r.radical_dir.vt * (r.point.t / n) +
                              r.radical_dir.vx * (-r.point.x / n));
        worst_align = std::max(worst_align, 1.0 - dot);
      }
    }
    const double r2 = 1.0 / std::sqrt(2.0);
    double worst_t = tang.size() == 4 ? 0.0 : 1e9;
    for (const ChartPoint& p : tang) {
      double best = 1e9;
      for (double st : {-r2, r2})
        for (double sx : {-r2, r2}) best = std::min(best, dist(p, {st, sx}));
      worst_t = std::max(worst_t, best);
    }
    V.push_back(required("crosscap-tangency-points", worst_t, 1e-9,
                         "four diagonal circle points"));
    V.push_back(required("crosscap-radical-direction", worst_align, 1e-6,
                         "null space of the component matrix"));
    V.push_back(Verdict{"crosscap-transverse-elsewhere", true, n_tangent_class <= 8,
                        static_cast<double>(n_tangent_class), 8.0,
                        "class counter near tangency points"});
    V.push_back(report_only("radical-span-representative", worst_align <= 1e-6, worst_align,
                            1e-6, "numeric null space vs (t,-x)"));
    nlohmann::json tj = nlohmann::json::array();
    for (const ChartPoint& p : tang) tj.push_back({{"t", p.t}, {"x", p.x}});
    out.reports["crosscap_tangency_points"] = tj;
  }

  // --- transversality conditions for f = t^2 + x^2 on the transformed model
  {
    ScalarField f = ScalarField::sum_of_squares();
    MetricField tr = MetricField::transformed(rot, f, vrot);
    Rect win{-1.5, 1.5, -1.5, 1.5};
    auto loci = degeneracy_locus(tr, win, 201);
    double cond1_err = 1e9, match_err = loci.empty() ? 1e9 : 0.0;
    bool cond2_failed_with_roots = !loci.empty();
    std::vector<ChartPoint> cond_roots, tang_pts;
    for (const Polyline& locus : loci) {
      ConditionReport cr = condition_checks(f, vrot, locus);
      cond1_err = std::min(cond1_err, std::abs(cr.min_grad_f - 2.0));
      if (cr.condition2_holds || cr.violation_points.empty()) cond2_failed_with_roots = false;
      for (const ChartPoint& p : cr.violation_points) cond_roots.push_back(p);
      RadicalScan scan = radical_classification(tr, locus, level_function(f));
      for (const ChartPoint& p : scan.tangency_points) tang_pts.push_back(p);
    }
    V.push_back(required("condition1-grad-norm-on-locus", cond1_err, 1e-6,
                         "|grad f| = 2 on the unit circle"));
    V.push_back(Verdict{"condition2-fails-with-roots", true, cond2_failed_with_roots,
                        static_cast<double>(cond_roots.size()), 1.0,
                        "root scan of the directional derivative"});
    // the two independently refined root sets must coincide pairwise
    if (cond_roots.size() != tang_pts.size() || cond_roots.empty()) {
      match_err = 1e9;
    } else {
      for (const ChartPoint& a : cond_roots) {
        double best = 1e9;
        for (const ChartPoint& b : tang_pts) best = std::min(best, dist(a, b));
        match_err = std::max(match_err, best);
      }
    }
    V.push_back(required("condition2-roots-match-tangencies", match_err, 1e-8,
                         "independent tangency refinement"));
    out.reports["condition2_root_count"] = cond_roots.size();
  }

  // --- radical of the transformed metric equals V on the locus
  {
    const char* fs[] = {"t^2 + x^2", "1 + t", "2 - t^2 - x^2"};
    Rect win{-1.6, 1.6, -1.6, 1.6};
    double worst = 0.0;
    for (const char* src : fs) {
      ScalarField f = ScalarField::parse(src);
      MetricField tr = MetricField::transformed(rot, f, vrot);
      for (const Polyline& locus : degeneracy_locus(tr, win, 161)) {
        for (const ChartPoint& p : locus.pts) {
          TangentVector r = radical_at(tr, p);
          TangentVector v = vrot.at(p);
          double n = std::hypot(v.vt, v.vx);
          double dot = std::abs(r.vt * v.vt / n + r.vx * v.vx / n);
          worst = std::max(worst, 1.0 - dot);
        }
      }
    }
    V.push_back(required("transformed-radical-equals-V", worst, 1e-8,
                         "brute-force null-space residual"));
  }

  // --- quotient folding and seam compatibility
  {
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
    double worst_idem = 0.0;
    for (Topology topo : {Topology::InfiniteMobius, Topology::CompactMobius, Topology::RP2Square}) {
      Manifold man(topo);
      double span = topo == Topology::RP2Square ? std::sqrt(2.0) + 0.9 : 3.0;
      std::uniform_real_distribution<double> cd(-span, span);
      for (int i = 0; i < 10000; ++i) {
        ChartPoint raw{cd(rng), cd(rng)};
        CanonicalResult once = man.canonicalize(raw);
        CanonicalResult twice = man.canonicalize(once.point);
        worst_idem = std::max(worst_idem, dist(once.point, twice.point));
        if (twice.moved) worst_idem = std::max(worst_idem, 1.0);
      }
    }
    V.push_back(required("canonicalize-idempotent", worst_idem, 1e-12, "double application"));

    Manifold mob(Topology::InfiniteMobius);
    double v_mis = 0.0, dt_mis = 0.0;
    for (const SeamReport& r : mob.vector_field_seam_check(vrot, 41))
      v_mis = std::max(v_mis, r.max_abs_mismatch);
    for (const SeamReport& r : mob.vector_field_seam_check(VectorField::coordinate_time(), 41))
      dt_mis = std::max(dt_mis, r.max_abs_mismatch);
    V.push_back(required("V-descends-to-mobius", v_mis, 1e-12, "deck transport mismatch"));
    V.push_back(required("coordinate-time-obstructed", std::abs(dt_mis - 2.0), 1e-12,
                         "deck transport mismatch"));

    auto c0 = mob.seam_compatibility(rot, 0, 41);
    double c0_mis = 0.0;
    for (const SeamReport& r : c0) c0_mis = std::max(c0_mis, r.max_abs_mismatch);
    V.push_back(required("mobius-metric-seam-order0", c0_mis, 1e-12, "deck pullback"));

    auto c1 = mob.seam_compatibility(rot, 1, 41);
    double c1_mis = 0.0;
    for (const SeamReport& r : c1) c1_mis = std::max(c1_mis, r.max_abs_mismatch);
    V.push_back(report_only("mobius-metric-seam-order1", std::abs(c1_mis - 4.0 * M_PI) <= 1e-5,
                            c1_mis, 4.0 * M_PI, "transverse-derivative jump"));
    out.reports["mobius_seams_order0"] = seam_reports_json(c0);
    out.reports["mobius_seams_order1"] = seam_reports_json(c1);

    Manifold rp2(Topology::RP2Square);
    auto cc0 = rp2.seam_compatibility(MetricField::crosscap_quadratic(), 0, 41);
    double cc_mis = 0.0;
    for (const SeamReport& r : cc0) cc_mis = std::max(cc_mis, r.max_abs_mismatch);
    V.push_back(report_only("crosscap-square-seam-order0", std::abs(cc_mis - 4.0) <= 1e-9,
                            cc_mis, 4.0, "off-diagonal deck pullback jump"));
    out.reports["rp2_seams_order0"] = seam_reports_json(cc0);
  }

  return out;
}

}  // namespace sig2d
