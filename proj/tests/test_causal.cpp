// cone field, Killing character, trapping tests

#include <cmath>
#include <random>

#include <doctest.h>

#include "sig2d/causal.hpp"

using namespace sig2d;

TEST_CASE("null slopes") {
  MetricField flat = MetricField::flat();
  auto [a, b] = null_slopes(flat, {0.0, 0.0});
  CHECK_FALSE(a.vertical);
  CHECK_FALSE(b.vertical);
  CHECK(a.value == doctest::Approx(-1.0));
  CHECK(b.value == doctest::Approx(1.0));

  // vertical leg where g_tt = 0 (x = 1/4 on the rotating model)
  MetricField rot = MetricField::rotating();
  auto [c, d] = null_slopes(rot, {0.0, 0.25});
  CHECK(d.vertical);
  CHECK_FALSE(c.vertical);
  CHECK(std::abs(c.value) <= 1e-12);  // the finite leg is horizontal there

  CHECK_THROWS(null_slopes(MetricField::crosscap_quadratic(), {0.0, 0.0}));

  // residual of the cone quadratic at both roots, random x
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> xd(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    ChartPoint p{0.0, xd(rng)};
    MetricComponents g = rot.at(p);
    auto [s1, s2] = null_slopes(rot, p);
    for (const NullSlope& s : {s1, s2}) {
      if (s.vertical) {
        CHECK(std::abs(g.tt) <= 1e-9);
      } else {
        CHECK(std::abs(g.tt * s.value * s.value + 2 * g.tx * s.value + g.xx) <= 1e-9);
      }
    }
  }
}

TEST_CASE("cone continuity in angle coordinates") {
  MetricField rot = MetricField::rotating();
  // circular distance between line angles (mod pi)
  auto dline = [](double a, double b) {
    double d = std::fmod(std::abs(a - b), M_PI);
    return std::min(d, M_PI - d);
  };
  double prev1 = 0.0, prev2 = 0.0;
  bool first = true;
  for (int i = 0; i <= 1000; ++i) {
    double x = i / 1000.0;
    auto [d1, d2] = null_directions(rot, {0.0, x});
    double a1 = std::atan2(d1.vt, d1.vx);
    double a2 = std::atan2(d2.vt, d2.vx);
    if (!first) {
      // the unordered pair of legs moves continuously; labels may swap
      double keep = std::max(dline(a1, prev1), dline(a2, prev2));
      double swap = std::max(dline(a1, prev2), dline(a2, prev1));
      CHECK(std::min(keep, swap) <= 0.05);
    }
    prev1 = a1;
    prev2 = a2;
    first = false;
  }
}

TEST_CASE("closed-form null curves satisfy the cone ODE") {
  MetricField rot = MetricField::rotating();
  CHECK(null_curve_closed_form(1, 0.25, 0.0) ==
        doctest::Approx(-std::log(2.0) / (2.0 * M_PI)).epsilon(1e-12));
  CHECK(null_curve_closed_form(1, 0.0, 0.7) == doctest::Approx(0.7));
  CHECK_THROWS(null_curve_closed_form(2, 0.25, 0.0));  // cos = sin: vertical tangent

  double worst = 0.0;
  for (int branch : {1, 2}) {
    for (int i = 0; i <= 1000; ++i) {
      double x = -0.2 + 0.4 * i / 1000.0;
      double s = null_branch_slope(branch, x);
      MetricComponents g = rot.at({0.0, x});
      worst = std::max(worst, std::abs(g.tt * s * s + 2 * g.tx * s + g.xx));
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("killing character and stripes") {
  CHECK(killing_character(0.0).character == CausalCharacter::Timelike);
  CHECK(killing_character(0.0).value == doctest::Approx(-1.0));
  CHECK(killing_character(0.25).character == CausalCharacter::Null);
  CHECK(killing_character(0.5).character == CausalCharacter::Spacelike);
  CHECK(killing_character(0.5).value == doctest::Approx(1.0));
  CHECK(killing_character(1.0).value == doctest::Approx(-1.0));  // period 1

  auto s0 = stripe_of(0.1);
  REQUIRE(s0.has_value());
  CHECK(s0->k == 0);
  CHECK(s0->x_lo == doctest::Approx(-0.25));
  CHECK(s0->x_hi == doctest::Approx(0.25));
  auto s3 = stripe_of(-2.9);
  REQUIRE(s3.has_value());
  CHECK(s3->k == -3);
  CHECK_FALSE(stripe_of(0.25).has_value());
  CHECK_FALSE(stripe_of(0.5).has_value());
}

TEST_CASE("causal direction sampling") {
  std::mt19937_64 rng(47);
  MetricField flat = MetricField::flat();
  VectorField dt = VectorField::coordinate_time();
  for (int i = 0; i < 200; ++i) {
    TangentVector v = sample_causal_direction(flat, {0, 0}, rng, DirectionKind::Timelike, dt);
    CHECK(v.vt > std::abs(v.vx));
  }

  MetricField rot = MetricField::rotating();
  VectorField V = VectorField::rotating_unit_timelike();
  for (int i = 0; i < 200; ++i) {
    TangentVector v = sample_causal_direction(rot, {0, 0}, rng, DirectionKind::Timelike, V);
    CHECK(inner(rot, v, v) < 0.0);
    TangentVector kil{{0, 0}, 1.0, 0.0};
    CHECK(inner(rot, kil, v) < 0.0);

    TangentVector n = sample_causal_direction(rot, {0, 0}, rng, DirectionKind::Null, V);
    CHECK(std::abs(inner(rot, n, n)) <= 1e-12);
    CHECK(inner(rot, V.at({0, 0}), n) < 0.0);

    TangentVector s = sample_causal_direction(rot, {0, 0}, rng, DirectionKind::Spacelike, V);
    CHECK(inner(rot, s, s) > 0.0);
  }
}

TEST_CASE("stripe trapping, small ensembles") {
  MetricField rot = MetricField::rotating();
  TrappingOptions opt;
  opt.n_curves = 24;
  opt.lambda_max = 5.0;
  opt.seed = 7;
  TrappingReport rep = trapping_experiment(rot, 0, opt);
  CHECK(rep.n_escaped == 0);
  CHECK(rep.max_excursion < 0.25);
  CHECK(rep.all_E_negative);
  CHECK(rep.max_E < 0.0);

  TrappingOptions c = opt;
  c.kind = DirectionKind::Spacelike;
  TrappingReport control = trapping_experiment(rot, 0, c);
  CHECK(control.n_escaped > 0);

  TrappingOptions k1 = opt;
  k1.n_curves = 8;
  TrappingReport rep1 = trapping_experiment(rot, 1, k1);
  CHECK(rep1.k == 1);
  CHECK(rep1.n_escaped == 0);
}
