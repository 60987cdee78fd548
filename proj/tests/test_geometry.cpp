// metric field and frame tests

#include <cmath>
#include <random>

#include <doctest.h>

#include "sig2d/geometry.hpp"

using namespace sig2d;

namespace {

// brute-force eigenvalue-sign classification of the symmetric 2x2 matrix
SignatureClass eigen_oracle(const MetricComponents& g, double tol) {
  if (std::abs(g.det()) <= tol) return SignatureClass::Degenerate;
  double tr = g.tt + g.xx;
  double disc = std::sqrt(tr * tr - 4.0 * g.det());
  double l1 = 0.5 * (tr - disc), l2 = 0.5 * (tr + disc);
  if (l1 * l2 < 0.0) return SignatureClass::Lorentzian;
  return l1 > 0.0 ? SignatureClass::Riemannian : SignatureClass::NegativeDefinite;
}

}  // namespace

TEST_CASE("rotating components") {
  MetricField m = MetricField::rotating();
  MetricComponents g0 = m.at({0.7, 0.0});
  CHECK(g0.tt == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(g0.tx == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g0.xx == doctest::Approx(1.0).epsilon(1e-15));

  MetricField frozen = MetricField::rotating(0.0);
  MetricComponents gf = frozen.at({-3.0, 2.4});
  CHECK(gf.tt == -1.0);
  CHECK(gf.tx == 0.0);
  CHECK(gf.xx == 1.0);

  double worst = 0.0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) {
      ChartPoint p{-2.0 + 4.0 * i / 199, -2.0 + 4.0 * j / 199};
      worst = std::max(worst, std::abs(m.at(p).det() + 1.0));
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("crosscap samples and classification") {
  MetricField m = MetricField::crosscap_quadratic();
  MetricSample a = m.sample({0.0, 0.0});
  CHECK(a.g_tt == 1.0);
  CHECK(a.g_tx == 0.0);
  CHECK(a.g_xx == 1.0);
  CHECK(a.det == 1.0);
  CHECK(a.cls == SignatureClass::Riemannian);

  MetricSample b = m.sample({1.2, 0.0});
  CHECK(b.det == doctest::Approx(-0.44).epsilon(1e-14));
  CHECK(b.cls == SignatureClass::Lorentzian);

  MetricSample c = m.sample({0.6, 0.8});
  CHECK(std::abs(c.det) <= kDefaultTolDeg);
  CHECK(c.cls == SignatureClass::Degenerate);
  CHECK(signature_code(c.cls) == 'D');
}

TEST_CASE("classification matches eigenvalue-sign oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  MetricField presets[] = {MetricField::flat(), MetricField::rotating(),
                           MetricField::crosscap_quadratic()};
  for (const MetricField& m : presets) {
    for (int i = 0; i < 10000; ++i) {
      ChartPoint p{d(rng), d(rng)};
      MetricComponents g = m.at(p);
      CHECK(classify(g, kDefaultTolDeg) == eigen_oracle(g, kDefaultTolDeg));
    }
  }
}

TEST_CASE("inner products") {
  MetricField m = MetricField::rotating();
  VectorField V = VectorField::rotating_unit_timelike();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) {
      ChartPoint p{-2.0 + 4.0 * i / 199, -2.0 + 4.0 * j / 199};
      TangentVector v = V.at(p);
      worst = std::max(worst, std::abs(inner(m, v, v) + 1.0));
    }
  CHECK(worst <= 1e-12);

  TangentVector dt{{0.0, 0.25}, 1.0, 0.0};
  CHECK(inner(m, dt, dt) == doctest::Approx(0.0).epsilon(1e-15));

  TangentVector zero{{d(rng), d(rng)}, 0.0, 0.0};
  TangentVector any{zero.base, d(rng), d(rng)};
  CHECK(inner(m, zero, any) == 0.0);
  CHECK(inner(m, any, zero) == 0.0);

  TangentVector other{{1.0, 1.0}, 1.0, 0.0};
  CHECK_THROWS(inner(m, dt, other));  // mismatched base points
}

TEST_CASE("index lowering") {
  Covector a = lower_index(MetricField::flat(), VectorField::coordinate_time(), {0.4, -1.3});
  CHECK(a.wt == -1.0);
  CHECK(a.wx == 0.0);

  Covector b = lower_index(MetricField::rotating(), VectorField::rotating_unit_timelike(),
                           {0.0, 0.0});
  CHECK(b.wt == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(b.wx == doctest::Approx(0.0).epsilon(1e-15));

  VectorField rad(ScalarField::parse("t"), ScalarField::parse("-x"));
  Covector c = lower_index(MetricField::crosscap_quadratic(), rad, {0.6, 0.8});
  CHECK(c.wt == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(c.wx == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("orthonormal frame completion") {
  TangentVector e1 = complete_orthonormal_frame(MetricField::flat(),
                                                VectorField::coordinate_time(), {0.0, 0.0});
  CHECK(e1.vt == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(e1.vx == doctest::Approx(1.0).epsilon(1e-15));

  MetricField m = MetricField::rotating();
  VectorField V = VectorField::rotating_unit_timelike();
  TangentVector e0 = complete_orthonormal_frame(m, V, {0.0, 0.0});
  CHECK(e0.vt == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e0.vx == doctest::Approx(1.0).epsilon(1e-12));

  // Gram-Schmidt oracle at random points
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    ChartPoint p{d(rng), d(rng)};
    TangentVector e = complete_orthonormal_frame(m, V, p);
    CHECK(inner(m, e, e) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inner(m, V.at(p), e) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e.vx >= 0.0);  // sign convention
  }
}

TEST_CASE("custom and transformed accessors") {
  MetricField c = MetricField::custom(ScalarField::parse("-1 - t^2"), ScalarField::parse("t*x"),
                                      ScalarField::parse("1 + x^2"));
  CHECK(c.kind() == MetricField::Kind::Custom);
  CHECK(c.at({1.0, 2.0}).tt == doctest::Approx(-2.0));
  CHECK(c.at({1.0, 2.0}).tx == doctest::Approx(2.0));
  CHECK(c.at({1.0, 2.0}).xx == doctest::Approx(5.0));

  MetricField tr = MetricField::transformed(MetricField::rotating(),
                                            ScalarField::sum_of_squares(),
                                            VectorField::rotating_unit_timelike());
  CHECK(tr.kind() == MetricField::Kind::Transformed);
  CHECK(tr.base().kind() == MetricField::Kind::Rotating);
  CHECK(tr.f()(0.6, 0.8) == doctest::Approx(1.0));
}
