// expression parser/evaluator tests

#include <cmath>
#include <random>

#include <doctest.h>

#include "sig2d/expr.hpp"

using namespace sig2d;

TEST_CASE("basic evaluation") {
  CHECK(ScalarField::parse("t^2 + x^2")(0.6, 0.8) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ScalarField::parse("cos(2*pi*x)")(0.0, 0.25) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ScalarField::parse("-(1/pi)*log(abs(sin(pi*x)+cos(pi*x)))")(0.0, 0.25) ==
        doctest::Approx(-std::log(2.0) / (2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("grammar details") {
  // right-associative power
  CHECK(ScalarField::parse("2^3^2")(0, 0) == doctest::Approx(512.0));
  CHECK(ScalarField::parse("-2^2")(0, 0) == doctest::Approx(-4.0));
  CHECK(ScalarField::parse("2*3 + 4/2")(0, 0) == doctest::Approx(8.0));
  CHECK(ScalarField::parse("1 - 2 - 3")(0, 0) == doctest::Approx(-4.0));
  CHECK(ScalarField::parse("1.5e2")(0, 0) == doctest::Approx(150.0));
  CHECK(ScalarField::parse("sqrt(t)")(9.0, 0) == doctest::Approx(3.0));
  CHECK(ScalarField::parse("tan(pi/4)")(0, 0) == doctest::Approx(1.0));
  CHECK(ScalarField::sum_of_squares()(3.0, 4.0) == doctest::Approx(25.0));
  CHECK(ScalarField::constant(2.5)(7.0, -1.0) == doctest::Approx(2.5));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(ScalarField::parse("t +"), ParseError);
  CHECK_THROWS_AS(ScalarField::parse("foo(t)"), ParseError);
  CHECK_THROWS_AS(ScalarField::parse(""), ParseError);
  CHECK_THROWS_AS(ScalarField::parse("(t"), ParseError);
  try {
    ScalarField::parse("1 + @");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
  CHECK_THROWS_AS(ScalarField::parse("1/x")(0.0, 0.0), EvalError);
  CHECK_THROWS_AS(ScalarField::parse("log(t)")(-1.0, 0.0), EvalError);
  CHECK_THROWS_AS(ScalarField::parse("sqrt(t)")(-1.0, 0.0), EvalError);
}

TEST_CASE("print/parse round trip") {
  const char* sources[] = {
      "t^2 + x^2",
      "-(1/pi)*log(abs(sin(pi*x)+cos(pi*x)))",
      "2^3^x - t/4 + sqrt(abs(t))",
      "sin(t)*cos(x)/(2 + exp(-t^2))",
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (const char* src : sources) {
    ScalarField a = ScalarField::parse(src);
    std::string printed = a.str();
    ScalarField b = ScalarField::parse(printed);
    CHECK(b.str() == printed);  // fixed point
    for (int i = 0; i < 100; ++i) {
      double t = d(rng), x = d(rng);
      CHECK(a(t, x) == b(t, x));
    }
  }
}
