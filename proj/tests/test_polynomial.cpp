#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sl2q/polynomial.hpp"
#include "test_support.hpp"

using namespace sl2q;
using namespace sl2q::testing;

TEST_CASE("ring operations") {
  Polynomial x = Polynomial::x();
  Polynomial p = x * x + x.scaled(Scalar(3)) + Polynomial(Scalar(1));
  CHECK(p.degree() == 2);
  CHECK(p.coeff(1) == Scalar(3));
  CHECK((p - p).is_zero());
  CHECK((x + Polynomial(Scalar(1))) * (x - Polynomial(Scalar(1))) ==
        x * x - Polynomial(Scalar(1)));
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    Polynomial a = rand_poly(rng, 4), b = rand_poly(rng, 4), c = rand_poly(rng, 4);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("calculus helpers") {
  Polynomial p({Scalar(5), Scalar(0), Scalar(3)});  // 3x^2 + 5
  CHECK(p.derivative() == Polynomial({Scalar(0), Scalar(6)}));
  CHECK(p.integral().derivative() == p);
  CHECK(p.integral().constant_term() == Scalar(0));
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    Polynomial a = rand_poly(rng, 5);
    CHECK(a.integral().derivative() == a);
  }
}

TEST_CASE("scale substitution and evaluation") {
  Polynomial p({Scalar(1), Scalar(2), Scalar(1)});  // (x+1)^2
  CHECK(p.eval(Scalar(3)) == Scalar(16));
  CHECK(p.precompose_scale(Scalar(2)) == Polynomial({Scalar(1), Scalar(4), Scalar(4)}));
  Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    Polynomial a = rand_poly(rng, 5);
    Scalar c = rand_scalar(rng), t = rand_scalar(rng);
    CHECK(a.precompose_scale(c).eval(t) == a.eval(c * t));
  }
}

TEST_CASE("constant handling") {
  Polynomial p({Scalar(7), Scalar(1)});
  CHECK(p.constant_term() == Scalar(7));
  CHECK(p.drop_constant() == Polynomial::x());
  CHECK(Polynomial().degree() == 0);
  CHECK(Polynomial(Scalar(0)).is_zero());
}

TEST_CASE("printing") {
  CHECK(Polynomial().str() == "0");
  CHECK(Polynomial({Scalar(3), Scalar(0), Scalar(1)}).str() == "x^2+3");
  CHECK(Polynomial({Scalar(0), Scalar(-1)}).str() == "-x");
  CHECK(Polynomial({Scalar(Rational(1, 2)), Scalar(Rational(0), Rational(1))}).str() ==
        "i*x+1/2");
}
