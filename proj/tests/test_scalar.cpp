#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sl2q/scalar.hpp"
#include "test_support.hpp"

using namespace sl2q;
using namespace sl2q::testing;

TEST_CASE("basic arithmetic in Q(i)") {
  Scalar i = Scalar::i();
  CHECK(i * i == Scalar(-1));
  CHECK(Scalar::of_fraction(1, 2) + Scalar::of_fraction(1, 3) == Scalar::of_fraction(5, 6));
  CHECK((Scalar(2) + i) * (Scalar(2) - i) == Scalar(5));
  CHECK((Scalar(1) + i).inverse() == Scalar(Rational(1, 2), Rational(-1, 2)));
  CHECK(Scalar(3).pow(4) == Scalar(81));
  CHECK(i.pow(103) == -i);
}

TEST_CASE("field axioms on random values") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    Scalar a = rand_scalar(rng), b = rand_scalar(rng), c = rand_scalar(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
  }
}

TEST_CASE("division errors") {
  CHECK_THROWS_WITH_AS(Scalar(0).inverse(), "inverse of zero scalar", Error);
  try {
    Scalar(1) / Scalar(0);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.category() == std::string(errc::division_by_zero));
  }
}

TEST_CASE("exact square roots and branch choice") {
  CHECK(*Scalar(4).sqrt_exact() == Scalar(2));
  CHECK(*Scalar(-4).sqrt_exact() == Scalar(Rational(0), Rational(2)));
  CHECK(*Scalar(-1).sqrt_exact() == Scalar::i());
  CHECK(*Scalar(Rational(0), Rational(2)).sqrt_exact() == Scalar(Rational(1), Rational(1)));
  // both square roots of -2i are +-(1-i); the branch takes positive real part
  CHECK(*Scalar(Rational(0), Rational(-2)).sqrt_exact() == Scalar(Rational(1), Rational(-1)));
  CHECK(!Scalar(2).sqrt_exact());
  CHECK(!Scalar(Rational(0), Rational(1)).sqrt_exact());
  CHECK(*Scalar(Rational(9, 4)).sqrt_exact() == Scalar(Rational(3, 2)));
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    Scalar a = rand_scalar(rng);
    auto r = (a * a).sqrt_exact();
    REQUIRE(r);
    CHECK(*r * *r == a * a);
  }
}

TEST_CASE("printing") {
  CHECK(Scalar(0).str() == "0");
  CHECK(Scalar::of_fraction(-3, 2).str() == "-3/2");
  CHECK(Scalar::i().str() == "i");
  CHECK((-Scalar::i()).str() == "-i");
  CHECK(Scalar(Rational(1, 2), Rational(-5, 3)).str() == "1/2-5/3*i");
  CHECK(Scalar(Rational(0), Rational(2)).str() == "2*i");
}
