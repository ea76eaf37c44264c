#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sl2q/enveloping.hpp"
#include "test_support.hpp"

using namespace sl2q;
using namespace sl2q::testing;

namespace {

EnvElement e(const Ambient& a) { return EnvElement::gen_e(a); }
EnvElement h(const Ambient& a) { return EnvElement::gen_h(a); }
EnvElement f(const Ambient& a) { return EnvElement::gen_f(a); }

}  // namespace

TEST_CASE("defining relations") {
  for (Ambient amb : {Ambient::free(), Ambient::at(Scalar(1))}) {
    CHECK(commutator(e(amb), f(amb)) == h(amb));
    CHECK(commutator(h(amb), e(amb)) == e(amb).scaled(Scalar(2)));
    CHECK(commutator(h(amb), f(amb)) == f(amb).scaled(Scalar(-2)));
  }
}

TEST_CASE("PBW straightening") {
  Ambient amb = Ambient::free();
  CHECK(e(amb) * f(amb) == f(amb) * e(amb) + h(amb));
  CHECK(h(amb) * f(amb) == f(amb) * h(amb) - f(amb).scaled(Scalar(2)));
  // every stored word is f^a h^b e^c; reordering happens eagerly
  CHECK((e(amb) * h(amb) * f(amb)).terms().size() == 4);
  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    EnvElement a = rand_env(rng, amb, 3), b = rand_env(rng, amb, 3), c = rand_env(rng, amb, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("quotient reduction") {
  Scalar lam(1);
  Ambient amb = Ambient::at(lam);
  // ef = fe + h = (lambda - h^2 + 2h)/4
  EnvElement expect = (EnvElement::constant(amb, lam) - h(amb) * h(amb) +
                       h(amb).scaled(Scalar(2)))
                          .scaled(Scalar(Rational(1, 4)));
  CHECK(e(amb) * f(amb) == expect);
  CHECK(casimir_u(amb) == EnvElement::constant(amb, lam));
  Rng rng(13);
  for (int k = 0; k < 50; ++k) {
    EnvElement a = rand_env(rng, amb, 6);
    for (const auto& [m, c] : a.terms()) CHECK((m.mf == 0 || m.me == 0));
  }
  for (int k = 0; k < 100; ++k) {
    EnvElement a = rand_env(rng, amb, 3), b = rand_env(rng, amb, 3), c = rand_env(rng, amb, 3);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("Casimir is central") {
  Ambient amb = Ambient::free();
  EnvElement cu = casimir_u(amb);
  CHECK(commutator(cu, e(amb)).is_zero());
  CHECK(commutator(cu, h(amb)).is_zero());
  CHECK(commutator(cu, f(amb)).is_zero());
  Rng rng(19);
  for (int k = 0; k < 50; ++k) CHECK(commutator(cu, rand_env(rng, amb, 3)).is_zero());
}

TEST_CASE("equivalent Casimir presentations") {
  Ambient amb = Ambient::free();
  EnvElement fe = f(amb) * e(amb), ef = e(amb) * f(amb), hh = h(amb) * h(amb);
  EnvElement c1 = fe.scaled(Scalar(4)) + hh + h(amb).scaled(Scalar(2));
  EnvElement c2 = ef.scaled(Scalar(4)) + hh - h(amb).scaled(Scalar(2));
  EnvElement c3 = ef.scaled(Scalar(2)) + fe.scaled(Scalar(2)) + hh;
  CHECK(c1 == c2);
  CHECK(c1 == c3);
  CHECK(c1 == casimir_u(amb));
}

TEST_CASE("symmetrization") {
  Ambient free_p = Ambient::free();
  PoissonElement pe = PoissonElement::gen_e(free_p);
  PoissonElement ph = PoissonElement::gen_h(free_p);
  PoissonElement pf = PoissonElement::gen_f(free_p);
  Ambient amb = Ambient::free();
  // S(ef) = (ef + fe)/2 = fe + h/2
  CHECK(symmetrize(pe * pf) == f(amb) * e(amb) + h(amb).scaled(Scalar(Rational(1, 2))));
  CHECK(symmetrize(ph.pow(3)) == h(amb).pow(3));
  // linearity with random elements
  Rng rng(43);
  for (int k = 0; k < 10; ++k) {
    PoissonElement a = rand_poisson(rng, free_p, 4), b = rand_poisson(rng, free_p, 4);
    CHECK(symmetrize(a + b) == symmetrize(a) + symmetrize(b));
  }
  try {
    symmetrize(pf.pow(9));
    FAIL("expected error");
  } catch (const Error& err) {
    CHECK(err.category() == std::string(errc::degree_cap));
  }
  try {
    symmetrize(PoissonElement::gen_e(Ambient::at(Scalar(1))));
    FAIL("expected error");
  } catch (const Error& err) {
    CHECK(err.category() == std::string(errc::ambient_mismatch));
  }
}

TEST_CASE("printing") {
  Ambient amb = Ambient::free();
  CHECK((f(amb) * e(amb).scaled(Scalar(4)) + h(amb) * h(amb) + h(amb).scaled(Scalar(2))).str() ==
        "4*f*e + h^2 + 2*h");
}
