#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sl2q/poisson.hpp"
#include "test_support.hpp"

using namespace sl2q;
using namespace sl2q::testing;

namespace {

PoissonElement e(const Ambient& a) { return PoissonElement::gen_e(a); }
PoissonElement h(const Ambient& a) { return PoissonElement::gen_h(a); }
PoissonElement f(const Ambient& a) { return PoissonElement::gen_f(a); }

}  // namespace

TEST_CASE("generator brackets") {
  for (Ambient amb : {Ambient::free(), Ambient::at(Scalar(1))}) {
    CHECK(poisson_bracket(e(amb), f(amb)) == h(amb));
    CHECK(poisson_bracket(h(amb), e(amb)) == e(amb).scaled(Scalar(2)));
    CHECK(poisson_bracket(h(amb), f(amb)) == f(amb).scaled(Scalar(-2)));
    CHECK(poisson_bracket(e(amb), e(amb)).is_zero());
  }
}

TEST_CASE("quotient rewriting") {
  Ambient amb = Ambient::at(Scalar(1));
  // ef = (lambda - h^2)/4
  CHECK(e(amb) * f(amb) ==
        PoissonElement::constant(amb, Scalar(Rational(1, 4))) -
            (h(amb) * h(amb)).scaled(Scalar(Rational(1, 4))));
  CHECK(casimir_p(amb) == PoissonElement::constant(amb, Scalar(1)));
  // normal-form monomials have no mixed e/f part
  Rng rng(23);
  for (int k = 0; k < 50; ++k) {
    PoissonElement a = rand_poisson(rng, amb, 6);
    for (const auto& [m, c] : a.terms()) CHECK((m.me == 0 || m.mf == 0));
  }
}

TEST_CASE("Casimir generates a Poisson ideal center") {
  Ambient amb = Ambient::free();
  PoissonElement cp = casimir_p(amb);
  CHECK(poisson_bracket(cp, e(amb)).is_zero());
  CHECK(poisson_bracket(cp, h(amb)).is_zero());
  CHECK(poisson_bracket(cp, f(amb)).is_zero());
  Rng rng(29);
  for (int k = 0; k < 50; ++k)
    CHECK(poisson_bracket(cp, rand_poisson(rng, amb, 3)).is_zero());
}

TEST_CASE("bracket axioms") {
  Rng rng(31);
  for (const Scalar& lam : standard_lambdas()) {
    Ambient amb = Ambient::at(lam);
    for (int k = 0; k < 40; ++k) {
      PoissonElement a = rand_poisson(rng, amb, 3), b = rand_poisson(rng, amb, 3),
                     c = rand_poisson(rng, amb, 3);
      CHECK(poisson_bracket(a, b) == -poisson_bracket(b, a));
      CHECK(poisson_bracket(a, b * c) ==
            poisson_bracket(a, b) * c + b * poisson_bracket(a, c));
      CHECK((poisson_bracket(a, poisson_bracket(b, c)) +
             poisson_bracket(b, poisson_bracket(c, a)) +
             poisson_bracket(c, poisson_bracket(a, b)))
                .is_zero());
    }
  }
}

TEST_CASE("commutative ring axioms") {
  Rng rng(37);
  Ambient amb = Ambient::at(Scalar(-4));
  for (int k = 0; k < 100; ++k) {
    PoissonElement a = rand_poisson(rng, amb, 3), b = rand_poisson(rng, amb, 3),
                   c = rand_poisson(rng, amb, 3);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("leading word and degree") {
  Ambient amb = Ambient::at(Scalar(1));
  PoissonElement a = f(amb) * f(amb) * h(amb) + e(amb).scaled(Scalar(5));
  CHECK((a.leading_word() == PoissonMono{0, 1, 2}));
  CHECK(a.leading_coeff() == Scalar(1));
  CHECK(a.degree() == 3);
  CHECK_THROWS_AS(PoissonElement(amb).degree(), Error);
  // multiplication is monotone on leading words and additive on degrees
  Rng rng(41);
  for (int k = 0; k < 200; ++k) {
    PoissonMono mu = rand_poisson_mono(rng, 8), mv = rand_poisson_mono(rng, 8),
                mw = rand_poisson_mono(rng, 8);
    if (!mono_less(mu, mv)) continue;
    PoissonElement u = PoissonElement::monomial(amb, mu, Scalar(1));
    PoissonElement v = PoissonElement::monomial(amb, mv, Scalar(1));
    PoissonElement w = PoissonElement::monomial(amb, mw, Scalar(1));
    CHECK(mono_less((u * w).leading_word(), (v * w).leading_word()));
    CHECK((u * w).degree() == mu.degree() + mw.degree());
  }
}

TEST_CASE("ambient mismatch is rejected") {
  PoissonElement a = e(Ambient::at(Scalar(1))), b = e(Ambient::at(Scalar(2)));
  try {
    a* b;
    FAIL("expected error");
  } catch (const Error& err) {
    CHECK(err.category() == std::string(errc::ambient_mismatch));
  }
}

TEST_CASE("printing") {
  Ambient amb = Ambient::free();
  CHECK(PoissonElement(amb).str() == "0");
  CHECK((f(amb) * f(amb) * h(amb) - e(amb).scaled(Scalar(Rational(1, 2)))).str() ==
        "f^2*h - 1/2*e");
  CHECK(e(amb).scaled(Scalar(Rational(1), Rational(1))).str() == "(1+i)*e");
}
