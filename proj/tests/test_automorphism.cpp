#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sl2q/automorphism.hpp"
#include "test_support.hpp"

using namespace sl2q;
using namespace sl2q::testing;

namespace {

std::array<Scalar, 4> mat_mul(const std::array<Scalar, 4>& x, const std::array<Scalar, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

}  // namespace

TEST_CASE("generator triples satisfy the relations on both sides") {
  Rng rng(47);
  Ambient amb = Ambient::at(Scalar(-4));
  for (int k = 0; k < 30; ++k) {
    Generator gp = rand_generator(rng, Side::P);
    CHECK(verify_endomorphism(to_triple<PoissonElement>(gp, amb)));
    Generator gu = rand_generator(rng, Side::U);
    CHECK(verify_endomorphism(to_triple<EnvElement>(gu, amb)));
  }
}

TEST_CASE("PSL2 normalization") {
  Generator a = Generator::linear(Scalar(2), Scalar(4), Scalar(6), Scalar(10));
  Generator b = Generator::linear(Scalar(1), Scalar(2), Scalar(3), Scalar(5));
  CHECK(a == b);
  Generator c = Generator::linear(Scalar(0), Scalar(3), Scalar(6), Scalar(0));
  CHECK(c.mat[2] == Scalar(1));
  CHECK_THROWS_AS(Generator::linear(Scalar(1), Scalar(2), Scalar(2), Scalar(4)), Error);
}

TEST_CASE("hat is an anti-homomorphism") {
  Rng rng(53);
  Ambient amb = Ambient::at(Scalar(1));
  for (int k = 0; k < 20; ++k) {
    std::array<Scalar, 4> m1, m2;
    do {
      for (auto& x : m1) x = rand_scalar(rng);
    } while ((m1[0] * m1[3] - m1[1] * m1[2]).is_zero());
    do {
      for (auto& x : m2) x = rand_scalar(rng);
    } while ((m2[0] * m2[3] - m2[1] * m2[2]).is_zero());
    auto t1 = to_triple<PoissonElement>(Generator::linear(m1[0], m1[1], m1[2], m1[3]), amb);
    auto t2 = to_triple<PoissonElement>(Generator::linear(m2[0], m2[1], m2[2], m2[3]), amb);
    auto m21 = mat_mul(m2, m1);
    auto t21 = to_triple<PoissonElement>(Generator::linear(m21[0], m21[1], m21[2], m21[3]), amb);
    CHECK(compose(t1, t2) == t21);
  }
}

TEST_CASE("tau squares to the expected linear automorphism") {
  // tau_0 is an involution; in general tau_a^2 is conjugation by
  // [[a,1],[1,0]]^2 = [[a^2+1, a],[a, 1]]
  Ambient amb = Ambient::at(Scalar(1));
  for (const Scalar& a : {Scalar(0), Scalar(3), Scalar(Rational(1, 2), Rational(1))}) {
    Generator sq = Generator::linear(a * a + Scalar(1), a, a, Scalar(1));
    auto tp = to_triple<PoissonElement>(Generator::tau(a), amb);
    CHECK(compose(tp, tp) == to_triple<PoissonElement>(sq, amb));
    auto tu = to_triple<EnvElement>(Generator::tau(a), amb);
    CHECK(compose(tu, tu) == to_triple<EnvElement>(sq, amb));
  }
  auto t0p = to_triple<PoissonElement>(Generator::tau(Scalar(0)), amb);
  CHECK(compose(t0p, t0p) == identity_triple<PoissonElement>(amb));
}

TEST_CASE("triangular addition rules") {
  Rng rng(59);
  Ambient amb = Ambient::at(Scalar(0));
  for (int k = 0; k < 20; ++k) {
    Polynomial g1 = rand_poly(rng, 4), g2 = rand_poly(rng, 4);
    auto p1 = to_triple<PoissonElement>(Generator::delta_p(g1), amb);
    auto p2 = to_triple<PoissonElement>(Generator::delta_p(g2), amb);
    CHECK(compose(p1, p2) == to_triple<PoissonElement>(Generator::delta_p(g1 + g2), amb));
    auto u1 = to_triple<EnvElement>(Generator::delta_u(g1), amb);
    auto u2 = to_triple<EnvElement>(Generator::delta_u(g2), amb);
    CHECK(compose(u1, u2) == to_triple<EnvElement>(Generator::delta_u(g1 + g2), amb));
  }
}

TEST_CASE("hyperbolic conjugation of triangular generators") {
  Rng rng(61);
  Ambient amb = Ambient::at(Scalar(1));
  for (int k = 0; k < 20; ++k) {
    Polynomial g = rand_poly(rng, 4);
    Scalar nu = rand_nonzero_scalar(rng);
    Polynomial q = g.precompose_scale(nu.inverse()).scaled(nu.inverse());
    auto hp = to_triple<PoissonElement>(Generator::hyperbolic(nu), amb);
    auto hp_inv = to_triple<PoissonElement>(Generator::hyperbolic(nu.inverse()), amb);
    auto dp = to_triple<PoissonElement>(Generator::delta_p(g), amb);
    CHECK(compose(compose(hp, dp), hp_inv) == to_triple<PoissonElement>(Generator::delta_p(q), amb));
    auto hu = to_triple<EnvElement>(Generator::hyperbolic(nu), amb);
    auto hu_inv = to_triple<EnvElement>(Generator::hyperbolic(nu.inverse()), amb);
    auto du = to_triple<EnvElement>(Generator::delta_u(g), amb);
    CHECK(compose(compose(hu, du), hu_inv) == to_triple<EnvElement>(Generator::delta_u(q), amb));
  }
}

TEST_CASE("exp_ad of an f-polynomial is a triangular automorphism") {
  Rng rng(67);
  Ambient amb = Ambient::at(Scalar(1));
  for (int k = 0; k < 25; ++k) {
    Polynomial g = rand_poly(rng, 5);
    Polynomial big = g.integral();
    PoissonElement arg(amb);
    for (unsigned d = 0; d <= big.degree(); ++d)
      arg = arg + PoissonElement::monomial(amb, {0, 0, d}, big.coeff(d));
    CHECK(exp_ad(arg) == to_triple<PoissonElement>(Generator::delta_p(g), amb));
  }
  CHECK_THROWS_AS(exp_ad(PoissonElement::gen_h(amb)), Error);
  CHECK_THROWS_AS(exp_ad(PoissonElement::gen_f(Ambient::free())), Error);
}

TEST_CASE("Dixmier generators") {
  Ambient amb = Ambient::at(Scalar(2));
  for (unsigned n = 1; n <= 4; ++n) {
    Scalar mu(Rational(3, 2));
    auto phi = phi_psi_u(n, mu, DixmierKind::Phi, amb);
    CHECK(verify_endomorphism(phi));
    // Phi_{n,mu} = delta_g with g = mu n x^{n-1}
    Polynomial g = Polynomial::monomial(mu * Scalar(long(n)), n - 1);
    CHECK(phi == to_triple<EnvElement>(Generator::delta_u(g), amb));
    auto psi = phi_psi_u(n, mu, DixmierKind::Psi, amb);
    CHECK(verify_endomorphism(psi));
    // Psi = tau Phi tau
    auto tau = to_triple<EnvElement>(Generator::tau(Scalar(0)), amb);
    CHECK(psi == compose(compose(tau, phi), tau));
  }
}

TEST_CASE("multidegree requires a verified triple") {
  Ambient amb = Ambient::at(Scalar(1));
  auto t = to_triple<PoissonElement>(Generator::tau(Scalar(2)), amb);
  CHECK((multidegree(t) == std::array<unsigned, 3>{1, 1, 1}));
  t.img_h = t.img_h + PoissonElement::constant(amb, Scalar(1));
  try {
    multidegree(t);
    FAIL("expected error");
  } catch (const Error& err) {
    CHECK(err.category() == std::string(errc::unverified_triple));
  }
}

TEST_CASE("side guards") {
  Ambient amb = Ambient::at(Scalar(1));
  CHECK_THROWS_AS(to_triple<EnvElement>(Generator::delta_p(Polynomial::x()), amb), Error);
  CHECK_THROWS_AS(to_triple<PoissonElement>(Generator::delta_u(Polynomial::x()), amb), Error);
}
