#include "sl2q/automorphism.hpp"

#include <sstream>

namespace sl2q {

Generator Generator::linear(Scalar a, Scalar b, Scalar c, Scalar d) {
  if ((a * d - b * c).is_zero()) fail(errc::singular_matrix, "linear generator matrix is singular");
  Generator gen;
  gen.kind = Kind::Linear;
  // PSL2 representative: first nonzero entry in column-major order (a, c, b, d)
  // becomes 1
  Scalar pivot = !a.is_zero() ? a : (!c.is_zero() ? c : b);
  Scalar inv = pivot.inverse();
  gen.mat = {a * inv, b * inv, c * inv, d * inv};
  return gen;
}

Generator Generator::delta_p(Polynomial g) {
  Generator gen;
  gen.kind = Kind::DeltaP;
  gen.g = std::move(g);
  return gen;
}

Generator Generator::delta_u(Polynomial g) {
  Generator gen;
  gen.kind = Kind::DeltaU;
  gen.g = std::move(g);
  return gen;
}

Generator Generator::hyperbolic(Scalar nu) {
  if (nu.is_zero()) fail(errc::bad_argument, "hyperbolic rotation needs nonzero nu");
  Generator gen;
  gen.kind = Kind::Hyperbolic;
  gen.param = std::move(nu);
  return gen;
}

Generator Generator::tau(Scalar alpha) {
  Generator gen;
  gen.kind = Kind::Tau;
  gen.param = std::move(alpha);
  return gen;
}

bool operator==(const Generator& x, const Generator& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Generator::Kind::Linear: return x.mat == y.mat;
    case Generator::Kind::DeltaP:
    case Generator::Kind::DeltaU: return x.g == y.g;
    default: return x.param == y.param;
  }
}

std::string Generator::str() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Linear:
      out << "lin[[" << mat[0].str() << "," << mat[1].str() << "],[" << mat[2].str() << ","
          << mat[3].str() << "]]";
      break;
    case Kind::DeltaP:
    case Kind::DeltaU: out << "delta[" << g.str() << "]"; break;
    case Kind::Hyperbolic: out << "hyp[" << param.str() << "]"; break;
    case Kind::Tau: out << "tau[" << param.str() << "]"; break;
  }
  return out.str();
}

namespace {

template <class Elem>
Elem lincomb(const Ambient& amb, const Scalar& ce, const Scalar& ch, const Scalar& cf) {
  return Elem::gen_e(amb).scaled(ce) + Elem::gen_h(amb).scaled(ch) + Elem::gen_f(amb).scaled(cf);
}

/// hat(T): X -> T^{-1} X T on the basis (E, H, F); the conjugate of a
/// traceless matrix [[p, q], [r, -p]] is q*e + p*h + r*f.
template <class Elem>
Triple<Elem> linear_triple(const std::array<Scalar, 4>& m, const Ambient& amb) {
  const Scalar &a = m[0], &b = m[1], &c = m[2], &d = m[3];
  Scalar det = a * d - b * c;
  if (det.is_zero()) fail(errc::singular_matrix, "singular matrix");
  Scalar inv = det.inverse();
  // T^{-1} X T with T^{-1} = inv * [[d, -b], [-c, a]]
  auto conj = [&](const std::array<Scalar, 4>& x) {
    std::array<Scalar, 4> ti = {d * inv, -b * inv, -c * inv, a * inv};
    std::array<Scalar, 4> xt = {x[0] * a + x[1] * c, x[0] * b + x[1] * d,
                                x[2] * a + x[3] * c, x[2] * b + x[3] * d};
    std::array<Scalar, 4> r = {ti[0] * xt[0] + ti[1] * xt[2], ti[0] * xt[1] + ti[1] * xt[3],
                               ti[2] * xt[0] + ti[3] * xt[2], ti[2] * xt[1] + ti[3] * xt[3]};
    return lincomb<Elem>(amb, r[1], r[0], r[2]);
  };
  std::array<Scalar, 4> E = {Scalar(0), Scalar(1), Scalar(0), Scalar(0)};
  std::array<Scalar, 4> H = {Scalar(1), Scalar(0), Scalar(0), Scalar(-1)};
  std::array<Scalar, 4> F = {Scalar(0), Scalar(0), Scalar(1), Scalar(0)};
  return {conj(E), conj(H), conj(F)};
}

template <class Elem>
Triple<Elem> tau_triple(const Scalar& alpha, const Ambient& amb) {
  // tau_alpha = (f, -h + 2 alpha f, e + alpha h - alpha^2 f)
  return {Elem::gen_f(amb),
          lincomb<Elem>(amb, Scalar(0), Scalar(-1), Scalar(2) * alpha),
          lincomb<Elem>(amb, Scalar(1), alpha, -(alpha * alpha))};
}

template <class Elem>
Triple<Elem> hyperbolic_triple(const Scalar& nu, const Ambient& amb) {
  return {Elem::gen_e(amb).scaled(nu), Elem::gen_h(amb), Elem::gen_f(amb).scaled(nu.inverse())};
}

template <class Elem>
Elem eval_poly(const Polynomial& g, const Elem& point) {
  const Ambient& amb = point.ambient();
  Elem one = Elem::constant(amb, Scalar(1));
  return g.eval(point, one, [](const Elem& x, const Scalar& c) { return x.scaled(c); });
}

Triple<PoissonElement> delta_p_triple(const Polynomial& g, const Ambient& amb) {
  PoissonElement e = PoissonElement::gen_e(amb);
  PoissonElement h = PoissonElement::gen_h(amb);
  PoissonElement f = PoissonElement::gen_f(amb);
  PoissonElement gf = eval_poly(g, f);
  return {e - gf * h - f * gf * gf, h + (f * gf).scaled(Scalar(2)), f};
}

Triple<EnvElement> delta_u_triple(const Polynomial& g, const Ambient& amb) {
  EnvElement e = EnvElement::gen_e(amb);
  EnvElement h = EnvElement::gen_h(amb);
  EnvElement f = EnvElement::gen_f(amb);
  EnvElement gf = eval_poly(g, f);
  EnvElement gpf = eval_poly(g.derivative(), f);
  return {e - gf * h - f * gf * gf + f * gpf, h + (f * gf).scaled(Scalar(2)), f};
}

}  // namespace

template <class Elem>
Triple<Elem> to_triple(const Generator& gen, const Ambient& amb) {
  switch (gen.kind) {
    case Generator::Kind::Linear: return linear_triple<Elem>(gen.mat, amb);
    case Generator::Kind::Tau: return tau_triple<Elem>(gen.param, amb);
    case Generator::Kind::Hyperbolic: return hyperbolic_triple<Elem>(gen.param, amb);
    case Generator::Kind::DeltaP:
      if constexpr (std::is_same_v<Elem, PoissonElement>) {
        return delta_p_triple(gen.g, amb);
      } else {
        fail(errc::side_mismatch, "Delta_g acts on the Poisson side");
      }
    case Generator::Kind::DeltaU:
      if constexpr (std::is_same_v<Elem, EnvElement>) {
        return delta_u_triple(gen.g, amb);
      } else {
        fail(errc::side_mismatch, "delta_g acts on the enveloping side");
      }
  }
  fail(errc::internal, "unreachable generator kind");
}

template Triple<PoissonElement> to_triple<PoissonElement>(const Generator&, const Ambient&);
template Triple<EnvElement> to_triple<EnvElement>(const Generator&, const Ambient&);

Triple<PoissonElement> exp_ad(const PoissonElement& p) {
  const Ambient& amb = p.ambient();
  if (!amb.quotient) fail(errc::ambient_mismatch, "exp_ad is defined in the quotient ambient");
  for (const auto& [m, c] : p.terms())
    if (m.me != 0 || m.mh != 0)
      fail(errc::bad_argument, "exp_ad argument must be a polynomial in f alone");
  unsigned cap = 2 * (p.is_zero() ? 0 : p.degree()) * 2 + 4;
  auto exp_on = [&](const PoissonElement& x) {
    PoissonElement sum = x;
    PoissonElement term = x;
    Scalar factorial(1);
    for (unsigned i = 1;; ++i) {
      term = poisson_bracket(p, term);
      if (term.is_zero()) break;
      if (i > cap) fail(errc::internal, "exp_ad series did not terminate within the cap");
      factorial *= Scalar(long(i));
      sum = sum + term.scaled(factorial.inverse());
    }
    return sum;
  };
  return {exp_on(PoissonElement::gen_e(amb)), exp_on(PoissonElement::gen_h(amb)),
          exp_on(PoissonElement::gen_f(amb))};
}

Triple<EnvElement> phi_psi_u(unsigned n, const Scalar& mu, DixmierKind which,
                             const Ambient& amb) {
  if (n == 0) fail(errc::bad_argument, "Phi/Psi need n >= 1");
  EnvElement e = EnvElement::gen_e(amb);
  EnvElement h = EnvElement::gen_h(amb);
  EnvElement f = EnvElement::gen_f(amb);
  Scalar mn = mu * Scalar(long(n));
  Scalar mnn1 = mn * Scalar(long(n) - 1);
  Scalar m2n2 = mn * mn;
  if (which == DixmierKind::Phi) {
    // (e - mu n f^{n-1} h + mu n(n-1) f^{n-1} - mu^2 n^2 f^{2n-1}, h + 2 mu n f^n, f)
    EnvElement fe1 = f.pow(n - 1);
    return {e - (fe1 * h).scaled(mn) + fe1.scaled(mnn1) - f.pow(2 * n - 1).scaled(m2n2),
            h + f.pow(n).scaled(Scalar(2) * mn), f};
  }
  // (e, h - 2 mu n e^n, f + mu n e^{n-1} h + mu n(n-1) e^{n-1} - mu^2 n^2 e^{2n-1})
  EnvElement ee1 = e.pow(n - 1);
  return {e, h - e.pow(n).scaled(Scalar(2) * mn),
          f + (ee1 * h).scaled(mn) + ee1.scaled(mnn1) - e.pow(2 * n - 1).scaled(m2n2)};
}

}  // namespace sl2q
