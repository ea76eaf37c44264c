#ifndef SL2Q_AUTOMORPHISM_HPP
#define SL2Q_AUTOMORPHISM_HPP

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sl2q/enveloping.hpp"
#include "sl2q/poisson.hpp"
#include "sl2q/polynomial.hpp"

namespace sl2q {

enum class Side { P, U };

template <class Elem>
struct AlgebraTraits;

template <>
struct AlgebraTraits<PoissonElement> {
  static constexpr Side side = Side::P;
  static PoissonElement lie(const PoissonElement& a, const PoissonElement& b) {
    return poisson_bracket(a, b);
  }
  /// substitution image of the commutative monomial e^me h^mh f^mf
  static PoissonElement subst(const PoissonMono& m, const PoissonElement& ie,
                              const PoissonElement& ih, const PoissonElement& if_) {
    return ie.pow(m.me) * ih.pow(m.mh) * if_.pow(m.mf);
  }
  /// left-hand side of the Casimir relation: 4ef + h^2
  static PoissonElement casimir(const PoissonElement& ie, const PoissonElement& ih,
                                const PoissonElement& if_) {
    return (ie * if_).scaled(Scalar(4)) + ih * ih;
  }
};

template <>
struct AlgebraTraits<EnvElement> {
  static constexpr Side side = Side::U;
  static EnvElement lie(const EnvElement& a, const EnvElement& b) { return commutator(a, b); }
  /// substitution image of the ordered word f^mf h^mh e^me
  static EnvElement subst(const PBWMono& m, const EnvElement& ie, const EnvElement& ih,
                          const EnvElement& if_) {
    return if_.pow(m.mf) * ih.pow(m.mh) * ie.pow(m.me);
  }
  /// left-hand side of the Casimir relation: 4fe + h^2 + 2h
  static EnvElement casimir(const EnvElement& ie, const EnvElement& ih, const EnvElement& if_) {
    return (if_ * ie).scaled(Scalar(4)) + ih * ih + ih.scaled(Scalar(2));
  }
};

/// The images of (e, h, f) under a candidate endomorphism.
template <class Elem>
struct Triple {
  Elem img_e, img_h, img_f;

  const Ambient& ambient() const { return img_e.ambient(); }

  friend bool operator==(const Triple& a, const Triple& b) {
    return a.img_e == b.img_e && a.img_h == b.img_h && a.img_f == b.img_f;
  }
  friend bool operator!=(const Triple& a, const Triple& b) { return !(a == b); }
};

template <class Elem>
Triple<Elem> identity_triple(const Ambient& amb) {
  return {Elem::gen_e(amb), Elem::gen_h(amb), Elem::gen_f(amb)};
}

/// Substitute the images for the generators and renormalize. Image powers
/// are cached, and the monomials are grouped by (mh, me) so that the f-power
/// parts of a group are summed before the two remaining large products.
/// Multiplying in the order f, h, e matches the PBW subst and is harmless
/// commutatively.
template <class Elem>
Elem apply(const Triple<Elem>& t, const Elem& a) {
  if (t.ambient() != a.ambient())
    fail(errc::ambient_mismatch, "triple and element live in different ambients");
  const Ambient& amb = a.ambient();
  Elem r(amb);
  Elem one = Elem::constant(amb, Scalar(1));
  std::vector<Elem> pe{one}, ph{one}, pf{one};
  auto power = [](std::vector<Elem>& tab, const Elem& base, unsigned k) -> const Elem& {
    while (tab.size() <= k) tab.push_back(tab.back() * base);
    return tab[k];
  };
  std::map<std::pair<unsigned, unsigned>, Elem> groups;
  for (const auto& [m, c] : a.terms()) {
    auto [it, fresh] = groups.try_emplace({m.mh, m.me}, Elem(amb));
    it->second.accumulate(power(pf, t.img_f, m.mf), c);
  }
  for (auto& [key, s] : groups) {
    if (key.first) s = s * power(ph, t.img_h, key.first);
    if (key.second) s = s * power(pe, t.img_e, key.second);
    r.accumulate(s, Scalar(1));
  }
  return r;
}

/// apply(compose(outer, inner), x) = apply(outer, apply(inner, x))
template <class Elem>
Triple<Elem> compose(const Triple<Elem>& outer, const Triple<Elem>& inner) {
  if (outer.ambient() != inner.ambient())
    fail(errc::ambient_mismatch, "composed triples live in different ambients");
  return {apply(outer, inner.img_e), apply(outer, inner.img_h), apply(outer, inner.img_f)};
}

/// Check the defining relations of the side, including the Casimir relation
/// in quotient ambients.
template <class Elem>
bool verify_endomorphism(const Triple<Elem>& t) {
  using T = AlgebraTraits<Elem>;
  const Ambient& amb = t.ambient();
  if (T::lie(t.img_e, t.img_f) != t.img_h) return false;
  if (T::lie(t.img_h, t.img_e) != t.img_e.scaled(Scalar(2))) return false;
  if (T::lie(t.img_h, t.img_f) != t.img_f.scaled(Scalar(-2))) return false;
  if (amb.quotient &&
      T::casimir(t.img_e, t.img_h, t.img_f) != Elem::constant(amb, amb.lambda))
    return false;
  return true;
}

/// (deg img_e, deg img_h, deg img_f); requires a verified triple
template <class Elem>
std::array<unsigned, 3> multidegree(const Triple<Elem>& t) {
  if (!verify_endomorphism(t))
    fail(errc::unverified_triple, "multidegree requires a verified endomorphism");
  return {t.img_e.degree(), t.img_h.degree(), t.img_f.degree()};
}

/// Atomic group generator. Linear matrices are PSL2 representatives: scaled
/// so the first nonzero entry in column-major order is 1.
struct Generator {
  enum class Kind { Linear, DeltaP, DeltaU, Hyperbolic, Tau };

  Kind kind = Kind::Tau;
  std::array<Scalar, 4> mat{};  // row-major [[a,b],[c,d]]
  Polynomial g;
  Scalar param;

  static Generator linear(Scalar a, Scalar b, Scalar c, Scalar d);
  static Generator delta_p(Polynomial g);
  static Generator delta_u(Polynomial g);
  static Generator hyperbolic(Scalar nu);
  static Generator tau(Scalar alpha);

  friend bool operator==(const Generator& x, const Generator& y);
  friend bool operator!=(const Generator& x, const Generator& y) { return !(x == y); }

  std::string str() const;
};

/// Explicit triple of a generator on the chosen side. Delta generators are
/// side-specific; the linear kinds work on both sides.
template <class Elem>
Triple<Elem> to_triple(const Generator& gen, const Ambient& amb);

/// exp(ad(p)) for p a polynomial in f alone, quotient Poisson ambient;
/// equals Delta_{p'} by local nilpotency of ad(p).
Triple<PoissonElement> exp_ad(const PoissonElement& p);

enum class DixmierKind { Phi, Psi };

/// Dixmier's exponential generators Phi_{n,mu}, Psi_{n,mu} of Aut(U_lambda).
Triple<EnvElement> phi_psi_u(unsigned n, const Scalar& mu, DixmierKind which,
                             const Ambient& amb);

extern template Triple<PoissonElement> to_triple<PoissonElement>(const Generator&,
                                                                 const Ambient&);
extern template Triple<EnvElement> to_triple<EnvElement>(const Generator&, const Ambient&);

}  // namespace sl2q

#endif
