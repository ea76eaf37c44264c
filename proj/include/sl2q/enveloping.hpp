#ifndef SL2Q_ENVELOPING_HPP
#define SL2Q_ENVELOPING_HPP

#include <map>
#include <string>

#include "sl2q/poisson.hpp"

namespace sl2q {

/// PBW monomial: the ordered product f^mf h^mh e^me. In the quotient
/// normal form mf = 0 or me = 0.
struct PBWMono {
  unsigned mf = 0, mh = 0, me = 0;

  unsigned degree() const { return mf + mh + me; }

  friend bool operator==(const PBWMono& a, const PBWMono& b) {
    return a.mf == b.mf && a.mh == b.mh && a.me == b.me;
  }
};

inline bool mono_less(const PBWMono& a, const PBWMono& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.mf != b.mf) return a.mf < b.mf;
  if (a.mh != b.mh) return a.mh < b.mh;
  return a.me < b.me;
}

struct PBWMonoDesc {
  bool operator()(const PBWMono& a, const PBWMono& b) const { return mono_less(b, a); }
};

/// Element of U(sl2) or of the quotient U_lambda in PBW normal form.
class EnvElement {
public:
  using TermMap = std::map<PBWMono, Scalar, PBWMonoDesc>;

  explicit EnvElement(Ambient amb = Ambient::free()) : amb_(std::move(amb)) {}

  static EnvElement constant(const Ambient& amb, const Scalar& c);
  static EnvElement gen_e(const Ambient& amb) { return monomial(amb, {0, 0, 1}, Scalar(1)); }
  static EnvElement gen_h(const Ambient& amb) { return monomial(amb, {0, 1, 0}, Scalar(1)); }
  static EnvElement gen_f(const Ambient& amb) { return monomial(amb, {1, 0, 0}, Scalar(1)); }
  static EnvElement monomial(const Ambient& amb, PBWMono m, const Scalar& c);

  const Ambient& ambient() const { return amb_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
  }

  friend EnvElement operator+(const EnvElement& a, const EnvElement& b);
  friend EnvElement operator-(const EnvElement& a, const EnvElement& b);
  friend EnvElement operator-(const EnvElement& a);
  /// associative noncommutative product, result in PBW normal form
  friend EnvElement operator*(const EnvElement& a, const EnvElement& b);
  EnvElement scaled(const Scalar& c) const;
  EnvElement pow(unsigned k) const;
  /// *this += x * c, in place; x must already be in normal form
  void accumulate(const EnvElement& x, const Scalar& c);

  friend bool operator==(const EnvElement& a, const EnvElement& b) {
    return a.amb_ == b.amb_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const EnvElement& a, const EnvElement& b) { return !(a == b); }

  PBWMono leading_word() const;
  Scalar leading_coeff() const;
  /// filtration degree: maximal total degree of a PBW word
  unsigned degree() const;

  std::string str() const;

private:
  void add_term(const PBWMono& m, const Scalar& c);
  /// left multiplication by a single generator, staying in PBW form
  EnvElement left_mul_e() const;
  EnvElement left_mul_h() const;
  EnvElement left_mul_f() const;
  /// rewrite mixed f...e monomials via the Casimir relation (quotient only)
  void reduce();

  Ambient amb_;
  TermMap terms_;
};

/// a*b - b*a
EnvElement commutator(const EnvElement& a, const EnvElement& b);

/// C_U = 4FE + H^2 + 2H
EnvElement casimir_u(const Ambient& amb);

/// The symmetrization map P(sl2) -> U(sl2): each commutative monomial of
/// degree n goes to the average of its n! noncommutative orderings.
/// Inputs above total degree 8 are rejected (factorial blowup).
EnvElement symmetrize(const PoissonElement& a);

}  // namespace sl2q

#endif
