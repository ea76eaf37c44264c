#ifndef SL2Q_POISSON_HPP
#define SL2Q_POISSON_HPP

#include <map>
#include <string>

#include "sl2q/error.hpp"
#include "sl2q/scalar.hpp"

namespace sl2q {

/// Ambient algebra tag: the free enveloping algebra or the Casimir quotient
/// at a given lambda. Shared by the Poisson and enveloping sides.
struct Ambient {
  bool quotient = false;
  Scalar lambda{};

  static Ambient free() { return {false, Scalar(0)}; }
  static Ambient at(Scalar lambda) { return {true, std::move(lambda)}; }

  friend bool operator==(const Ambient& a, const Ambient& b) {
    if (a.quotient != b.quotient) return false;
    return !a.quotient || a.lambda == b.lambda;
  }
  friend bool operator!=(const Ambient& a, const Ambient& b) { return !(a == b); }
};

/// Commutative monomial e^me h^mh f^mf. In the quotient normal form me = 0
/// or mf = 0.
struct PoissonMono {
  unsigned me = 0, mh = 0, mf = 0;

  unsigned degree() const { return me + mh + mf; }

  friend bool operator==(const PoissonMono& a, const PoissonMono& b) {
    return a.me == b.me && a.mh == b.mh && a.mf == b.mf;
  }
};

/// Word order: total degree first, then lexicographically with f > h > e.
inline bool mono_less(const PoissonMono& a, const PoissonMono& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.mf != b.mf) return a.mf < b.mf;
  if (a.mh != b.mh) return a.mh < b.mh;
  return a.me < b.me;
}

struct PoissonMonoDesc {
  bool operator()(const PoissonMono& a, const PoissonMono& b) const { return mono_less(b, a); }
};

/// Element of P(sl2) or of the quotient P_lambda, stored as a sparse map
/// from normal-form monomials to nonzero coefficients, sorted descending in
/// the word order so the leading term is first.
class PoissonElement {
public:
  using TermMap = std::map<PoissonMono, Scalar, PoissonMonoDesc>;

  explicit PoissonElement(Ambient amb = Ambient::free()) : amb_(std::move(amb)) {}

  static PoissonElement constant(const Ambient& amb, const Scalar& c);
  static PoissonElement gen_e(const Ambient& amb) { return monomial(amb, {1, 0, 0}, Scalar(1)); }
  static PoissonElement gen_h(const Ambient& amb) { return monomial(amb, {0, 1, 0}, Scalar(1)); }
  static PoissonElement gen_f(const Ambient& amb) { return monomial(amb, {0, 0, 1}, Scalar(1)); }
  static PoissonElement monomial(const Ambient& amb, PoissonMono m, const Scalar& c);

  const Ambient& ambient() const { return amb_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
  }

  friend PoissonElement operator+(const PoissonElement& a, const PoissonElement& b);
  friend PoissonElement operator-(const PoissonElement& a, const PoissonElement& b);
  friend PoissonElement operator-(const PoissonElement& a);
  friend PoissonElement operator*(const PoissonElement& a, const PoissonElement& b);
  PoissonElement scaled(const Scalar& c) const;
  PoissonElement pow(unsigned k) const;
  /// *this += x * c, in place; x must already be in normal form
  void accumulate(const PoissonElement& x, const Scalar& c);

  friend bool operator==(const PoissonElement& a, const PoissonElement& b) {
    return a.amb_ == b.amb_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const PoissonElement& a, const PoissonElement& b) { return !(a == b); }

  /// maximal monomial under the word order; errors on zero
  PoissonMono leading_word() const;
  Scalar leading_coeff() const;
  unsigned degree() const;

  std::string str() const;

private:
  void add_term(const PoissonMono& m, const Scalar& c);
  /// rewrite a possibly-mixed monomial into the quotient basis and
  /// accumulate the result
  void add_reduced(PoissonMono m, Scalar c);

  Ambient amb_;
  TermMap terms_;

  friend PoissonElement poisson_bracket(const PoissonElement&, const PoissonElement&);
};

/// The Poisson bracket, extending {e,f}=h, {h,e}=2e, {h,f}=-2f by the
/// Leibniz identity. Works in both ambients.
PoissonElement poisson_bracket(const PoissonElement& a, const PoissonElement& b);

/// C_P = 4EF + H^2
PoissonElement casimir_p(const Ambient& amb);

}  // namespace sl2q

#endif
