#ifndef SL2Q_POLYNOMIAL_HPP
#define SL2Q_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "sl2q/scalar.hpp"

namespace sl2q {

/// Dense univariate polynomial over Scalar, used for the parameters g(x) of
/// the triangular automorphisms. Trailing zero coefficients are trimmed, so
/// equality is structural.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(Scalar constant) {
    coeffs_.push_back(std::move(constant));
    trim();
  }
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial x() { return monomial(Scalar(1), 1); }
  static Polynomial monomial(Scalar c, unsigned deg) {
    std::vector<Scalar> v(deg + 1);
    v[deg] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// degree of the zero polynomial is reported as 0
  unsigned degree() const { return coeffs_.empty() ? 0 : unsigned(coeffs_.size() - 1); }
  Scalar coeff(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : Scalar(0); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  Scalar constant_term() const { return coeff(0); }
  /// g - g(0), the xK[x] part
  Polynomial drop_constant() const {
    Polynomial r = *this;
    if (!r.coeffs_.empty()) r.coeffs_[0] = Scalar(0);
    r.trim();
    return r;
  }

  void add_term(unsigned deg, const Scalar& c) {
    if (coeffs_.size() <= deg) coeffs_.resize(deg + 1);
    coeffs_[deg] += c;
    trim();
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Scalar& c) const;

  Polynomial derivative() const;
  /// formal integral with zero constant term
  Polynomial integral() const;

  /// g(c*x) for a scalar c
  Polynomial precompose_scale(const Scalar& c) const;

  /// Horner evaluation in any commutative-enough algebra; Elem needs
  /// operator* and operator+ plus scalar scaling via `scale`.
  template <class Elem, class Scale>
  Elem eval(const Elem& point, const Elem& one, Scale scale) const {
    Elem acc = scale(one, Scalar(0));
    for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * point + scale(one, coeffs_[k]);
    return acc;
  }

  Scalar eval(const Scalar& point) const {
    Scalar acc(0);
    for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * point + coeffs_[k];
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// printed in the word grammar, e.g. `x^2+3*x+1/2`
  std::string str() const;

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

}  // namespace sl2q

#endif
