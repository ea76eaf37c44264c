#include "sl2q/polynomial.hpp"

#include <sstream>

namespace sl2q {

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(unsigned(k)) + b.coeff(unsigned(k));
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator-(const Polynomial& a) { return a.scaled(Scalar(-1)); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t j = 0; j < a.coeffs_.size(); ++j)
    for (size_t k = 0; k < b.coeffs_.size(); ++k) v[j + k] += a.coeffs_[j] * b.coeffs_[k];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  std::vector<Scalar> v = coeffs_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Scalar> v(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * Scalar(long(k));
  return Polynomial(std::move(v));
}

Polynomial Polynomial::integral() const {
  if (coeffs_.empty()) return Polynomial();
  std::vector<Scalar> v(coeffs_.size() + 1);
  for (size_t k = 0; k < coeffs_.size(); ++k)
    v[k + 1] = coeffs_[k] * Scalar(Rational(1, long(k + 1)));
  return Polynomial(std::move(v));
}

Polynomial Polynomial::precompose_scale(const Scalar& c) const {
  std::vector<Scalar> v = coeffs_;
  Scalar p(1);
  for (auto& x : v) {
    x *= p;
    p *= c;
  }
  return Polynomial(std::move(v));
}

std::string Polynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t k = coeffs_.size(); k-- > 0;) {
    const Scalar& c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool needs_parens = !c.is_real() && !c.re().is_zero();
    if (!first) {
      if (!needs_parens && cs.size() && cs[0] == '-') {
        out << "-";
        cs = cs.substr(1);
      } else {
        out << "+";
      }
    }
    first = false;
    if (k == 0) {
      if (needs_parens)
        out << "(" << cs << ")";
      else
        out << cs;
      continue;
    }
    if (cs != "1") {
      if (cs == "-1")
        out << "-";
      else if (needs_parens)
        out << "(" << cs << ")*";
      else
        out << cs << "*";
    }
    out << "x";
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

}  // namespace sl2q
