#ifndef SL2Q_SCALAR_HPP
#define SL2Q_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

#include "sl2q/error.hpp"

namespace sl2q {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
/// Values are always kept reduced (boost keeps cpp_rational canonical), so
/// equality is structural. Immutable in spirit: all operations return new
/// values.
class Scalar {
public:
  Scalar() = default;
  Scalar(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) {}  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar of_fraction(long num, long den) {
    if (den == 0) fail(errc::division_by_zero, "fraction with zero denominator");
    return Scalar(Rational(num, den));
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    bool ar = a.im_ == 0, br = b.im_ == 0;
    if (ar && br) return Scalar(a.re_ * b.re_);
    if (ar) return Scalar(a.re_ * b.re_, a.re_ * b.im_);
    if (br) return Scalar(a.re_ * b.re_, a.im_ * b.re_);
    return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  /// Multiplicative inverse; errors on zero.
  Scalar inverse() const {
    Rational n = re_ * re_ + im_ * im_;
    if (n == 0) fail(errc::division_by_zero, "inverse of zero scalar");
    return Scalar(re_ / n, -im_ / n);
  }

  Scalar pow(unsigned k) const {
    Scalar r(1);
    Scalar base = *this;
    for (; k; k >>= 1) {
      if (k & 1) r *= base;
      base *= base;
    }
    return r;
  }

  /// Square root inside Q(i) when it exists. Branch: the root with positive
  /// real part, or zero real part and nonnegative imaginary part.
  std::optional<Scalar> sqrt_exact() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total order used only for deterministic tie-breaking in containers.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// Text form `p/q+r/s*i`, omitting zero parts and unit denominators.
  std::string str() const;

private:
  Rational re_{0};
  Rational im_{0};
};

/// Square root of a nonnegative rational when it is a perfect square.
std::optional<Rational> sqrt_rational(const Rational& a);

}  // namespace sl2q

#endif
