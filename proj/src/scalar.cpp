#include "sl2q/scalar.hpp"

#include <sstream>

namespace sl2q {

namespace {

std::optional<Integer> isqrt_exact(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer r = boost::multiprecision::sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

}  // namespace

std::optional<Rational> sqrt_rational(const Rational& a) {
  if (a < 0) return std::nullopt;
  auto num = isqrt_exact(boost::multiprecision::numerator(a));
  if (!num) return std::nullopt;
  auto den = isqrt_exact(boost::multiprecision::denominator(a));
  if (!den) return std::nullopt;
  return Rational(*num, *den);
}

std::optional<Scalar> Scalar::sqrt_exact() const {
  if (im_ == 0) {
    if (re_ >= 0) {
      auto s = sqrt_rational(re_);
      if (!s) return std::nullopt;
      return Scalar(*s);
    }
    auto s = sqrt_rational(-re_);
    if (!s) return std::nullopt;
    return Scalar(Rational(0), *s);  // im > 0 branch
  }
  // (u + vi)^2 = re + im*i needs |u+vi|^2 = sqrt(re^2 + im^2) rational.
  auto norm = sqrt_rational(re_ * re_ + im_ * im_);
  if (!norm) return std::nullopt;
  auto u = sqrt_rational((re_ + *norm) / 2);
  if (!u || *u == 0) return std::nullopt;
  Rational v = im_ / (2 * *u);
  Scalar s(*u, v);
  if (s * s != *this) return std::nullopt;
  return s;  // u > 0, so the positive-real-part branch
}

namespace {

void append_rational(std::ostream& out, const Rational& r) {
  out << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1)
    out << "/" << boost::multiprecision::denominator(r);
}

}  // namespace

std::string Scalar::str() const {
  std::ostringstream out;
  if (im_ == 0) {
    append_rational(out, re_);
    return out.str();
  }
  if (re_ != 0) {
    append_rational(out, re_);
    if (im_ > 0) out << "+";
  }
  if (im_ == -1) {
    out << "-";
  } else if (im_ != 1) {
    append_rational(out, im_);
    out << "*";
  }
  out << "i";
  return out.str();
}

}  // namespace sl2q
