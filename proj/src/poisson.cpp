#include "sl2q/poisson.hpp"

#include <cstdint>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace sl2q {

namespace {

void require_same_ambient(const Ambient& a, const Ambient& b) {
  if (a != b) fail(errc::ambient_mismatch, "operands live in different ambient algebras");
}

Rational binomial(unsigned n, unsigned k) {
  Rational r(1);
  for (unsigned j = 0; j < k; ++j) r = r * (n - j) / (j + 1);
  return r;
}

/// Incrementally built coefficients of ((lambda - h^2)/4)^k in powers h^{2j},
/// shared across the term pairs of one product.
class CasimirPowers {
public:
  explicit CasimirPowers(const Scalar& lambda) : lambda_(lambda) { rows_.push_back({Scalar(1)}); }

  const std::vector<Scalar>& row(unsigned k) {
    static const Scalar quarter(Rational(1, 4));
    while (rows_.size() <= k) {
      const std::vector<Scalar>& prev = rows_.back();
      std::vector<Scalar> next(prev.size() + 1);
      for (size_t j = 0; j < prev.size(); ++j) {
        Scalar base = prev[j] * quarter;
        next[j] += base * lambda_;
        next[j + 1] -= base;
      }
      rows_.push_back(std::move(next));
    }
    return rows_[k];
  }

private:
  Scalar lambda_;
  std::vector<std::vector<Scalar>> rows_;
};

/// A term list with integer coefficients over one shared positive
/// denominator, the form used by the product kernel: pairwise work then
/// happens in plain integers, with one rational canonicalization per
/// distinct output monomial.
struct ZTerm {
  PoissonMono mono;
  Integer re, im;
};

struct ZElem {
  std::vector<ZTerm> terms;
  Integer den{1};
};

ZElem to_z(const PoissonElement::TermMap& terms) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  ZElem z;
  for (const auto& [m, c] : terms) {
    z.den = lcm(z.den, denominator(c.re()));
    if (!(c.im() == 0)) z.den = lcm(z.den, denominator(c.im()));
  }
  z.terms.reserve(terms.size());
  for (const auto& [m, c] : terms) {
    Integer re = numerator(c.re()) * (z.den / denominator(c.re()));
    Integer im = numerator(c.im()) * (z.den / denominator(c.im()));
    z.terms.push_back({m, std::move(re), std::move(im)});
  }
  return z;
}

/// Integer-coefficient rows of ((lambda - h^2)/4)^k: rows_[k][j] is the
/// coefficient of h^{2j} scaled by dens_[k] = (4q)^k with q the denominator
/// of lambda.
class ZCasimirRows {
public:
  explicit ZCasimirRows(const Scalar& lambda) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    q_ = lcm(denominator(lambda.re()), denominator(lambda.im()));
    lr_ = numerator(lambda.re()) * (q_ / denominator(lambda.re()));
    li_ = numerator(lambda.im()) * (q_ / denominator(lambda.im()));
    rows_.push_back({{Integer(1), Integer(0)}});
    dens_.push_back(Integer(1));
  }

  const std::vector<std::pair<Integer, Integer>>& row(unsigned k) {
    ensure(k);
    return rows_[k];
  }
  const Integer& den(unsigned k) {
    ensure(k);
    return dens_[k];
  }

private:
  void ensure(unsigned k) {
    while (rows_.size() <= k) {
      const auto& prev = rows_.back();
      std::vector<std::pair<Integer, Integer>> next(prev.size() + 1,
                                                    {Integer(0), Integer(0)});
      for (size_t j = 0; j < prev.size(); ++j) {
        next[j].first += prev[j].first * lr_ - prev[j].second * li_;
        next[j].second += prev[j].first * li_ + prev[j].second * lr_;
        next[j + 1].first -= prev[j].first * q_;
        next[j + 1].second -= prev[j].second * q_;
      }
      rows_.push_back(std::move(next));
      dens_.push_back(dens_.back() * 4 * q_);
    }
  }

  Integer q_, lr_, li_;
  std::vector<std::vector<std::pair<Integer, Integer>>> rows_;
  std::vector<Integer> dens_;
};

/// Accumulates coefficients keyed by packed free monomials, so Casimir
/// reduction runs once per distinct monomial rather than once per term pair.
class FreeAccumulator {
public:
  static std::uint64_t pack(unsigned me, unsigned mh, unsigned mf) {
    return (std::uint64_t(me) << 42) | (std::uint64_t(mh) << 21) | mf;
  }
  static PoissonMono unpack(std::uint64_t k) {
    return {unsigned(k >> 42), unsigned((k >> 21) & 0x1FFFFFu), unsigned(k & 0x1FFFFFu)};
  }

  void add(std::uint64_t k, const Scalar& c) { acc_[k] += c; }

  /// Drain the buckets, applying the quotient rewriting once per bucket and
  /// handing the reduced terms to `sink`.
  template <class Sink>
  void flush(Sink&& sink, CasimirPowers& cas, bool quot) {
    for (auto& [k64, c] : acc_) {
      if (c.is_zero()) continue;
      PoissonMono m = unpack(k64);
      if (!quot || m.me == 0 || m.mf == 0) {
        sink(m, c);
        continue;
      }
      unsigned k = std::min(m.me, m.mf);
      const std::vector<Scalar>& row = cas.row(k);
      for (unsigned j = 0; j < row.size(); ++j)
        if (!row[j].is_zero()) sink({m.me - k, m.mh + 2 * j, m.mf - k}, c * row[j]);
    }
  }

private:
  std::unordered_map<std::uint64_t, Scalar> acc_;
};

}  // namespace

PoissonElement PoissonElement::constant(const Ambient& amb, const Scalar& c) {
  return monomial(amb, {0, 0, 0}, c);
}

PoissonElement PoissonElement::monomial(const Ambient& amb, PoissonMono m, const Scalar& c) {
  PoissonElement r(amb);
  r.add_reduced(m, c);
  return r;
}

void PoissonElement::add_term(const PoissonMono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PoissonElement::add_reduced(PoissonMono m, Scalar c) {
  if (!amb_.quotient || m.me == 0 || m.mf == 0) {
    add_term(m, c);
    return;
  }
  // (ef)^k = ((lambda - h^2)/4)^k, expanded binomially
  unsigned k = std::min(m.me, m.mf);
  PoissonMono base{m.me - k, m.mh, m.mf - k};
  Scalar quarter = Scalar(Rational(1, 4)).pow(k);
  for (unsigned j = 0; j <= k; ++j) {
    Scalar coeff = c * quarter * Scalar(binomial(k, j)) * amb_.lambda.pow(k - j);
    if (j % 2) coeff = -coeff;
    add_term({base.me, base.mh + 2 * j, base.mf}, coeff);
  }
}

PoissonElement operator+(const PoissonElement& a, const PoissonElement& b) {
  require_same_ambient(a.amb_, b.amb_);
  PoissonElement r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

PoissonElement operator-(const PoissonElement& a, const PoissonElement& b) { return a + (-b); }

PoissonElement operator-(const PoissonElement& a) { return a.scaled(Scalar(-1)); }

PoissonElement operator*(const PoissonElement& a, const PoissonElement& b) {
  require_same_ambient(a.amb_, b.amb_);
  PoissonElement r(a.amb_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  ZElem za = to_z(a.terms_), zb = to_z(b.terms_);
  std::unordered_map<std::uint64_t, std::pair<Integer, Integer>> acc;
  acc.reserve(a.terms_.size() + b.terms_.size());
  for (const ZTerm& ta : za.terms) {
    const bool ai0 = ta.im == 0;
    for (const ZTerm& tb : zb.terms) {
      auto& slot = acc[FreeAccumulator::pack(ta.mono.me + tb.mono.me, ta.mono.mh + tb.mono.mh,
                                             ta.mono.mf + tb.mono.mf)];
      const bool bi0 = tb.im == 0;
      if (ai0 && bi0) {
        slot.first += ta.re * tb.re;
      } else if (ai0) {
        slot.first += ta.re * tb.re;
        slot.second += ta.re * tb.im;
      } else if (bi0) {
        slot.first += ta.re * tb.re;
        slot.second += ta.im * tb.re;
      } else {
        slot.first += ta.re * tb.re - ta.im * tb.im;
        slot.second += ta.re * tb.im + ta.im * tb.re;
      }
    }
  }
  const Integer d = za.den * zb.den;
  const bool quot = a.amb_.quotient;
  ZCasimirRows rows(a.amb_.lambda);
  auto make_scalar = [](const Integer& re, const Integer& im, const Integer& den) {
    return Scalar(Rational(re, den), im == 0 ? Rational(0) : Rational(im, den));
  };
  std::unordered_map<std::uint64_t, Scalar> out;
  out.reserve(acc.size());
  for (auto& [k64, zc] : acc) {
    if (zc.first == 0 && zc.second == 0) continue;
    PoissonMono m = FreeAccumulator::unpack(k64);
    if (!quot || m.me == 0 || m.mf == 0) {
      out[k64] += make_scalar(zc.first, zc.second, d);
      continue;
    }
    unsigned k = std::min(m.me, m.mf);
    const auto& row = rows.row(k);
    const Integer dk = d * rows.den(k);
    for (unsigned j = 0; j < row.size(); ++j) {
      const auto& [rr, ri] = row[j];
      if (rr == 0 && ri == 0) continue;
      Integer nre = zc.first * rr - zc.second * ri;
      Integer nim = zc.first * ri + zc.second * rr;
      if (nre == 0 && nim == 0) continue;
      out[FreeAccumulator::pack(m.me - k, m.mh + 2 * j, m.mf - k)] +=
          make_scalar(nre, nim, dk);
    }
  }
  for (auto& [k64, c] : out)
    if (!c.is_zero()) r.terms_.emplace(FreeAccumulator::unpack(k64), std::move(c));
  return r;
}

void PoissonElement::accumulate(const PoissonElement& x, const Scalar& c) {
  require_same_ambient(amb_, x.amb_);
  if (c.is_zero()) return;
  for (const auto& [m, xc] : x.terms_) add_term(m, xc * c);
}

PoissonElement PoissonElement::scaled(const Scalar& c) const {
  PoissonElement r(amb_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
  return r;
}

PoissonElement PoissonElement::pow(unsigned k) const {
  PoissonElement r = constant(amb_, Scalar(1));
  PoissonElement base = *this;
  for (; k; k >>= 1) {
    if (k & 1) r = r * base;
    if (k > 1) base = base * base;
  }
  return r;
}

PoissonMono PoissonElement::leading_word() const {
  if (terms_.empty()) fail(errc::zero_element, "leading word of the zero element");
  return terms_.begin()->first;
}

Scalar PoissonElement::leading_coeff() const {
  if (terms_.empty()) fail(errc::zero_element, "leading coefficient of the zero element");
  return terms_.begin()->second;
}

unsigned PoissonElement::degree() const { return leading_word().degree(); }

PoissonElement poisson_bracket(const PoissonElement& a, const PoissonElement& b) {
  require_same_ambient(a.ambient(), b.ambient());
  PoissonElement r(a.ambient());
  CasimirPowers cas(a.ambient().lambda);
  FreeAccumulator acc;
  auto emit = [&acc](PoissonMono m, const Scalar& c) {
    acc.add(FreeAccumulator::pack(m.me, m.mh, m.mf), c);
  };
  // Biderivation formula over the generator brackets {e,h}=-2e, {e,f}=h,
  // {h,f}=-2f. Quotient normal forms lift to free monomials, and the ideal
  // (C_P - lambda) is a Poisson ideal, so the free formula descends.
  for (const auto& [u, cu] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      Scalar c = cu * cv;
      long coeff_eh = 0;  // on monomial (me-1, mh-1, mf) * e
      if (u.me >= 1 && v.mh >= 1) coeff_eh -= 2L * u.me * v.mh;
      if (u.mh >= 1 && v.me >= 1) coeff_eh += 2L * u.mh * v.me;
      if (coeff_eh != 0)
        emit({u.me + v.me, u.mh + v.mh - 1, u.mf + v.mf}, c * Scalar(coeff_eh));
      long coeff_ef = 0;  // on monomial (me-1, mh, mf-1) * h
      if (u.me >= 1 && v.mf >= 1) coeff_ef += long(u.me) * v.mf;
      if (u.mf >= 1 && v.me >= 1) coeff_ef -= long(u.mf) * v.me;
      if (coeff_ef != 0)
        emit({u.me + v.me - 1, u.mh + v.mh + 1, u.mf + v.mf - 1}, c * Scalar(coeff_ef));
      long coeff_hf = 0;  // on monomial (me, mh-1, mf-1) * f
      if (u.mh >= 1 && v.mf >= 1) coeff_hf -= 2L * u.mh * v.mf;
      if (u.mf >= 1 && v.mh >= 1) coeff_hf += 2L * u.mf * v.mh;
      if (coeff_hf != 0)
        emit({u.me + v.me, u.mh + v.mh - 1, u.mf + v.mf}, c * Scalar(coeff_hf));
    }
  }
  acc.flush([&r](const PoissonMono& m, const Scalar& c) { r.add_term(m, c); }, cas,
            a.ambient().quotient);
  return r;
}

PoissonElement casimir_p(const Ambient& amb) {
  PoissonElement e = PoissonElement::gen_e(amb);
  PoissonElement h = PoissonElement::gen_h(amb);
  PoissonElement f = PoissonElement::gen_f(amb);
  return (e * f).scaled(Scalar(4)) + h * h;
}

std::string PoissonElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool needs_parens = !c.is_real() && !c.re().is_zero();
    if (!first) {
      if (!needs_parens && cs.size() && cs[0] == '-') {
        out << " - ";
        cs = cs.substr(1);
      } else {
        out << " + ";
      }
    } else if (!needs_parens && cs.size() && cs[0] == '-') {
      out << "-";
      cs = cs.substr(1);
    }
    first = false;
    std::string body;
    auto put = [&body](char g, unsigned p) {
      if (p == 0) return;
      if (!body.empty()) body += "*";
      body += g;
      if (p > 1) body += "^" + std::to_string(p);
    };
    put('f', m.mf);
    put('h', m.mh);
    put('e', m.me);
    if (body.empty()) {
      out << (needs_parens ? "(" + cs + ")" : cs);
      continue;
    }
    if (cs != "1") {
      if (needs_parens)
        out << "(" << cs << ")*";
      else
        out << cs << "*";
    }
    out << body;
  }
  return out.str();
}

}  // namespace sl2q
