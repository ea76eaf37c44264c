#include "sl2q/enveloping.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <unordered_map>
#include <utility>
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

// ---- integer product kernel ------------------------------------------------
// The product works on term lists with complex-integer coefficients over one
// shared denominator, so the straightening and Casimir rewriting run in plain
// integers; rationals are canonicalized once per output monomial.

using ZC = std::pair<Integer, Integer>;  // re, im

std::uint64_t zpack(unsigned mf, unsigned mh, unsigned me) {
  return (std::uint64_t(mf) << 42) | (std::uint64_t(mh) << 21) | me;
}
PBWMono zunpack(std::uint64_t k) {
  return {unsigned(k >> 42), unsigned((k >> 21) & 0x1FFFFFu), unsigned(k & 0x1FFFFFu)};
}

void zmac(ZC& slot, const ZC& a, const ZC& b) {
  const bool ai0 = a.second == 0, bi0 = b.second == 0;
  if (ai0 && bi0) {
    slot.first += a.first * b.first;
  } else if (ai0) {
    slot.first += a.first * b.first;
    slot.second += a.first * b.second;
  } else if (bi0) {
    slot.first += a.first * b.first;
    slot.second += a.second * b.first;
  } else {
    slot.first += a.first * b.first - a.second * b.second;
    slot.second += a.first * b.second + a.second * b.first;
  }
}

using ZMap = std::unordered_map<std::uint64_t, ZC>;

struct ZEnv {
  ZMap terms;
  Integer den{1};
};

ZEnv env_to_z(const EnvElement::TermMap& terms) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  ZEnv z;
  for (const auto& [m, c] : terms) {
    z.den = lcm(z.den, denominator(c.re()));
    if (!(c.im() == 0)) z.den = lcm(z.den, denominator(c.im()));
  }
  z.terms.reserve(terms.size());
  for (const auto& [m, c] : terms) {
    Integer re = numerator(c.re()) * (z.den / denominator(c.re()));
    Integer im = numerator(c.im()) * (z.den / denominator(c.im()));
    z.terms.emplace(zpack(m.mf, m.mh, m.me), ZC{std::move(re), std::move(im)});
  }
  return z;
}

/// rows of (h-2)^b: hm2(b)[j] = C(b,j)(-2)^{b-j}, built incrementally
class Hm2Rows {
public:
  Hm2Rows() { rows_.push_back({Integer(1)}); }
  const std::vector<Integer>& row(unsigned b) {
    while (rows_.size() <= b) {
      const std::vector<Integer>& prev = rows_.back();
      std::vector<Integer> next(prev.size() + 1, Integer(0));
      for (size_t j = 0; j < prev.size(); ++j) {
        next[j] += prev[j] * -2;
        next[j + 1] += prev[j];
      }
      rows_.push_back(std::move(next));
    }
    return rows_[b];
  }

private:
  std::vector<std::vector<Integer>> rows_;
};

// h * (f^a h^b e^c) = f^a h^{b+1} e^c - 2a f^a h^b e^c
ZMap zleft_mul_h(const ZMap& x) {
  ZMap r;
  r.reserve(x.size() * 2);
  for (const auto& [k, c] : x) {
    PBWMono m = zunpack(k);
    auto& up = r[zpack(m.mf, m.mh + 1, m.me)];
    up.first += c.first;
    up.second += c.second;
    if (m.mf > 0) {
      auto& same = r[k];
      same.first += c.first * (-2L * m.mf);
      same.second += c.second * (-2L * m.mf);
    }
  }
  return r;
}

// e * (f^a h^b e^c) = f^a (h-2)^b e^{c+1} + a f^{a-1} h^{b+1} e^c
//                     - a(a-1) f^{a-1} h^b e^c
ZMap zleft_mul_e(const ZMap& x, Hm2Rows& hm2) {
  ZMap r;
  r.reserve(x.size() * 3);
  for (const auto& [k, c] : x) {
    PBWMono m = zunpack(k);
    const std::vector<Integer>& row = hm2.row(m.mh);
    for (unsigned j = 0; j < row.size(); ++j) {
      if (row[j] == 0) continue;
      auto& slot = r[zpack(m.mf, j, m.me + 1)];
      slot.first += c.first * row[j];
      slot.second += c.second * row[j];
    }
    if (m.mf > 0) {
      auto& s1 = r[zpack(m.mf - 1, m.mh + 1, m.me)];
      s1.first += c.first * long(m.mf);
      s1.second += c.second * long(m.mf);
      if (m.mf > 1) {
        long w = -long(m.mf) * long(m.mf - 1);
        auto& s2 = r[zpack(m.mf - 1, m.mh, m.me)];
        s2.first += c.first * w;
        s2.second += c.second * w;
      }
    }
  }
  return r;
}

/// Memoized full quotient rewriting: R(k, b) is the h-polynomial equal to
/// f^k h^b e^k in U_lambda, with integer coefficients over (4q)^k, q the
/// denominator of lambda.
class ZReduceRows {
public:
  explicit ZReduceRows(const Scalar& lambda) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    q_ = lcm(denominator(lambda.re()), denominator(lambda.im()));
    lr_ = numerator(lambda.re()) * (q_ / denominator(lambda.re()));
    li_ = numerator(lambda.im()) * (q_ / denominator(lambda.im()));
  }

  const std::vector<ZC>& row(unsigned k, unsigned b) {
    auto it = memo_.find({k, b});
    if (it != memo_.end()) return it->second;
    std::vector<ZC> out;
    if (k == 1) {
      out = base(b);
    } else {
      const std::vector<ZC> first = base(b);  // copy: recursion may rehash
      for (unsigned j = 0; j < first.size(); ++j) {
        const ZC& c = first[j];
        if (c.first == 0 && c.second == 0) continue;
        const std::vector<ZC>& rest = row(k - 1, j);
        if (out.size() < rest.size()) out.resize(rest.size(), ZC{Integer(0), Integer(0)});
        for (unsigned t = 0; t < rest.size(); ++t) zmac(out[t], c, rest[t]);
      }
    }
    return memo_.emplace(std::make_pair(k, b), std::move(out)).first->second;
  }

  const Integer& den(unsigned k) {
    while (dens_.size() <= k) dens_.push_back(dens_.back() * 4 * q_);
    return dens_[k];
  }

private:
  /// (h+2)^b (lambda - h^2 - 2h)/4 over denominator 4q
  std::vector<ZC> base(unsigned b) {
    std::vector<ZC> r{{lr_, li_}, {Integer(-2) * q_, Integer(0)}, {-q_, Integer(0)}};
    for (unsigned i = 0; i < b; ++i) {
      std::vector<ZC> next(r.size() + 1, ZC{Integer(0), Integer(0)});
      for (size_t j = 0; j < r.size(); ++j) {
        next[j].first += r[j].first * 2;
        next[j].second += r[j].second * 2;
        next[j + 1].first += r[j].first;
        next[j + 1].second += r[j].second;
      }
      r = std::move(next);
    }
    return r;
  }

  Integer q_, lr_, li_;
  std::map<std::pair<unsigned, unsigned>, std::vector<ZC>> memo_;
  std::vector<Integer> dens_{Integer(1)};
};

/// Rewrite every mixed monomial of x via the memoized rows; returns the
/// factor by which the common denominator grew.
Integer zreduce(ZMap& x, ZReduceRows& rows) {
  unsigned kmax = 0;
  for (const auto& [k64, c] : x) {
    PBWMono m = zunpack(k64);
    if (m.mf && m.me) kmax = std::max(kmax, std::min(m.mf, m.me));
  }
  if (kmax == 0) return Integer(1);
  const Integer dK = rows.den(kmax);
  ZMap out;
  out.reserve(x.size());
  for (auto& [k64, c] : x) {
    if (c.first == 0 && c.second == 0) continue;
    PBWMono m = zunpack(k64);
    if (!(m.mf && m.me)) {
      auto& slot = out[k64];
      slot.first += c.first * dK;
      slot.second += c.second * dK;
      continue;
    }
    unsigned k = std::min(m.mf, m.me);
    const Integer scale = dK / rows.den(k);
    const std::vector<ZC>& row = rows.row(k, m.mh);
    for (unsigned j = 0; j < row.size(); ++j) {
      const auto& [rr, ri] = row[j];
      if (rr == 0 && ri == 0) continue;
      ZC prod{Integer(0), Integer(0)};
      zmac(prod, c, {rr * scale, ri * scale});
      if (prod.first == 0 && prod.second == 0) continue;
      auto& slot = out[zpack(m.mf - k, j, m.me - k)];
      slot.first += prod.first;
      slot.second += prod.second;
    }
  }
  x = std::move(out);
  return dK;
}

// ---------------------------------------------------------------------------

}  // namespace

EnvElement EnvElement::constant(const Ambient& amb, const Scalar& c) {
  return monomial(amb, {0, 0, 0}, c);
}

EnvElement EnvElement::monomial(const Ambient& amb, PBWMono m, const Scalar& c) {
  EnvElement r(amb);
  r.add_term(m, c);
  r.reduce();
  return r;
}

void EnvElement::add_term(const PBWMono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

EnvElement operator+(const EnvElement& a, const EnvElement& b) {
  require_same_ambient(a.amb_, b.amb_);
  EnvElement r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

EnvElement operator-(const EnvElement& a, const EnvElement& b) { return a + (-b); }

EnvElement operator-(const EnvElement& a) { return a.scaled(Scalar(-1)); }

void EnvElement::accumulate(const EnvElement& x, const Scalar& c) {
  require_same_ambient(amb_, x.amb_);
  if (c.is_zero()) return;
  for (const auto& [m, xc] : x.terms_) add_term(m, xc * c);
}

EnvElement EnvElement::scaled(const Scalar& c) const {
  EnvElement r(amb_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
  return r;
}

// f * (f^a h^b e^c) = f^{a+1} h^b e^c
EnvElement EnvElement::left_mul_f() const {
  EnvElement r(amb_);
  for (const auto& [m, c] : terms_) r.add_term({m.mf + 1, m.mh, m.me}, c);
  return r;
}

// h f^a = f^a (h - 2a), so h * (f^a h^b e^c) = f^a h^{b+1} e^c - 2a f^a h^b e^c
EnvElement EnvElement::left_mul_h() const {
  EnvElement r(amb_);
  for (const auto& [m, c] : terms_) {
    r.add_term({m.mf, m.mh + 1, m.me}, c);
    if (m.mf > 0) r.add_term(m, c * Scalar(-2L * m.mf));
  }
  return r;
}

// e f^a = f^a e + a f^{a-1} h - a(a-1) f^{a-1} and e h^b = (h-2)^b e
EnvElement EnvElement::left_mul_e() const {
  EnvElement r(amb_);
  for (const auto& [m, c] : terms_) {
    // f^a (h-2)^b e^{c+1}
    for (unsigned j = 0; j <= m.mh; ++j) {
      Scalar coeff = c * Scalar(binomial(m.mh, j)) * Scalar(-2).pow(m.mh - j);
      r.add_term({m.mf, j, m.me + 1}, coeff);
    }
    if (m.mf > 0) {
      r.add_term({m.mf - 1, m.mh + 1, m.me}, c * Scalar(long(m.mf)));
      if (m.mf > 1)
        r.add_term({m.mf - 1, m.mh, m.me}, c * Scalar(-long(m.mf) * long(m.mf - 1)));
    }
  }
  return r;
}

void EnvElement::reduce() {
  if (!amb_.quotient) return;
  // f^a h^b e^c = f^{a-1} (h+2)^b (fe) e^{c-1}, fe = (lambda - h^2 - 2h)/4;
  // each pass strictly decreases min(mf, me).
  // rows[b] holds the coefficients of (h+2)^b (lambda - h^2 - 2h)/4,
  // built incrementally and shared across monomials and passes
  std::vector<std::vector<Scalar>> rows;
  rows.push_back({amb_.lambda * Scalar(Rational(1, 4)), Scalar(Rational(-1, 2)),
                  Scalar(Rational(-1, 4))});
  auto row = [&rows](unsigned b) -> const std::vector<Scalar>& {
    while (rows.size() <= b) {
      const std::vector<Scalar>& prev = rows.back();
      std::vector<Scalar> next(prev.size() + 1);
      for (size_t j = 0; j < prev.size(); ++j) {
        next[j] += prev[j] * Scalar(2);
        next[j + 1] += prev[j];
      }
      rows.push_back(std::move(next));
    }
    return rows[b];
  };
  bool again = true;
  while (again) {
    again = false;
    TermMap work = std::move(terms_);
    terms_.clear();
    for (const auto& [m, c] : work) {
      if (m.mf == 0 || m.me == 0) {
        add_term(m, c);
        continue;
      }
      again = true;
      const std::vector<Scalar>& hp = row(m.mh);
      for (unsigned j = 0; j < hp.size(); ++j)
        if (!hp[j].is_zero()) add_term({m.mf - 1, j, m.me - 1}, c * hp[j]);
    }
  }
}

EnvElement operator*(const EnvElement& a, const EnvElement& b) {
  require_same_ambient(a.amb_, b.amb_);
  EnvElement r(a.amb_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  ZEnv za = env_to_z(a.terms_), zb = env_to_z(b.terms_);
  // Group the left terms by ascending (me, mh) so the straightening chains
  // e^me . b and h^mh . (e^me . b) are extended incrementally instead of
  // being replayed per term; the f part is a plain exponent shift.
  std::vector<std::pair<PBWMono, const ZC*>> left;
  left.reserve(za.terms.size());
  for (const auto& [k, c] : za.terms) left.push_back({zunpack(k), &c});
  std::sort(left.begin(), left.end(),
            [](const std::pair<PBWMono, const ZC*>& x, const std::pair<PBWMono, const ZC*>& y) {
              if (x.first.me != y.first.me) return x.first.me < y.first.me;
              return x.first.mh < y.first.mh;
            });
  Hm2Rows hm2;
  const bool quot = a.amb_.quotient;
  ZReduceRows rows(a.amb_.lambda);
  ZMap acc;
  // In the quotient, reduce the chain after every e step so it stays in the
  // basis (min(mf, me) = 0) instead of accumulating deep mixed monomials.
  // The chain denominator grows as the reduction rows are applied; already
  // emitted terms are rescaled to keep acc over a single denominator.
  Integer chain_den{1};
  ZMap by_e = zb.terms;
  unsigned e_done = 0;
  size_t i = 0;
  while (i < left.size()) {
    unsigned me = left[i].first.me;
    while (e_done < me) {
      by_e = zleft_mul_e(by_e, hm2);
      ++e_done;
      if (quot) {
        Integer grow = zreduce(by_e, rows);
        if (grow != 1) {
          chain_den *= grow;
          for (auto& [k64, c] : acc) {
            c.first *= grow;
            c.second *= grow;
          }
        }
      }
    }
    ZMap by_h = by_e;
    unsigned h_done = 0;
    for (; i < left.size() && left[i].first.me == me; ++i) {
      const auto& [m, c] = left[i];
      while (h_done < m.mh) {
        by_h = zleft_mul_h(by_h);
        ++h_done;
      }
      for (const auto& [kk, w] : by_h) {
        PBWMono mm = zunpack(kk);
        zmac(acc[zpack(mm.mf + m.mf, mm.mh, mm.me)], *c, w);
      }
    }
  }
  const Integer d = za.den * zb.den * chain_den;
  auto make_scalar = [](const Integer& re, const Integer& im, const Integer& den) {
    return Scalar(Rational(re, den), im == 0 ? Rational(0) : Rational(im, den));
  };
  std::unordered_map<std::uint64_t, Scalar> out;
  out.reserve(acc.size());
  for (auto& [k64, zc] : acc) {
    if (zc.first == 0 && zc.second == 0) continue;
    PBWMono m = zunpack(k64);
    if (!quot || m.mf == 0 || m.me == 0) {
      out[k64] += make_scalar(zc.first, zc.second, d);
      continue;
    }
    unsigned k = std::min(m.mf, m.me);
    const std::vector<ZC>& row = rows.row(k, m.mh);
    const Integer dk = d * rows.den(k);
    for (unsigned j = 0; j < row.size(); ++j) {
      const auto& [rr, ri] = row[j];
      if (rr == 0 && ri == 0) continue;
      ZC prod{Integer(0), Integer(0)};
      zmac(prod, zc, {rr, ri});
      if (prod.first == 0 && prod.second == 0) continue;
      out[zpack(m.mf - k, j, m.me - k)] += make_scalar(prod.first, prod.second, dk);
    }
  }
  for (auto& [k64, c] : out)
    if (!c.is_zero()) r.terms_.emplace(zunpack(k64), std::move(c));
  return r;
}

EnvElement EnvElement::pow(unsigned k) const {
  EnvElement r = constant(amb_, Scalar(1));
  for (unsigned j = 0; j < k; ++j) r = r * *this;
  return r;
}

PBWMono EnvElement::leading_word() const {
  if (terms_.empty()) fail(errc::zero_element, "leading word of the zero element");
  return terms_.begin()->first;
}

Scalar EnvElement::leading_coeff() const {
  if (terms_.empty()) fail(errc::zero_element, "leading coefficient of the zero element");
  return terms_.begin()->second;
}

unsigned EnvElement::degree() const { return leading_word().degree(); }

EnvElement commutator(const EnvElement& a, const EnvElement& b) { return a * b - b * a; }

EnvElement casimir_u(const Ambient& amb) {
  EnvElement e = EnvElement::gen_e(amb);
  EnvElement h = EnvElement::gen_h(amb);
  EnvElement f = EnvElement::gen_f(amb);
  return (f * e).scaled(Scalar(4)) + h * h + h.scaled(Scalar(2));
}

EnvElement symmetrize(const PoissonElement& a) {
  if (a.ambient().quotient)
    fail(errc::ambient_mismatch, "symmetrize is defined on the free Poisson ambient");
  Ambient amb = Ambient::free();
  EnvElement out(amb);
  for (const auto& [m, c] : a.terms()) {
    unsigned n = m.degree();
    if (n > 8) fail(errc::degree_cap, "symmetrize input exceeds total degree 8");
    if (n == 0) {
      out = out + EnvElement::constant(amb, c);
      continue;
    }
    // letters 0=f, 1=h, 2=e; iterate distinct arrangements, each standing
    // for mf! mh! me! of the n! orderings
    std::vector<int> letters;
    letters.insert(letters.end(), m.mf, 0);
    letters.insert(letters.end(), m.mh, 1);
    letters.insert(letters.end(), m.me, 2);
    Rational weight(1);
    for (unsigned k = 2; k <= m.mf; ++k) weight *= k;
    for (unsigned k = 2; k <= m.mh; ++k) weight *= k;
    for (unsigned k = 2; k <= m.me; ++k) weight *= k;
    for (unsigned k = 2; k <= n; ++k) weight /= k;
    const EnvElement gens[3] = {EnvElement::gen_f(amb), EnvElement::gen_h(amb),
                                EnvElement::gen_e(amb)};
    EnvElement sum(amb);
    do {
      EnvElement prod = EnvElement::constant(amb, Scalar(1));
      for (int letter : letters) prod = prod * gens[letter];
      sum = sum + prod;
    } while (std::next_permutation(letters.begin(), letters.end()));
    out = out + sum.scaled(c * Scalar(weight));
  }
  return out;
}

std::string EnvElement::str() const {
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
