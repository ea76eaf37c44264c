#include "sl2q/normal_form.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <vector>

namespace sl2q {

namespace {

// ---------------------------------------------------------------------------
// Block algebra used by the coset sweep. A word factor is either linear
// (a PSL2 matrix) or triangular (Delta_g . H_nu).

struct Block {
  bool linear = true;
  std::array<Scalar, 4> mat{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};  // row-major
  Polynomial g;
  Scalar nu{1};
};

std::array<Scalar, 4> mat_mul(const std::array<Scalar, 4>& x, const std::array<Scalar, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Block linear_block(std::array<Scalar, 4> m) {
  Block b;
  b.linear = true;
  b.mat = std::move(m);
  return b;
}

Block triangular_block(Polynomial g, Scalar nu) {
  Block b;
  b.linear = false;
  b.g = std::move(g);
  b.nu = std::move(nu);
  return b;
}

/// x o y for same-class blocks. hat(M) o hat(N) = hat(N M), and
/// (Delta_{g1} o H_{nu1}) o (Delta_{g2} o H_{nu2})
///   = Delta_{g1 + nu1^{-1} g2(nu1^{-1} x)} o H_{nu1 nu2}  (Lemma 3 push).
Block compose_blocks(const Block& x, const Block& y) {
  if (x.linear != y.linear) fail(errc::internal, "composing blocks of different classes");
  if (x.linear) return linear_block(mat_mul(y.mat, x.mat));
  Scalar inv = x.nu.inverse();
  Polynomial pushed = y.g.precompose_scale(inv).scaled(inv);
  return triangular_block(x.g + pushed, x.nu * y.nu);
}

Block c_as_block(const CElement& c, bool linear) {
  if (linear) return linear_block({Scalar(1), Scalar(0), c.alpha, c.beta});
  // CElement(alpha, beta) = Delta_{-alpha/beta} o H_beta
  return triangular_block(Polynomial(-(c.alpha / c.beta)), c.beta);
}

Block classify(const Generator& gen, Side side) {
  switch (gen.kind) {
    case Generator::Kind::Linear: return linear_block(gen.mat);
    case Generator::Kind::Tau:
      // hat(Q_alpha) = tau_alpha
      return linear_block({gen.param, Scalar(1), Scalar(1), Scalar(0)});
    case Generator::Kind::Hyperbolic:
      return linear_block({Scalar(1), Scalar(0), Scalar(0), gen.param});
    case Generator::Kind::DeltaP:
      if (side != Side::P) fail(errc::side_mismatch, "Delta_g factor in a U-side word");
      return triangular_block(gen.g, Scalar(1));
    case Generator::Kind::DeltaU:
      if (side != Side::U) fail(errc::side_mismatch, "delta_g factor in a P-side word");
      return triangular_block(gen.g, Scalar(1));
  }
  fail(errc::internal, "unreachable generator kind");
}

/// Emitted coset representative: tau_alpha or Delta_q (q in xK[x], nonzero).
struct Rep {
  bool is_tau = true;
  Scalar alpha;
  Polynomial q;
};

Block rep_as_block(const Rep& r) {
  if (r.is_tau) return linear_block({r.alpha, Scalar(1), Scalar(1), Scalar(0)});
  return triangular_block(r.q, Scalar(1));
}

/// block = rep o c
std::pair<std::optional<Rep>, CElement> decompose(const Block& blk) {
  if (blk.linear) {
    auto [tau, c] = coset_decompose_A(blk.mat);
    if (!tau) return {std::nullopt, c};
    return {Rep{true, *tau, {}}, c};
  }
  auto [q, c] = coset_decompose_T(blk.g, blk.nu);
  if (q.is_zero()) return {std::nullopt, c};
  return {Rep{false, {}, std::move(q)}, c};
}

}  // namespace

std::pair<std::optional<Scalar>, CElement> coset_decompose_A(const std::array<Scalar, 4>& mat) {
  const Scalar &a = mat[0], &b = mat[1], &c = mat[2], &d = mat[3];
  Scalar det = a * d - b * c;
  if (det.is_zero()) fail(errc::singular_matrix, "coset decomposition of a singular matrix");
  if (b.is_zero()) {
    // lower triangular: already in C after scaling the (0,0) entry to 1
    return {std::nullopt, CElement{c / a, d / a}};
  }
  // scale so b = 1, then T = P Q_alpha with Q_alpha = [[alpha,1],[1,0]],
  // P = [[1,0],[d', c'-d'a']], and hat(T) = tau_{a'} o hat(P)
  Scalar a1 = a / b, c1 = c / b, d1 = d / b;
  return {a1, CElement{d1, c1 - d1 * a1}};
}

std::pair<Polynomial, CElement> coset_decompose_T(const Polynomial& g, const Scalar& nu) {
  if (nu.is_zero()) fail(errc::bad_argument, "hyperbolic parameter must be nonzero");
  Polynomial q = g.drop_constant();
  // Delta_{g(0)} o H_nu = CElement(-nu g(0), nu)
  return {std::move(q), CElement{-(nu * g.constant_term()), nu}};
}

CanonicalForm normalize_word(const GeneratorWord& w) {
  std::deque<Block> queue;
  for (const Generator& gen : w.factors) queue.push_back(classify(gen, w.side));

  std::vector<Rep> out;
  CElement tail = CElement::identity();
  while (!queue.empty()) {
    Block blk = std::move(queue.front());
    queue.pop_front();
    if (!out.empty() && out.back().is_tau == blk.linear) {
      // same class as the previously emitted representative: merge back so
      // the alternation survives
      blk = compose_blocks(rep_as_block(out.back()), blk);
      out.pop_back();
    }
    auto [rep, c] = decompose(blk);
    if (rep) out.push_back(std::move(*rep));
    if (!queue.empty()) {
      Block& front = queue.front();
      front = compose_blocks(c_as_block(c, front.linear), front);
    } else {
      tail = c;
    }
  }

  CanonicalForm cf;
  cf.side = w.side;
  cf.lambda = w.lambda;
  cf.tail = tail;
  size_t i = 0;
  while (i < out.size()) {
    std::optional<Scalar> tau;
    if (out[i].is_tau) {
      tau = out[i].alpha;
      ++i;
    }
    if (i < out.size()) {
      if (out[i].is_tau) fail(errc::internal, "alternation violated in normalize_word");
      cf.alternation.push_back({tau, out[i].q});
      ++i;
    } else {
      cf.trailing_tau = tau;
    }
  }
  return cf;
}

GeneratorWord CanonicalForm::to_word() const {
  GeneratorWord w;
  w.side = side;
  w.lambda = lambda;
  for (const Pair& p : alternation) {
    if (p.tau) w.factors.push_back(Generator::tau(*p.tau));
    w.factors.push_back(side == Side::P ? Generator::delta_p(p.q) : Generator::delta_u(p.q));
  }
  if (trailing_tau) w.factors.push_back(Generator::tau(*trailing_tau));
  if (!tail.is_identity()) w.factors.push_back(tail.as_generator());
  return w;
}

std::string CanonicalForm::str() const {
  std::ostringstream out;
  for (const Pair& p : alternation) {
    if (p.tau) out << "tau[" << p.tau->str() << "] . ";
    out << "delta[" << p.q.str() << "] . ";
  }
  if (trailing_tau) out << "tau[" << trailing_tau->str() << "] . ";
  out << "C[alpha=" << tail.alpha.str() << ", beta=" << tail.beta.str() << "]";
  return out.str();
}

std::array<unsigned, 3> multidegree_formula(const CanonicalForm& cf) {
  if (cf.alternation.empty() || cf.alternation.front().tau || cf.trailing_tau ||
      !cf.tail.is_identity())
    fail(errc::shape_mismatch,
         "multidegree formula needs the shape beta_1 alpha_2 ... beta_k");
  unsigned head = 1;  // prod over i < k of (2 n_i + 1)
  for (size_t i = 0; i + 1 < cf.alternation.size(); ++i)
    head *= 2 * cf.alternation[i].q.degree() + 1;
  unsigned nk = cf.alternation.back().q.degree();
  return {head * (2 * nk + 1), head * (nk + 1), head};
}

GeneratorWord map_to_U(const CanonicalForm& cf) {
  if (cf.side != Side::P) fail(errc::side_mismatch, "map_to_U takes a P-side canonical form");
  CanonicalForm copy = cf;
  copy.side = Side::U;
  return copy.to_word();
}

bool word_equal(const GeneratorWord& a, const GeneratorWord& b) {
  if (a.side != b.side || a.lambda != b.lambda)
    fail(errc::side_mismatch, "word comparison needs matching side and lambda");
  return normalize_word(a) == normalize_word(b);
}

template <class Elem>
Triple<Elem> to_triple(const GeneratorWord& w) {
  if (AlgebraTraits<Elem>::side != w.side)
    fail(errc::side_mismatch, "word side does not match the requested algebra");
  Ambient amb = Ambient::at(w.lambda);
  Triple<Elem> t = identity_triple<Elem>(amb);
  for (const Generator& gen : w.factors) t = compose(t, to_triple<Elem>(gen, amb));
  return t;
}

template <class Elem>
Triple<Elem> to_triple(const CanonicalForm& cf) {
  return to_triple<Elem>(cf.to_word());
}

// ---------------------------------------------------------------------------
// Recognition

namespace {

template <class Elem>
std::optional<std::array<Scalar, 3>> linear_coords(const Elem& x);

template <>
std::optional<std::array<Scalar, 3>> linear_coords(const PoissonElement& x) {
  std::array<Scalar, 3> r{};
  for (const auto& [m, c] : x.terms()) {
    if (m.degree() != 1) return std::nullopt;
    r[m.me ? 0 : (m.mh ? 1 : 2)] = c;
  }
  return r;
}

template <>
std::optional<std::array<Scalar, 3>> linear_coords(const EnvElement& x) {
  std::array<Scalar, 3> r{};
  for (const auto& [m, c] : x.terms()) {
    if (m.degree() != 1) return std::nullopt;
    r[m.me ? 0 : (m.mh ? 1 : 2)] = c;
  }
  return r;
}

/// top-degree homogeneous part as (mono, coeff) pairs in descending order
template <class Elem>
auto top_part(const Elem& x) {
  std::vector<std::pair<decltype(x.leading_word()), Scalar>> top;
  unsigned d = x.degree();
  for (const auto& [m, c] : x.terms()) {
    if (m.degree() != d) break;  // terms are degree-descending
    top.emplace_back(m, c);
  }
  return top;
}

/// If top(a) = c * top(b), return c.
template <class Elem>
std::optional<Scalar> top_ratio(const Elem& a, const Elem& b) {
  auto ta = top_part(a), tb = top_part(b);
  if (ta.size() != tb.size()) return std::nullopt;
  Scalar ratio = ta.front().second / tb.front().second;
  for (size_t k = 0; k < ta.size(); ++k) {
    if (!(ta[k].first == tb[k].first)) return std::nullopt;
    if (ta[k].second != ratio * tb[k].second) return std::nullopt;
  }
  return ratio;
}

/// Reduce the span of the three images by cancelling proportional top parts;
/// returns combination rows (in terms of the original images) paired with
/// the reduced elements.
template <class Elem>
std::vector<std::pair<std::array<Scalar, 3>, Elem>> degree_filtration(const Triple<Elem>& t) {
  std::vector<std::pair<std::array<Scalar, 3>, Elem>> items;
  items.push_back({{Scalar(1), Scalar(0), Scalar(0)}, t.img_e});
  items.push_back({{Scalar(0), Scalar(1), Scalar(0)}, t.img_h});
  items.push_back({{Scalar(0), Scalar(0), Scalar(1)}, t.img_f});
  for (int guard = 0; guard < 4096; ++guard) {
    bool reduced = false;
    for (size_t i = 0; i < 3 && !reduced; ++i) {
      for (size_t j = 0; j < 3 && !reduced; ++j) {
        if (i == j) continue;
        Elem &xi = items[i].second, &xj = items[j].second;
        if (xi.is_zero() || xj.is_zero())
          fail(errc::not_an_automorphism, "images are linearly dependent");
        if (xi.degree() != xj.degree()) continue;
        auto ratio = top_ratio(xi, xj);
        if (!ratio) continue;
        for (int k = 0; k < 3; ++k)
          items[i].first[k] = items[i].first[k] - *ratio * items[j].first[k];
        xi = xi - xj.scaled(*ratio);
        if (xi.is_zero()) fail(errc::not_an_automorphism, "images are linearly dependent");
        reduced = true;
      }
    }
    if (!reduced) return items;
  }
  fail(errc::internal, "degree filtration did not stabilize");
}

template <class Elem>
unsigned max_degree(const Triple<Elem>& t) {
  if (t.img_e.is_constant() || t.img_h.is_constant() || t.img_f.is_constant())
    fail(errc::not_an_automorphism, "image of a generator is constant");
  return std::max({t.img_e.degree(), t.img_h.degree(), t.img_f.degree()});
}

/// Extract gt with v = chi o H_nu o Delta_gt from the expansion of the
/// h-image in powers of the f-image.
template <class Elem>
Polynomial extract_delta(const Triple<Elem>& v) {
  const Elem& v3 = v.img_f;
  if (v3.is_zero() || v3.is_constant())
    fail(errc::not_an_automorphism, "f-image degenerate during peeling");
  unsigned d3 = v3.degree();
  Polynomial gt;
  Elem r = v.img_h;
  std::vector<Elem> pows{Elem::constant(v3.ambient(), Scalar(1))};
  auto v3_pow = [&](unsigned k) -> const Elem& {
    while (pows.size() <= k) pows.push_back(pows.back() * v3);
    return pows[k];
  };
  for (int guard = 0; guard < 4096; ++guard) {
    if (r.is_zero()) return gt;
    unsigned d = r.degree();
    if (d < d3) return gt;
    if (d % d3 != 0)
      fail(errc::not_an_automorphism, "h-image is not polynomial in the f-image");
    unsigned jp1 = d / d3;
    const Elem& p = v3_pow(jp1);
    if (!(p.leading_word() == r.leading_word())) {
      if (d == d3) return gt;  // leftover linear chi_h part
      fail(errc::not_an_automorphism, "h-image is not polynomial in the f-image");
    }
    Scalar c = r.leading_coeff() / p.leading_coeff();
    r = r - p.scaled(c);
    gt.add_term(jp1 - 1, c * Scalar(Rational(1, 2)));
    if (!r.is_zero() && r.degree() == d && d > d3)
      fail(errc::not_an_automorphism, "h-image is not polynomial in the f-image");
  }
  fail(errc::internal, "delta extraction did not terminate");
}

/// Solve T E T^{-1}-style equations: find T with X T = T M_X for the three
/// generator images of a linear triple; unique up to scalar for genuine
/// linear automorphisms.
template <class Elem>
Generator extract_linear(const Triple<Elem>& t) {
  auto ce = linear_coords(t.img_e);
  auto ch = linear_coords(t.img_h);
  auto cf = linear_coords(t.img_f);
  if (!ce || !ch || !cf)
    fail(errc::not_an_automorphism, "multidegree (1,1,1) but images are not linear");
  // rows of the 12x4 homogeneous system in (t1,t2,t3,t4)
  std::vector<std::array<Scalar, 4>> rows;
  auto add_equations = [&rows](const std::array<Scalar, 4>& x, const std::array<Scalar, 3>& img) {
    // M = img_e E + img_h H + img_f F = [[ch, ce],[cf, -ch]]
    std::array<Scalar, 4> m = {img[1], img[0], img[2], -img[1]};
    // X T - T M = 0, T = [[t1,t2],[t3,t4]]
    rows.push_back({x[0] - m[0], -m[2], x[1], Scalar(0)});
    rows.push_back({-m[1], x[0] - m[3], Scalar(0), x[1]});
    rows.push_back({x[2], Scalar(0), x[3] - m[0], -m[2]});
    rows.push_back({Scalar(0), x[2], -m[1], x[3] - m[3]});
  };
  add_equations({Scalar(0), Scalar(1), Scalar(0), Scalar(0)}, *ce);
  add_equations({Scalar(1), Scalar(0), Scalar(0), Scalar(-1)}, *ch);
  add_equations({Scalar(0), Scalar(0), Scalar(1), Scalar(0)}, *cf);
  // exact Gaussian elimination
  size_t rank = 0;
  for (size_t col = 0; col < 4 && rank < rows.size(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    Scalar inv = rows[rank][col].inverse();
    for (auto& x : rows[rank]) x *= inv;
    for (size_t rr = 0; rr < rows.size(); ++rr) {
      if (rr == rank || rows[rr][col].is_zero()) continue;
      Scalar factor = rows[rr][col];
      for (size_t cc = 0; cc < 4; ++cc) rows[rr][cc] -= factor * rows[rank][cc];
    }
    ++rank;
  }
  if (rank != 3) fail(errc::not_an_automorphism, "linear part is not an sl2 automorphism");
  // back-substitute a nullspace vector: pivots are the first three columns
  // after elimination; find the free column
  std::array<Scalar, 4> sol{};
  std::array<int, 4> pivot_col{-1, -1, -1, -1};
  for (size_t rr = 0; rr < rank; ++rr)
    for (size_t cc = 0; cc < 4; ++cc)
      if (!rows[rr][cc].is_zero()) {
        pivot_col[rr] = int(cc);
        break;
      }
  int free_col = -1;
  for (int cc = 0; cc < 4; ++cc) {
    bool is_pivot = false;
    for (size_t rr = 0; rr < rank; ++rr) is_pivot = is_pivot || pivot_col[rr] == cc;
    if (!is_pivot) free_col = cc;
  }
  sol[free_col] = Scalar(1);
  for (size_t rr = 0; rr < rank; ++rr)
    sol[pivot_col[rr]] = -rows[rr][free_col];
  return Generator::linear(sol[0], sol[1], sol[2], sol[3]);
}

template <class Elem>
std::vector<Generator> peel(Triple<Elem> cur) {
  const Ambient& amb = cur.ambient();
  std::deque<Generator> right;
  for (int guard = 0; guard < 256; ++guard) {
    std::array<unsigned, 3> degs = {cur.img_e.degree(), cur.img_h.degree(),
                                    cur.img_f.degree()};
    if (degs == std::array<unsigned, 3>{1, 1, 1}) {
      Generator lin = extract_linear(cur);
      if (to_triple<Elem>(lin, amb) != cur)
        fail(errc::not_an_automorphism, "linear residual does not match any hat(T)");
      std::vector<Generator> word{lin};
      word.insert(word.end(), right.begin(), right.end());
      return word;
    }
    unsigned before = max_degree(cur);
    // choose the linear right factor aligning the f-image with the lowest
    // filtration level
    auto items = degree_filtration(cur);
    size_t best = 0;
    for (size_t k = 1; k < 3; ++k)
      if (items[k].second.degree() < items[best].second.degree()) best = k;
    const auto& combo = items[best].first;  // (p, q, r): p*img_e + q*img_h + r*img_f
    std::optional<Scalar> tau_b;
    if (!combo[0].is_zero()) {
      Scalar b = combo[1] / combo[0];
      if (combo[2] * combo[0] != -(combo[1] * combo[1]))
        fail(errc::not_an_automorphism, "f-level combination is not tau-shaped");
      tau_b = b;
    } else if (!combo[1].is_zero()) {
      fail(errc::not_an_automorphism, "f-level combination is not tau-shaped");
    }
    Triple<Elem> v = cur;
    if (tau_b) v = compose(cur, to_triple<Elem>(Generator::tau(*tau_b), amb));
    Polynomial gt = extract_delta(v);
    Polynomial q = gt.drop_constant();
    if (q.is_zero()) fail(errc::not_an_automorphism, "degree peeling made no progress");
    Generator delta = AlgebraTraits<Elem>::side == Side::P ? Generator::delta_p(gt)
                                                           : Generator::delta_u(gt);
    Generator delta_inv = AlgebraTraits<Elem>::side == Side::P
                              ? Generator::delta_p(-gt)
                              : Generator::delta_u(-gt);
    Triple<Elem> next = compose(v, to_triple<Elem>(delta_inv, amb));
    if (max_degree(next) >= before)
      fail(errc::not_an_automorphism, "degree peeling made no progress");
    if (tau_b) {
      // tau_b^{-1} = hat(Q_b^{-1}), Q_b^{-1} = [[0,1],[1,-b]]
      right.push_front(Generator::linear(Scalar(0), Scalar(1), Scalar(1), -*tau_b));
    }
    right.push_front(delta);
    cur = std::move(next);
  }
  fail(errc::internal, "peeling did not terminate");
}

}  // namespace

template <class Elem>
CanonicalForm recognize_triple(const Triple<Elem>& t) {
  const Ambient& amb = t.ambient();
  if (!amb.quotient)
    fail(errc::bad_argument, "recognition works in the quotient automorphism groups");
  // The round-trip check at the end is a complete proof that t is the
  // automorphism of the returned form, so the defining relations are only
  // checked when something goes wrong, to classify the failure.
  try {
    GeneratorWord w;
    w.side = AlgebraTraits<Elem>::side;
    w.lambda = amb.lambda;
    w.factors = peel(t);
    CanonicalForm cf = normalize_word(w);
    if (to_triple<Elem>(cf) != t)
      fail(errc::internal, "recognized form does not reproduce the triple");
    return cf;
  } catch (const Error&) {
    if (!verify_endomorphism(t))
      fail(errc::not_an_automorphism, "triple violates the defining relations");
    throw;
  }
}

template Triple<PoissonElement> to_triple<PoissonElement>(const GeneratorWord&);
template Triple<EnvElement> to_triple<EnvElement>(const GeneratorWord&);
template Triple<PoissonElement> to_triple<PoissonElement>(const CanonicalForm&);
template Triple<EnvElement> to_triple<EnvElement>(const CanonicalForm&);
template CanonicalForm recognize_triple<PoissonElement>(const Triple<PoissonElement>&);
template CanonicalForm recognize_triple<EnvElement>(const Triple<EnvElement>&);

}  // namespace sl2q
