#ifndef SL2Q_NORMAL_FORM_HPP
#define SL2Q_NORMAL_FORM_HPP

#include <optional>
#include <utility>
#include <vector>

#include "sl2q/automorphism.hpp"

namespace sl2q {

/// Linear triangular automorphism hat(T) for T = [[1,0],[alpha,beta]],
/// beta != 0. The amalgamated subgroup C = A int T, kept concrete as the
/// (alpha, beta) pair.
struct CElement {
  Scalar alpha{0};
  Scalar beta{1};

  static CElement identity() { return {}; }
  bool is_identity() const { return alpha.is_zero() && beta.is_one(); }

  Generator as_generator() const {
    return Generator::linear(Scalar(1), Scalar(0), alpha, beta);
  }

  template <class Elem>
  Triple<Elem> triple(const Ambient& amb) const {
    return to_triple<Elem>(as_generator(), amb);
  }

  friend bool operator==(const CElement& a, const CElement& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
  friend bool operator!=(const CElement& a, const CElement& b) { return !(a == b); }
};

/// A word in the atomic generators, composed right-to-left: factors[0] is
/// applied last. The empty word is the identity.
struct GeneratorWord {
  Side side = Side::P;
  Scalar lambda{0};
  std::vector<Generator> factors;
};

/// The unique alternating normal form
///   alpha_1 . beta_1 . alpha_2 . beta_2 ... alpha_k . beta_k . alpha_{k+1} . c
/// with alpha_i = tau coset representatives (interior ones mandatory),
/// beta_i = Delta_q / delta_q with q in xK[x] nonzero, and c in C.
struct CanonicalForm {
  struct Pair {
    std::optional<Scalar> tau;  // absent only allowed for the first pair
    Polynomial q;               // nonzero, zero constant term

    friend bool operator==(const Pair& a, const Pair& b) {
      return a.tau == b.tau && a.q == b.q;
    }
  };

  Side side = Side::P;
  Scalar lambda{0};
  std::vector<Pair> alternation;
  std::optional<Scalar> trailing_tau;
  CElement tail;

  bool is_identity() const {
    return alternation.empty() && !trailing_tau && tail.is_identity();
  }

  GeneratorWord to_word() const;
  std::string str() const;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.side == b.side && a.lambda == b.lambda && a.alternation == b.alternation &&
           a.trailing_tau == b.trailing_tau && a.tail == b.tail;
  }
  friend bool operator!=(const CanonicalForm& a, const CanonicalForm& b) { return !(a == b); }
};

/// hat(T) = rep . c with rep in A_0 = {tau_alpha} u {id} and c in C,
/// via the factorization T = P Q_alpha.
std::pair<std::optional<Scalar>, CElement> coset_decompose_A(const std::array<Scalar, 4>& mat);

/// Delta_g . H_nu = Delta_q . c with q = g - g(0) in xK[x] and c in C.
std::pair<Polynomial, CElement> coset_decompose_T(const Polynomial& g, const Scalar& nu);

/// Rewrite any generator word into its canonical form by the left-to-right
/// coset sweep.
CanonicalForm normalize_word(const GeneratorWord& w);

/// Closed-form multidegree for forms shaped beta_1 alpha_2 ... beta_k
/// (leading tau absent, trailing tau absent, identity tail).
std::array<unsigned, 3> multidegree_formula(const CanonicalForm& cf);

/// Theorem 5 direction P -> U: replace each Delta_g by delta_g, keep all
/// linear factors.
GeneratorWord map_to_U(const CanonicalForm& cf);

bool word_equal(const GeneratorWord& a, const GeneratorWord& b);

/// Compose the factors of a word into an endomorphism triple.
template <class Elem>
Triple<Elem> to_triple(const GeneratorWord& w);

template <class Elem>
Triple<Elem> to_triple(const CanonicalForm& cf);

/// Extract the canonical form of a raw verified triple by greedy degree
/// peeling; errors with `not_an_automorphism` when peeling gets stuck.
template <class Elem>
CanonicalForm recognize_triple(const Triple<Elem>& t);

extern template Triple<PoissonElement> to_triple<PoissonElement>(const GeneratorWord&);
extern template Triple<EnvElement> to_triple<EnvElement>(const GeneratorWord&);
extern template Triple<PoissonElement> to_triple<PoissonElement>(const CanonicalForm&);
extern template Triple<EnvElement> to_triple<EnvElement>(const CanonicalForm&);
extern template CanonicalForm recognize_triple<PoissonElement>(const Triple<PoissonElement>&);
extern template CanonicalForm recognize_triple<EnvElement>(const Triple<EnvElement>&);

}  // namespace sl2q

#endif
