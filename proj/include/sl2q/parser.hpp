#ifndef SL2Q_PARSER_HPP
#define SL2Q_PARSER_HPP

#include <map>
#include <string>

#include "sl2q/normal_form.hpp"

namespace sl2q {

/// Script bindings: name -> source text, parsed on use in the ambient of the
/// use site. Names shadow nothing: e, h, f, i, x are reserved.
using Definitions = std::map<std::string, std::string>;

/// Expression grammar over `e h f i` (case-insensitive generators), rational
/// literals `p/q`, `+ - * ^`, parentheses, unary minus, `{a,b}` (Poisson
/// bracket, P sides) and `[a,b]` (commutator, U sides).
template <class Elem>
Elem parse_element(const std::string& text, const Ambient& amb,
                   const Definitions* defs = nullptr);

/// Constant expression: same grammar with the generators removed.
Scalar parse_scalar(const std::string& text);

/// Polynomial in the indeterminate `x`, same operator grammar.
Polynomial parse_polynomial(const std::string& text);

/// Dot-separated factors `delta[g]`, `hyp[s]`, `tau[s]`,
/// `lin[[a,b],[c,d]]`, `C[alpha=s, beta=s]`, or a bound word name.
GeneratorWord parse_word(const std::string& text, Side side, const Scalar& lambda,
                         const Definitions* defs = nullptr);

/// Three expressions separated by `;`: the images of e, h, f.
template <class Elem>
Triple<Elem> parse_triple(const std::string& text, const Ambient& amb,
                          const Definitions* defs = nullptr);

std::string word_str(const GeneratorWord& w);

template <class Elem>
std::string triple_str(const Triple<Elem>& t);

extern template PoissonElement parse_element<PoissonElement>(const std::string&, const Ambient&,
                                                             const Definitions*);
extern template EnvElement parse_element<EnvElement>(const std::string&, const Ambient&,
                                                     const Definitions*);
extern template Triple<PoissonElement> parse_triple<PoissonElement>(const std::string&,
                                                                    const Ambient&,
                                                                    const Definitions*);
extern template Triple<EnvElement> parse_triple<EnvElement>(const std::string&, const Ambient&,
                                                            const Definitions*);
extern template std::string triple_str<PoissonElement>(const Triple<PoissonElement>&);
extern template std::string triple_str<EnvElement>(const Triple<EnvElement>&);

}  // namespace sl2q

#endif
