#include "sl2q/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace sl2q {

namespace {

constexpr int kMaxBindingDepth = 32;

struct Token {
  enum class Kind { End, Ident, Number, Punct };
  Kind kind = Kind::End;
  std::string ident;
  Rational number;
  char punct = 0;
  size_t pos = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void error(const std::string& message) const {
    fail(errc::syntax, message + " at position " + std::to_string(tok_.pos));
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.pos = pos_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Token::Kind::Number;
      tok_.number = Rational(lex_integer());
      // `p/q` is a single literal when a digit follows the slash
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        Integer den = lex_integer();
        if (den == 0) fail(errc::division_by_zero, "literal with zero denominator");
        tok_.number /= Rational(den);
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = Token::Kind::Ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        tok_.ident += text_[pos_++];
      return;
    }
    tok_.kind = Token::Kind::Punct;
    tok_.punct = c;
    ++pos_;
  }

  Integer lex_integer() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    return Integer(digits);
  }

  const std::string& text_;
  size_t pos_ = 0;
  Token tok_;
};

enum class ExprMode { Element, ScalarOnly, PolyInX };

template <class Elem>
class ExprParser {
public:
  ExprParser(Lexer& lex, const Ambient& amb, ExprMode mode, const Definitions* defs, int depth)
      : lex_(lex), amb_(amb), mode_(mode), defs_(defs), depth_(depth) {}

  Elem parse() {
    Elem r = expr();
    if (lex_.peek().kind != Token::Kind::End) lex_.error("unexpected trailing input");
    return r;
  }

private:
  bool at_punct(char c) const {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().punct == c;
  }

  void expect_punct(char c) {
    if (!at_punct(c)) lex_.error(std::string("expected '") + c + "'");
    lex_.take();
  }

  Elem expr() {
    Elem r = term();
    while (at_punct('+') || at_punct('-')) {
      char op = lex_.take().punct;
      Elem rhs = term();
      r = op == '+' ? r + rhs : r - rhs;
    }
    return r;
  }

  Elem term() {
    Elem r = unary();
    while (at_punct('*')) {
      lex_.take();
      r = r * unary();
    }
    return r;
  }

  Elem unary() {
    if (at_punct('-')) {
      lex_.take();
      return -unary();
    }
    return power();
  }

  Elem power() {
    Elem base = atom();
    while (at_punct('^')) {
      lex_.take();
      if (lex_.peek().kind != Token::Kind::Number) lex_.error("expected integer exponent");
      Rational n = lex_.take().number;
      if (boost::multiprecision::denominator(n) != 1 || n < 0 || n > 1u << 20)
        fail(errc::bad_argument, "exponent must be a small nonnegative integer");
      base = base.pow(boost::multiprecision::numerator(n).convert_to<unsigned>());
    }
    return base;
  }

  Elem generator(const std::string& name) {
    if (mode_ != ExprMode::Element) lex_.error("generator '" + name + "' not allowed here");
    char c = char(std::tolower(static_cast<unsigned char>(name[0])));
    if (c == 'e') return Elem::gen_e(amb_);
    if (c == 'h') return Elem::gen_h(amb_);
    return Elem::gen_f(amb_);
  }

  Elem bracket(char open, char close) {
    constexpr bool is_p = std::is_same_v<Elem, PoissonElement>;
    if (mode_ != ExprMode::Element) lex_.error("bracket not allowed here");
    if ((open == '{') != is_p)
      fail(errc::side_mismatch, is_p ? "[a,b] is the commutator of the enveloping sides"
                                     : "{a,b} is the bracket of the Poisson sides");
    lex_.take();
    Elem a = expr();
    expect_punct(',');
    Elem b = expr();
    expect_punct(close);
    return AlgebraTraits<Elem>::lie(a, b);
  }

  Elem atom() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Number) return Elem::constant(amb_, Scalar(lex_.take().number));
    if (t.kind == Token::Kind::Punct) {
      if (t.punct == '(') {
        lex_.take();
        Elem r = expr();
        expect_punct(')');
        return r;
      }
      if (t.punct == '{') return bracket('{', '}');
      if (t.punct == '[') return bracket('[', ']');
      lex_.error("unexpected symbol");
    }
    if (t.kind == Token::Kind::End) lex_.error("unexpected end of input");
    std::string name = lex_.take().ident;
    if (name == "i" || name == "I") return Elem::constant(amb_, Scalar::i());
    if (name.size() == 1) {
      char c = char(std::tolower(static_cast<unsigned char>(name[0])));
      if (c == 'e' || c == 'h' || c == 'f') return generator(name);
      if (c == 'x' && mode_ == ExprMode::PolyInX) return Elem::gen_f(amb_);
    }
    if (defs_ && mode_ == ExprMode::Element) {
      auto it = defs_->find(name);
      if (it != defs_->end()) {
        if (depth_ >= kMaxBindingDepth) fail(errc::bad_argument, "binding recursion too deep");
        Lexer sub(it->second);
        return ExprParser(sub, amb_, mode_, defs_, depth_ + 1).parse();
      }
    }
    lex_.error("unknown identifier '" + name + "'");
  }

  Lexer& lex_;
  const Ambient& amb_;
  ExprMode mode_;
  const Definitions* defs_;
  int depth_;
};

PoissonElement parse_in_mode(const std::string& text, ExprMode mode) {
  Lexer lex(text);
  Ambient amb = Ambient::free();
  return ExprParser<PoissonElement>(lex, amb, mode, nullptr, 0).parse();
}

/// split on `sep` at zero depth of (), [], {}
std::vector<std::string> split_top(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth == 0 && c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trimmed(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

/// `name[body]` -> (name, body); body may be empty
bool split_factor(const std::string& factor, std::string& name, std::string& body) {
  size_t open = factor.find('[');
  if (open == std::string::npos || factor.back() != ']') return false;
  name = trimmed(factor.substr(0, open));
  body = factor.substr(open + 1, factor.size() - open - 2);
  return true;
}

Generator parse_lin(const std::string& body) {
  std::vector<std::string> rows = split_top(body, ',');
  // body is `[a,b],[c,d]`: two bracketed rows at top level
  if (rows.size() != 2) fail(errc::syntax, "lin expects two rows");
  std::vector<Scalar> entries;
  for (const std::string& raw : rows) {
    std::string row = trimmed(raw);
    if (row.size() < 2 || row.front() != '[' || row.back() != ']')
      fail(errc::syntax, "lin row must be bracketed");
    std::vector<std::string> cells = split_top(row.substr(1, row.size() - 2), ',');
    if (cells.size() != 2) fail(errc::syntax, "lin row expects two entries");
    for (const std::string& cell : cells) entries.push_back(parse_scalar(cell));
  }
  return Generator::linear(entries[0], entries[1], entries[2], entries[3]);
}

Generator parse_c(const std::string& body) {
  Scalar alpha(0), beta(1);
  bool saw_alpha = false, saw_beta = false;
  for (const std::string& raw : split_top(body, ',')) {
    std::vector<std::string> kv = split_top(raw, '=');
    if (kv.size() != 2) fail(errc::syntax, "C expects alpha=... and beta=...");
    std::string key = trimmed(kv[0]);
    if (key == "alpha") {
      alpha = parse_scalar(kv[1]);
      saw_alpha = true;
    } else if (key == "beta") {
      beta = parse_scalar(kv[1]);
      saw_beta = true;
    } else {
      fail(errc::syntax, "unknown C field '" + key + "'");
    }
  }
  if (!saw_alpha || !saw_beta) fail(errc::syntax, "C expects alpha=... and beta=...");
  return Generator::linear(Scalar(1), Scalar(0), alpha, beta);
}

GeneratorWord parse_word_impl(const std::string& text, Side side, const Scalar& lambda,
                              const Definitions* defs, int depth) {
  GeneratorWord w;
  w.side = side;
  w.lambda = lambda;
  if (trimmed(text).empty()) return w;
  for (const std::string& raw : split_top(text, '.')) {
    std::string factor = trimmed(raw);
    std::string name, body;
    if (!split_factor(factor, name, body)) {
      if (defs) {
        auto it = defs->find(factor);
        if (it != defs->end()) {
          if (depth >= kMaxBindingDepth) fail(errc::bad_argument, "binding recursion too deep");
          GeneratorWord sub = parse_word_impl(it->second, side, lambda, defs, depth + 1);
          w.factors.insert(w.factors.end(), sub.factors.begin(), sub.factors.end());
          continue;
        }
      }
      fail(errc::syntax, "malformed word factor '" + factor + "'");
    }
    if (name == "delta") {
      Polynomial g = parse_polynomial(body);
      w.factors.push_back(side == Side::P ? Generator::delta_p(g) : Generator::delta_u(g));
    } else if (name == "hyp") {
      w.factors.push_back(Generator::hyperbolic(parse_scalar(body)));
    } else if (name == "tau") {
      w.factors.push_back(Generator::tau(parse_scalar(body)));
    } else if (name == "lin") {
      w.factors.push_back(parse_lin(body));
    } else if (name == "C") {
      w.factors.push_back(parse_c(body));
    } else {
      fail(errc::syntax, "unknown word factor '" + name + "'");
    }
  }
  return w;
}

}  // namespace

template <class Elem>
Elem parse_element(const std::string& text, const Ambient& amb, const Definitions* defs) {
  Lexer lex(text);
  return ExprParser<Elem>(lex, amb, ExprMode::Element, defs, 0).parse();
}

Scalar parse_scalar(const std::string& text) {
  PoissonElement p = parse_in_mode(text, ExprMode::ScalarOnly);
  if (p.is_zero()) return Scalar(0);
  return p.terms().begin()->second;
}

Polynomial parse_polynomial(const std::string& text) {
  PoissonElement p = parse_in_mode(text, ExprMode::PolyInX);
  Polynomial g;
  for (const auto& [m, c] : p.terms()) g.add_term(m.mf, c);
  return g;
}

GeneratorWord parse_word(const std::string& text, Side side, const Scalar& lambda,
                         const Definitions* defs) {
  return parse_word_impl(text, side, lambda, defs, 0);
}

template <class Elem>
Triple<Elem> parse_triple(const std::string& text, const Ambient& amb, const Definitions* defs) {
  std::vector<std::string> parts = split_top(text, ';');
  if (parts.size() != 3) fail(errc::syntax, "a triple is three expressions separated by ';'");
  return {parse_element<Elem>(parts[0], amb, defs), parse_element<Elem>(parts[1], amb, defs),
          parse_element<Elem>(parts[2], amb, defs)};
}

std::string word_str(const GeneratorWord& w) {
  if (w.factors.empty()) return "C[alpha=0, beta=1]";
  std::string out;
  for (const Generator& gen : w.factors) {
    if (!out.empty()) out += " . ";
    out += gen.str();
  }
  return out;
}

template <class Elem>
std::string triple_str(const Triple<Elem>& t) {
  return t.img_e.str() + " ; " + t.img_h.str() + " ; " + t.img_f.str();
}

template PoissonElement parse_element<PoissonElement>(const std::string&, const Ambient&,
                                                      const Definitions*);
template EnvElement parse_element<EnvElement>(const std::string&, const Ambient&,
                                              const Definitions*);
template Triple<PoissonElement> parse_triple<PoissonElement>(const std::string&, const Ambient&,
                                                             const Definitions*);
template Triple<EnvElement> parse_triple<EnvElement>(const std::string&, const Ambient&,
                                                     const Definitions*);
template std::string triple_str<PoissonElement>(const Triple<PoissonElement>&);
template std::string triple_str<EnvElement>(const Triple<EnvElement>&);

}  // namespace sl2q
