#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sl2q/parser.hpp"

using json = nlohmann::json;
using namespace sl2q;

namespace {

struct Session {
  std::string side = "P";
  std::string lambda = "0";
  bool json_out = false;
  Definitions defs;

  bool u_side() const { return side == "U" || side == "freeU"; }
  bool free_side() const { return side == "freeP" || side == "freeU"; }
  Side group_side() const { return u_side() ? Side::U : Side::P; }

  Ambient ambient() const {
    return free_side() ? Ambient::free() : Ambient::at(parse_scalar(lambda));
  }

  void require_quotient(const char* what) const {
    if (free_side())
      fail(errc::ambient_mismatch, std::string(what) + " needs a quotient side (P or U)");
  }
};

json scalar_json(const Scalar& c) {
  return {{"re_num", boost::multiprecision::numerator(c.re()).str()},
          {"re_den", boost::multiprecision::denominator(c.re()).str()},
          {"im_num", boost::multiprecision::numerator(c.im()).str()},
          {"im_den", boost::multiprecision::denominator(c.im()).str()}};
}

json element_json(const PoissonElement& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms())
    terms.push_back({{"monomial", {m.me, m.mh, m.mf}}, {"coeff", scalar_json(c)}});
  return terms;
}

json element_json(const EnvElement& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms())
    terms.push_back({{"monomial", {m.mf, m.mh, m.me}}, {"coeff", scalar_json(c)}});
  return terms;
}

template <class Elem>
json triple_json(const Triple<Elem>& t) {
  return {{"img_e", element_json(t.img_e)},
          {"img_h", element_json(t.img_h)},
          {"img_f", element_json(t.img_f)}};
}

json canonical_json(const CanonicalForm& cf) {
  json alt = json::array();
  for (const auto& p : cf.alternation) {
    json tau = p.tau ? scalar_json(*p.tau) : json(nullptr);
    alt.push_back({{"tau", tau}, {"delta", p.q.str()}});
  }
  return {{"text", cf.str()},
          {"alternation", alt},
          {"trailing_tau", cf.trailing_tau ? scalar_json(*cf.trailing_tau) : json(nullptr)},
          {"tail", {{"alpha", scalar_json(cf.tail.alpha)}, {"beta", scalar_json(cf.tail.beta)}}}};
}

json word_json(const GeneratorWord& w) {
  json factors = json::array();
  for (const Generator& gen : w.factors) factors.push_back(gen.str());
  return {{"text", word_str(w)}, {"factors", factors}};
}

std::string mdeg_str(const std::array<unsigned, 3>& d) {
  return "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "," + std::to_string(d[2]) +
         ")";
}

void require_args(const std::vector<std::string>& args, size_t n, const char* usage) {
  if (args.size() != n) fail(errc::bad_argument, std::string("usage: ") + usage);
}

struct Output {
  std::string text;
  json value;
};

template <class Elem>
Output dispatch_typed(Session& s, const std::string& cmd, const std::vector<std::string>& args) {
  Ambient amb = s.ambient();
  if (cmd == "eval") {
    require_args(args, 1, "eval EXPR");
    Elem r = parse_element<Elem>(args[0], amb, &s.defs);
    return {r.str(), element_json(r)};
  }
  if (cmd == "bracket" || cmd == "comm") {
    require_args(args, 2, "bracket|comm A B");
    if ((cmd == "comm") != s.u_side())
      fail(errc::side_mismatch, cmd == "comm" ? "comm works on the U sides"
                                              : "bracket works on the P sides");
    Elem a = parse_element<Elem>(args[0], amb, &s.defs);
    Elem b = parse_element<Elem>(args[1], amb, &s.defs);
    Elem r = AlgebraTraits<Elem>::lie(a, b);
    return {r.str(), element_json(r)};
  }
  if (cmd == "compose") {
    require_args(args, 1, "compose W");
    s.require_quotient("compose");
    auto t = to_triple<Elem>(parse_word(args[0], s.group_side(), amb.lambda, &s.defs));
    return {triple_str(t), triple_json(t)};
  }
  if (cmd == "apply") {
    require_args(args, 2, "apply W EXPR");
    s.require_quotient("apply");
    auto t = to_triple<Elem>(parse_word(args[0], s.group_side(), amb.lambda, &s.defs));
    Elem r = apply(t, parse_element<Elem>(args[1], amb, &s.defs));
    return {r.str(), element_json(r)};
  }
  if (cmd == "verify") {
    require_args(args, 1, "verify TRIPLE");
    bool ok = verify_endomorphism(parse_triple<Elem>(args[0], amb, &s.defs));
    return {ok ? "true" : "false", json(ok)};
  }
  if (cmd == "normalize") {
    require_args(args, 1, "normalize W");
    s.require_quotient("normalize");
    CanonicalForm cf = normalize_word(parse_word(args[0], s.group_side(), amb.lambda, &s.defs));
    return {cf.str(), canonical_json(cf)};
  }
  if (cmd == "recognize") {
    require_args(args, 1, "recognize TRIPLE");
    s.require_quotient("recognize");
    CanonicalForm cf = recognize_triple(parse_triple<Elem>(args[0], amb, &s.defs));
    return {cf.str(), canonical_json(cf)};
  }
  if (cmd == "mdeg") {
    require_args(args, 1, "mdeg W|TRIPLE");
    s.require_quotient("mdeg");
    Triple<Elem> t =
        args[0].find(';') != std::string::npos
            ? parse_triple<Elem>(args[0], amb, &s.defs)
            : to_triple<Elem>(parse_word(args[0], s.group_side(), amb.lambda, &s.defs));
    auto d = multidegree(t);
    return {mdeg_str(d), json::array({d[0], d[1], d[2]})};
  }
  if (cmd == "equal") {
    require_args(args, 2, "equal W1 W2");
    s.require_quotient("equal");
    bool ok = word_equal(parse_word(args[0], s.group_side(), amb.lambda, &s.defs),
                         parse_word(args[1], s.group_side(), amb.lambda, &s.defs));
    return {ok ? "true" : "false", json(ok)};
  }
  fail(errc::bad_argument, "unknown command '" + cmd + "'");
}

Output dispatch(Session& s, const std::string& cmd, const std::vector<std::string>& args) {
  if (cmd == "symmetrize") {
    require_args(args, 1, "symmetrize EXPR");
    if (s.side != "freeP")
      fail(errc::side_mismatch, "symmetrize takes a free Poisson expression (--side freeP)");
    EnvElement r = symmetrize(parse_element<PoissonElement>(args[0], Ambient::free(), &s.defs));
    return {r.str(), element_json(r)};
  }
  if (cmd == "map-u") {
    require_args(args, 1, "map-u W");
    if (s.side != "P") fail(errc::side_mismatch, "map-u takes a P-side word (--side P)");
    Scalar lam = parse_scalar(s.lambda);
    GeneratorWord img = map_to_U(normalize_word(parse_word(args[0], Side::P, lam, &s.defs)));
    return {word_str(img), word_json(img)};
  }
  if (s.u_side()) return dispatch_typed<EnvElement>(s, cmd, args);
  return dispatch_typed<PoissonElement>(s, cmd, args);
}

void emit(const Session& s, const std::string& cmd, const Output& out) {
  if (!s.json_out) {
    std::cout << out.text << "\n";
    return;
  }
  json doc = {{"ok", true}, {"command", cmd}, {"side", s.side}, {"result", out.value}};
  if (!s.free_side()) doc["lambda"] = scalar_json(parse_scalar(s.lambda));
  std::cout << doc.dump() << "\n";
}

int emit_error(const Session& s, const Error& e) {
  if (s.json_out) {
    json doc = {{"ok", false},
                {"error", {{"category", e.category()}, {"message", e.what()}}}};
    std::cout << doc.dump() << "\n";
  } else {
    std::cerr << "error[" << e.category() << "]: " << e.what() << "\n";
  }
  return 1;
}

/// split on whitespace, honoring double quotes
std::vector<std::string> shell_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      any = true;
      continue;
    }
    if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
      if (any) out.push_back(cur);
      cur.clear();
      any = false;
      continue;
    }
    cur += c;
    any = true;
  }
  if (quoted) fail(errc::syntax, "unterminated quote in script line");
  if (any) out.push_back(cur);
  return out;
}

int run_script(Session& s, std::istream& in) {
  std::string line;
  int status = 0;
  while (std::getline(in, line)) {
    std::string stripped = line;
    size_t first = stripped.find_first_not_of(" \t");
    if (first == std::string::npos || stripped[first] == '#') continue;
    try {
      std::vector<std::string> tokens = shell_split(line);
      if (tokens.empty()) continue;
      if (tokens[0] == "let") {
        // let NAME = TEXT  (TEXT is the rest of the raw line)
        size_t eq = line.find('=');
        if (tokens.size() < 3 || eq == std::string::npos)
          fail(errc::bad_argument, "usage: let NAME = TEXT");
        const std::string& name = tokens[1];
        if (s.defs.count(name)) fail(errc::bad_argument, "binding '" + name + "' already set");
        s.defs[name] = line.substr(eq + 1);
        continue;
      }
      std::vector<std::string> args(tokens.begin() + 1, tokens.end());
      emit(s, tokens[0], dispatch(s, tokens[0], args));
    } catch (const Error& e) {
      status = emit_error(s, e);
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  Session session;
  std::string command;
  std::vector<std::string> args;
  std::string script;
  bool from_stdin = false;

  CLI::App app{"Exact symbolic calculator for the Casimir quotients of sl2 and their "
               "automorphism groups"};
  app.add_option("command", command,
                 "eval | bracket | comm | symmetrize | compose | apply | verify | normalize | "
                 "recognize | mdeg | map-u | equal");
  app.add_option("args", args, "command arguments");
  app.add_option("--side", session.side, "ambient algebra: P, U, freeP, freeU")
      ->check(CLI::IsMember({"P", "U", "freeP", "freeU"}))
      ->capture_default_str();
  app.add_option("--lambda", session.lambda, "Casimir value (ignored on free sides)")
      ->capture_default_str();
  app.add_flag("--json", session.json_out, "machine-readable output");
  app.add_option("--script", script, "run commands from a file, one per line");
  app.add_flag("--stdin", from_stdin, "run commands from standard input");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!script.empty()) {
      std::ifstream in(script);
      if (!in) fail(errc::bad_argument, "cannot open script '" + script + "'");
      return run_script(session, in);
    }
    if (from_stdin) return run_script(session, std::cin);
    if (command.empty()) fail(errc::bad_argument, "no command given (see --help)");
    emit(session, command, dispatch(session, command, args));
  } catch (const Error& e) {
    return emit_error(session, e);
  }
  return 0;
}
