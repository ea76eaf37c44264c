#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "sl2q/parser.hpp"

using json = nlohmann::json;
using namespace sl2q;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(SL2Q_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  r.status = pclose(pipe);
  if (!r.out.empty() && r.out.back() == '\n') r.out.pop_back();
  return r;
}

Scalar scalar_from_json(const json& c) {
  return Scalar(Rational(Integer(c["re_num"].get<std::string>()),
                         Integer(c["re_den"].get<std::string>())),
                Rational(Integer(c["im_num"].get<std::string>()),
                         Integer(c["im_den"].get<std::string>())));
}

}  // namespace

TEST_CASE("documented command examples") {
  CHECK(run("normalize \"delta[x^2+3]\" --side P --lambda 1").out ==
        "delta[x^2] . C[alpha=-3, beta=1]");
  CHECK(run("mdeg \"delta[x]\" --side P --lambda 1").out == "(3,2,1)");
  CHECK(run("symmetrize \"4*E*F + H^2\" --side freeP").out == "4*f*e + h^2 + 2*h");
  CHECK(run("eval \"4*e*f + h^2\" --side P --lambda 1").out == "1");
  CHECK(run("eval \"[e,f] - h\" --side freeU").out == "0");
}

TEST_CASE("exit codes and error reporting") {
  CHECK(run("eval \"e\" --side P --lambda 0").status == 0);
  RunResult bad = run("eval \"e +\" --side P");
  CHECK(bad.status != 0);
  RunResult bad_json = run("--json eval \"q\" --side P");
  CHECK(bad_json.status != 0);
  json doc = json::parse(bad_json.out);
  CHECK(doc["ok"] == false);
  CHECK(doc["error"]["category"] == "syntax_error");
  RunResult wrong_side = run("--json bracket e f --side U --lambda 0");
  CHECK(wrong_side.status != 0);
  CHECK(json::parse(wrong_side.out)["error"]["category"] == "side_mismatch");
}

TEST_CASE("json elements round-trip through the schema") {
  RunResult r = run("--json eval \"f^2*h - 1/2*e + (1+i)\" --side P --lambda 1");
  REQUIRE(r.status == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["ok"] == true);
  Ambient amb = Ambient::at(scalar_from_json(doc["lambda"]));
  PoissonElement rebuilt(amb);
  for (const auto& term : doc["result"]) {
    auto m = term["monomial"];
    PoissonMono mono{m[0].get<unsigned>(), m[1].get<unsigned>(), m[2].get<unsigned>()};
    rebuilt = rebuilt + PoissonElement::monomial(amb, mono, scalar_from_json(term["coeff"]));
  }
  PoissonElement expect =
      parse_element<PoissonElement>("f^2*h - 1/2*e + (1+i)", amb);
  CHECK(rebuilt == expect);
  // U side orders monomials as [mf, mh, me]
  RunResult u = run("--json eval \"f*h*e\" --side freeU");
  json udoc = json::parse(u.out);
  bool found = false;
  for (const auto& term : udoc["result"])
    if (term["monomial"] == json::array({1, 1, 1})) found = true;
  CHECK(found);
}

TEST_CASE("word and recognition commands") {
  CHECK(run("compose \"tau[0]\" --side P --lambda 1").out == "f ; -h ; e");
  CHECK(run("apply \"tau[0]\" \"e\" --side P --lambda 1").out == "f");
  CHECK(run("verify \"f ; -h ; e\" --side P --lambda 1").out == "true");
  CHECK(run("verify \"f ; h ; e\" --side P --lambda 1").out == "false");
  CHECK(run("recognize \"f ; -h+2*f ; e+h-f\" --side P --lambda 1").out ==
        "tau[1] . C[alpha=0, beta=1]");
  CHECK(run("equal \"tau[0] . tau[0]\" \"C[alpha=0, beta=1]\" --side U --lambda 1").out ==
        "true");
  CHECK(run("equal \"tau[2] . tau[2]\" \"C[alpha=0, beta=1]\" --side U --lambda 1").out ==
        "false");
  CHECK(run("map-u \"delta[x^2] . hyp[3]\" --side P --lambda 1").out ==
        "delta[x^2] . lin[[1,0],[0,3]]");
  // normalize output reparses to the same canonical form
  RunResult n = run("normalize \"lin[[1,2],[3,4]] . delta[x^3+x]\" --side U --lambda 0");
  REQUIRE(n.status == 0);
  CHECK(run("normalize \"" + n.out + "\" --side U --lambda 0").out == n.out);
}

TEST_CASE("script mode with bindings") {
  std::string script =
      "script=$(mktemp); cat > $script <<'EOS'\n"
      "# casimir check\n"
      "let c = 4*e*f + h^2\n"
      "eval \"c\"\n"
      "mdeg \"delta[x^2]\"\n"
      "EOS\n";
  std::string cmd = script + std::string(SL2Q_CLI_PATH) +
                    " --script $script --side P --lambda 1; rm -f $script";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  CHECK(out == "1\n(5,3,1)\n");
}
