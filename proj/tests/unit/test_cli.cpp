#include <doctest.h>

#include "thetacalc/cli/emit.hpp"
#include "thetacalc/cli/expr.hpp"
#include "thetacalc/cli/oracle.hpp"
#include "thetacalc/cli/session.hpp"
#include "thetacalc/errors.hpp"

using namespace thetacalc;
using namespace thetacalc::cli;

namespace {

const char* const kRunning =
    "# running example\n"
    "group = Mp(6)\n"
    "phi = S2 + S4\n"
    "eta = { S2:+, S4:- }\n";

}  // namespace

TEST_CASE("phi expressions") {
  auto env = Environment::default_split();
  const auto& reg = env->chars();
  CharId u = reg.id("u");
  CHECK(parse_phi(*env, "2*u.S1") == WDRep({{Atom::chain(u, 1), 2}}));
  CHECK(parse_phi(*env, "S2 + S1@1/2 + S1@-1/2") ==
        WDRep({{Atom::chain(0, 2), 1}, {Atom::chain(0, 1, 1), 1}, {Atom::chain(0, 1, -1), 1}}));
  CHECK(to_string(*env, parse_phi(*env, "pi.S2 + S4")) == to_string(*env, parse_phi(*env, "S4 + pi.S2")));
  CHECK_THROWS_AS(parse_phi(*env, "S0"), ParseError);
  CHECK_THROWS_AS(parse_phi(*env, "w.S1"), Error);
  CHECK_THROWS_AS(parse_phi(*env, "S2 +"), ParseError);
}

TEST_CASE("shift text") {
  CHECK(parse_shift2("1/2") == 1);
  CHECK(parse_shift2("-3/2") == -3);
  CHECK(parse_shift2("2") == 4);
  CHECK(parse_shift2("0") == 0);
  for (int s = -7; s <= 7; ++s) CHECK(parse_shift2(shift_text(s)) == s);
  CHECK_THROWS_AS(parse_shift2("1/3"), Error);
}

TEST_CASE("session parsing") {
  Session s = parse_session(kRunning);
  REQUIRE(s.params.size() == 1);
  const auto& p = s.params[0];
  CHECK(p.ctx.kind == GroupKind::Mp);
  CHECK(p.ctx.n == 6);
  CHECK(p.eta.signs == std::vector<Sign>{Sign::plus(), Sign::minus()});
  CHECK(validate_parameter(p).empty());
}

TEST_CASE("unknown basis slot reports line and column") {
  try {
    parse_session("# bad\ngroup = Mp(6)\nphi = S2 + S4\neta = { S3:+ }\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 9);
    CHECK(std::string(e.what()).find("S3") != std::string::npos);
  }
}

TEST_CASE("invalid parameters are reported at the group line") {
  try {
    parse_session("group = Mp(8)\nphi = S2 + S4\neta = { S2:+, S4:- }\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("dimension") != std::string::npos);
  }
}

TEST_CASE("odd orthogonal sessions carry nu") {
  Session s = parse_session("group = Oodd(5, disc=1)\nphi = S4\neta = { S4:- }\nnu = -\n");
  REQUIRE(s.params.size() == 1);
  CHECK(s.params[0].nu == Sign::minus());
  CHECK(s.params[0].ctx.tower_sign == Sign::minus());
  Computation c{s.params[0], first_occurrence(s.params[0]), {}};
  c.lifts = tabulate_towers(s.params[0], 8);
  auto j = computation_to_json(c);
  CHECK(j["source"]["nu"] == -1);
}

TEST_CASE("JSON round trip") {
  Session s = parse_session(kRunning);
  const auto& p = s.params[0];
  auto j = parameter_to_json(p);
  auto q = parameter_from_json(s.env, j);
  CHECK(q.phi == p.phi);
  CHECK(q.eta == p.eta);
  CHECK(q.ctx.kind == p.ctx.kind);
  CHECK(q.ctx.n == p.ctx.n);
  CHECK(parameter_to_json(q) == j);
  for (const auto& x : tabulate_towers(p, 13)) {
    if (x.zero) continue;
    auto lj = parameter_to_json(*x.parameter);
    auto back = parameter_from_json(s.env, nlohmann::json::parse(lj.dump()));
    CHECK(back.phi == x.parameter->phi);
    CHECK(back.eta == x.parameter->eta);
    CHECK(back.nu == x.parameter->nu);
    CHECK(back.tempered == x.parameter->tempered);
  }
  auto broken = j;
  broken.erase("eta");
  CHECK_THROWS_AS(parameter_from_json(s.env, broken), Error);
}

TEST_CASE("empty range yields a valid document") {
  Session s = parse_session(kRunning);
  Computation c{s.params[0], first_occurrence(s.params[0]), tabulate_towers(s.params[0], 0)};
  auto doc = document({computation_to_json(c)});
  auto again = nlohmann::json::parse(doc.dump());
  CHECK(again["schema"] == 1);
  CHECK(again["results"][0]["lifts"].empty());
  CHECK(again["results"][0]["first_occurrence"]["m_down"] == 3);
}

TEST_CASE("table output") {
  Session s = parse_session(kRunning);
  Computation c{s.params[0], first_occurrence(s.params[0]), tabulate_towers(s.params[0], 7)};
  auto t = computation_table(c);
  CHECK(t.find("# T       {0, 2, 4}") != std::string::npos);
  CHECK(t.find("S2 + S4") != std::string::npos);
  CHECK(t.find("{S4:-}") != std::string::npos);
}

TEST_CASE("epsilon expressions") {
  auto env = Environment::default_split();
  CHECK(evaluate_epsilon(*env, "eps(S4 x S3)") == Sign::minus());
  CHECK(evaluate_epsilon(*env, "eps(S2 x S3)") == Sign::plus());
  CHECK(evaluate_epsilon(*env, "S2 + S4") == Sign::plus());
  CHECK(evaluate_epsilon(*env, "eps(u.S2)") == Sign::plus());
  CHECK_THROWS_AS(evaluate_epsilon(*env, "eps(S2 x"), ParseError);
}

TEST_CASE("oracle suites") {
  for (const auto& r : run_oracles("all", 4)) {
    CHECK_MESSAGE(r.ok(), r.name);
    CHECK(r.passed > 0);
  }
  CHECK_THROWS_AS(run_oracles("nope", 4), Error);
}
