#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "thetacalc/errors.hpp"
#include "thetacalc/theta_lift.hpp"
#include "thetacalc/universe.hpp"

using namespace thetacalc;

namespace {

const Sign P = Sign::plus();
const Sign M = Sign::minus();

struct Running {
  EnvPtr env = Environment::default_split();
  CharId one = env->chars().trivial();
  EnhancedParameter p;
  Running(Sign e2 = P, Sign e4 = M) {
    p.ctx = make_context(env, GroupKind::Mp, 6, one, one, 1, std::nullopt);
    p.phi = WDRep({{Atom::chain(one, 2), 1}, {Atom::chain(one, 4), 1}});
    p.eta.signs = {e2, e4};
  }
  WDRep chain(std::initializer_list<int> ks) const {
    WDRep r;
    for (int k : ks) r.add(Atom::chain(one, k));
    return r;
  }
};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("first occurrence of the running example") {
  Running r;
  auto rep = first_occurrence(r.p);
  CHECK(rep.kappa == 2);
  CHECK(rep.T_set == std::vector<int>{0, 2, 4});
  CHECK(rep.l_pi == 4);
  CHECK(rep.m_down == 3);
  CHECK(rep.m_up == 13);
  REQUIRE(rep.alpha.has_value());
  CHECK(*rep.alpha == M);
  CHECK(rep.m_down + rep.m_up == 2 * r.p.ctx.n + 2 * r.p.ctx.epsilon0 + 2);

  Running other(M, M);
  auto rep2 = first_occurrence(other.p);
  CHECK(rep2.T_set == std::vector<int>{0});
  CHECK(rep2.m_down == 7);
  CHECK(rep2.m_up == 9);
}

TEST_CASE("running example lifts") {
  Running r;
  auto down5 = lift_down(r.p, 5);
  REQUIRE(down5.parameter.has_value());
  CHECK(down5.tower_sign == M);
  CHECK(down5.role == TowerRole::down);
  CHECK(down5.parameter->ctx.kind == GroupKind::O_odd);
  CHECK(down5.parameter->phi == r.chain({4}));
  CHECK(down5.parameter->eta.signs == std::vector<Sign>{M});
  CHECK(down5.parameter->nu == M);
  CHECK(down5.tempered);
  CHECK(validate_parameter(*down5.parameter).empty());

  auto down7 = lift_down(r.p, 7);
  CHECK(down7.parameter->phi == r.p.phi);
  CHECK(down7.parameter->eta == r.p.eta);

  auto down9 = lift_down(r.p, 9);
  CHECK_FALSE(down9.tempered);
  CHECK(down9.parameter->phi.multiplicity(Atom::chain(r.one, 1, 1)) == 1);
  CHECK(down9.standard_module.size() == 1);

  auto up = lift_up(r.p, 13);
  CHECK(up.tower_sign == P);
  CHECK(up.parameter->phi == r.chain({2, 4, 6}));
  CHECK(up.parameter->eta.signs == std::vector<Sign>{M, P, M});
  CHECK(up.tempered);
  CHECK(validate_parameter(*up.parameter).empty());

  CHECK(lift_on_tower(r.p, 11, P).zero);
  CHECK_FALSE(lift_on_tower(r.p, 3, M).zero);
}

TEST_CASE("lift errors") {
  Running r;
  CHECK(code_of([&] { lift_down(r.p, 1); }) == ErrorCode::NotOnDownTower);
  CHECK(code_of([&] { lift_up(r.p, 11); }) == ErrorCode::NotOnUpTower);
  CHECK(code_of([&] { lift_down(r.p, 6); }) == ErrorCode::ParityMismatch);
  CHECK(code_of([&] { lift_up(r.p, 14); }) == ErrorCode::ParityMismatch);
}

TEST_CASE("tabulate_towers covers both towers") {
  Running r;
  auto rows = tabulate_towers(r.p, 13);
  int zeros = 0, plus_rows = 0;
  for (const auto& x : rows) {
    CHECK(x.m % 2 == 1);
    CHECK(x.m <= 13);
    if (x.zero) {
      ++zeros;
      CHECK_FALSE(x.parameter.has_value());
    } else {
      CHECK(validate_parameter(*x.parameter).empty());
    }
    if (x.tower_sign == P) ++plus_rows;
  }
  CHECK(plus_rows == 7);
  CHECK(zeros == 6);
  CHECK(rows.size() == 13);
  CHECK(rows.front().tower_sign == P);
  CHECK(tabulate_towers(r.p, 0).empty());
}

TEST_CASE("T set agrees with the literal oracle") {
  for (auto env : {Environment::default_split(), Environment::default_unitary()})
    for (GroupKind k : kinds_for(*env))
      for_each_parameter(env, k, {8, 8}, [&](const EnhancedParameter& p) {
        auto rep = compute_T_set(p);
        CHECK(rep.T_set == oracle::brute_T(p, rep.kappa));
        CHECK(rep.l_pi == rep.T_set.back());
        CHECK(rep.m_down + rep.m_up == 2 * p.ctx.n + 2 * p.ctx.epsilon0 + 2);
      });
}

TEST_CASE("down and up lifts sit on opposite towers") {
  for (auto env : {Environment::default_split(), Environment::default_unitary()})
    for (GroupKind k : kinds_for(*env))
      for_each_parameter(env, k, {6, 6}, [&](const EnhancedParameter& p) {
        auto rep = first_occurrence(p);
        auto d = lift_down(p, rep.m_down);
        auto u = lift_up(p, rep.m_up);
        if (rep.l_pi >= 0) CHECK(d.tower_sign != u.tower_sign);
        REQUIRE(d.parameter.has_value());
        REQUIRE(u.parameter.has_value());
        CHECK(validate_parameter(*d.parameter).empty());
        CHECK(validate_parameter(*u.parameter).empty());
        CHECK(d.parameter->ctx.n == rep.m_down);
        CHECK(u.parameter->ctx.n == rep.m_up);
      });
}

TEST_CASE("first occurrence dimensions are consistent with lift_on_tower") {
  Running r;
  auto rep = first_occurrence(r.p);
  Sign down = *rep.alpha;
  for (int m = tower_min_dim(r.p.ctx, down); m <= 15; m += 2)
    CHECK(lift_on_tower(r.p, m, down).zero == (m < rep.m_down));
  for (int m = tower_min_dim(r.p.ctx, -down); m <= 15; m += 2)
    CHECK(lift_on_tower(r.p, m, -down).zero == (m < rep.m_up));
}

TEST_CASE("eta ratios on the running example") {
  Running r;
  WDRep s2 = r.chain({2});
  WDRep s4 = r.chain({4});
  // Going down from m = 7 to m = 5 removes S2 and flips nothing on S4.
  CHECK(theta_eta_ratio(r.p, s4, 2, TwistSide::minus) == P);
  // At m = 7 the lift keeps phi and eta.
  CHECK(theta_eta_ratio_equal(r.p, s2) == P);
  CHECK(theta_eta_ratio_equal(r.p, s4) == P);
}
