#include <doctest.h>

#include <functional>

#include "thetacalc/errors.hpp"
#include "thetacalc/theta_lift.hpp"
#include "thetacalc/universe.hpp"

using namespace thetacalc;

namespace {

void for_universe(int max_dim, const std::function<void(const EnhancedParameter&)>& f) {
  for (auto env : {Environment::default_split(), Environment::default_unitary()})
    for (GroupKind k : kinds_for(*env)) for_each_parameter(env, k, {max_dim, 8}, f);
}

std::string describe(const EnhancedParameter& p) {
  std::string s = std::string(to_string(p.ctx.kind)) + "(" + std::to_string(p.ctx.n) + ") chi_V " +
                  p.ctx.chars().name(p.ctx.chi_V) + " chi_W " + p.ctx.chars().name(p.ctx.chi_W) + " " +
                  to_string(p.ctx.environment(), p.phi) + " eta ";
  for (Sign e : p.eta.signs) s += e.symbol();
  if (p.nu) s += std::string(" nu ") + p.nu->symbol();
  return s;
}

int m1_of(const EnhancedParameter& p, int kappa) { return p.ctx.n + p.ctx.epsilon0 + 2 - kappa; }

bool same_lift(const ThetaLiftResult& a, const ThetaLiftResult& b) {
  if (a.zero != b.zero) return false;
  if (a.zero) return true;
  return a.parameter->phi == b.parameter->phi && a.parameter->eta == b.parameter->eta &&
         a.parameter->nu == b.parameter->nu;
}

}  // namespace

TEST_CASE("conservation relation") {
  for_universe(8, [](const EnhancedParameter& p) {
    auto r = first_occurrence(p);
    CHECK(r.m_down + r.m_up == 2 * p.ctx.n + 2 * p.ctx.epsilon0 + 2);
    CHECK(r.m_down <= r.m_up);
    CHECK(r.m_down % 2 == p.ctx.partner_parity);
  });
}

TEST_CASE("every tabulated lift is a valid parameter of the partner") {
  for_universe(6, [](const EnhancedParameter& p) {
    auto r = first_occurrence(p);
    for (const auto& x : tabulate_towers(p, r.m_up + 4)) {
      if (x.zero) continue;
      REQUIRE(x.parameter.has_value());
      auto v = validate_parameter(*x.parameter);
      CHECK_MESSAGE(v.empty(), (v.empty() ? "" : v.front().code + ": " + v.front().message));
      CHECK(x.parameter->ctx.n == x.m);
      CHECK(x.parameter->tempered == x.tempered);
    }
  });
}

TEST_CASE("towers persist above first occurrence") {
  for_universe(6, [](const EnhancedParameter& p) {
    auto r = first_occurrence(p);
    int kappa = r.kappa;
    for (const auto& x : tabulate_towers(p, r.m_up + 4)) {
      bool down = x.role != TowerRole::up;
      int first = down ? r.m_down : r.m_up;
      CHECK(x.zero == (x.m < first));
      if (x.zero) continue;
      bool tempered = down ? x.m <= std::max(first, m1_of(p, kappa)) : x.m == first;
      if (!down && x.m == first && r.l_pi > 0) {
        int mult = p.phi.multiplicity(Atom::chain(p.ctx.chi_V, r.l_pi));
        tempered = mult % 2 == 1;
      }
      CHECK(x.tempered == tempered);
    }
  });
}

TEST_CASE("det twist permutes the tower table of an orthogonal source") {
  auto env = Environment::default_split();
  for (GroupKind k : {GroupKind::O_even, GroupKind::O_odd})
    for_each_parameter(env, k, {6, 6}, [](const EnhancedParameter& p) {
      if (!det_twist_distinguishable(p)) return;
      auto q = det_twist(p);
      auto rep = first_occurrence(p);
      // With l(pi) = -1 an O_even sign names the member relative to the input, otherwise the tower.
      bool relative = p.ctx.kind == GroupKind::O_even && rep.l_pi < 0;
      for (const auto& x : tabulate_towers(p, rep.m_up + 2)) {
        auto y = lift_on_tower(q, x.m, relative ? -x.tower_sign : x.tower_sign);
        CHECK_MESSAGE(same_lift(x, y), describe(p) << " m = " << x.m << " tower " << x.tower_sign);
      }
    });
}

TEST_CASE("first occurrence is invariant under the contragredient") {
  for_universe(6, [](const EnhancedParameter& p) {
    auto q = contragredient(p);
    // For Mp the contragredient pairs with the partner space of form scaled by -1.
    if (p.ctx.kind == GroupKind::Mp) {
      const auto& reg = p.ctx.chars();
      q.ctx = make_context(p.ctx.env, GroupKind::Mp, p.ctx.n, reg.product(p.ctx.chi_V, chi_minus_one(reg)),
                           p.ctx.chi_W, p.ctx.partner_parity, std::nullopt);
      REQUIRE(validate_parameter(q).empty());
    }
    auto rp = first_occurrence(p);
    auto rq = first_occurrence(q);
    CHECK_MESSAGE(rp.m_down == rq.m_down, describe(p));
    CHECK_MESSAGE(rp.m_up == rq.m_up, describe(p));
  });
}
