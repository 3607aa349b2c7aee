// Acceptance driver: one [PASS]/[FAIL] line per criterion over the exhaustive universe.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "thetacalc/cli/emit.hpp"
#include "thetacalc/cli/oracle.hpp"
#include "thetacalc/errors.hpp"
#include "thetacalc/gp_prasad.hpp"
#include "thetacalc/universe.hpp"

using namespace thetacalc;

namespace {

constexpr size_t kShow = 3;

struct Tally {
  std::string title;
  long checked = 0;
  long failed = 0;
  std::vector<std::string> examples;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    ++failed;
    if (examples.size() < kShow) examples.push_back(what());
  }
  bool report() const {
    bool ok = failed == 0 && checked > 0;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << title << " (" << checked << " checks, " << failed
              << " failures)\n";
    for (const auto& e : examples) std::cout << "       " << e << "\n";
    return ok;
  }
};

std::string describe(const EnhancedParameter& p) {
  return cli::group_text(p.ctx) + " phi = " + to_string(p.ctx.environment(), p.phi) + " eta = " + cli::eta_text(p);
}

bool same(const EnhancedParameter& a, const EnhancedParameter& b) {
  return a.phi == b.phi && a.eta == b.eta && a.nu == b.nu;
}

void each_parameter(int max_dim, const std::function<void(const EnhancedParameter&)>& f) {
  for (auto env : {Environment::default_split(), Environment::default_unitary()})
    for (GroupKind k : kinds_for(*env)) for_each_parameter(env, k, {max_dim, 8}, f);
}

bool multiplicity_free(const WDRep& phi) {
  for (const auto& [a, m] : phi.terms())
    if (m != 1) return false;
  return true;
}

/// theta(eta)(a)/eta(a) for slots of phi present in the lift's basis.
bool ratios_match(const EnhancedParameter& p, const EnhancedParameter& q,
                  const std::function<Sign(const Atom&)>& expected) {
  ComponentGroup A = p.group();
  ComponentGroup B = q.group();
  for (int i = 0; i < A.rank(); ++i) {
    const Atom& a = A.basis[static_cast<size_t>(i)];
    int j = B.index_of(a);
    if (j < 0) continue;
    if (q.eta.at(j) * p.eta.at(i) != expected(a)) return false;
  }
  return true;
}

/// Mp x O with chi_V = 1 and multiplicity-free phi: alpha, nu, and the sign pattern of the ratios.
void discrete_series_mp(const EnhancedParameter& p, Tally& t) {
  if (p.ctx.kind != GroupKind::Mp || !p.ctx.chars().is_trivial(p.ctx.chi_V) || !multiplicity_free(p.phi)) return;
  const auto& env = p.ctx.environment();
  const int n = p.ctx.n;
  auto rep = first_occurrence(p);
  t.check(rep.alpha == p.eta_z(), [&] { return "alpha: " + describe(p); });
  Sign nu = p.eta_z() * root_number(env, p.phi);
  auto even_chain_upto = [&](const Atom& a, int bound) {
    return a.is_chain() && env.chars().is_trivial(a.chr) && a.k % 2 == 0 && a.k <= bound;
  };
  for (int m = rep.m_down; m <= n + 5; m += 2) {
    auto d = lift_down(p, m);
    const auto& q = *d.parameter;
    t.check(q.nu == nu, [&] { return "nu down m=" + std::to_string(m) + ": " + describe(p); });
    if (m < n + 1) {
      WDRep expect = p.phi;
      expect.remove(Atom::chain(p.ctx.chi_V, n - m + 1));
      t.check(q.phi == expect, [&] { return "phi down m=" + std::to_string(m) + ": " + describe(p); });
      t.check(ratios_match(p, q, [&](const Atom& a) { return even_chain_upto(a, n - m - 1) ? Sign::minus() : Sign::plus(); }),
              [&] { return "ratio down m=" + std::to_string(m) + ": " + describe(p); });
    } else {
      t.check(ratios_match(p, q, [](const Atom&) { return Sign::plus(); }),
              [&] { return "ratio down m=" + std::to_string(m) + ": " + describe(p); });
    }
  }
  auto u = lift_up(p, rep.m_up);
  const auto& q = *u.parameter;
  WDRep expect = p.phi;
  expect.add(Atom::chain(p.ctx.chi_V, rep.l_pi + 2));
  t.check(q.phi == expect && u.tempered, [&] { return "phi up: " + describe(p); });
  t.check(q.nu == nu, [&] { return "nu up: " + describe(p); });
  t.check(ratios_match(p, q, [&](const Atom& a) { return even_chain_upto(a, rep.l_pi) ? Sign::minus() : Sign::plus(); }),
          [&] { return "ratio up: " + describe(p); });
}

/// Temperedness at m_up and transport of eta through the recursive branch.
void up_tower_tempered(const EnhancedParameter& p, Tally& t) {
  auto rep = first_occurrence(p);
  if (rep.l_pi < 0) return;
  auto u = lift_up(p, rep.m_up);
  int mult = p.phi.multiplicity(Atom::chain(p.ctx.chi_V, rep.l_pi));
  bool rule = rep.l_pi == 0 || mult % 2 == 1;
  t.check(u.tempered == rule, [&] { return "tempered: " + describe(p); });
  if (rule) return;
  const auto& reg = p.ctx.chars();
  const auto& q = *u.parameter;
  const EnhancedParameter src = u.source_member == "pi_det" ? det_twist(p) : p;
  ComponentGroup A = src.group();
  ComponentGroup B = q.group();
  CharId shift = reg.product(reg.inverse(p.ctx.chi_V), p.ctx.chi_W);
  for (int i = 0; i < A.rank(); ++i) {
    Atom a = A.basis[static_cast<size_t>(i)];
    Atom image = a;
    image.chr = reg.product(a.chr, shift);
    int j = B.index_of(image);
    if (j < 0) continue;
    Sign direct = src.eta.at(i) * theta_eta_ratio(src, phi_of_slot(A, i), rep.l_pi, TwistSide::plus);
    t.check(q.eta.at(j) == direct, [&] { return "transport at " + atom_name(p.ctx.environment(), a) + ": " + describe(p); });
  }
}

/// Prasad's recipe against the tower lifts at m = n + epsilon0 + 1. O_even lifts are keyed by
/// the member they come from, the others by the target tower.
void cross_recipe(const EnhancedParameter& p, Tally& t) {
  if (p.ctx.kappa() != 1) return;
  const int m = p.ctx.n + p.ctx.epsilon0 + 1;
  const bool by_member = p.ctx.kind == GroupKind::O_even;
  auto pr = prasad_almost_equal_rank(p);
  long matched = 0;
  for (Sign tower : {Sign::plus(), Sign::minus()}) {
    auto x = lift_on_tower(p, m, tower);
    if (x.zero) continue;
    Sign key = by_member ? (x.source_member == "pi" ? Sign::plus() : Sign::minus()) : tower;
    auto it = std::find_if(pr.lifts.begin(), pr.lifts.end(), [&](const auto& e) { return e.first == key; });
    bool ok = it != pr.lifts.end() && same(*x.parameter, it->second);
    matched += ok ? 1 : 0;
    t.check(ok, [&] {
      return "key " + std::string(1, key.symbol()) + ": " + describe(p) + " -> " +
             to_string(p.ctx.environment(), x.parameter->phi) + " " + cli::eta_text(*x.parameter) +
             (it == pr.lifts.end() ? std::string(" vs none") : " vs " + cli::eta_text(it->second));
    });
  }
  t.check(matched == static_cast<long>(pr.lifts.size()), [&] { return "lift count: " + describe(p); });
}

/// eta(e_1 + e_l) = (-1)^{(l-1)/2} on the down tower for kappa = 1, split field, n and m even.
void alternating(const EnhancedParameter& p, Tally& t) {
  if (!p.ctx.field().is_split() || p.ctx.kappa() != 1 || p.ctx.n % 2 != 0 || p.ctx.partner_parity != 0) return;
  auto rep = first_occurrence(p);
  if (rep.l_pi <= 1) return;
  ComponentGroup A = p.group();
  int e1 = A.index_of(Atom::chain(p.ctx.chi_V, 1));
  for (int m = rep.m_down; m < p.ctx.n + p.ctx.epsilon0 + 1; m += 2) {
    int l = p.ctx.n - m + p.ctx.epsilon0;
    int el = A.index_of(Atom::chain(p.ctx.chi_V, l));
    Sign lhs = p.eta.at(e1) * p.eta.at(el);
    t.check(lhs == Sign::parity((l - 1) / 2), [&] { return "l = " + std::to_string(l) + ": " + describe(p); });
    bool threw = false;
    try {
      lift_down(p, m);
    } catch (const Error& e) {
      threw = e.code() == ErrorCode::InconsistentRecipe;
    }
    t.check(!threw, [&] { return "lift_down rejected m = " + std::to_string(m) + ": " + describe(p); });
  }
}

bool golden() {
  Tally t{"9 golden running example", 0, 0, {}};
  auto env = Environment::default_split();
  CharId one = env->chars().trivial();
  EnhancedParameter p;
  p.ctx = make_context(env, GroupKind::Mp, 6, one, one, 1, std::nullopt);
  p.phi = WDRep({{Atom::chain(one, 2), 1}, {Atom::chain(one, 4), 1}});
  p.eta.signs = {Sign::plus(), Sign::minus()};
  auto rep = first_occurrence(p);
  t.check(rep.m_down == 3 && rep.m_up == 13, [&] { return "first occurrence"; });
  auto d = lift_down(p, 5);
  t.check(d.parameter->phi == WDRep({{Atom::chain(one, 4), 1}}) && d.parameter->eta.signs == std::vector{Sign::minus()} &&
              d.parameter->nu == Sign::minus(),
          [&] { return "m = 5: " + to_string(*env, d.parameter->phi) + " " + cli::eta_text(*d.parameter); });
  auto u = lift_up(p, 13);
  WDRep want({{Atom::chain(one, 2), 1}, {Atom::chain(one, 4), 1}, {Atom::chain(one, 6), 1}});
  t.check(u.parameter->phi == want &&
              u.parameter->eta.signs == std::vector{Sign::minus(), Sign::plus(), Sign::minus()},
          [&] { return "m = 13: " + to_string(*env, u.parameter->phi) + " " + cli::eta_text(*u.parameter); });
  return t.report();
}

}  // namespace

int main(int argc, char** argv) {
  const int max_dim = argc > 1 ? std::atoi(argv[1]) : 12;
  auto start = std::chrono::steady_clock::now();
  Tally c1{"1 conservation relation", 0, 0, {}};
  Tally c3{"3 discrete series of Mp with chi_V = 1", 0, 0, {}};
  Tally c4{"4 every tabulated lift is valid", 0, 0, {}};
  Tally c5{"5 contragredient and Mp-O round trips", 0, 0, {}};
  Tally c6{"6 up-tower temperedness and eta transport", 0, 0, {}};
  Tally c7{"7 almost equal rank recipe agrees with the tower lifts", 0, 0, {}};
  Tally c8{"8 alternating identity on the down tower", 0, 0, {}};
  Tally errors{"no unexpected exceptions", 0, 0, {}};

  each_parameter(max_dim, [&](const EnhancedParameter& p) {
    try {
      auto rep = first_occurrence(p);
      c1.check(rep.m_down + rep.m_up == 2 * p.ctx.n + 2 + 2 * p.ctx.epsilon0, [&] { return describe(p); });
      for (const auto& x : tabulate_towers(p, rep.m_up + 4)) {
        if (x.zero) continue;
        auto v = validate_parameter(*x.parameter);
        c4.check(v.empty(), [&] { return describe(p) + " m = " + std::to_string(x.m) + ": " + v.front().message; });
      }
      c5.check(same(contragredient(contragredient(p)), p), [&] { return "contragredient: " + describe(p); });
      if (p.ctx.kind == GroupKind::Mp)
        for (CharId c = 0; c < p.ctx.chars().size(); ++c)
          c5.check(same(o_mp_transfer(mp_o_transfer(p, c), c), p), [&] { return "transfer: " + describe(p); });
      discrete_series_mp(p, c3);
      up_tower_tempered(p, c6);
      cross_recipe(p, c7);
      alternating(p, c8);
      errors.check(true, [] { return std::string(); });
    } catch (const std::exception& e) {
      errors.check(false, [&] { return describe(p) + ": " + e.what(); });
    }
  });

  bool ok = true;
  ok = c1.report() && ok;
  {
    Tally c2{"2 twisted epsilon agrees with the Clebsch-Gordan oracle", 0, 0, {}};
    for (const auto& r : cli::run_oracles("twisted-eps", max_dim)) {
      c2.checked += r.passed + r.failed;
      c2.failed += r.failed;
      for (const auto& f : r.failures)
        if (c2.examples.size() < kShow) c2.examples.push_back(f);
    }
    ok = c2.report() && ok;
  }
  ok = c3.report() && ok;
  ok = c4.report() && ok;
  ok = c5.report() && ok;
  ok = c6.report() && ok;
  ok = c7.report() && ok;
  ok = c8.report() && ok;
  ok = golden() && ok;
  ok = errors.report() && ok;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "universe dim(phi) <= " << max_dim << ", " << secs << " s\n";
  return ok ? 0 : 1;
}
