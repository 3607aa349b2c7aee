#include "thetacalc/theta_lift.hpp"

#include <algorithm>
#include <functional>

#include "thetacalc/errors.hpp"

namespace thetacalc {

const char* to_string(TowerRole r) {
  switch (r) {
    case TowerRole::down: return "down";
    case TowerRole::up: return "up";
    case TowerRole::both: return "both";
  }
  return "?";
}

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

Sign slot_sign(const EnhancedParameter& p, const ComponentGroup& A, const Atom& a) {
  int i = A.index_of(a);
  if (i < 0)
    throw Error(ErrorCode::InconsistentRecipe,
                atom_name(p.ctx.environment(), a) + " is not a component-group slot");
  return p.eta.at(i);
}

}  // namespace

TowerReport compute_T_set(const EnhancedParameter& p) {
  const auto& ctx = p.ctx;
  const auto& env = ctx.environment();
  const auto& reg = env.chars();
  TowerReport rep;
  rep.kappa = ctx.kappa();
  const int kappa = rep.kappa;
  ComponentGroup A = p.group();
  rep.T_set.push_back(kappa - 2);
  auto mult = [&](int r) { return p.phi.multiplicity(Atom::chain(ctx.chi_V, r)); };
  bool chain = true;
  for (int l = kappa; chain && l <= ctx.n + ctx.epsilon0; l += 2) {
    ConditionTrace t;
    t.l = l;
    for (int r = kappa; r <= l; r += 2) chain = chain && mult(r) > 0;
    t.chain = chain;
    if (chain) {
      t.oddness = true;
      for (int r = kappa; r <= l - 2; r += 2) t.oddness = t.oddness && mult(r) % 2 == 1;
      t.initial = true;
      if (kappa == 2) {
        Sign want = env.field().is_split()
                        ? ctx.epsilon * (reg.is_trivial(ctx.chi_V) ? Sign::plus() : Sign::minus())
                        : Sign::minus();
        t.initial = slot_sign(p, A, Atom::chain(ctx.chi_V, 2)) == want;
      }
      t.alternating = true;
      for (int r = kappa; r <= l - 2; r += 2)
        t.alternating = t.alternating && slot_sign(p, A, Atom::chain(ctx.chi_V, r)) ==
                                             -slot_sign(p, A, Atom::chain(ctx.chi_V, r + 2));
      t.admitted = t.oddness && t.initial && t.alternating;
      if (t.admitted) rep.T_set.push_back(l);
    }
    rep.trace.push_back(t);
  }
  rep.l_pi = *std::max_element(rep.T_set.begin(), rep.T_set.end());
  rep.m_down = ctx.n + ctx.epsilon0 - rep.l_pi;
  rep.m_up = ctx.n + 2 + ctx.epsilon0 + rep.l_pi;
  return rep;
}

Sign select_down_tower(const EnhancedParameter& p, const TowerReport& report) {
  if (report.l_pi < 0)
    throw Error(ErrorCode::ConfigMismatch, "both towers coincide when l(pi) = -1");
  const auto& ctx = p.ctx;
  const auto& env = ctx.environment();
  const auto& reg = env.chars();
  ComponentGroup A = p.group();
  Sign ez = p.eta.eval(A.z());
  if (report.kappa == 1) {
    int i = A.index_of(Atom::chain(ctx.chi_V, 1));
    if (i < 0) throw Error(ErrorCode::InconsistentRecipe, "l(pi) >= 0 with kappa = 1 needs chi_V in phi");
    return p.eta.eval(A.z() ^ ComponentGroup::slot(i));
  }
  if (env.field().is_quadratic())
    return ez * root_number(env, twist(env, p.phi, reg.inverse(ctx.chi_V)));
  if (ctx.epsilon.is_plus())
    return ez * root_number(env, p.phi) * root_number(env, twist(env, p.phi, ctx.chi_V)) *
           reg.value_at_minus1(ctx.chi_V).pow(ctx.n / 2);
  return ez * root_number(env, p.phi);
}

TowerReport first_occurrence(const EnhancedParameter& p) {
  TowerReport r = compute_T_set(p);
  if (r.l_pi >= 0) r.alpha = select_down_tower(p, r);
  return r;
}

int min_partner_dim(const GroupContext& ctx) { return ctx.partner_parity; }

int tower_min_dim(const GroupContext& ctx, Sign tower) {
  const auto& reg = ctx.chars();
  switch (ctx.kind) {
    case GroupKind::Mp: return tower.is_plus() ? 1 : 3;
    case GroupKind::Sp:
      if (reg.is_trivial(ctx.chi_V)) return tower.is_plus() ? 0 : 4;
      return 2;
    case GroupKind::U:
      if (ctx.partner_parity == 1) return 1;
      return tower.is_plus() ? 0 : 2;
    default: return 0;
  }
}

Sign theta_eta_ratio(const EnhancedParameter& p, const WDRep& phi_a, int l, TwistSide side) {
  const auto& ctx = p.ctx;
  const auto& env = ctx.environment();
  const auto& reg = env.chars();
  Sign tw = twisted_eps(env, phi_a, ctx.chi_V, l, side);
  if (env.field().is_quadratic()) return tw;
  int half_dim = dimension(env, phi_a) / 2;
  bool m_odd = ctx.partner_parity == 1;
  bool n_odd = mod2(ctx.n) == 1;
  if (ctx.epsilon.is_plus() && m_odd)
    return tw * root_number(env, phi_a) * reg.value_at_minus1(ctx.chi_V).pow(half_dim);
  if (ctx.epsilon.is_minus() && n_odd)
    return tw * root_number(env, twist(env, phi_a, ctx.chi_W)) *
           reg.value_at_minus1(ctx.chi_W).pow(half_dim);
  int e = side == TwistSide::minus ? (l - 1) / 2 : (l + 1) / 2;
  CharId d = det_character(env, twist(env, phi_a, reg.inverse(ctx.chi_V)));
  return tw * reg.value_at_minus1(d).pow(e);
}

Sign theta_eta_ratio_equal(const EnhancedParameter& p, const WDRep& phi_a) {
  const auto& ctx = p.ctx;
  const auto& env = ctx.environment();
  const auto& reg = env.chars();
  if (env.field().is_quadratic()) return root_number(env, twist(env, phi_a, reg.inverse(ctx.chi_V)));
  CharId c = reg.product(reg.inverse(ctx.chi_V), ctx.chi_W);
  return root_number(env, phi_a) * root_number(env, twist(env, phi_a, c)) *
         reg.value_at_minus1(c).pow(dimension(env, phi_a) / 2);
}

namespace {

/// Which member of the source heads a tower and in which role.
struct Plan {
  Sign tower;
  bool down = true;
  TowerRole role = TowerRole::down;
  EnhancedParameter member;
  std::string member_name;
};

Plan make_plan(const EnhancedParameter& p, const TowerReport& rep, Sign tower) {
  Plan plan;
  plan.tower = tower;
  plan.member = p;
  const auto kind = p.ctx.kind;
  if (rep.l_pi < 0) {
    plan.down = tower.is_plus();
    plan.role = TowerRole::both;
  } else if (kind == GroupKind::O_even) {
    plan.down = tower.is_plus();
    plan.role = plan.down ? TowerRole::down : TowerRole::up;
  } else {
    plan.down = tower == *rep.alpha;
    plan.role = plan.down ? TowerRole::down : TowerRole::up;
  }
  if (kind == GroupKind::O_even) {
    bool use_pi = rep.l_pi < 0 ? tower.is_plus() : (plan.down == rep.alpha->is_plus());
    if (!use_pi) plan.member = det_twist(p);
    plan.member_name = use_pi ? "pi" : "pi_det";
  } else if (kind == GroupKind::O_odd) {
    bool use_pi = *p.nu == tower;
    if (!use_pi) plan.member = det_twist(p);
    plan.member_name = use_pi ? "pi" : "pi_det";
  }
  return plan;
}

CharId lift_twist(const GroupContext& ctx) {
  const auto& reg = ctx.chars();
  return reg.product(reg.inverse(ctx.chi_V), ctx.chi_W);
}

/// Maps a target atom back to the source atom it came from.
Atom source_atom(const GroupContext& ctx, const Atom& b) {
  Atom a = b;
  a.chr = ctx.chars().product(b.chr, ctx.chars().inverse(lift_twist(ctx)));
  return a;
}

struct Lifted {
  WDRep phi;
  EtaCharacter eta;
  std::vector<Segment> standard;
  std::vector<std::string> notes;
};

/// Eta on the target basis: image slots take eta times ratio, the new slot is filled by fill_new.
EtaCharacter build_eta(const EnhancedParameter& q, const WDRep& theta_phi, const GroupContext& target,
                       const std::function<Sign(int)>& ratio,
                       const std::function<std::optional<Sign>(const Atom&, const EtaCharacter&,
                                                               const ComponentGroup&)>& fill_new) {
  ComponentGroup A = q.group();
  ComponentGroup B = component_group(theta_phi, target);
  EtaCharacter out;
  out.signs.assign(static_cast<size_t>(B.rank()), Sign::plus());
  std::vector<int> fresh;
  for (int j = 0; j < B.rank(); ++j) {
    int i = A.index_of(source_atom(q.ctx, B.basis[static_cast<size_t>(j)]));
    if (i < 0) {
      fresh.push_back(j);
      continue;
    }
    out.signs[static_cast<size_t>(j)] = q.eta.at(i) * ratio(i);
  }
  if (fresh.size() > 1) throw Error(ErrorCode::InconsistentRecipe, "more than one new slot");
  for (int j : fresh) {
    auto v = fill_new(B.basis[static_cast<size_t>(j)], out, B);
    if (!v) throw Error(ErrorCode::InconsistentRecipe, "unexpected new component-group slot");
    out.signs[static_cast<size_t>(j)] = *v;
  }
  return out;
}

/// Value of a new slot e making eta(z) equal to the target's constraint.
Sign z_constrained(const GroupContext& target, Sign tower, const EtaCharacter& eta,
                   const ComponentGroup& B, const Atom& fresh) {
  Sign required = target.kind == GroupKind::Sp ? Sign::plus() : tower;
  int j = B.index_of(fresh);
  Element rest = B.z() & ~ComponentGroup::slot(j);
  Sign others = eta.eval(rest);
  if (B.mult[static_cast<size_t>(j)] % 2 == 0) return eta.at(j);
  return required * others;
}

/// kappa = 1, m = m1: theta(phi) = phi chi_V^{-1} chi_W + chi_W.
Lifted lift_equal_kappa1(const EnhancedParameter& q, const GroupContext& target, Sign tower) {
  const auto& env = q.ctx.environment();
  Lifted out;
  out.phi = twist(env, q.phi, lift_twist(q.ctx));
  out.phi.add(Atom::chain(q.ctx.chi_W, 1));
  bool had = q.group().index_of(Atom::chain(q.ctx.chi_V, 1)) >= 0;
  out.eta = build_eta(q, out.phi, target, [](int) { return Sign::plus(); },
                      [&](const Atom& a, const EtaCharacter& eta, const ComponentGroup& B) {
                        return std::optional<Sign>(z_constrained(target, tower, eta, B, a));
                      });
  if (!had) out.notes.push_back("new slot " + atom_name(env, Atom::chain(q.ctx.chi_W, 1)) +
                                " fixed by the eta(z) constraint of the target");
  return out;
}

/// kappa = 2, m = m1: theta(phi) = phi chi_V^{-1} chi_W with the equal-rank ratio.
Lifted lift_equal_kappa2(const EnhancedParameter& q, const GroupContext& target) {
  const auto& env = q.ctx.environment();
  Lifted out;
  out.phi = twist(env, q.phi, lift_twist(q.ctx));
  ComponentGroup A = q.group();
  out.eta = build_eta(q, out.phi, target,
                      [&](int i) { return theta_eta_ratio_equal(q, phi_of_slot(A, i)); },
                      [](const Atom&, const EtaCharacter&, const ComponentGroup&) {
                        return std::optional<Sign>();
                      });
  return out;
}

/// m_down <= m < m1.
Lifted lift_below(const EnhancedParameter& q, const GroupContext& target, int l) {
  const auto& ctx = q.ctx;
  const auto& env = ctx.environment();
  Lifted out;
  ComponentGroup A = q.group();
  if (l > 1 && env.field().is_split() && mod2(ctx.n) == 0 && ctx.partner_parity == 0) {
    int i1 = A.index_of(Atom::chain(ctx.chi_V, 1));
    int il = A.index_of(Atom::chain(ctx.chi_V, l));
    if (i1 < 0 || il < 0 ||
        q.eta.eval(ComponentGroup::slot(i1) ^ ComponentGroup::slot(il)) != Sign::parity((l - 1) / 2))
      throw Error(ErrorCode::InconsistentRecipe,
                  "alternating identity eta(e_1 + e_l) = (-1)^((l-1)/2) fails at l = " +
                      std::to_string(l));
  }
  out.phi = twist(env, q.phi, lift_twist(ctx));
  try {
    out.phi.remove(Atom::chain(ctx.chi_W, l));
  } catch (const Error&) {
    throw Error(ErrorCode::InconsistentRecipe,
                "theta(phi) would need to remove " + atom_name(env, Atom::chain(ctx.chi_W, l)) +
                    " which is absent");
  }
  out.eta = build_eta(q, out.phi, target,
                      [&](int i) {
                        return l == 1 ? Sign::plus()
                                      : theta_eta_ratio(q, phi_of_slot(A, i), l, TwistSide::minus);
                      },
                      [](const Atom&, const EtaCharacter&, const ComponentGroup&) {
                        return std::optional<Sign>();
                      });
  return out;
}

/// Up tower at m = m_up with l = l(pi) >= 0 and l = 0 or odd multiplicity.
Lifted lift_up_tempered(const EnhancedParameter& q, const GroupContext& target, Sign tower, int l) {
  const auto& ctx = q.ctx;
  const auto& env = ctx.environment();
  const auto& reg = env.chars();
  Lifted out;
  ComponentGroup A = q.group();
  Atom fresh = Atom::chain(ctx.chi_W, l + 2);
  out.phi = twist(env, q.phi, lift_twist(ctx));
  out.phi.add(fresh);
  out.eta = build_eta(
      q, out.phi, target, [&](int i) { return theta_eta_ratio(q, phi_of_slot(A, i), l, TwistSide::plus); },
      [&](const Atom& a, const EtaCharacter& eta, const ComponentGroup& B) -> std::optional<Sign> {
        if (!(a == fresh)) return std::nullopt;
        if (l > 0) return -eta.at(B.index_of(Atom::chain(ctx.chi_W, l)));
        if (target.has_towers()) return z_constrained(target, tower, eta, B, a);
        if (env.field().is_split())
          return target.epsilon * (reg.is_trivial(target.chi_V) ? Sign::plus() : Sign::minus());
        return Sign::minus();
      });
  if (A.index_of(source_atom(ctx, fresh)) < 0) {
    if (l > 0)
      out.notes.push_back("new slot " + atom_name(env, fresh) + " set to -eta(" +
                          atom_name(env, Atom::chain(ctx.chi_W, l)) + ")");
    else if (target.has_towers())
      out.notes.push_back("new slot " + atom_name(env, fresh) +
                          " fixed by tower membership of the target");
    else
      out.notes.push_back("new slot " + atom_name(env, fresh) +
                          " fixed by the initial condition of the target");
  }
  return out;
}

void add_shift_pairs(const GroupContext& ctx, int m, int m1, Lifted& base) {
  std::vector<Segment> segs;
  for (int i = 1; i <= (m - m1) / 2; ++i) {
    int s2 = m - ctx.n - ctx.epsilon0 + 1 - 2 * i;
    base.phi.add(Atom::chain(ctx.chi_W, 1, s2));
    base.phi.add(Atom::chain(ctx.chi_W, 1, -s2));
    segs.push_back({ctx.chi_W, 1, s2});
  }
  segs.insert(segs.end(), base.standard.begin(), base.standard.end());
  base.standard = std::move(segs);
}

ThetaLiftResult finish(const EnhancedParameter& source, const Plan& plan, int m,
                       const GroupContext& target, Lifted lifted) {
  ThetaLiftResult r;
  r.m = m;
  r.tower_sign = plan.tower;
  r.role = plan.role;
  r.source_member = plan.member_name;
  r.notes = std::move(lifted.notes);
  EnhancedParameter t;
  t.ctx = target;
  t.phi = std::move(lifted.phi);
  t.eta = std::move(lifted.eta);
  bool tempered = true;
  for (const auto& [a, k] : t.phi.terms()) tempered = tempered && a.tempered();
  t.tempered = tempered;
  if (target.kind == GroupKind::O_odd) t.nu = odd_orthogonal_central_sign(source);
  r.tempered = tempered;
  r.standard_module = std::move(lifted.standard);
  r.parameter = std::move(t);
  return r;
}

Lifted lift_down_core(const EnhancedParameter& q, int m, const GroupContext& target, Sign tower) {
  const auto& ctx = q.ctx;
  int kappa = ctx.kappa();
  int m1 = ctx.n + ctx.epsilon0 + 2 - kappa;
  if (m > m1) {
    Lifted base = lift_down_core(q, m1, ctx.partner(m1, tower), tower);
    add_shift_pairs(ctx, m, m1, base);
    return base;
  }
  if (m == m1) return kappa == 1 ? lift_equal_kappa1(q, target, tower) : lift_equal_kappa2(q, target);
  return lift_below(q, target, ctx.n - m + ctx.epsilon0);
}

Lifted lift_up_core(const EnhancedParameter& q, int m, const GroupContext& target, Sign tower,
                    const TowerReport& rep);

/// Up tower at m = m_up with even multiplicity 2h > 0 of chi_V S_l.
Lifted lift_up_even(const EnhancedParameter& q, const GroupContext& target, Sign tower, int l) {
  const auto& ctx = q.ctx;
  const auto& env = ctx.environment();
  Atom el = Atom::chain(ctx.chi_V, l);
  int two_h = q.phi.multiplicity(el);
  int h = two_h / 2;
  int m = ctx.n + 2 + ctx.epsilon0 + l;

  EnhancedParameter q0;
  q0.ctx = ctx;
  q0.ctx.n = ctx.n - 2 * l * h;
  q0.phi = q.phi;
  q0.phi.remove(el, two_h);
  ComponentGroup A = q.group();
  ComponentGroup A0 = component_group(q0.phi, q0.ctx);
  for (const auto& b : A0.basis) q0.eta.signs.push_back(q.eta.at(A.index_of(b)));
  q0.nu = q.nu;
  if (q0.ctx.tower_sign) q0.ctx.tower_sign = q0.eta.eval(A0.z());
  q0.tempered = true;

  TowerReport rep0 = compute_T_set(q0);
  int m0 = m - 2 * l * h - 2;
  if (rep0.m_up != m0)
    throw Error(ErrorCode::InconsistentRecipe, "m_up(pi_0) = " + std::to_string(rep0.m_up) +
                                                   " differs from m - 2lh - 2 = " + std::to_string(m0));
  if (rep0.l_pi >= 0) {
    Sign a0 = select_down_tower(q0, rep0);
    Sign a = select_down_tower(q, compute_T_set(q));
    if (a0 != a) throw Error(ErrorCode::InconsistentRecipe, "going-down towers of pi and pi_0 differ");
  }
  GroupContext target0 = q0.ctx.partner(m0, tower);
  Lifted base = rep0.l_pi < 0 ? lift_equal_kappa1(q0, target0, tower)
                              : lift_up_core(q0, m0, target0, tower, rep0);

  Lifted out;
  out.phi = base.phi;
  out.phi.add(Atom::chain(ctx.chi_W, l + 1, 1));
  out.phi.add(Atom::chain(ctx.chi_W, l + 1, -1));
  if (h > 1) out.phi.add(Atom::chain(ctx.chi_W, l), two_h - 2);
  ComponentGroup B0 = component_group(base.phi, target0);
  ComponentGroup B = component_group(out.phi, target);
  if (B.basis != B0.basis) throw Error(ErrorCode::InconsistentRecipe, "component groups do not match");
  out.eta = base.eta;
  out.standard.push_back({ctx.chi_W, l + 1, 1});
  for (int i = 0; i < h - 1; ++i) out.standard.push_back({ctx.chi_W, l, 0});
  out.standard.insert(out.standard.end(), base.standard.begin(), base.standard.end());
  out.notes = base.notes;
  out.notes.push_back("eta transported from the lift of pi_0 = pi - " + std::to_string(two_h) + "*" +
                      atom_name(env, el) + " at m0 = " + std::to_string(m0));
  return out;
}

Lifted lift_up_core(const EnhancedParameter& q, int m, const GroupContext& target, Sign tower,
                    const TowerReport& rep) {
  const auto& ctx = q.ctx;
  if (rep.l_pi < 0) {
    int m1 = ctx.n + ctx.epsilon0 + 1;
    if (m == m1) return lift_equal_kappa1(q, target, tower);
    Lifted base = lift_equal_kappa1(q, ctx.partner(m1, tower), tower);
    add_shift_pairs(ctx, m, m1, base);
    return base;
  }
  if (m > rep.m_up) {
    Lifted base = lift_up_core(q, rep.m_up, ctx.partner(rep.m_up, tower), tower, rep);
    add_shift_pairs(ctx, m, rep.m_up, base);
    return base;
  }
  int l = rep.l_pi;
  int mult = q.phi.multiplicity(Atom::chain(ctx.chi_V, l));
  if (l == 0 || mult % 2 == 1) return lift_up_tempered(q, target, tower, l);
  return lift_up_even(q, target, tower, l);
}

void check_parity(const EnhancedParameter& p, int m) {
  if (mod2(m) != p.ctx.partner_parity)
    throw Error(ErrorCode::ParityMismatch, "m = " + std::to_string(m) + " has the wrong parity for " +
                                               to_string(p.ctx.kind) + "(" + std::to_string(p.ctx.n) + ")");
}

ThetaLiftResult lift_planned(const EnhancedParameter& p, int m, const Plan& plan,
                             const TowerReport& rep) {
  GroupContext target = p.ctx.partner(m, plan.tower);
  Lifted lifted = plan.down ? (rep.l_pi < 0 ? lift_up_core(plan.member, m, target, plan.tower, rep)
                                            : lift_down_core(plan.member, m, target, plan.tower))
                            : lift_up_core(plan.member, m, target, plan.tower, rep);
  return finish(p, plan, m, target, std::move(lifted));
}

}  // namespace

ThetaLiftResult lift_on_tower(const EnhancedParameter& p, int m, Sign tower) {
  require_valid(p);
  if (!p.tempered) throw Error(ErrorCode::InvalidParameter, "source parameter must be tempered");
  check_parity(p, m);
  TowerReport rep = first_occurrence(p);
  Plan plan = make_plan(p, rep, tower);
  int first = plan.down ? rep.m_down : rep.m_up;
  if (m < first) {
    ThetaLiftResult r;
    r.m = m;
    r.tower_sign = tower;
    r.role = plan.role;
    r.zero = true;
    r.tempered = true;
    r.source_member = plan.member_name;
    return r;
  }
  return lift_planned(p, m, plan, rep);
}

ThetaLiftResult lift_down(const EnhancedParameter& p, int m) {
  require_valid(p);
  check_parity(p, m);
  TowerReport rep = first_occurrence(p);
  Sign t = (rep.l_pi < 0 || p.ctx.kind == GroupKind::O_even) ? Sign::plus() : *rep.alpha;
  if (m < rep.m_down)
    throw Error(ErrorCode::NotOnDownTower, "m = " + std::to_string(m) + " is below m_down = " +
                                               std::to_string(rep.m_down));
  return lift_on_tower(p, m, t);
}

ThetaLiftResult lift_up(const EnhancedParameter& p, int m) {
  require_valid(p);
  check_parity(p, m);
  TowerReport rep = first_occurrence(p);
  Sign t = (rep.l_pi < 0 || p.ctx.kind == GroupKind::O_even) ? Sign::minus() : -*rep.alpha;
  if (m < rep.m_up)
    throw Error(ErrorCode::NotOnUpTower, "m = " + std::to_string(m) + " is below m_up = " +
                                             std::to_string(rep.m_up));
  return lift_on_tower(p, m, t);
}

std::vector<ThetaLiftResult> tabulate_towers(const EnhancedParameter& p, int m_max) {
  std::vector<ThetaLiftResult> out;
  for (Sign t : {Sign::plus(), Sign::minus()}) {
    int start = std::max(min_partner_dim(p.ctx), tower_min_dim(p.ctx, t));
    for (int m = start; m <= m_max; m += 2) out.push_back(lift_on_tower(p, m, t));
  }
  return out;
}

}  // namespace thetacalc
