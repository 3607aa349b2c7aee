#include "thetacalc/universe.hpp"

namespace thetacalc {

namespace {

/// A building block of a self-dual rep: one atom, or an atom with its dual, with a step multiplicity.
struct Block {
  std::vector<Atom> atoms;
  int dim = 0;
  int step = 1;
};

std::vector<Block> blocks_for(const Environment& env, Sign b, int max_k) {
  const auto& reg = env.chars();
  std::vector<Block> out;
  for (CharId c = 0; c < reg.size(); ++c) {
    for (int k = 1; k <= max_k; ++k) {
      Atom a = Atom::chain(c, k);
      auto s = atom_sign(env, a);
      if (s) {
        out.push_back({{a}, k, *s == b ? 1 : 2});
        continue;
      }
      Atom d = pairing_dual_atom(env, a);
      if (a < d) out.push_back({{a, d}, 2 * k, 1});
    }
  }
  return out;
}

void extend(const std::vector<Block>& blocks, size_t i, int remaining, WDRep& cur,
            std::vector<WDRep>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  if (i == blocks.size()) return;
  extend(blocks, i + 1, remaining, cur, out);
  const Block& bl = blocks[i];
  int used = 0;
  int copies = 0;
  while (used + bl.step * bl.dim <= remaining) {
    for (const Atom& a : bl.atoms) cur.add(a, bl.step);
    copies += bl.step;
    used += bl.step * bl.dim;
    extend(blocks, i + 1, remaining - used, cur, out);
  }
  for (const Atom& a : bl.atoms)
    if (copies > 0) cur.remove(a, copies);
}

std::vector<Sign> both_signs() { return {Sign::plus(), Sign::minus()}; }

/// All eta on A, filtered by validation.
void visit_etas(const GroupContext& ctx, const WDRep& phi, const std::optional<Sign>& nu,
                const std::function<void(const EnhancedParameter&)>& visit) {
  EnhancedParameter p;
  p.ctx = ctx;
  p.phi = phi;
  p.nu = nu;
  ComponentGroup A = p.group();
  int r = A.rank();
  for (Element bits = 0; bits < (Element{1} << r); ++bits) {
    p.eta.signs.clear();
    for (int i = 0; i < r; ++i)
      p.eta.signs.push_back((bits >> i) & 1 ? Sign::minus() : Sign::plus());
    if (validate_parameter(p).empty()) visit(p);
  }
}

}  // namespace

std::vector<WDRep> enumerate_self_dual(const Environment& env, int dim, Sign b, int max_k) {
  std::vector<WDRep> out;
  if (dim < 0) return out;
  auto blocks = blocks_for(env, b, max_k);
  WDRep cur;
  extend(blocks, 0, dim, cur, out);
  return out;
}

std::vector<GroupKind> kinds_for(const Environment& env) {
  if (env.field().is_quadratic()) return {GroupKind::U};
  return {GroupKind::Mp, GroupKind::Sp, GroupKind::O_odd, GroupKind::O_even};
}

void for_each_parameter(const EnvPtr& env, GroupKind kind, const UniverseBounds& bounds,
                        const std::function<void(const EnhancedParameter&)>& visit) {
  const auto& reg = env->chars();
  for (int d = 0; d <= bounds.max_dim; ++d) {
    switch (kind) {
      case GroupKind::Mp:
      case GroupKind::Sp: {
        int n = kind == GroupKind::Mp ? d : d - 1;
        if (n < 0 || n % 2 != 0) break;
        for (CharId c = 0; c < reg.size(); ++c) {
          if (!reg.is_quadratic(c)) continue;
          GroupContext ctx = make_context(env, kind, n, c, reg.trivial(), 0, std::nullopt);
          for (const auto& phi : enumerate_self_dual(*env, d, ctx.parameter_sign(), bounds.max_k))
            visit_etas(ctx, phi, std::nullopt, visit);
        }
        break;
      }
      case GroupKind::O_odd: {
        if (d % 2 != 0) break;
        int n = d + 1;
        for (CharId c = 0; c < reg.size(); ++c) {
          if (!reg.is_quadratic(c)) continue;
          for (const auto& phi : enumerate_self_dual(*env, d, Sign::minus(), bounds.max_k)) {
            for (Sign t : both_signs()) {
              GroupContext ctx = make_context(env, kind, n, reg.trivial(), c, 0, t);
              for (Sign nu : both_signs()) visit_etas(ctx, phi, nu, visit);
            }
          }
        }
        break;
      }
      case GroupKind::O_even: {
        if (d % 2 != 0) break;
        for (const auto& phi : enumerate_self_dual(*env, d, Sign::plus(), bounds.max_k)) {
          CharId disc = det_character(*env, phi);
          for (Sign t : both_signs()) {
            GroupContext ctx = make_context(env, kind, d, reg.trivial(), disc, 0, t);
            visit_etas(ctx, phi, std::nullopt, visit);
          }
        }
        break;
      }
      case GroupKind::U: {
        Sign b = Sign::parity(d - 1);
        auto reps = enumerate_self_dual(*env, d, b, bounds.max_k);
        auto want = [&](int parity) {
          return parity == 1 ? ConjRestriction::omega_on_F : ConjRestriction::trivial_on_F;
        };
        for (int parity : {0, 1}) {
          for (CharId cv = 0; cv < reg.size(); ++cv) {
            if (reg.at(cv).conj_restriction != want(parity) || !reg.is_quadratic(cv)) continue;
            for (CharId cw = 0; cw < reg.size(); ++cw) {
              if (reg.at(cw).conj_restriction != want(d % 2) || !reg.is_quadratic(cw)) continue;
              for (Sign t : both_signs()) {
                GroupContext ctx = make_context(env, kind, d, cv, cw, parity, t);
                for (const auto& phi : reps) visit_etas(ctx, phi, std::nullopt, visit);
              }
            }
          }
        }
        break;
      }
    }
  }
}

}  // namespace thetacalc
