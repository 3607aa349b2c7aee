#include "thetacalc/gp_prasad.hpp"

#include <functional>

#include "thetacalc/errors.hpp"

namespace thetacalc {

const char* to_string(GPCaseKind k) {
  switch (k) {
    case GPCaseKind::orthogonal: return "orthogonal";
    case GPCaseKind::hermitian: return "hermitian";
    case GPCaseKind::symplectic_metaplectic: return "symplectic-metaplectic";
    case GPCaseKind::skew_hermitian: return "skew-hermitian";
    case GPCaseKind::skew_hermitian_conjugate: return "skew-hermitian-conjugate";
  }
  return "?";
}

GPCaseKind parse_gp_case(const std::string& text) {
  for (GPCaseKind k : {GPCaseKind::orthogonal, GPCaseKind::hermitian,
                       GPCaseKind::symplectic_metaplectic, GPCaseKind::skew_hermitian,
                       GPCaseKind::skew_hermitian_conjugate})
    if (text == to_string(k)) return k;
  throw Error(ErrorCode::CaseMismatch, "unknown GP case '" + text + "'");
}

namespace {

void need(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::CaseMismatch, msg);
}

ComponentGroup signed_group(const Environment& env, const WDRep& phi, Sign b) {
  ComponentGroup A;
  for (const auto& [a, m] : phi.terms()) {
    auto s = atom_sign(env, a);
    if (!s || *s != b) continue;
    A.basis.push_back(a);
    A.mult.push_back(m);
    A.dims.push_back(atom_dim(env, a));
  }
  return A;
}

void check_rep(const Environment& env, const WDRep& phi, Sign b, const char* what) {
  for (const auto& [a, m] : phi.terms())
    need(a.tempered(), std::string(what) + " must be tempered");
  need(classify_duality(env, phi).admits(b),
       std::string(what) + " must be " + (b.is_plus() ? "orthogonal" : "symplectic") +
           (env.field().is_quadratic() ? " (conjugate-dual)" : ""));
}

EtaCharacter by_slot(const ComponentGroup& A, const std::function<Sign(const WDRep&, int)>& f) {
  EtaCharacter e;
  for (int i = 0; i < A.rank(); ++i) e.signs.push_back(f(phi_of_slot(A, i), i));
  return e;
}

}  // namespace

GPResult gp_pair(const Environment& env, const WDRep& phi, const WDRep& phi_prime,
                 const GPCase& gp_case) {
  const auto& reg = env.chars();
  const CharId one = reg.trivial();
  const bool split = env.field().is_split();
  const int d = dimension(env, phi);
  const int dp = dimension(env, phi_prime);
  auto eps = [&](const WDRep& a, const WDRep& b, CharId tw, const AdditiveCharTag& tag) {
    return epsilon_of_tensor(env, a, b, tw, tag);
  };
  auto detm1 = [&](const WDRep& a) { return reg.value_at_minus1(det_character(env, a)); };
  GPResult r;
  switch (gp_case.kind) {
    case GPCaseKind::orthogonal: {
      need(split, "orthogonal case needs E = F");
      need(gp_case.nu.has_value(), "orthogonal case needs nu");
      need(!gp_case.c && !gp_case.chi, "orthogonal case takes no c or chi");
      need(d % 2 == 0 && dp % 2 == 0, "orthogonal case needs even-dimensional parameters");
      need(dp == d || dp == d - 2, "dim(phi') must be dim(phi) or dim(phi) - 2");
      check_rep(env, phi, Sign::plus(), "phi");
      check_rep(env, phi_prime, Sign::minus(), "phi'");
      r.A = signed_group(env, phi, Sign::plus());
      r.A_prime = signed_group(env, phi_prime, Sign::minus());
      Sign nu = *gp_case.nu;
      auto tag = AdditiveCharTag::psi();
      r.iota = by_slot(r.A, [&](const WDRep& pa, int i) {
        return eps(pa, phi_prime, one, tag) * detm1(pa).pow(dp / 2) * nu.pow(r.A.dims[i]);
      });
      r.iota_prime = by_slot(r.A_prime, [&](const WDRep& pa, int) {
        return eps(phi, pa, one, tag) * detm1(phi).pow(dimension(env, pa) / 2);
      });
      break;
    }
    case GPCaseKind::hermitian: {
      need(!split, "hermitian case needs E != F");
      need(!gp_case.nu && !gp_case.c && !gp_case.chi, "hermitian case takes no auxiliary data");
      need(dp == d + 1, "dim(phi') must be dim(phi) + 1");
      Sign b = Sign::parity(d - 1);
      check_rep(env, phi, b, "phi");
      check_rep(env, phi_prime, -b, "phi'");
      r.A = signed_group(env, phi, b);
      r.A_prime = signed_group(env, phi_prime, -b);
      Sign w = env.field().omega_at_minus1;
      auto tag = AdditiveCharTag::psiE_2();
      r.iota = by_slot(r.A, [&](const WDRep& pa, int i) {
        return w.pow(static_cast<long long>(d + 1) * r.A.dims[i]) * eps(pa, phi_prime, one, tag);
      });
      r.iota_prime = by_slot(r.A_prime, [&](const WDRep& pa, int i) {
        return w.pow(static_cast<long long>(d) * r.A_prime.dims[i]) * eps(phi, pa, one, tag);
      });
      break;
    }
    case GPCaseKind::symplectic_metaplectic: {
      need(split, "symplectic-metaplectic case needs E = F");
      need(gp_case.c.has_value(), "symplectic-metaplectic case needs c");
      need(!gp_case.nu && !gp_case.chi, "symplectic-metaplectic case takes no nu or chi");
      need(d == dp + 1 && dp % 2 == 0, "need dim(phi) = n + 1 and dim(phi') = n with n even");
      check_rep(env, phi, Sign::plus(), "phi");
      check_rep(env, phi_prime, Sign::minus(), "phi'");
      need(reg.is_trivial(det_character(env, phi)), "phi must have trivial determinant");
      CharId c = *gp_case.c;
      need(reg.is_quadratic(c), "chi_c must be quadratic");
      r.A = signed_group(env, phi, Sign::plus());
      r.A_prime = signed_group(env, phi_prime, Sign::minus());
      auto tag = AdditiveCharTag::psi();
      WDRep phic = twist(env, phi, c);
      Sign whole = eps(phic, phi_prime, one, tag);
      r.iota = by_slot(r.A, [&](const WDRep& pa, int i) {
        CharId da = det_character(env, pa);
        return eps(twist(env, pa, c), phi_prime, one, tag) * whole.pow(r.A.dims[i]) *
               reg.value_at_minus1(da).pow(dp / 2) * reg.value(da, reg.name(c));
      });
      r.iota_prime = by_slot(r.A_prime, [&](const WDRep& pa, int) {
        return eps(phic, pa, one, tag) * root_number(env, pa, tag) *
               reg.value_at_minus1(c).pow(dimension(env, pa) / 2);
      });
      break;
    }
    case GPCaseKind::skew_hermitian:
    case GPCaseKind::skew_hermitian_conjugate: {
      need(!split, "skew-hermitian cases need E != F");
      need(gp_case.chi.has_value(), "skew-hermitian cases need chi");
      need(!gp_case.nu && !gp_case.c, "skew-hermitian cases take no nu or c");
      need(reg.at(*gp_case.chi).conj_restriction == ConjRestriction::omega_on_F,
           "chi must restrict to omega on F^x");
      need(d == dp, "dim(phi) must equal dim(phi')");
      Sign b = Sign::parity(d - 1);
      check_rep(env, phi, b, "phi");
      check_rep(env, phi_prime, b, "phi'");
      r.A = signed_group(env, phi, b);
      r.A_prime = signed_group(env, phi_prime, b);
      bool conj = gp_case.kind == GPCaseKind::skew_hermitian_conjugate;
      CharId tw = conj ? *gp_case.chi : reg.inverse(*gp_case.chi);
      Sign w = env.field().omega_at_minus1;
      auto tag = AdditiveCharTag::psiE_2();
      r.iota = by_slot(r.A, [&](const WDRep& pa, int i) {
        return (conj ? w.pow(r.A.dims[i]) : Sign::plus()) * eps(pa, phi_prime, tw, tag);
      });
      r.iota_prime = by_slot(r.A_prime, [&](const WDRep& pa, int i) {
        return (conj ? w.pow(r.A_prime.dims[i]) : Sign::plus()) * eps(phi, pa, tw, tag);
      });
      break;
    }
  }
  r.eta_z = r.iota.eval(r.A.z());
  r.eta_prime_z = r.iota_prime.eval(r.A_prime.z());
  return r;
}

PrasadEqualResult prasad_equal_rank(const EnhancedParameter& p) {
  const auto& ctx = p.ctx;
  if (ctx.kind != GroupKind::U)
    throw Error(ErrorCode::ConfigMismatch, "equal rank recipe needs a unitary source");
  if (ctx.partner_parity != ctx.n % 2)
    throw Error(ErrorCode::ConfigMismatch, "equal rank recipe needs m = n");
  require_valid(p);
  const auto& env = ctx.environment();
  const auto& reg = env.chars();
  auto tag = AdditiveCharTag::psiE_2();
  CharId inv = reg.inverse(ctx.chi_V);
  PrasadEqualResult r;
  r.criterion = root_number(env, twist(env, p.phi, inv), tag);
  ComponentGroup A = p.group();
  EnhancedParameter t;
  t.phi = twist(env, p.phi, reg.product(inv, ctx.chi_W));
  for (int i = 0; i < A.rank(); ++i)
    t.eta.signs.push_back(p.eta.at(i) * root_number(env, twist(env, phi_of_slot(A, i), inv), tag));
  GroupContext probe = ctx.partner(ctx.n, Sign::plus());
  ComponentGroup B = component_group(t.phi, probe);
  r.tower_sign = t.eta.eval(B.z());
  t.ctx = ctx.partner(ctx.n, r.tower_sign);
  t.tempered = true;
  r.lifted = std::move(t);
  return r;
}

PrasadAlmostResult prasad_almost_equal_rank(const EnhancedParameter& p) {
  const auto& ctx = p.ctx;
  if (ctx.kappa() != 1)
    throw Error(ErrorCode::ConfigMismatch, "l = -1 needs kappa = 1");
  require_valid(p);
  const auto& env = ctx.environment();
  const auto& reg = env.chars();
  const int m = ctx.n + ctx.epsilon0 + 1;
  Atom chiV = Atom::chain(ctx.chi_V, 1);
  Atom chiW = Atom::chain(ctx.chi_W, 1);
  ComponentGroup A = p.group();
  PrasadAlmostResult r;
  r.contains_chi_V = p.phi.multiplicity(chiV) > 0;

  auto build = [&](const EnhancedParameter& q, std::optional<Sign> tower) {
    EnhancedParameter t;
    t.ctx = ctx.partner(m, tower);
    t.phi = twist(env, q.phi, reg.product(reg.inverse(ctx.chi_V), ctx.chi_W));
    t.phi.add(chiW);
    ComponentGroup B = component_group(t.phi, t.ctx);
    ComponentGroup Aq = q.group();
    int fresh = -1;
    for (int j = 0; j < B.rank(); ++j) {
      Atom src = B.basis[static_cast<size_t>(j)];
      src.chr = reg.product(src.chr, reg.product(ctx.chi_V, reg.inverse(ctx.chi_W)));
      int i = Aq.index_of(src);
      if (i < 0) {
        fresh = j;
        t.eta.signs.push_back(Sign::plus());
      } else {
        t.eta.signs.push_back(q.eta.at(i));
      }
    }
    if (fresh >= 0) {
      Sign required = t.ctx.tower_sign.value_or(Sign::plus());
      Sign others = t.eta.eval(B.z() & ~ComponentGroup::slot(fresh));
      t.eta.signs[static_cast<size_t>(fresh)] = required * others;
    }
    r.index = 1 << (B.rank() - Aq.rank());
    t.tempered = true;
    return t;
  };

  const bool orth = ctx.kind == GroupKind::O_even;
  if (!r.contains_chi_V) {
    for (Sign s : {Sign::plus(), Sign::minus()}) {
      if (orth)
        r.lifts.emplace_back(s, build(s.is_plus() ? p : det_twist(p), std::nullopt));
      else
        r.lifts.emplace_back(s, build(p, s));
    }
    r.source_member_rule = orth ? "both pi (+) and pi (x) det (-) lift" : "both towers lift";
    return r;
  }
  Element e1 = ComponentGroup::slot(A.index_of(chiV));
  Sign s = p.eta.eval(A.z() ^ e1);
  if (orth) {
    r.lifts.emplace_back(s, build(s.is_plus() ? p : det_twist(p), std::nullopt));
    r.source_member_rule = "the member with eta(z_phi + e_1) = +1 lifts";
  } else {
    r.lifts.emplace_back(s, build(p, s));
    r.source_member_rule = "only the tower of sign eta(z_phi + e_1) carries a lift";
  }
  return r;
}

}  // namespace thetacalc
