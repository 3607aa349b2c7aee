#include "thetacalc/llc.hpp"

#include <functional>

#include "thetacalc/errors.hpp"

namespace thetacalc {

const char* to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Sp: return "Sp";
    case GroupKind::O_odd: return "Oodd";
    case GroupKind::O_even: return "Oeven";
    case GroupKind::Mp: return "Mp";
    case GroupKind::U: return "U";
  }
  return "?";
}

int GroupContext::parameter_dim() const {
  switch (kind) {
    case GroupKind::O_odd: return n - 1;
    case GroupKind::Sp: return n + 1;
    default: return n;
  }
}

Sign GroupContext::parameter_sign() const {
  switch (kind) {
    case GroupKind::Sp:
    case GroupKind::O_even: return Sign::plus();
    case GroupKind::O_odd:
    case GroupKind::Mp: return Sign::minus();
    case GroupKind::U: return Sign::parity(n - 1);
  }
  return Sign::plus();
}

int GroupContext::kappa() const {
  int l = n - partner_parity + epsilon0;
  return (l % 2 != 0) ? 1 : 2;
}

bool GroupContext::has_towers() const {
  return kind == GroupKind::O_odd || kind == GroupKind::O_even || kind == GroupKind::U;
}

bool GroupContext::partner_has_towers() const {
  return kind == GroupKind::Sp || kind == GroupKind::Mp || kind == GroupKind::U;
}

namespace {

GroupKind partner_kind(GroupKind k) {
  switch (k) {
    case GroupKind::Mp: return GroupKind::O_odd;
    case GroupKind::Sp: return GroupKind::O_even;
    case GroupKind::O_odd: return GroupKind::Mp;
    case GroupKind::O_even: return GroupKind::Sp;
    case GroupKind::U: return GroupKind::U;
  }
  return k;
}

int mod2(int x) { return ((x % 2) + 2) % 2; }

}  // namespace

GroupContext GroupContext::partner(int m, std::optional<Sign> tower) const {
  if (mod2(m) != partner_parity)
    throw Error(ErrorCode::ParityMismatch, "partner dimension " + std::to_string(m) +
                                               " has the wrong parity for " + to_string(kind) + "(" +
                                               std::to_string(n) + ")");
  GroupContext p;
  p.kind = partner_kind(kind);
  p.n = m;
  p.env = env;
  p.epsilon = -epsilon;
  p.epsilon0 = -epsilon0;
  p.chi_V = chi_W;
  p.chi_W = chi_V;
  p.partner_parity = mod2(n);
  if (p.has_towers()) {
    if (!tower) throw Error(ErrorCode::ConfigMismatch, "partner tower sign required");
    p.tower_sign = tower;
  }
  return p;
}

GroupContext make_context(EnvPtr env, GroupKind kind, int n, CharId chi_V, CharId chi_W,
                          int partner_parity, std::optional<Sign> tower, Sign unitary_epsilon) {
  GroupContext c;
  c.kind = kind;
  c.n = n;
  c.env = env;
  const auto& field = env->field();
  const auto& reg = env->chars();
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) throw Error(ErrorCode::ConfigMismatch, msg);
  };
  need(n >= 0, "group dimension must be non-negative");
  if (kind == GroupKind::U) {
    need(field.is_quadratic(), "unitary groups need a quadratic field");
  } else {
    need(field.is_split(), std::string(to_string(kind)) + " needs E = F");
  }
  switch (kind) {
    case GroupKind::Mp:
    case GroupKind::Sp:
      need(n % 2 == 0, std::string(to_string(kind)) + " needs even n");
      c.epsilon = Sign::plus();
      c.epsilon0 = 1;
      c.chi_V = chi_V;
      c.chi_W = reg.trivial();
      c.partner_parity = kind == GroupKind::Mp ? 1 : 0;
      break;
    case GroupKind::O_odd:
    case GroupKind::O_even:
      need(mod2(n) == (kind == GroupKind::O_odd ? 1 : 0), "orthogonal dimension parity mismatch");
      c.epsilon = Sign::minus();
      c.epsilon0 = -1;
      c.chi_V = reg.trivial();
      c.chi_W = chi_W;
      c.partner_parity = 0;
      break;
    case GroupKind::U:
      c.epsilon = unitary_epsilon;
      c.epsilon0 = 0;
      c.chi_V = chi_V;
      c.chi_W = chi_W;
      need(partner_parity == 0 || partner_parity == 1, "partner parity must be 0 or 1");
      c.partner_parity = partner_parity;
      need(reg.at(chi_V).conj_restriction ==
               (partner_parity == 1 ? ConjRestriction::omega_on_F : ConjRestriction::trivial_on_F),
           "chi_V must restrict to omega^m on F^x");
      need(reg.at(chi_W).conj_restriction ==
               (mod2(n) == 1 ? ConjRestriction::omega_on_F : ConjRestriction::trivial_on_F),
           "chi_W must restrict to omega^n on F^x");
      break;
  }
  need(reg.is_quadratic(c.chi_V) && reg.is_quadratic(c.chi_W), "chi_V and chi_W must be quadratic");
  if (c.has_towers()) {
    need(tower.has_value(), std::string(to_string(kind)) + " needs a tower sign");
    c.tower_sign = tower;
  }
  return c;
}

int ComponentGroup::index_of(const Atom& a) const {
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == a) return static_cast<int>(i);
  return -1;
}

Element ComponentGroup::z() const {
  Element e = 0;
  for (size_t i = 0; i < basis.size(); ++i)
    if (mult[i] % 2 == 1) e |= slot(static_cast<int>(i));
  return e;
}

int ComponentGroup::det(Element a) const {
  int d = 0;
  for (size_t i = 0; i < basis.size(); ++i)
    if (a & slot(static_cast<int>(i))) d += dims[i];
  return d % 2;
}

ComponentGroup component_group(const WDRep& phi, const GroupContext& ctx) {
  ComponentGroup A;
  Sign b = ctx.parameter_sign();
  for (const auto& [a, m] : phi.terms()) {
    auto s = atom_sign(ctx.environment(), a);
    if (!s || *s != b) continue;
    A.basis.push_back(a);
    A.mult.push_back(m);
    A.dims.push_back(atom_dim(ctx.environment(), a));
  }
  if (A.basis.size() > 63) throw Error(ErrorCode::InvalidParameter, "component group rank above 63");
  return A;
}

Sign EtaCharacter::eval(Element a) const {
  Sign s = Sign::plus();
  for (size_t i = 0; i < signs.size(); ++i)
    if (a & ComponentGroup::slot(static_cast<int>(i))) s *= signs[i];
  return s;
}

Sign EnhancedParameter::eta_z() const { return eta.eval(group().z()); }

Sign EnhancedParameter::eta_of(const Atom& a) const {
  auto A = group();
  int i = A.index_of(a);
  if (i < 0 || static_cast<size_t>(i) >= eta.signs.size())
    throw Error(ErrorCode::InvalidParameter,
                atom_name(ctx.environment(), a) + " is not a component-group slot");
  return eta.at(i);
}

std::vector<Violation> validate_parameter(const EnhancedParameter& p) {
  std::vector<Violation> out;
  auto add = [&](const char* code, std::string msg) { out.push_back({code, std::move(msg)}); };
  const auto& ctx = p.ctx;
  if (!ctx.env) {
    add("context", "parameter has no environment");
    return out;
  }
  const auto& env = ctx.environment();
  const auto& reg = env.chars();
  std::string group = std::string(to_string(ctx.kind)) + "(" + std::to_string(ctx.n) + ")";
  try {
    int dim = dimension(env, p.phi);
    if (dim != ctx.parameter_dim())
      add("dimension", "dim(phi) = " + std::to_string(dim) + " but " + group + " needs " +
                           std::to_string(ctx.parameter_dim()));
    auto cls = classify_duality(env, p.phi);
    Sign b = ctx.parameter_sign();
    if (!cls.admits(b))
      add("duality", "phi is not " + std::string(env.field().is_split() ? "" : "conjugate ") +
                         "self-dual of sign " + b.symbol());
    if (ctx.kind == GroupKind::Sp && !reg.is_trivial(cls.det))
      add("determinant", "det(phi) = " + reg.name(cls.det) + " but Sp needs trivial determinant");
    if (ctx.kind == GroupKind::O_even && cls.det != ctx.chi_W)
      add("determinant", "det(phi) = " + reg.name(cls.det) + " but the discriminant is " +
                             reg.name(ctx.chi_W));
    auto A = component_group(p.phi, ctx);
    if (static_cast<int>(p.eta.signs.size()) != A.rank()) {
      add("eta", "eta has " + std::to_string(p.eta.signs.size()) + " values but A_phi has rank " +
                     std::to_string(A.rank()));
    } else {
      Sign ez = p.eta.eval(A.z());
      if (ctx.kind == GroupKind::Sp && ez.is_minus())
        add("sp_image", "Sp image constraint: eta(z_phi) must be +1");
      if (ctx.has_towers()) {
        if (!ctx.tower_sign)
          add("tower", group + " needs a tower sign");
        else if (*ctx.tower_sign != ez)
          add("tower", std::string("eta(z_phi) = ") + ez.symbol() + " but the space lies in tower " +
                           ctx.tower_sign->symbol());
      }
    }
    bool has_shift = false;
    for (const auto& [a, m] : p.phi.terms()) has_shift = has_shift || !a.tempered();
    if (p.tempered && has_shift) add("tempered", "tempered parameter with shifted atoms");
    if (!p.tempered && !has_shift) add("tempered", "non-tempered flag without shifted atoms");
  } catch (const Error& e) {
    add("data", e.what());
  }
  if (ctx.kind == GroupKind::O_odd && !p.nu) add("nu", "odd orthogonal parameter needs nu");
  if (ctx.kind != GroupKind::O_odd && p.nu) add("nu", "nu is only meaningful for odd orthogonal groups");
  return out;
}

void require_valid(const EnhancedParameter& p) {
  auto v = validate_parameter(p);
  if (v.empty()) return;
  std::string msg;
  for (const auto& x : v) {
    if (!msg.empty()) msg += "; ";
    msg += x.code + ": " + x.message;
  }
  throw Error(ErrorCode::InvalidParameter, msg);
}

WDRep phi_of_slot(const ComponentGroup& A, int slot) {
  WDRep r;
  r.add(A.basis.at(static_cast<size_t>(slot)), 1);
  return r;
}

namespace {

/// New eta on the image of an atom bijection, with a per-source-slot factor.
EtaCharacter transport(const ComponentGroup& from, const EtaCharacter& eta, const ComponentGroup& to,
                       const std::function<Atom(const Atom&)>& preimage,
                       const std::function<Sign(int)>& factor) {
  EtaCharacter out;
  for (const auto& b : to.basis) {
    int i = from.index_of(preimage(b));
    if (i < 0) throw Error(ErrorCode::InconsistentRecipe, "component groups do not match");
    out.signs.push_back(eta.at(i) * factor(i));
  }
  return out;
}

Sign twist_ratio(const Environment& env, const WDRep& phi_a, CharId c) {
  return root_number(env, phi_a) * root_number(env, twist(env, phi_a, c)) *
         env.chars().value_at_minus1(c).pow(dimension(env, phi_a) / 2);
}

Atom twisted_atom(const Environment& env, const Atom& a, CharId c) {
  Atom b = a;
  b.chr = env.chars().product(a.chr, c);
  return b;
}

}  // namespace

CharId chi_minus_one(const CharacterRegistry& chars) {
  auto c = chars.chi_minus_one();
  if (!c) throw Error(ErrorCode::UnknownCharacter, "the registry does not declare chi_{-1}");
  return *c;
}

EnhancedParameter contragredient(const EnhancedParameter& p) {
  const auto& env = p.ctx.environment();
  const auto& reg = env.chars();
  auto A = p.group();
  EnhancedParameter q = p;
  if (p.ctx.kind == GroupKind::Mp) {
    CharId c = chi_minus_one(reg);
    q.phi = twist(env, p.phi, c);
    auto B = component_group(q.phi, q.ctx);
    q.eta = transport(A, p.eta, B, [&](const Atom& b) { return twisted_atom(env, b, reg.inverse(c)); },
                      [&](int i) { return twist_ratio(env, phi_of_slot(A, i), c); });
    return q;
  }
  q.phi = dual(env, p.phi);
  auto B = component_group(q.phi, q.ctx);
  q.eta = transport(A, p.eta, B, [&](const Atom& b) { return dual_atom(env, b); }, [&](int i) {
    if (env.field().is_quadratic() && p.ctx.n % 2 == 0)
      return env.field().omega_at_minus1.pow(A.dims[static_cast<size_t>(i)]);
    if (p.ctx.kind == GroupKind::Sp) return reg.value_at_minus1(atom_det(env, A.basis[static_cast<size_t>(i)]));
    return Sign::plus();
  });
  return q;
}

Sign odd_orthogonal_central_sign(const EnhancedParameter& p) {
  if (p.ctx.kind != GroupKind::Mp)
    throw Error(ErrorCode::ConfigMismatch, "central sign formula needs a metaplectic source");
  const auto& env = p.ctx.environment();
  return p.eta_z() * root_number(env, p.phi) *
         env.chars().value_at_minus1(p.ctx.chi_V).pow(p.ctx.n / 2);
}

EnhancedParameter mp_o_transfer(const EnhancedParameter& p, CharId c) {
  if (p.ctx.kind != GroupKind::Mp) throw Error(ErrorCode::ConfigMismatch, "mp_o_transfer needs Mp");
  const auto& env = p.ctx.environment();
  const auto& reg = env.chars();
  auto A = p.group();
  EnhancedParameter s;
  s.phi = twist(env, p.phi, c);
  GroupContext tmp = make_context(p.ctx.env, GroupKind::O_odd, p.ctx.n + 1, reg.trivial(), c, 0,
                                  Sign::plus());
  auto B = component_group(s.phi, tmp);
  s.eta = transport(A, p.eta, B, [&](const Atom& b) { return twisted_atom(env, b, reg.inverse(c)); },
                    [&](int i) { return twist_ratio(env, phi_of_slot(A, i), c); });
  tmp.tower_sign = s.eta.eval(B.z());
  s.ctx = tmp;
  EnhancedParameter pc = p;
  pc.ctx.chi_V = c;
  s.nu = odd_orthogonal_central_sign(pc);
  s.tempered = p.tempered;
  return s;
}

EnhancedParameter o_mp_transfer(const EnhancedParameter& sigma, CharId c) {
  if (sigma.ctx.kind != GroupKind::O_odd)
    throw Error(ErrorCode::ConfigMismatch, "o_mp_transfer needs an odd orthogonal parameter");
  if (sigma.ctx.chi_W != c)
    throw Error(ErrorCode::ConfigMismatch, "o_mp_transfer needs disc(V) = c");
  const auto& env = sigma.ctx.environment();
  const auto& reg = env.chars();
  auto A = sigma.group();
  EnhancedParameter p;
  p.ctx = make_context(sigma.ctx.env, GroupKind::Mp, sigma.ctx.n - 1, c, reg.trivial(), 1,
                       std::nullopt);
  CharId ci = reg.inverse(c);
  p.phi = twist(env, sigma.phi, ci);
  auto B = component_group(p.phi, p.ctx);
  p.eta = transport(A, sigma.eta, B, [&](const Atom& b) { return twisted_atom(env, b, c); },
                    [&](int i) { return twist_ratio(env, twist(env, phi_of_slot(A, i), ci), c); });
  p.tempered = sigma.tempered;
  return p;
}

bool down_tower_of_odd_orthogonal(const EnhancedParameter& p) {
  if (p.ctx.kind != GroupKind::O_odd || !p.nu)
    throw Error(ErrorCode::ConfigMismatch, "needs an odd orthogonal parameter with nu");
  return *p.nu == p.eta_z() * root_number(p.ctx.environment(), p.phi);
}

EnhancedParameter det_twist(const EnhancedParameter& p) {
  EnhancedParameter q = p;
  if (p.ctx.kind == GroupKind::O_odd) {
    if (!p.nu) throw Error(ErrorCode::InvalidParameter, "odd orthogonal parameter without nu");
    q.nu = -*p.nu;
    return q;
  }
  if (p.ctx.kind == GroupKind::O_even) {
    auto A = p.group();
    for (int i = 0; i < A.rank(); ++i)
      if (A.dims[static_cast<size_t>(i)] % 2 == 1) q.eta.signs[static_cast<size_t>(i)] = -q.eta.at(i);
    return q;
  }
  throw Error(ErrorCode::ConfigMismatch, "det twist is defined for orthogonal groups only");
}

bool det_twist_distinguishable(const EnhancedParameter& p) {
  if (p.ctx.kind == GroupKind::O_odd) return true;
  if (p.ctx.kind != GroupKind::O_even) return false;
  auto A = p.group();
  for (int d : A.dims)
    if (d % 2 == 1) return true;
  return false;
}

}  // namespace thetacalc
