#include "thetacalc/local_factors.hpp"

#include <numeric>

#include "thetacalc/errors.hpp"

namespace thetacalc {

Sign eps_S_tensor(int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::ParityError, "SL2 dimensions must be positive");
  if ((a - b) % 2 == 0)
    throw Error(ErrorCode::ParityError, "eps(S" + std::to_string(a) + " x S" + std::to_string(b) +
                                            ") needs dimensions of opposite parity");
  return Sign::parity(std::min(a, b));
}

Sign eps_quad_even(const Environment& env, CharId chi, int k) {
  const auto& reg = env.chars();
  if (!reg.is_quadratic(chi))
    throw Error(ErrorCode::InvalidParameter, "character '" + reg.name(chi) + "' is not quadratic");
  Sign delta = reg.is_trivial(chi) ? Sign::plus() : Sign::minus();
  return -delta * reg.value_at_minus1(chi).pow(k);
}

namespace {

/// Root number of one (conjugate) self-dual tempered atom when a value is available.
std::optional<Sign> atom_root(const Environment& env, const Atom& a, const AdditiveCharTag& tag) {
  const auto& reg = env.chars();
  if (a.is_chain()) {
    if (a.k % 2 == 0 && reg.is_quadratic(a.chr)) return eps_quad_even(env, a.chr, a.k / 2);
    if (a.k % 2 == 1 && reg.is_trivial(a.chr)) return Sign::plus();
    return reg.chain_root(a.chr, a.k, tag);
  }
  const auto& d = env.def(a.def);
  auto it = d.root_table.find({a.k, reg.name(a.chr), tag});
  if (it == d.root_table.end()) return std::nullopt;
  return it->second;
}

/// epsilon(phi0 + pairing dual of phi0).
Sign pair_root(const Environment& env, const Atom& a) {
  if (env.field().is_quadratic()) return Sign::plus();
  return env.chars().value_at_minus1(atom_det(env, a));
}

}  // namespace

Sign root_number(const Environment& env, const RootNumberQuery& q) {
  if (!q.add_char.valid_for(env.field()))
    throw Error(ErrorCode::InvalidParameter,
                "additive character " + q.add_char.to_string() + " does not fit the field");
  WDRep rep = env.chars().is_trivial(q.twist) ? q.rep : twist(env, q.rep, q.twist);
  Sign out = Sign::plus();
  for (const auto& [a, m] : rep.terms()) {
    if (atom_sign(env, a)) {
      if (auto v = atom_root(env, a, q.add_char)) {
        out *= v->pow(m);
        continue;
      }
      if (m % 2 == 0) {
        out *= pair_root(env, a).pow(m / 2);
        continue;
      }
      throw Error(ErrorCode::MissingRootData, "no root number for eps(" + atom_name(env, a) + ", " +
                                                  q.add_char.to_string() + "); declare it in the registry");
    }
    Atom partner = pairing_dual_atom(env, a);
    if (partner == a || rep.multiplicity(partner) != m)
      throw Error(ErrorCode::SignMismatch, "root number of a representation that is not "
                                           "(conjugate) self-dual: " + atom_name(env, a) +
                                               " lacks its dual partner");
    if (a < partner) out *= pair_root(env, a).pow(m);
  }
  return out;
}

Sign root_number(const Environment& env, const WDRep& rep, const AdditiveCharTag& tag) {
  return root_number(env, RootNumberQuery{rep, env.chars().trivial(), tag});
}

Sign root_number(const Environment& env, const WDRep& rep) {
  return root_number(env, rep, default_tag(env.field()));
}

Sign eps_scale(const Environment& env, const WDRep& phi, const std::string& c_class) {
  return env.chars().value(det_character(env, phi), c_class);
}

namespace {

void require_sign(const Environment& env, const WDRep& phi, Sign b, const char* what) {
  if (!classify_duality(env, phi).admits(b))
    throw Error(ErrorCode::SignMismatch, std::string(what) + ": " + to_string(env, phi) +
                                             " is not (conjugate) self-dual of sign " + b.symbol());
}

}  // namespace

Sign alpha_l(const Environment& env, const WDRep& phi, int l) {
  if (l < 1) throw Error(ErrorCode::InvalidParameter, "alpha_l needs l >= 1");
  require_sign(env, phi, Sign::parity(l - 1), "alpha_l");
  return Sign::parity(multiplicity(phi, env.chars().trivial(), l));
}

Sign alpha_l_by_ratio(const Environment& env, const WDRep& phi, int l) {
  if (l < 1) throw Error(ErrorCode::InvalidParameter, "alpha_l needs l >= 1");
  require_sign(env, phi, Sign::parity(l - 1), "alpha_l");
  Sign num = root_number(env, tensor_S(env, phi, l + 1));
  Sign den = l == 1 ? Sign::plus() : root_number(env, tensor_S(env, phi, l - 1));
  Sign r = num * den;
  if (env.field().is_split()) r *= env.chars().value_at_minus1(det_character(env, phi));
  return r;
}

namespace {

int twist_length(int l, TwistSide side) {
  if (side == TwistSide::minus && l < 1)
    throw Error(ErrorCode::InvalidParameter, "twisted epsilon (minus side) needs l >= 1");
  if (side == TwistSide::plus && l < 0)
    throw Error(ErrorCode::InvalidParameter, "twisted epsilon (plus side) needs l >= 0");
  return side == TwistSide::minus ? l : l + 2;
}

}  // namespace

Sign twisted_eps(const Environment& env, const WDRep& phi, CharId chi_V, int l, TwistSide side) {
  const auto& reg = env.chars();
  int L = twist_length(l, side);
  WDRep psi = twist(env, phi, reg.inverse(chi_V));
  require_sign(env, psi, Sign::parity(l - 1), "twisted epsilon");
  if (L == 1) return Sign::plus();
  int sigma = 0;
  for (int r = L - 2; r >= 1; r -= 2) sigma += multiplicity(psi, reg.trivial(), r);
  Sign out = Sign::parity(sigma);
  if (L % 2 == 0) return out * root_number(env, psi);
  if (env.field().is_split()) out *= reg.value_at_minus1(det_character(env, psi)).pow((L - 1) / 2);
  return out;
}

Sign oracle_twisted_eps(const Environment& env, const WDRep& phi, CharId chi_V, int l,
                        TwistSide side) {
  const auto& reg = env.chars();
  int L = twist_length(l, side);
  WDRep psi = twist(env, phi, reg.inverse(chi_V));
  require_sign(env, psi, Sign::parity(l - 1), "twisted epsilon oracle");
  if (L == 1) return Sign::plus();
  Sign out = Sign::plus();
  const WDRep pieces = tensor_S(env, psi, L - 1);
  for (const auto& [a, m] : pieces.terms()) {
    if (!a.is_chain() || a.shift2 != 0 || a.k % 2 != 0 || !reg.is_quadratic(a.chr) ||
        !atom_sign(env, a))
      throw Error(ErrorCode::OracleInapplicable,
                  "piece " + atom_name(env, a) + " is outside the closed-form oracle");
    out *= eps_quad_even(env, a.chr, a.k / 2).pow(m);
  }
  return out;
}

namespace {

bool tensor_atoms(const Environment& env, const Atom& x, const Atom& y, int mult, WDRep& out) {
  if (x.is_generic() && y.is_generic()) return false;
  const Atom& g = x.is_generic() ? x : y;
  const Atom& o = x.is_generic() ? y : x;
  for (int j : cg_decompose(x.k, y.k)) {
    Atom t = g;
    t.chr = env.chars().product(g.chr, o.chr);
    t.k = j;
    t.shift2 = x.shift2 + y.shift2;
    out.add(t, mult);
  }
  return true;
}

}  // namespace

WDRep tensor(const Environment& env, const WDRep& a, const WDRep& b) {
  WDRep out;
  for (const auto& [x, mx] : a.terms())
    for (const auto& [y, my] : b.terms())
      if (!tensor_atoms(env, x, y, mx * my, out))
        throw Error(ErrorCode::MissingPairRootData, "tensor of generic atoms " + atom_name(env, x) +
                                                        " and " + atom_name(env, y) + " is not representable");
  return out;
}

Sign epsilon_of_tensor(const Environment& env, const WDRep& a, const WDRep& b, CharId tw,
                       const AdditiveCharTag& tag) {
  const auto& reg = env.chars();
  WDRep chain_part;
  Sign out = Sign::plus();
  for (const auto& [x, mx] : a.terms())
    for (const auto& [y, my] : b.terms()) {
      if (tensor_atoms(env, x, y, mx * my, chain_part)) continue;
      const auto& dx = env.def(x.def);
      auto it = dx.pair_root_table.find({env.def(y.def).label, tag});
      bool plain = x.k == 1 && y.k == 1 && x.tempered() && y.tempered() &&
                   reg.is_trivial(reg.product(reg.product(x.chr, y.chr), tw));
      if (!plain || it == dx.pair_root_table.end())
        throw Error(ErrorCode::MissingPairRootData,
                    "no pair root number for eps(" + atom_name(env, x) + " x " + atom_name(env, y) +
                        (reg.is_trivial(tw) ? "" : " x " + reg.name(tw)) + ", " + tag.to_string() + ")");
      out *= it->second.pow(mx * my);
    }
  return out * root_number(env, RootNumberQuery{chain_part, tw, tag});
}

namespace {

struct Q {
  long long n = 0, d = 1;
  static Q make(long long n, long long d) {
    if (d < 0) n = -n, d = -d;
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }
  Q operator+(Q o) const { return make(n * o.d + o.n * d, d * o.d); }
  Q operator-(Q o) const { return make(n * o.d - o.n * d, d * o.d); }
  Q operator*(long long k) const { return make(n * k, d); }
  bool operator==(const Q&) const = default;
};

/// u^e q^r with u the root-number constant of the character.
struct Monomial {
  long long u_exp = 0;
  Q q_exp;
  Monomial operator*(const Monomial& o) const { return {u_exp + o.u_exp, q_exp + o.q_exp}; }
  Monomial pow(long long l) const { return {u_exp * l, q_exp * l}; }
  bool operator==(const Monomial&) const = default;
};

/// eps(s, chi |.|^t, psi) = u q^{a(1/2 - s - t)}; the dual with psi^{-1} has constant u^{-1}.
Monomial eps_model(int conductor, Q s, Q t, bool dual_side) {
  Q half = Q::make(1, 2);
  return {dual_side ? -1 : 1, (half - s - t) * conductor};
}

}  // namespace

bool gamma_identity_check(const Environment& env, const WDRep& phi, int l,
                          const std::vector<Rational>& s_samples) {
  if (l < 1) throw Error(ErrorCode::InvalidParameter, "gamma identity needs l >= 1");
  for (const auto& [a, m] : phi.terms()) {
    if (!a.is_chain() || a.k != 1)
      throw Error(ErrorCode::OracleInapplicable,
                  "gamma identity model covers Weil characters only, not " + atom_name(env, a));
    int cond = env.chars().at(a.chr).conductor;
    Q t = Q::make(a.shift2, 2);
    Q shift = Q::make(l - 1, 2);
    for (const auto& r : s_samples) {
      Q s = Q::make(r.num, r.den);
      Q ms = Q::make(-r.num, r.den);
      Monomial lhs = eps_model(cond, s, t, false).pow(l) * eps_model(cond, ms, Q{} - t, true).pow(l);
      Monomial rhs = eps_model(cond, s - shift, t, false) * eps_model(cond, ms - shift, Q{} - t, true);
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

}  // namespace thetacalc
