#include "thetacalc/wd_rep.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

#include "thetacalc/errors.hpp"

namespace thetacalc {

const char* to_string(Duality d) {
  switch (d) {
    case Duality::orthogonal: return "orthogonal";
    case Duality::symplectic: return "symplectic";
    case Duality::conjugate_orthogonal: return "conjugate-orthogonal";
    case Duality::conjugate_symplectic: return "conjugate-symplectic";
    case Duality::none: return "none";
  }
  return "none";
}

Environment::Environment(FieldContext field, CharacterRegistry chars,
                         std::vector<GenericAtomDef> defs)
    : field_(field), chars_(std::move(chars)), defs_(std::move(defs)) {
  std::sort(defs_.begin(), defs_.end(),
            [](const GenericAtomDef& a, const GenericAtomDef& b) { return a.label < b.label; });
  for (size_t i = 0; i + 1 < defs_.size(); ++i)
    if (defs_[i].label == defs_[i + 1].label)
      throw Error(ErrorCode::InvalidRegistry, "duplicate generic atom '" + defs_[i].label + "'");
  auto resolve = [&](const std::string& label, const std::string& owner) -> std::optional<DefId> {
    if (label.empty()) return std::nullopt;
    auto id = find_def(label);
    if (!id)
      throw Error(ErrorCode::InvalidRegistry,
                  "generic atom '" + owner + "' refers to undeclared atom '" + label + "'");
    return id;
  };
  for (size_t i = 0; i < defs_.size(); ++i) {
    const auto& d = defs_[i];
    if (d.weil_dim < 1)
      throw Error(ErrorCode::InvalidRegistry, "generic atom '" + d.label + "' needs weil_dim >= 1");
    bool conj = d.duality == Duality::conjugate_orthogonal ||
                d.duality == Duality::conjugate_symplectic;
    bool plain = d.duality == Duality::orthogonal || d.duality == Duality::symplectic;
    if ((field_.is_split() && conj) || (field_.is_quadratic() && plain))
      throw Error(ErrorCode::InvalidRegistry, "generic atom '" + d.label + "' declares duality " +
                                                  to_string(d.duality) + " incompatible with the field");
    def_det_.push_back(chars_.id(d.det_char));
    auto dual = resolve(d.dual_label, d.label);
    if (!dual && plain) dual = static_cast<DefId>(i);
    def_dual_.push_back(dual);
    auto cdual = resolve(d.conj_dual_label, d.label);
    if (!cdual && conj) cdual = static_cast<DefId>(i);
    if (!cdual && field_.is_split()) cdual = def_dual_.back();
    def_conj_dual_.push_back(cdual);
  }
}

std::shared_ptr<const Environment> Environment::default_split() {
  static const auto env = std::make_shared<const Environment>(
      FieldContext::split_field(), CharacterRegistry::default_split(), std::vector<GenericAtomDef>{});
  return env;
}

std::shared_ptr<const Environment> Environment::default_unitary() {
  static const auto env = std::make_shared<const Environment>(
      FieldContext::quadratic_field(Sign::plus()), CharacterRegistry::default_unitary(),
      std::vector<GenericAtomDef>{});
  return env;
}

std::optional<DefId> Environment::find_def(const std::string& label) const {
  auto it = std::lower_bound(defs_.begin(), defs_.end(), label,
                             [](const GenericAtomDef& d, const std::string& l) { return d.label < l; });
  if (it == defs_.end() || it->label != label) return std::nullopt;
  return static_cast<DefId>(it - defs_.begin());
}

bool Atom::operator<(const Atom& o) const {
  auto key = [](const Atom& a) {
    return std::make_tuple(a.shift2 != 0, static_cast<int>(a.kind), a.def, a.chr, a.k,
                           std::abs(a.shift2), -a.shift2);
  };
  return key(*this) < key(o);
}

WDRep::WDRep(std::vector<Term> terms) {
  for (const auto& [a, m] : terms) add(a, m);
}

int WDRep::multiplicity(const Atom& a) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), a,
                             [](const Term& t, const Atom& x) { return t.first < x; });
  return (it != terms_.end() && it->first == a) ? it->second : 0;
}

void WDRep::add(const Atom& a, int mult) {
  if (mult < 0) throw Error(ErrorCode::InvalidParameter, "negative multiplicity");
  if (mult == 0) return;
  if (a.k < 1) throw Error(ErrorCode::InvalidParameter, "SL2 dimension must be >= 1");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), a,
                             [](const Term& t, const Atom& x) { return t.first < x; });
  if (it != terms_.end() && it->first == a)
    it->second += mult;
  else
    terms_.insert(it, {a, mult});
}

void WDRep::remove(const Atom& a, int mult) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), a,
                             [](const Term& t, const Atom& x) { return t.first < x; });
  if (it == terms_.end() || !(it->first == a) || it->second < mult)
    throw Error(ErrorCode::InvalidParameter, "cannot remove " + std::to_string(mult) +
                                                 " copies of an atom that occurs fewer times");
  it->second -= mult;
  if (it->second == 0) terms_.erase(it);
}

WDRep WDRep::operator+(const WDRep& o) const {
  WDRep r = *this;
  for (const auto& [a, m] : o.terms_) r.add(a, m);
  return r;
}

int atom_dim(const Environment& env, const Atom& a) {
  return (a.is_chain() ? 1 : env.def(a.def).weil_dim) * a.k;
}

namespace {

/// (Conjugate) self-duality sign of a character, nullopt when it is not (conjugate) self-dual.
std::optional<Sign> char_sign(const Environment& env, CharId chi) {
  const auto& reg = env.chars();
  if (env.field().is_split()) {
    if (!reg.is_quadratic(chi)) return std::nullopt;
    return Sign::plus();
  }
  if (reg.conj_dual(chi) != chi) return std::nullopt;
  switch (reg.at(chi).conj_restriction) {
    case ConjRestriction::trivial_on_F: return Sign::plus();
    case ConjRestriction::omega_on_F: return Sign::minus();
    default: return std::nullopt;
  }
}

std::optional<Sign> def_sign(const GenericAtomDef& d) {
  switch (d.duality) {
    case Duality::orthogonal:
    case Duality::conjugate_orthogonal: return Sign::plus();
    case Duality::symplectic:
    case Duality::conjugate_symplectic: return Sign::minus();
    case Duality::none: return std::nullopt;
  }
  return std::nullopt;
}

std::string shift_text(int shift2) {
  if (shift2 % 2 == 0) return std::to_string(shift2 / 2);
  return std::to_string(shift2) + "/2";
}

}  // namespace

std::optional<Sign> atom_sign(const Environment& env, const Atom& a) {
  if (a.shift2 != 0) return std::nullopt;
  auto c = char_sign(env, a.chr);
  if (!c) return std::nullopt;
  Sign s = *c * Sign::parity(a.k - 1);
  if (a.is_generic()) {
    auto w = def_sign(env.def(a.def));
    if (!w) return std::nullopt;
    s *= *w;
  }
  return s;
}

CharId atom_det(const Environment& env, const Atom& a) {
  const auto& reg = env.chars();
  auto power = [&](CharId c, int e) {
    CharId r = reg.trivial();
    for (int i = 0; i < e; ++i) r = reg.product(r, c);
    return r;
  };
  CharId weil = a.chr;
  if (a.is_generic())
    weil = reg.product(env.def_det(a.def), power(a.chr, env.def(a.def).weil_dim));
  return power(weil, a.k);
}

Atom dual_atom(const Environment& env, const Atom& a) {
  Atom d = a;
  d.chr = env.chars().inverse(a.chr);
  d.shift2 = -a.shift2;
  if (a.is_generic()) {
    auto dd = env.def_dual(a.def);
    if (!dd)
      throw Error(ErrorCode::IncompleteDualityData,
                  "generic atom '" + env.def(a.def).label + "' has no declared dual");
    d.def = *dd;
  }
  return d;
}

Atom conj_dual_atom(const Environment& env, const Atom& a) {
  if (env.field().is_split()) return dual_atom(env, a);
  Atom d = a;
  d.chr = env.chars().conj_dual(a.chr);
  d.shift2 = -a.shift2;
  if (a.is_generic()) {
    auto dd = env.def_conj_dual(a.def);
    if (!dd)
      throw Error(ErrorCode::IncompleteDualityData,
                  "generic atom '" + env.def(a.def).label + "' has no declared conjugate dual");
    d.def = *dd;
  }
  return d;
}

Atom pairing_dual_atom(const Environment& env, const Atom& a) {
  return env.field().is_split() ? dual_atom(env, a) : conj_dual_atom(env, a);
}

std::string atom_name(const Environment& env, const Atom& a) {
  std::string out;
  const auto& reg = env.chars();
  if (!reg.is_trivial(a.chr)) out = reg.name(a.chr) + ".";
  if (a.is_chain()) {
    out += "S" + std::to_string(a.k);
  } else {
    out += "atom(" + env.def(a.def).label + ")";
    if (a.k > 1) out += ".S" + std::to_string(a.k);
  }
  if (a.shift2 != 0) out += "@" + shift_text(a.shift2);
  return out;
}

std::vector<int> cg_decompose(int a, int b) {
  std::vector<int> out;
  for (int e = a + b - 1; e >= std::abs(a - b) + 1; e -= 2) out.push_back(e);
  return out;
}

WDRep tensor_S(const Environment&, const WDRep& phi, int r) {
  WDRep out;
  for (const auto& [a, m] : phi.terms())
    for (int j : cg_decompose(a.k, r)) {
      Atom b = a;
      b.k = j;
      out.add(b, m);
    }
  return out;
}

WDRep twist(const Environment& env, const WDRep& phi, CharId chi) {
  WDRep out;
  for (const auto& [a, m] : phi.terms()) {
    Atom b = a;
    b.chr = env.chars().product(a.chr, chi);
    out.add(b, m);
  }
  return out;
}

int multiplicity(const WDRep& phi, CharId chi, int r) {
  return phi.multiplicity(Atom::chain(chi, r));
}

int dimension(const Environment& env, const WDRep& phi) {
  int d = 0;
  for (const auto& [a, m] : phi.terms()) d += m * atom_dim(env, a);
  return d;
}

CharId det_character(const Environment& env, const WDRep& phi) {
  const auto& reg = env.chars();
  CharId d = reg.trivial();
  for (const auto& [a, m] : phi.terms()) {
    CharId ad = atom_det(env, a);
    for (int i = 0; i < m; ++i) d = reg.product(d, ad);
  }
  return d;
}

WDRep dual(const Environment& env, const WDRep& phi) {
  WDRep out;
  for (const auto& [a, m] : phi.terms()) out.add(dual_atom(env, a), m);
  return out;
}

WDRep conj_dual(const Environment& env, const WDRep& phi) {
  WDRep out;
  for (const auto& [a, m] : phi.terms()) out.add(conj_dual_atom(env, a), m);
  return out;
}

Duality DualityClass::primary() const {
  if (admits_plus) return conjugate ? Duality::conjugate_orthogonal : Duality::orthogonal;
  if (admits_minus) return conjugate ? Duality::conjugate_symplectic : Duality::symplectic;
  return Duality::none;
}

DualityClass classify_duality(const Environment& env, const WDRep& phi) {
  DualityClass c;
  c.conjugate = env.field().is_quadratic();
  c.admits_plus = true;
  c.admits_minus = true;
  for (const auto& [a, m] : phi.terms()) {
    if (a.is_generic()) {
      const auto& d = env.def(a.def);
      bool has_dual = c.conjugate ? env.def_conj_dual(a.def).has_value()
                                  : env.def_dual(a.def).has_value();
      if (d.duality == Duality::none && !has_dual)
        throw Error(ErrorCode::IncompleteDualityData,
                    "generic atom '" + d.label + "' declares neither a duality nor a dual");
    }
    auto s = atom_sign(env, a);
    if (s) {
      if (m % 2 == 1) {
        if (s->is_plus())
          c.admits_minus = false;
        else
          c.admits_plus = false;
      }
      continue;
    }
    Atom partner = pairing_dual_atom(env, a);
    if (partner == a || phi.multiplicity(partner) != m) {
      c.admits_plus = false;
      c.admits_minus = false;
    }
  }
  c.det = det_character(env, phi);
  return c;
}

std::string to_string(const Environment& env, const WDRep& phi) {
  if (phi.empty()) return "0";
  std::string out;
  for (const auto& [a, m] : phi.terms()) {
    if (!out.empty()) out += " + ";
    if (m > 1) out += std::to_string(m) + "*";
    out += atom_name(env, a);
  }
  return out;
}

}  // namespace thetacalc
