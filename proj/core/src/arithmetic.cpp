#include "thetacalc/arithmetic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "thetacalc/errors.hpp"

namespace thetacalc {

std::string AdditiveCharTag::to_string() const {
  switch (kind) {
    case AddTagKind::psi: return "psi";
    case AddTagKind::psi_c: return "psi_c(" + scaling_class + ")";
    case AddTagKind::psiE: return "psiE";
    case AddTagKind::psiE_2: return "psiE_2";
    case AddTagKind::psi_E_trace: return "psi_E_trace";
  }
  return "psi";
}

AdditiveCharTag AdditiveCharTag::parse(const std::string& text) {
  if (text == "psi") return psi();
  if (text == "psiE") return {AddTagKind::psiE, {}};
  if (text == "psiE_2") return psiE_2();
  if (text == "psi_E_trace") return {AddTagKind::psi_E_trace, {}};
  const std::string prefix = "psi_c(";
  if (text.size() > prefix.size() + 1 && text.compare(0, prefix.size(), prefix) == 0 &&
      text.back() == ')')
    return psi_c(text.substr(prefix.size(), text.size() - prefix.size() - 1));
  throw Error(ErrorCode::InvalidRegistry, "unknown additive character tag '" + text + "'");
}

bool AdditiveCharTag::valid_for(const FieldContext& field) const {
  switch (kind) {
    case AddTagKind::psi: return true;
    case AddTagKind::psi_c: return field.is_split();
    default: return field.is_quadratic();
  }
}

AdditiveCharTag default_tag(const FieldContext& field) {
  return field.is_split() ? AdditiveCharTag::psi() : AdditiveCharTag::psiE_2();
}

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidRegistry, msg); }

}  // namespace

CharacterRegistry CharacterRegistry::build(const Spec& spec, const FieldContext& field) {
  CharacterRegistry reg;
  if (spec.moduli.empty()) invalid("registry needs at least one modulus");
  long long order = 1;
  for (int m : spec.moduli) {
    if (m < 1) invalid("registry moduli must be positive");
    order *= m;
  }
  if (static_cast<long long>(spec.entries.size()) != order)
    invalid("registry with moduli of order " + std::to_string(order) + " declares " +
            std::to_string(spec.entries.size()) + " characters; the group must be closed");

  std::vector<Entry> entries = spec.entries;
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.chr.name < b.chr.name; });
  reg.moduli_ = spec.moduli;
  std::map<std::vector<int>, CharId> by_coords;
  std::set<std::string> names;
  for (const auto& e : entries) {
    if (e.chr.name.empty()) invalid("character with empty name");
    if (!names.insert(e.chr.name).second) invalid("duplicate character '" + e.chr.name + "'");
    if (e.coords.size() != spec.moduli.size())
      invalid("character '" + e.chr.name + "' has wrong coordinate count");
    std::vector<int> c = e.coords;
    for (size_t i = 0; i < c.size(); ++i) {
      c[i] %= spec.moduli[i];
      if (c[i] < 0) c[i] += spec.moduli[i];
    }
    CharId id = static_cast<CharId>(reg.chars_.size());
    if (!by_coords.emplace(c, id).second)
      invalid("characters share coordinates: '" + e.chr.name + "'");
    reg.chars_.push_back(e.chr);
    reg.coords_.push_back(c);
  }

  // Identity.
  std::vector<int> zero(spec.moduli.size(), 0);
  reg.trivial_ = by_coords.at(zero);
  for (CharId a = 0; a < reg.size(); ++a) {
    const auto& ch = reg.chars_[static_cast<size_t>(a)];
    if (ch.is_trivial != (a == reg.trivial_))
      invalid("character '" + ch.name + "' trivial flag disagrees with its coordinates");
  }
  const auto& one = reg.chars_[static_cast<size_t>(reg.trivial_)];
  if (!one.value_at_minus1.is_plus()) invalid("the trivial character must be +1 at -1");
  for (const auto& [sym, v] : one.value_table)
    if (!v.is_plus()) invalid("the trivial character must be +1 at '" + sym + "'");
  if (one.conductor != 0) invalid("the trivial character must be unramified");

  // Product and inverse tables.
  const int n = reg.size();
  reg.product_.assign(static_cast<size_t>(n), std::vector<CharId>(static_cast<size_t>(n), 0));
  reg.inverse_.assign(static_cast<size_t>(n), 0);
  for (CharId a = 0; a < n; ++a) {
    for (CharId b = 0; b < n; ++b) {
      std::vector<int> c(spec.moduli.size());
      for (size_t i = 0; i < c.size(); ++i)
        c[i] = (reg.coords_[static_cast<size_t>(a)][i] + reg.coords_[static_cast<size_t>(b)][i]) %
               spec.moduli[i];
      reg.product_[static_cast<size_t>(a)][static_cast<size_t>(b)] = by_coords.at(c);
    }
    std::vector<int> c(spec.moduli.size());
    for (size_t i = 0; i < c.size(); ++i)
      c[i] = (spec.moduli[i] - reg.coords_[static_cast<size_t>(a)][i]) % spec.moduli[i];
    reg.inverse_[static_cast<size_t>(a)] = by_coords.at(c);
  }

  // Symbols carrying a value for every character.
  std::set<std::string> common;
  for (const auto& [sym, v] : reg.chars_.front().value_table) common.insert(sym);
  for (const auto& ch : reg.chars_) {
    std::set<std::string> keep;
    for (const auto& s : common)
      if (ch.value_table.count(s)) keep.insert(s);
    common = std::move(keep);
  }
  reg.symbols_.assign(common.begin(), common.end());

  // Evaluation at -1 and at the common symbols is a homomorphism.
  for (CharId a = 0; a < n; ++a)
    for (CharId b = 0; b < n; ++b) {
      CharId ab = reg.product(a, b);
      if (reg.value_at_minus1(ab) != reg.value_at_minus1(a) * reg.value_at_minus1(b))
        invalid("value at -1 is not multiplicative on '" + reg.name(a) + "', '" + reg.name(b) + "'");
      for (const auto& s : reg.symbols_)
        if (reg.value(ab, s) != reg.value(a, s) * reg.value(b, s))
          invalid("value at '" + s + "' is not multiplicative on '" + reg.name(a) + "', '" +
                  reg.name(b) + "'");
    }

  // Conjugate-duality data over a quadratic field.
  if (field.is_quadratic()) {
    for (const auto& ch : reg.chars_) {
      if (ch.conj_restriction == ConjRestriction::trivial_on_F && !ch.value_at_minus1.is_plus())
        invalid("conjugate-orthogonal character '" + ch.name + "' must be +1 at -1");
      if (ch.conj_restriction == ConjRestriction::omega_on_F &&
          ch.value_at_minus1 != field.omega_at_minus1)
        invalid("conjugate-symplectic character '" + ch.name + "' must equal omega at -1");
    }
    if (one.conj_restriction == ConjRestriction::omega_on_F)
      invalid("the trivial character is conjugate-orthogonal");
  }

  reg.conj_dual_.resize(static_cast<size_t>(n));
  for (const auto& e : entries) {
    CharId a = *reg.find(e.chr.name);
    if (e.conj_dual) {
      auto d = reg.find(*e.conj_dual);
      if (!d) invalid("conjugate dual '" + *e.conj_dual + "' of '" + e.chr.name + "' is undeclared");
      reg.conj_dual_[static_cast<size_t>(a)] = *d;
    } else {
      reg.conj_dual_[static_cast<size_t>(a)] = a;
    }
  }

  if (spec.chi_minus_one) {
    auto c = reg.find(*spec.chi_minus_one);
    if (!c) invalid("chi_{-1} names undeclared character '" + *spec.chi_minus_one + "'");
    reg.chi_minus_one_ = *c;
  }
  return reg;
}

CharacterRegistry CharacterRegistry::default_split() {
  auto P = Sign::plus();
  auto M = Sign::minus();
  auto mk = [](std::string name, bool triv, Sign m1, std::map<std::string, Sign> vals, int cond) {
    TwistCharacter c;
    c.name = std::move(name);
    c.is_trivial = triv;
    c.value_at_minus1 = m1;
    c.value_table = std::move(vals);
    c.conductor = cond;
    return c;
  };
  Spec spec;
  spec.moduli = {2, 2};
  spec.entries = {
      {mk("1", true, P, {{"u", P}, {"pi", P}, {"upi", P}, {"2", P}}, 0), {0, 0}, {}},
      {mk("u", false, P, {{"u", P}, {"pi", M}, {"upi", M}, {"2", P}}, 0), {1, 0}, {}},
      {mk("pi", false, M, {{"u", M}, {"pi", M}, {"upi", P}, {"2", M}}, 1), {0, 1}, {}},
      {mk("upi", false, M, {{"u", M}, {"pi", P}, {"upi", M}, {"2", M}}, 1), {1, 1}, {}},
  };
  spec.chi_minus_one = "u";
  return build(spec, FieldContext::split_field());
}

CharacterRegistry CharacterRegistry::default_unitary() {
  auto field = FieldContext::quadratic_field(Sign::plus());
  TwistCharacter one{"1", true, Sign::plus(), {}, ConjRestriction::trivial_on_F, 0};
  TwistCharacter mu{"mu", false, Sign::plus(), {}, ConjRestriction::omega_on_F, 0};
  Spec spec;
  spec.moduli = {2};
  spec.entries = {{one, {0}, {}}, {mu, {1}, {}}};
  auto reg = build(spec, field);
  CharId m = reg.id("mu");
  for (int k = 1; k <= 63; k += 2) reg.set_chain_root(m, k, AdditiveCharTag::psiE_2(), Sign::plus());
  return reg;
}

std::optional<CharId> CharacterRegistry::find(const std::string& name) const {
  auto it = std::lower_bound(chars_.begin(), chars_.end(), name,
                             [](const TwistCharacter& c, const std::string& n) { return c.name < n; });
  if (it == chars_.end() || it->name != name) return std::nullopt;
  return static_cast<CharId>(it - chars_.begin());
}

CharId CharacterRegistry::id(const std::string& name) const {
  auto f = find(name);
  if (!f) throw Error(ErrorCode::UnknownCharacter, "character '" + name + "' is not in the registry");
  return *f;
}

CharId CharacterRegistry::product(CharId a, CharId b) const {
  return product_.at(static_cast<size_t>(a)).at(static_cast<size_t>(b));
}

CharId CharacterRegistry::inverse(CharId a) const { return inverse_.at(static_cast<size_t>(a)); }

CharId CharacterRegistry::conj_dual(CharId a) const {
  return conj_dual_.at(static_cast<size_t>(a));
}

Sign CharacterRegistry::value(CharId a, const std::string& symbol) const {
  const auto& ch = at(a);
  if (symbol == "-1") return ch.value_at_minus1;
  if (symbol == "1") return Sign::plus();
  auto it = ch.value_table.find(symbol);
  if (it == ch.value_table.end())
    throw Error(ErrorCode::UnknownCharacterValue,
                "value of '" + ch.name + "' at '" + symbol + "' is not declared");
  return it->second;
}

void CharacterRegistry::set_chain_root(CharId chi, int k, const AdditiveCharTag& tag, Sign v) {
  chain_roots_[{chi, k, tag}] = v;
}

std::optional<Sign> CharacterRegistry::chain_root(CharId chi, int k,
                                                  const AdditiveCharTag& tag) const {
  auto it = chain_roots_.find({chi, k, tag});
  if (it == chain_roots_.end()) return std::nullopt;
  return it->second;
}

TwistCharacter char_product(const CharacterRegistry& reg, const TwistCharacter& a,
                            const TwistCharacter& b) {
  return reg.at(reg.product(reg.id(a.name), reg.id(b.name)));
}

Sign delta_indicator(const TwistCharacter& chi) {
  return chi.is_trivial ? Sign::plus() : Sign::minus();
}

}  // namespace thetacalc
