/**
 * @file arithmetic.hpp
 * @brief Field context, additive-character tags and the finite registry of twist characters.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "thetacalc/sign.hpp"

namespace thetacalc {

enum class ExtensionKind { split, quadratic };

/// E = F or a quadratic extension E/F.
struct FieldContext {
  ExtensionKind kind = ExtensionKind::split;
  /// omega_{E/F}(-1); unused when split.
  Sign omega_at_minus1;
  /// Documentation flag only.
  bool residue_char_odd = true;

  bool is_split() const { return kind == ExtensionKind::split; }
  bool is_quadratic() const { return kind == ExtensionKind::quadratic; }

  static FieldContext split_field() { return {}; }
  static FieldContext quadratic_field(Sign omega_minus1) {
    return {ExtensionKind::quadratic, omega_minus1, true};
  }
  bool operator==(const FieldContext&) const = default;
};

enum class AddTagKind { psi, psi_c, psiE, psiE_2, psi_E_trace };

/// Opaque additive-character label; root-number tables are keyed by it.
struct AdditiveCharTag {
  AddTagKind kind = AddTagKind::psi;
  /// Scaling class symbol, used only by psi_c.
  std::string scaling_class;

  static AdditiveCharTag psi() { return {AddTagKind::psi, {}}; }
  static AdditiveCharTag psi_c(std::string c) { return {AddTagKind::psi_c, std::move(c)}; }
  static AdditiveCharTag psiE_2() { return {AddTagKind::psiE_2, {}}; }

  /// "psi", "psi_c(u)", "psiE", "psiE_2" or "psi_E_trace".
  std::string to_string() const;
  /// Inverse of to_string; throws Error(InvalidRegistry) on unknown text.
  static AdditiveCharTag parse(const std::string& text);
  /// psiE-family tags need a quadratic field, psi_c a split one.
  bool valid_for(const FieldContext& field) const;

  auto operator<=>(const AdditiveCharTag&) const = default;
};

/// Default additive-character tag for sign-valued root numbers in the given field.
AdditiveCharTag default_tag(const FieldContext& field);

enum class ConjRestriction { trivial_on_F, omega_on_F, not_applicable };

/// Symbolic character of E^x with the finitely many values the recipes consume.
struct TwistCharacter {
  std::string name;
  bool is_trivial = false;
  Sign value_at_minus1;
  /// Values at class symbols of E^x (for instance "2", "u", "pi").
  std::map<std::string, Sign> value_table;
  ConjRestriction conj_restriction = ConjRestriction::not_applicable;
  /// Conductor exponent; 0 means unramified.
  int conductor = 0;
};

using CharId = int;

/// Finite abelian group of twist characters with product table.
class CharacterRegistry {
 public:
  /// One declared element: its data and coordinates in prod Z/moduli[i].
  struct Entry {
    TwistCharacter chr;
    std::vector<int> coords;
    /// Name of the conjugate-dual character; defaults to the character itself.
    std::optional<std::string> conj_dual;
  };
  struct Spec {
    std::vector<int> moduli;
    std::vector<Entry> entries;
    /// Name of chi_{-1}, the character (-1, .) attached to the class of -1.
    std::optional<std::string> chi_minus_one;
  };

  CharacterRegistry() = default;

  /// Validates closure, identity, value homomorphism and field compatibility.
  static CharacterRegistry build(const Spec& spec, const FieldContext& field);
  /// {1, u, pi, upi}: F^x/F^x^2 for p odd with q = 3 mod 8, values by Hilbert symbol.
  static CharacterRegistry default_split();
  /// {1, mu}: mu the unramified quadratic character of E^x, conjugate-symplectic.
  static CharacterRegistry default_unitary();

  int size() const { return static_cast<int>(chars_.size()); }
  const TwistCharacter& at(CharId id) const { return chars_.at(static_cast<size_t>(id)); }
  const std::string& name(CharId id) const { return at(id).name; }
  std::optional<CharId> find(const std::string& name) const;
  /// Throws UnknownCharacter.
  CharId id(const std::string& name) const;
  CharId trivial() const { return trivial_; }

  CharId product(CharId a, CharId b) const;
  CharId inverse(CharId a) const;
  CharId conj_dual(CharId a) const;
  bool is_quadratic(CharId a) const { return product(a, a) == trivial_; }
  bool is_trivial(CharId a) const { return a == trivial_; }

  Sign value_at_minus1(CharId a) const { return at(a).value_at_minus1; }
  /// Value at a class symbol; "-1" maps to value_at_minus1. Throws UnknownCharacterValue.
  Sign value(CharId a, const std::string& symbol) const;
  /// Class symbols that carry values for every character.
  const std::vector<std::string>& class_symbols() const { return symbols_; }

  /// Declared root number of chi (x) S_k for the tag.
  void set_chain_root(CharId chi, int k, const AdditiveCharTag& tag, Sign value);
  std::optional<Sign> chain_root(CharId chi, int k, const AdditiveCharTag& tag) const;
  const std::map<std::tuple<CharId, int, AdditiveCharTag>, Sign>& chain_roots() const {
    return chain_roots_;
  }

  /// chi_{-1} when declared.
  std::optional<CharId> chi_minus_one() const { return chi_minus_one_; }

  const std::vector<int>& moduli() const { return moduli_; }
  const std::vector<int>& coords(CharId a) const { return coords_.at(static_cast<size_t>(a)); }

 private:
  std::vector<TwistCharacter> chars_;
  std::vector<std::vector<int>> coords_;
  std::vector<int> moduli_;
  std::vector<std::vector<CharId>> product_;
  std::vector<CharId> inverse_;
  std::vector<CharId> conj_dual_;
  std::vector<std::string> symbols_;
  std::map<std::tuple<CharId, int, AdditiveCharTag>, Sign> chain_roots_;
  std::optional<CharId> chi_minus_one_;
  CharId trivial_ = 0;
};

/// Group product of two registry characters. Throws UnknownCharacter.
TwistCharacter char_product(const CharacterRegistry& reg, const TwistCharacter& a,
                            const TwistCharacter& b);

/// +1 for the trivial character, -1 otherwise.
Sign delta_indicator(const TwistCharacter& chi);

}  // namespace thetacalc
