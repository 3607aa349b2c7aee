/**
 * @file wd_rep.hpp
 * @brief Formal Weil-Deligne representations: atoms, multisets, Clebsch-Gordan, twists, duals.
 */
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetacalc/arithmetic.hpp"

namespace thetacalc {

enum class Duality { orthogonal, symplectic, conjugate_orthogonal, conjugate_symplectic, none };

const char* to_string(Duality d);

/// A user-declared irreducible representation rho of W_E (the Weil part of a generic atom).
struct GenericAtomDef {
  std::string label;
  int weil_dim = 1;
  Duality duality = Duality::none;
  /// Name of det(rho) in the character registry.
  std::string det_char = "1";
  /// Label of rho^vee; empty means rho itself when rho is self-dual.
  std::string dual_label;
  /// Label of the conjugate dual; empty means rho itself when rho is conjugate self-dual.
  std::string conj_dual_label;
  /// Root numbers of (rho (x) twist) boxtimes S_k.
  std::map<std::tuple<int, std::string, AdditiveCharTag>, Sign> root_table;
  /// Root numbers of rho (x) rho' for another generic label rho'.
  std::map<std::pair<std::string, AdditiveCharTag>, Sign> pair_root_table;
};

/// Index into the sorted list of generic definitions.
using DefId = int;

/// Field, characters and generic atom declarations shared by a session.
class Environment {
 public:
  Environment(FieldContext field, CharacterRegistry chars, std::vector<GenericAtomDef> defs);

  static std::shared_ptr<const Environment> default_split();
  static std::shared_ptr<const Environment> default_unitary();

  const FieldContext& field() const { return field_; }
  const CharacterRegistry& chars() const { return chars_; }
  int def_count() const { return static_cast<int>(defs_.size()); }
  const GenericAtomDef& def(DefId id) const { return defs_.at(static_cast<size_t>(id)); }
  std::optional<DefId> find_def(const std::string& label) const;
  CharId def_det(DefId id) const { return def_det_.at(static_cast<size_t>(id)); }
  std::optional<DefId> def_dual(DefId id) const { return def_dual_.at(static_cast<size_t>(id)); }
  std::optional<DefId> def_conj_dual(DefId id) const {
    return def_conj_dual_.at(static_cast<size_t>(id));
  }

 private:
  FieldContext field_;
  CharacterRegistry chars_;
  std::vector<GenericAtomDef> defs_;
  std::vector<CharId> def_det_;
  std::vector<std::optional<DefId>> def_dual_;
  std::vector<std::optional<DefId>> def_conj_dual_;
};

using EnvPtr = std::shared_ptr<const Environment>;

/// chi |.|^s boxtimes S_k, or (rho (x) chi) |.|^s boxtimes S_k for a generic rho.
struct Atom {
  enum class Kind : unsigned char { chain = 0, generic = 1 };
  Kind kind = Kind::chain;
  /// Generic definition index; -1 for chain atoms.
  DefId def = -1;
  /// Character of a chain atom, or the twist of a generic atom.
  CharId chr = 0;
  /// SL2 dimension.
  int k = 1;
  /// Twice the unitary exponent s.
  int shift2 = 0;

  static Atom chain(CharId chi, int k, int shift2 = 0) {
    return {Kind::chain, -1, chi, k, shift2};
  }
  static Atom generic(DefId def, int k, CharId twist, int shift2 = 0) {
    return {Kind::generic, def, twist, k, shift2};
  }
  bool is_chain() const { return kind == Kind::chain; }
  bool is_generic() const { return kind == Kind::generic; }
  bool tempered() const { return shift2 == 0; }
  /// Same atom with shift removed.
  Atom base() const {
    Atom a = *this;
    a.shift2 = 0;
    return a;
  }

  bool operator==(const Atom&) const = default;
  /// Canonical order: tempered chain (by character, k), tempered generic (by label),
  /// then shifted atoms by (base atom, |shift|, positive first).
  bool operator<(const Atom& o) const;
};

/// Finite formal sum of atoms with positive multiplicities, kept in canonical order.
class WDRep {
 public:
  using Term = std::pair<Atom, int>;

  WDRep() = default;
  explicit WDRep(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int multiplicity(const Atom& a) const;
  void add(const Atom& a, int mult = 1);
  /// Removes mult copies; throws InvalidParameter if fewer are present.
  void remove(const Atom& a, int mult = 1);
  WDRep operator+(const WDRep& o) const;
  bool operator==(const WDRep&) const = default;

 private:
  std::vector<Term> terms_;
};

// Atom-level data.
int atom_dim(const Environment& env, const Atom& a);
/// (Conjugate) self-duality sign of a single atom; nullopt when not self-dual.
std::optional<Sign> atom_sign(const Environment& env, const Atom& a);
/// det of the atom as a registry character (the |.|^s part is dropped).
CharId atom_det(const Environment& env, const Atom& a);
/// Contragredient; for the quadratic field conj_dual_atom is the pairing that matters.
Atom dual_atom(const Environment& env, const Atom& a);
Atom conj_dual_atom(const Environment& env, const Atom& a);
/// The atom that pairs with a in a (conjugate) self-dual sum.
Atom pairing_dual_atom(const Environment& env, const Atom& a);
/// Canonical term name without multiplicity, e.g. "S2", "u.S1@1/2", "atom(rho)".
std::string atom_name(const Environment& env, const Atom& a);

/// [a+b-1, a+b-3, ..., |a-b|+1].
std::vector<int> cg_decompose(int a, int b);
/// Atomwise Clebsch-Gordan against S_r.
WDRep tensor_S(const Environment& env, const WDRep& phi, int r);
/// Multiply every atom character (chain) or twist (generic) by chi.
WDRep twist(const Environment& env, const WDRep& phi, CharId chi);
/// Multiplicity of the tempered chain atom chi S_r.
int multiplicity(const WDRep& phi, CharId chi, int r);
int dimension(const Environment& env, const WDRep& phi);
CharId det_character(const Environment& env, const WDRep& phi);
WDRep dual(const Environment& env, const WDRep& phi);
WDRep conj_dual(const Environment& env, const WDRep& phi);

/// Which (conjugate) self-duality signs the full sum admits, plus its determinant.
struct DualityClass {
  bool admits_plus = false;
  bool admits_minus = false;
  bool conjugate = false;
  CharId det = 0;

  bool admits(Sign b) const { return b.is_plus() ? admits_plus : admits_minus; }
  /// orthogonal when admissible, otherwise symplectic, otherwise none (conjugate variants for E != F).
  Duality primary() const;
};

/// Throws IncompleteDualityData when a generic atom lacks duality or dual data.
DualityClass classify_duality(const Environment& env, const WDRep& phi);

std::string to_string(const Environment& env, const WDRep& phi);

}  // namespace thetacalc
