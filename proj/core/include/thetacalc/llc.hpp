/**
 * @file llc.hpp
 * @brief Group contexts, component groups, enhanced parameters and their validation/transfers.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetacalc/local_factors.hpp"

namespace thetacalc {

enum class GroupKind { Sp, O_odd, O_even, Mp, U };

const char* to_string(GroupKind k);

/// A group G(W_n) together with the partner family V it is paired with.
struct GroupContext {
  GroupKind kind = GroupKind::Mp;
  int n = 0;
  EnvPtr env;
  /// W_n is -epsilon-Hermitian, V is epsilon-Hermitian.
  Sign epsilon;
  int epsilon0 = 1;
  /// Character attached to the partner family V (disc of V when V is orthogonal).
  CharId chi_V = 0;
  /// Character attached to W_n itself (disc of W_n when W_n is orthogonal).
  CharId chi_W = 0;
  /// Parity of dim V.
  int partner_parity = 1;
  /// Tower of W_n itself, when W_n has a companion (O_odd, O_even, U).
  std::optional<Sign> tower_sign;

  const Environment& environment() const { return *env; }
  const FieldContext& field() const { return env->field(); }
  const CharacterRegistry& chars() const { return env->chars(); }

  /// Expected dim(phi): O_odd n-1, Sp n+1, otherwise n.
  int parameter_dim() const;
  /// Required (conjugate) self-duality sign of phi.
  Sign parameter_sign() const;
  /// kappa for a partner of dimension m (only the parity of m matters).
  int kappa() const;
  /// Whether partner spaces come in two towers distinguished by a sign.
  bool partner_has_towers() const;
  bool has_towers() const;
  /// Context of the partner group H(V_m), paired back with W_n.
  GroupContext partner(int m, std::optional<Sign> tower) const;
};

/// Builds a source context with all derived fields. For U, epsilon defaults to +1.
/// chi_V defaults to the trivial character for Mp/Sp; chi_W to the disc for O kinds.
GroupContext make_context(EnvPtr env, GroupKind kind, int n, CharId chi_V, CharId chi_W,
                          int partner_parity, std::optional<Sign> tower,
                          Sign unitary_epsilon = Sign::plus());

/// Element of A_phi as a bit mask over the basis.
using Element = std::uint64_t;

struct ComponentGroup {
  std::vector<Atom> basis;
  std::vector<int> mult;
  std::vector<int> dims;

  int rank() const { return static_cast<int>(basis.size()); }
  /// Slot index of a basis atom, or -1.
  int index_of(const Atom& a) const;
  Element z() const;
  /// det(a) = sum of dim(phi_i) over slots in a, mod 2.
  int det(Element a) const;
  static Element slot(int i) { return Element{1} << i; }
};

/// Basis = distinct tempered atoms of the context's sign, in canonical order.
ComponentGroup component_group(const WDRep& phi, const GroupContext& ctx);

struct EtaCharacter {
  std::vector<Sign> signs;

  Sign eval(Element a) const;
  Sign at(int slot) const { return signs.at(static_cast<size_t>(slot)); }
  bool operator==(const EtaCharacter&) const = default;
};

struct EnhancedParameter {
  GroupContext ctx;
  WDRep phi;
  EtaCharacter eta;
  /// Central sign; present iff ctx.kind == O_odd.
  std::optional<Sign> nu;
  bool tempered = true;

  ComponentGroup group() const { return component_group(phi, ctx); }
  Sign eta_z() const;
  /// eta on the slot of a tempered atom; throws InvalidParameter when not a basis atom.
  Sign eta_of(const Atom& a) const;
};

struct Violation {
  std::string code;
  std::string message;
};

/// Dimension, duality sign, determinant, Sp image, tower coherence, temperedness. Never throws.
std::vector<Violation> validate_parameter(const EnhancedParameter& p);

/// Throws InvalidParameter carrying the joined violation messages.
void require_valid(const EnhancedParameter& p);

/// phi^a for a single basis slot.
WDRep phi_of_slot(const ComponentGroup& A, int slot);

/// phi -> phi^vee with eta * eta_0; Mp uses phi (x) chi_{-1} with the epsilon ratio.
EnhancedParameter contragredient(const EnhancedParameter& p);

/// The registry's chi_{-1}; throws UnknownCharacter when undeclared.
CharId chi_minus_one(const CharacterRegistry& chars);

/// Mp(W_n) -> O(V_{n+1}) with disc c: phi (x) chi_c, eta times the displayed ratio.
/// nu is set by odd_orthogonal_central_sign with chi_V = chi_c.
EnhancedParameter mp_o_transfer(const EnhancedParameter& p, CharId c);
/// Inverse of mp_o_transfer for the same c.
EnhancedParameter o_mp_transfer(const EnhancedParameter& sigma, CharId c);

/// nu = eta(z) eps(phi) chi_V(-1)^{n/2} for an Mp source.
Sign odd_orthogonal_central_sign(const EnhancedParameter& p);

/// True when (phi, eta, nu) itself heads the going-down tower: nu = eta(z) eps(phi).
bool down_tower_of_odd_orthogonal(const EnhancedParameter& p);

/// pi (x) det: O_odd flips nu, O_even multiplies eta by (-1)^{det}.
EnhancedParameter det_twist(const EnhancedParameter& p);

/// Whether pi and pi (x) det differ (O_even: phi has an odd-dimensional orthogonal summand).
bool det_twist_distinguishable(const EnhancedParameter& p);

}  // namespace thetacalc
