/**
 * @file gp_prasad.hpp
 * @brief Gross-Prasad distinguished characters and Prasad's (almost) equal rank recipes.
 */
#pragma once

#include <optional>
#include <vector>

#include "thetacalc/theta_lift.hpp"

namespace thetacalc {

enum class GPCaseKind {
  orthogonal,
  hermitian,
  symplectic_metaplectic,
  skew_hermitian,
  skew_hermitian_conjugate
};

const char* to_string(GPCaseKind k);
/// Inverse of to_string; throws CaseMismatch.
GPCaseKind parse_gp_case(const std::string& text);

struct GPCase {
  GPCaseKind kind = GPCaseKind::orthogonal;
  /// Central sign of the odd orthogonal member (orthogonal case).
  std::optional<Sign> nu;
  /// Class c of psi_c (symplectic-metaplectic case).
  std::optional<CharId> c;
  /// chi with chi|F^x = omega (skew-hermitian cases).
  std::optional<CharId> chi;
};

struct GPResult {
  ComponentGroup A;
  ComponentGroup A_prime;
  EtaCharacter iota;
  EtaCharacter iota_prime;
  Sign eta_z;
  Sign eta_prime_z;
};

/// Characters of the distinguished pair. Throws CaseMismatch, MissingRootData,
/// MissingPairRootData.
GPResult gp_pair(const Environment& env, const WDRep& phi, const WDRep& phi_prime,
                 const GPCase& gp_case);

struct PrasadEqualResult {
  /// epsilon(phi (x) chi_V^{-1}, psiE_2); must equal omega(delta^{-n} disc V disc W).
  Sign criterion;
  /// Tower of the unique nonzero lift, read off theta(eta)(z).
  Sign tower_sign;
  EnhancedParameter lifted;
};

/// Unitary source with m = n. Throws ConfigMismatch.
PrasadEqualResult prasad_equal_rank(const EnhancedParameter& p);

struct PrasadAlmostResult {
  bool contains_chi_V = false;
  /// [A_theta(phi) : A_phi].
  int index = 1;
  /// One entry per nonzero lift: tower (or member) sign and lifted parameter.
  std::vector<std::pair<Sign, EnhancedParameter>> lifts;
  std::string source_member_rule;
};

/// Configuration l = n - m + epsilon0 = -1. Throws ConfigMismatch.
PrasadAlmostResult prasad_almost_equal_rank(const EnhancedParameter& p);

}  // namespace thetacalc
