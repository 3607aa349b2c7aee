/**
 * @file local_factors.hpp
 * @brief Root numbers at s = 1/2 on the closed-form universe plus declared tables.
 */
#pragma once

#include <vector>

#include "thetacalc/wd_rep.hpp"

namespace thetacalc {

/// epsilon(S_a (x) S_b) = (-1)^min(a,b); throws ParityError when a = b mod 2.
Sign eps_S_tensor(int a, int b);

/// epsilon(chi (x) S_{2k}) = -delta(chi = 1) chi(-1)^k for quadratic chi.
Sign eps_quad_even(const Environment& env, CharId chi, int k);

struct RootNumberQuery {
  WDRep rep;
  CharId twist = 0;
  AdditiveCharTag add_char;
};

/// Multiplicative over atoms. Closed forms: chi S_{2k} (quadratic chi) and 1 S_k (k odd);
/// otherwise the declared tables; paired contributions phi0 + dual(phi0) give det(phi0)(-1)
/// for E = F and +1 for E != F. Throws MissingRootData naming the entry.
Sign root_number(const Environment& env, const RootNumberQuery& q);
Sign root_number(const Environment& env, const WDRep& rep, const AdditiveCharTag& tag);
/// Uses default_tag(field).
Sign root_number(const Environment& env, const WDRep& rep);

/// epsilon(phi, psi'_c) / epsilon(phi, psi') = det(phi)(c). Throws UnknownCharacterValue.
Sign eps_scale(const Environment& env, const WDRep& phi, const std::string& c_class);

/// (-1)^{m_phi(S_l)}; throws SignMismatch unless phi admits sign (-1)^{l-1}.
Sign alpha_l(const Environment& env, const WDRep& phi, int l);
/// The defining ratio epsilon(phi S_{l+1}) / epsilon(phi S_{l-1}) [x det(phi)(-1) when E = F].
Sign alpha_l_by_ratio(const Environment& env, const WDRep& phi, int l);

enum class TwistSide { minus, plus };

/// epsilon(phi chi_V^{-1} (x) S_{l-1}) (minus) or S_{l+1} (plus) via multiplicity counts.
/// Requires l >= 1 (minus) or l >= 0 (plus). Throws SignMismatch, MissingRootData.
Sign twisted_eps(const Environment& env, const WDRep& phi, CharId chi_V, int l, TwistSide side);

/// Brute force: Clebsch-Gordan expansion and closed-form product over every piece.
/// Throws OracleInapplicable when a piece is not an even-dimensional quadratic chain atom.
Sign oracle_twisted_eps(const Environment& env, const WDRep& phi, CharId chi_V, int l,
                        TwistSide side);

/// Materialized tensor product; generic (x) generic pairs are not representable.
/// Throws MissingPairRootData for generic (x) generic.
WDRep tensor(const Environment& env, const WDRep& a, const WDRep& b);

/// epsilon(A (x) B (x) twist); generic (x) generic pairs use pair_root_table.
Sign epsilon_of_tensor(const Environment& env, const WDRep& a, const WDRep& b, CharId twist,
                       const AdditiveCharTag& tag);

/// Exact rational number p/q with q > 0.
struct Rational {
  long long num = 0;
  long long den = 1;
};

/// Checks eps(s,phi)^l eps(-s,phi^v,psi^-1)^l = eps(s-(l-1)/2,phi) eps(-s-(l-1)/2,phi^v,psi^-1)
/// in the monomial model eps(s, chi, psi) = u(chi) q^{a(chi)(1/2 - s)} for Weil atoms
/// (k = 1) with the epsilon constants tied by the functional equation.
/// Throws OracleInapplicable for atoms with k > 1.
bool gamma_identity_check(const Environment& env, const WDRep& phi, int l,
                          const std::vector<Rational>& s_samples);

}  // namespace thetacalc
