/**
 * @file theta_lift.hpp
 * @brief First occurrence, tower selection and the lift recipes on both towers.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetacalc/llc.hpp"

namespace thetacalc {

/// Outcome of each admission condition at one candidate l.
struct ConditionTrace {
  int l = 0;
  bool chain = false;
  bool oddness = false;
  bool initial = false;
  bool alternating = false;
  bool admitted = false;
};

struct TowerReport {
  int kappa = 1;
  int l_pi = -1;
  std::vector<int> T_set;
  int m_down = 0;
  int m_up = 0;
  /// Sign of the going-down tower; absent when l_pi = -1.
  std::optional<Sign> alpha;
  std::vector<ConditionTrace> trace;
};

/// T set, l(pi), m_down and m_up (alpha left empty).
TowerReport compute_T_set(const EnhancedParameter& p);

/// alpha per the four cases; throws ConfigMismatch when l_pi = -1.
Sign select_down_tower(const EnhancedParameter& p, const TowerReport& report);

/// compute_T_set plus alpha when l_pi >= 0.
TowerReport first_occurrence(const EnhancedParameter& p);

/// GL segment chi St_k |.|^s of a standard module.
struct Segment {
  CharId chr = 0;
  int k = 1;
  int shift2 = 0;
  bool operator==(const Segment&) const = default;
};

enum class TowerRole { down, up, both };

const char* to_string(TowerRole r);

struct ThetaLiftResult {
  int m = 0;
  /// Sign of the target tower; for O sources the sign indexes the member of {pi, pi (x) det}.
  Sign tower_sign;
  TowerRole role = TowerRole::down;
  bool zero = false;
  std::optional<EnhancedParameter> parameter;
  bool tempered = true;
  std::vector<Segment> standard_module;
  /// "pi" or "pi_det" for orthogonal sources; empty otherwise.
  std::string source_member;
  std::vector<std::string> notes;
};

/// Lift on the going-down tower (tower + when l_pi = -1). For orthogonal sources the member of
/// {pi, pi (x) det} heading that tower is lifted. Throws NotOnDownTower, ParityMismatch.
ThetaLiftResult lift_down(const EnhancedParameter& p, int m);
/// Lift on the going-up tower (tower - when l_pi = -1). Throws NotOnUpTower, ParityMismatch.
ThetaLiftResult lift_up(const EnhancedParameter& p, int m);
/// Lift on the tower with the given sign; zero result below first occurrence.
ThetaLiftResult lift_on_tower(const EnhancedParameter& p, int m, Sign tower);

/// Both towers for every admissible m <= m_max, tower + first.
std::vector<ThetaLiftResult> tabulate_towers(const EnhancedParameter& p, int m_max);

/// Smallest admissible partner dimension for the context's partner parity.
int min_partner_dim(const GroupContext& ctx);
/// Dimension of the anisotropic kernel of the partner tower with the given sign.
int tower_min_dim(const GroupContext& ctx, Sign tower);

/// theta(eta)(a)/eta(a) for a slot phi^a, at l = n - m + epsilon0 (minus, going down with
/// S_{l-1}) or l = l(pi) (plus, going up with S_{l+1}).
Sign theta_eta_ratio(const EnhancedParameter& p, const WDRep& phi_a, int l, TwistSide side);
/// The ratio at m = m1 when kappa = 2.
Sign theta_eta_ratio_equal(const EnhancedParameter& p, const WDRep& phi_a);

}  // namespace thetacalc
