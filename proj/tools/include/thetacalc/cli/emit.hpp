/**
 * @file emit.hpp
 * @brief JSON and fixed-width table output for parameters, first occurrence and tower tables.
 */
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "thetacalc/gp_prasad.hpp"
#include "thetacalc/theta_lift.hpp"

namespace thetacalc::cli {

/// Whittaker normalization the emitted eta values refer to.
extern const char* const kNormalization;

/// The lifts of one source parameter together with its first-occurrence data.
struct Computation {
  EnhancedParameter source;
  TowerReport report;
  std::vector<ThetaLiftResult> lifts;
};

nlohmann::json phi_to_json(const Environment& env, const WDRep& phi);
nlohmann::json parameter_to_json(const EnhancedParameter& p);
nlohmann::json report_to_json(const TowerReport& r);
nlohmann::json lift_to_json(const ThetaLiftResult& r);
nlohmann::json computation_to_json(const Computation& c);

/// Top-level document {"schema": 1, "normalization": ..., "results": [...]}.
nlohmann::json document(const std::vector<nlohmann::json>& results);

/// Inverse of parameter_to_json for the given environment. Throws ParseError.
EnhancedParameter parameter_from_json(const EnvPtr& env, const nlohmann::json& j);
WDRep phi_from_json(const Environment& env, const nlohmann::json& j);

/// "{S2:+, S4:-}" over the component-group basis.
std::string eta_text(const EnhancedParameter& p);
/// "Mp(6)", "Oodd(5, disc=u)", "U(3, parity=odd, tower=+)".
std::string group_text(const GroupContext& ctx);

/// Header lines plus one aligned row per (tower, m).
std::string computation_table(const Computation& c);
std::string report_table(const EnhancedParameter& p, const TowerReport& r);

}  // namespace thetacalc::cli
