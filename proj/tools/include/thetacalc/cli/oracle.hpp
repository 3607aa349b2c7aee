/**
 * @file oracle.hpp
 * @brief Exhaustive cross-validation suites over the enumerated universe.
 */
#pragma once

#include <string>
#include <vector>

namespace thetacalc::cli {

struct OracleReport {
  std::string name;
  long passed = 0;
  long failed = 0;
  /// Cases outside the shared domain of the two computations.
  long skipped = 0;
  /// Up to a few failure descriptions.
  std::vector<std::string> failures;

  bool ok() const { return failed == 0; }
};

/// Names accepted by run_oracles besides "all".
const std::vector<std::string>& oracle_names();

/// Runs one named suite or "all" over parameters of dimension <= max_dim. Throws ConfigMismatch
/// for an unknown name.
std::vector<OracleReport> run_oracles(const std::string& check, int max_dim);

}  // namespace thetacalc::cli
