/**
 * @file universe.hpp
 * @brief Exhaustive enumeration of small chain-atom parameters.
 */
#pragma once

#include <functional>
#include <vector>

#include "thetacalc/llc.hpp"

namespace thetacalc {

struct UniverseBounds {
  int max_dim = 12;
  int max_k = 8;
};

/// Every chain-atom WDRep of dimension dim whose atoms have SL2 dimension <= max_k and that is
/// (conjugate) self-dual of sign b: matching atoms any multiplicity, opposite atoms in pairs.
std::vector<WDRep> enumerate_self_dual(const Environment& env, int dim, Sign b, int max_k);

/// Every valid tempered parameter of the given kind with dim(phi) <= bounds.max_dim.
/// Mp/Sp range over chi_V, O_odd over its disc, U over target parity and tower.
void for_each_parameter(const EnvPtr& env, GroupKind kind, const UniverseBounds& bounds,
                        const std::function<void(const EnhancedParameter&)>& visit);

/// Kinds meaningful for the environment's field.
std::vector<GroupKind> kinds_for(const Environment& env);

}  // namespace thetacalc
