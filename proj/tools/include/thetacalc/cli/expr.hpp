/**
 * @file expr.hpp
 * @brief Root-number expressions: eps(<phi> [x <phi>]... [, <tag>]).
 */
#pragma once

#include <string>

#include "thetacalc/local_factors.hpp"

namespace thetacalc::cli {

/// Evaluates "eps(S4 x S3)", "eps(u.S2, psiE_2)" or a bare phi expression. Throws ParseError
/// for bad syntax and the root-number errors otherwise.
Sign evaluate_epsilon(const Environment& env, const std::string& text);

}  // namespace thetacalc::cli
