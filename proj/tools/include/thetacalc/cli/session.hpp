/**
 * @file session.hpp
 * @brief Line-oriented parameter DSL: optional registry block, group line, phi, eta, nu.
 */
#pragma once

#include <string>
#include <vector>

#include "thetacalc/llc.hpp"

namespace thetacalc::cli {

struct Session {
  EnvPtr env;
  std::vector<EnhancedParameter> params;
};

/// Parses a session file. Throws ParseError with line and column; validator violations are
/// reported as ParseError at the group line with the messages verbatim.
Session parse_session(const std::string& text);

/// Environment from the registry block of a file (group lines are ignored); the default split or
/// unitary environment when the file has no registry block.
EnvPtr parse_environment(const std::string& text, bool unitary_default);

/// phi expression: term (+ term)*, term := [mult*][char.]S<k>[@s] | [mult*][char.]atom(label)[.S<k>][@s].
/// Throws ParseError with column relative to the expression.
WDRep parse_phi(const Environment& env, const std::string& text);

/// Exponent text ("1/2", "-3/2", "2") to twice its value.
int parse_shift2(const std::string& text);
/// Twice an exponent to text: "0", "1/2", "-1", ...
std::string shift_text(int shift2);

/// Reads a whole file; throws Error(ParseError) when unreadable.
std::string read_file(const std::string& path);

}  // namespace thetacalc::cli
