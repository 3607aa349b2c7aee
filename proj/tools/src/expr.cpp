#include "thetacalc/cli/expr.hpp"

#include <regex>

#include "thetacalc/cli/session.hpp"
#include "thetacalc/errors.hpp"

namespace thetacalc::cli {

Sign evaluate_epsilon(const Environment& env, const std::string& text) {
  static const std::regex wrapped(R"(^\s*eps\s*\((.*)\)\s*$)");
  std::smatch m;
  std::string body = std::regex_match(text, m, wrapped) ? m[1].str() : text;
  AdditiveCharTag tag = default_tag(env.field());
  auto comma = body.rfind(',');
  if (comma != std::string::npos) {
    std::string t = body.substr(comma + 1);
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
    try {
      tag = AdditiveCharTag::parse(t);
    } catch (const Error& e) {
      throw ParseError(1, static_cast<int>(comma) + 2, e.message());
    }
    if (!tag.valid_for(env.field()))
      throw ParseError(1, static_cast<int>(comma) + 2, "tag " + t + " does not fit the field");
    body = body.substr(0, comma);
  }
  std::vector<WDRep> factors;
  static const std::regex times(R"(\s+x\s+)");
  for (std::sregex_token_iterator it(body.begin(), body.end(), times, -1), end; it != end; ++it)
    factors.push_back(parse_phi(env, it->str()));
  if (factors.empty()) throw ParseError(1, 1, "empty root-number expression");
  if (factors.size() == 1) return root_number(env, factors[0], tag);
  WDRep left = factors[0];
  for (size_t i = 1; i + 1 < factors.size(); ++i) left = tensor(env, left, factors[i]);
  return epsilon_of_tensor(env, left, factors.back(), env.chars().trivial(), tag);
}

}  // namespace thetacalc::cli
