#include "thetacalc/cli/oracle.hpp"

#include <algorithm>
#include <map>

#include "thetacalc/cli/emit.hpp"
#include "thetacalc/errors.hpp"
#include "thetacalc/universe.hpp"

namespace thetacalc::cli {

namespace {

constexpr int kMaxK = 8;
constexpr int kMaxL = 8;
constexpr size_t kKeep = 5;

void record(OracleReport& r, bool ok, const std::function<std::string()>& describe) {
  if (ok) {
    ++r.passed;
    return;
  }
  ++r.failed;
  if (r.failures.size() < kKeep) r.failures.push_back(describe());
}

std::vector<EnvPtr> environments() { return {Environment::default_split(), Environment::default_unitary()}; }

std::string describe(const EnhancedParameter& p) {
  return group_text(p.ctx) + " phi = " + to_string(p.ctx.environment(), p.phi) + " eta = " + eta_text(p);
}

void each_parameter(int max_dim, const std::function<void(const EnhancedParameter&)>& f) {
  for (const auto& env : environments())
    for (GroupKind k : kinds_for(*env)) for_each_parameter(env, k, {max_dim, kMaxK}, f);
}

OracleReport twisted_eps_suite(int max_dim) {
  OracleReport r{"twisted-eps", 0, 0, 0, {}};
  for (const auto& env : environments()) {
    const auto& reg = env->chars();
    for (int d = 0; d <= max_dim; ++d)
      for (Sign b : {Sign::plus(), Sign::minus()})
        for (const auto& phi : enumerate_self_dual(*env, d, b, kMaxK))
          for (CharId cv = 0; cv < reg.size(); ++cv) {
            if (!reg.is_quadratic(cv)) continue;
            for (int l = 0; l <= kMaxL; ++l)
              for (TwistSide side : {TwistSide::minus, TwistSide::plus}) {
                if (side == TwistSide::minus && l < 1) continue;
                Sign fast, slow;
                try {
                  fast = twisted_eps(*env, phi, cv, l, side);
                  slow = oracle_twisted_eps(*env, phi, cv, l, side);
                } catch (const Error& e) {
                  if (e.code() == ErrorCode::SignMismatch || e.code() == ErrorCode::OracleInapplicable) {
                    ++r.skipped;
                    continue;
                  }
                  throw;
                }
                record(r, fast == slow, [&] {
                  return "phi = " + to_string(*env, phi) + " chi_V = " + reg.name(cv) +
                         " l = " + std::to_string(l) + (side == TwistSide::plus ? " plus" : " minus");
                });
              }
          }
  }
  return r;
}

/// SL2 weights of S_a (x) S_b peeled from the top.
std::vector<int> cg_by_weights(int a, int b) {
  std::map<int, int> weights;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) ++weights[(a - 1 - 2 * i) + (b - 1 - 2 * j)];
  std::vector<int> out;
  while (!weights.empty()) {
    int top = weights.rbegin()->first;
    out.push_back(top + 1);
    for (int w = top; w >= -top; w -= 2)
      if (--weights[w] == 0) weights.erase(w);
  }
  return out;
}

OracleReport cg_suite(int max_dim) {
  OracleReport r{"cg", 0, 0, 0, {}};
  int bound = std::max(max_dim, kMaxK);
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b) {
      auto got = cg_decompose(a, b);
      auto want = cg_by_weights(a, b);
      int dim = 0;
      for (int k : got) dim += k;
      record(r, got == want && dim == a * b,
             [&] { return "S" + std::to_string(a) + " x S" + std::to_string(b); });
    }
  return r;
}

OracleReport conservation_suite(int max_dim) {
  OracleReport r{"conservation", 0, 0, 0, {}};
  each_parameter(max_dim, [&](const EnhancedParameter& p) {
    auto rep = first_occurrence(p);
    record(r, rep.m_down + rep.m_up == 2 * p.ctx.n + 2 + 2 * p.ctx.epsilon0, [&] {
      return describe(p) + ": m_down + m_up = " + std::to_string(rep.m_down + rep.m_up);
    });
  });
  return r;
}

bool same(const EnhancedParameter& a, const EnhancedParameter& b) {
  return a.phi == b.phi && a.eta == b.eta && a.nu == b.nu;
}

OracleReport roundtrip_suite(int max_dim) {
  OracleReport r{"roundtrip", 0, 0, 0, {}};
  each_parameter(max_dim, [&](const EnhancedParameter& p) {
    const auto& reg = p.ctx.chars();
    record(r, same(contragredient(contragredient(p)), p), [&] { return "contragredient twice: " + describe(p); });
    auto back = parameter_from_json(p.ctx.env, parameter_to_json(p));
    record(r, same(back, p) && back.ctx.tower_sign == p.ctx.tower_sign,
           [&] { return "JSON: " + describe(p); });
    if (p.ctx.kind == GroupKind::Mp)
      for (CharId c = 0; c < reg.size(); ++c)
        record(r, same(o_mp_transfer(mp_o_transfer(p, c), c), p),
               [&] { return "Mp-O transfer with c = " + reg.name(c) + ": " + describe(p); });
  });
  return r;
}

OracleReport validity_suite(int max_dim) {
  OracleReport r{"validity", 0, 0, 0, {}};
  each_parameter(max_dim, [&](const EnhancedParameter& p) {
    auto rep = first_occurrence(p);
    for (const auto& l : tabulate_towers(p, rep.m_up + 4)) {
      if (l.zero) continue;
      auto v = validate_parameter(*l.parameter);
      record(r, v.empty(), [&] {
        return describe(p) + " at m = " + std::to_string(l.m) + ": " + v.front().message;
      });
    }
  });
  return r;
}

using Suite = OracleReport (*)(int);

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> s = {
      {"twisted-eps", twisted_eps_suite},
      {"cg", cg_suite},
      {"conservation", conservation_suite},
      {"roundtrip", roundtrip_suite},
      {"validity", validity_suite}};
  return s;
}

}  // namespace

const std::vector<std::string>& oracle_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : suites()) out.push_back(n);
    return out;
  }();
  return names;
}

std::vector<OracleReport> run_oracles(const std::string& check, int max_dim) {
  std::vector<OracleReport> out;
  for (const auto& [name, suite] : suites())
    if (check == "all" || check == name) out.push_back(suite(max_dim));
  if (out.empty()) throw Error(ErrorCode::ConfigMismatch, "unknown oracle check '" + check + "'");
  return out;
}

}  // namespace thetacalc::cli
