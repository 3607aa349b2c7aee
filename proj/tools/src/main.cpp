#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "thetacalc/cli/emit.hpp"
#include "thetacalc/cli/expr.hpp"
#include "thetacalc/cli/oracle.hpp"
#include "thetacalc/cli/session.hpp"
#include "thetacalc/errors.hpp"

namespace {

using namespace thetacalc;
using namespace thetacalc::cli;
using nlohmann::json;

struct Options {
  std::string input;
  std::string format = "table";
  std::optional<int> max_m;
  std::string expr;
  std::string registry;
  std::string field = "split";
  std::string gp_case;
  std::string phi;
  std::string phi_prime;
  std::string nu;
  std::string c;
  std::string chi;
  std::string rank;
  std::string check = "all";
  int max_dim = 8;
};

std::string sign_text(Sign s) { return std::string(1, s.symbol()); }

int run_compute(const Options& o) {
  Session s = parse_session(read_file(o.input));
  std::vector<json> results;
  std::string table;
  for (const auto& p : s.params) {
    Computation c{p, first_occurrence(p), {}};
    int max_m = o.max_m ? *o.max_m : c.report.m_up + 2;
    c.lifts = tabulate_towers(p, max_m);
    if (o.format == "json") results.push_back(computation_to_json(c));
    else table += (table.empty() ? "" : "\n") + computation_table(c);
  }
  if (o.format == "json") std::cout << document(results).dump(2) << "\n";
  else std::cout << table;
  return 0;
}

int run_first_occurrence(const Options& o) {
  Session s = parse_session(read_file(o.input));
  std::vector<json> results;
  for (const auto& p : s.params) {
    TowerReport r = first_occurrence(p);
    if (o.format == "json")
      results.push_back({{"source", parameter_to_json(p)}, {"first_occurrence", report_to_json(r)}});
    else
      std::cout << report_table(p, r);
  }
  if (o.format == "json") std::cout << document(results).dump(2) << "\n";
  return 0;
}

EnvPtr option_env(const Options& o) {
  bool unitary = o.field == "quadratic";
  if (!o.registry.empty()) return parse_environment(read_file(o.registry), unitary);
  return unitary ? Environment::default_unitary() : Environment::default_split();
}

int run_epsilon(const Options& o) {
  EnvPtr env = option_env(o);
  std::cout << evaluate_epsilon(*env, o.expr).value() << "\n";
  return 0;
}

json iota_json(const Environment& env, const ComponentGroup& A, const EtaCharacter& e) {
  json j = json::object();
  for (int i = 0; i < A.rank(); ++i) j[atom_name(env, A.basis[static_cast<size_t>(i)])] = e.at(i).value();
  return j;
}

std::string iota_text(const Environment& env, const ComponentGroup& A, const EtaCharacter& e) {
  std::string s = "{";
  for (int i = 0; i < A.rank(); ++i)
    s += (i ? ", " : "") + atom_name(env, A.basis[static_cast<size_t>(i)]) + ":" + sign_text(e.at(i));
  return s + "}";
}

int run_gp(const Options& o) {
  EnvPtr env = option_env(o);
  GPCase gc;
  gc.kind = parse_gp_case(o.gp_case);
  if (!o.nu.empty()) gc.nu = o.nu == "-" ? Sign::minus() : Sign::plus();
  if (!o.c.empty()) gc.c = env->chars().id(o.c);
  if (!o.chi.empty()) gc.chi = env->chars().id(o.chi);
  WDRep phi = parse_phi(*env, o.phi);
  WDRep phi_prime = parse_phi(*env, o.phi_prime);
  GPResult r = gp_pair(*env, phi, phi_prime, gc);
  if (o.format == "json") {
    json j = {{"case", to_string(gc.kind)},
              {"phi", phi_to_json(*env, phi)},
              {"phi_prime", phi_to_json(*env, phi_prime)},
              {"iota", iota_json(*env, r.A, r.iota)},
              {"iota_prime", iota_json(*env, r.A_prime, r.iota_prime)},
              {"eta_z", r.eta_z.value()},
              {"eta_prime_z", r.eta_prime_z.value()}};
    std::cout << document({j}).dump(2) << "\n";
  } else {
    std::cout << "# case     " << to_string(gc.kind) << "\n"
              << "# phi      " << to_string(*env, phi) << "\n"
              << "# phi'     " << to_string(*env, phi_prime) << "\n"
              << "iota       " << iota_text(*env, r.A, r.iota) << "   at z: " << sign_text(r.eta_z) << "\n"
              << "iota'      " << iota_text(*env, r.A_prime, r.iota_prime)
              << "   at z: " << sign_text(r.eta_prime_z) << "\n";
  }
  return 0;
}

int run_prasad(const Options& o) {
  Session s = parse_session(read_file(o.input));
  std::vector<json> results;
  for (const auto& p : s.params) {
    if (o.rank == "equal") {
      auto r = prasad_equal_rank(p);
      if (o.format == "json") {
        results.push_back({{"source", parameter_to_json(p)},
                           {"criterion", r.criterion.value()},
                           {"tower", sign_text(r.tower_sign)},
                           {"lifted", parameter_to_json(r.lifted)}});
      } else {
        std::cout << report_table(p, first_occurrence(p))
                  << "criterion  eps(phi chi_V^-1, psiE_2) = " << sign_text(r.criterion) << "\n"
                  << "lift       " << group_text(r.lifted.ctx) << "  " << to_string(*s.env, r.lifted.phi)
                  << "  " << eta_text(r.lifted) << "\n";
      }
    } else {
      auto r = prasad_almost_equal_rank(p);
      if (o.format == "json") {
        json lifts = json::array();
        for (const auto& [sg, q] : r.lifts)
          lifts.push_back({{"sign", sign_text(sg)}, {"parameter", parameter_to_json(q)}});
        results.push_back({{"source", parameter_to_json(p)},
                           {"contains_chi_V", r.contains_chi_V},
                           {"index", r.index},
                           {"rule", r.source_member_rule},
                           {"lifts", std::move(lifts)}});
      } else {
        std::cout << report_table(p, first_occurrence(p))
                  << "contains chi_V  " << (r.contains_chi_V ? "yes" : "no") << "   index " << r.index
                  << "\nrule            " << r.source_member_rule << "\n";
        for (const auto& [sg, q] : r.lifts)
          std::cout << "lift " << sign_text(sg) << "          " << group_text(q.ctx) << "  "
                    << to_string(*s.env, q.phi) << "  " << eta_text(q) << "\n";
      }
    }
  }
  if (o.format == "json") std::cout << document(results).dump(2) << "\n";
  return 0;
}

int run_oracle(const Options& o) {
  bool ok = true;
  for (const auto& r : run_oracles(o.check, o.max_dim)) {
    std::cout << r.name << ": " << r.passed << " passed, " << r.failed << " failed, " << r.skipped
              << " skipped\n";
    for (const auto& f : r.failures) std::cout << "  FAIL " << f << "\n";
    ok = ok && r.ok();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic local theta correspondence calculator"};
  app.require_subcommand(1);
  Options o;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  };

  auto* compute = app.add_subcommand("compute", "Tabulate both towers");
  compute->add_option("--input", o.input, "Session file")->required();
  compute->add_option("--max-m", o.max_m, "Largest partner dimension (default m_up + 2)");
  add_format(compute);

  auto* first = app.add_subcommand("first-occurrence", "T set, l(pi), m_down, m_up and alpha");
  first->add_option("--input", o.input, "Session file")->required();
  add_format(first);

  auto* eps = app.add_subcommand("epsilon", "Evaluate a root-number expression");
  eps->add_option("expr", o.expr, "For example \"eps(S4 x S3)\"")->required();
  eps->add_option("--registry", o.registry, "File with a registry block");
  eps->add_option("--field", o.field, "Default field")->check(CLI::IsMember({"split", "quadratic"}));

  auto* gp = app.add_subcommand("gp", "Characters of the distinguished pair");
  gp->add_option("--case", o.gp_case, "orthogonal | hermitian | symplectic-metaplectic | skew-hermitian | "
                                      "skew-hermitian-conjugate")
      ->required();
  gp->add_option("--phi", o.phi, "phi")->required();
  gp->add_option("--phi-prime", o.phi_prime, "phi'")->required();
  gp->add_option("--nu", o.nu, "Central sign (orthogonal)")->check(CLI::IsMember({"+", "-"}));
  gp->add_option("--c", o.c, "Character chi_c (symplectic-metaplectic)");
  gp->add_option("--chi", o.chi, "Character chi (skew-hermitian)");
  gp->add_option("--registry", o.registry, "File with a registry block");
  gp->add_option("--field", o.field, "Default field")->check(CLI::IsMember({"split", "quadratic"}));
  add_format(gp);

  auto* prasad = app.add_subcommand("prasad", "Equal and almost equal rank recipes");
  prasad->add_option("--rank", o.rank, "equal | almost")->required()->check(CLI::IsMember({"equal", "almost"}));
  prasad->add_option("--input", o.input, "Session file")->required();
  add_format(prasad);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive cross-validation suites");
  std::vector<std::string> checks = oracle_names();
  checks.push_back("all");
  oracle->add_option("--check", o.check, "Suite name or all")->check(CLI::IsMember(checks));
  oracle->add_option("--max-dim", o.max_dim, "Largest dim(phi)")->check(CLI::Range(0, 16));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*compute) return run_compute(o);
    if (*first) return run_first_occurrence(o);
    if (*eps) return run_epsilon(o);
    if (*gp) return run_gp(o);
    if (*prasad) return run_prasad(o);
    if (*oracle) return run_oracle(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
