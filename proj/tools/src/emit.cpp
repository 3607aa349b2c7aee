#include "thetacalc/cli/emit.hpp"

#include <algorithm>
#include <sstream>

#include "thetacalc/cli/session.hpp"
#include "thetacalc/errors.hpp"

namespace thetacalc::cli {

using nlohmann::json;

const char* const kNormalization =
    "eta is normalized against the Whittaker datum fixed by psi (E = F) or psi^E_2 (E != F); "
    "root numbers are at s = 1/2";

namespace {

std::string sign_text(Sign s) { return std::string(1, s.symbol()); }

Sign sign_from(const json& j, const char* what) {
  if (j.is_number_integer()) return Sign::from_int(j.get<int>());
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "+") return Sign::plus();
    if (s == "-") return Sign::minus();
  }
  throw Error(ErrorCode::ParseError, std::string("bad sign for ") + what + ": " + j.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::ParseError, std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

GroupKind kind_from(const std::string& s) {
  for (GroupKind k : {GroupKind::Sp, GroupKind::O_odd, GroupKind::O_even, GroupKind::Mp, GroupKind::U})
    if (s == to_string(k)) return k;
  throw Error(ErrorCode::ParseError, "unknown group '" + s + "'");
}

CharId char_from(const Environment& env, const json& j) {
  auto name = j.get<std::string>();
  auto id = env.chars().find(name);
  if (!id) throw Error(ErrorCode::ParseError, "unknown character '" + name + "'");
  return *id;
}

json segment_json(const Environment& env, const Segment& s) {
  return {{"character", env.chars().name(s.chr)}, {"k", s.k}, {"shift", shift_text(s.shift2)}};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

json phi_to_json(const Environment& env, const WDRep& phi) {
  json out = json::array();
  for (const auto& [a, m] : phi.terms()) {
    json t = {{"atom", atom_name(env, a)},
              {"character", env.chars().name(a.chr)},
              {"k", a.k},
              {"shift", shift_text(a.shift2)},
              {"multiplicity", m}};
    if (a.is_generic()) t["generic"] = env.def(a.def).label;
    out.push_back(std::move(t));
  }
  return out;
}

WDRep phi_from_json(const Environment& env, const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "phi must be a JSON array");
  WDRep out;
  for (const auto& t : j) {
    CharId c = char_from(env, field(t, "character"));
    int k = field(t, "k").get<int>();
    int s2 = parse_shift2(field(t, "shift").get<std::string>());
    int m = field(t, "multiplicity").get<int>();
    if (k < 1 || m < 1) throw Error(ErrorCode::ParseError, "k and multiplicity must be positive");
    if (t.contains("generic")) {
      auto label = t.at("generic").get<std::string>();
      auto def = env.find_def(label);
      if (!def) throw Error(ErrorCode::ParseError, "unknown generic atom '" + label + "'");
      out.add(Atom::generic(*def, k, c, s2), m);
    } else {
      out.add(Atom::chain(c, k, s2), m);
    }
  }
  return out;
}

json parameter_to_json(const EnhancedParameter& p) {
  const auto& env = p.ctx.environment();
  const auto& reg = env.chars();
  json j;
  j["group"] = to_string(p.ctx.kind);
  j["n"] = p.ctx.n;
  j["field"] = env.field().is_split() ? "split" : "quadratic";
  j["chi_V"] = reg.name(p.ctx.chi_V);
  j["chi_W"] = reg.name(p.ctx.chi_W);
  j["partner_parity"] = p.ctx.partner_parity;
  j["epsilon"] = p.ctx.epsilon.value();
  j["space_tower"] = p.ctx.tower_sign ? json(sign_text(*p.ctx.tower_sign)) : json(nullptr);
  j["phi"] = phi_to_json(env, p.phi);
  json eta = json::object();
  ComponentGroup A = p.group();
  for (int i = 0; i < A.rank(); ++i) eta[atom_name(env, A.basis[static_cast<size_t>(i)])] = p.eta.at(i).value();
  j["eta"] = std::move(eta);
  j["nu"] = p.nu ? json(p.nu->value()) : json(nullptr);
  j["tempered"] = p.tempered;
  return j;
}

EnhancedParameter parameter_from_json(const EnvPtr& env, const json& j) {
  EnhancedParameter p;
  GroupKind kind = kind_from(field(j, "group").get<std::string>());
  int n = field(j, "n").get<int>();
  CharId cv = char_from(*env, field(j, "chi_V"));
  CharId cw = char_from(*env, field(j, "chi_W"));
  int parity = field(j, "partner_parity").get<int>();
  Sign eps = sign_from(field(j, "epsilon"), "epsilon");
  std::optional<Sign> tower;
  if (!field(j, "space_tower").is_null()) tower = sign_from(j.at("space_tower"), "space_tower");
  try {
    p.ctx = make_context(env, kind, n, cv, cw, parity, tower, eps);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.message());
  }
  p.phi = phi_from_json(*env, field(j, "phi"));
  ComponentGroup A = p.group();
  const json& eta = field(j, "eta");
  if (!eta.is_object() || static_cast<int>(eta.size()) != A.rank())
    throw Error(ErrorCode::ParseError, "eta must assign every basis slot exactly once");
  for (const auto& b : A.basis) {
    auto name = atom_name(*env, b);
    if (!eta.contains(name)) throw Error(ErrorCode::ParseError, "eta has no value for basis slot " + name);
    p.eta.signs.push_back(sign_from(eta.at(name), "eta"));
  }
  if (!field(j, "nu").is_null()) p.nu = sign_from(j.at("nu"), "nu");
  p.tempered = field(j, "tempered").get<bool>();
  return p;
}

json report_to_json(const TowerReport& r) {
  json trace = json::array();
  for (const auto& t : r.trace)
    trace.push_back({{"l", t.l},
                     {"chain", t.chain},
                     {"oddness", t.oddness},
                     {"initial", t.initial},
                     {"alternating", t.alternating},
                     {"admitted", t.admitted}});
  return {{"kappa", r.kappa},
          {"l_pi", r.l_pi},
          {"T_set", r.T_set},
          {"m_down", r.m_down},
          {"m_up", r.m_up},
          {"alpha", r.alpha ? json(sign_text(*r.alpha)) : json(nullptr)},
          {"trace", std::move(trace)}};
}

json lift_to_json(const ThetaLiftResult& r) {
  json j;
  j["m"] = r.m;
  j["tower"] = sign_text(r.tower_sign);
  j["role"] = to_string(r.role);
  j["zero"] = r.zero;
  if (!r.source_member.empty()) j["source_member"] = r.source_member;
  j["tempered"] = r.tempered;
  if (r.parameter) {
    json pj = parameter_to_json(*r.parameter);
    j["group"] = group_text(r.parameter->ctx);
    j["phi"] = pj["phi"];
    j["eta"] = pj["eta"];
    j["nu"] = pj["nu"];
    json sm = json::array();
    for (const auto& s : r.standard_module) sm.push_back(segment_json(r.parameter->ctx.environment(), s));
    j["standard_module"] = std::move(sm);
    j["parameter"] = std::move(pj);
  } else {
    j["phi"] = nullptr;
    j["eta"] = nullptr;
    j["nu"] = nullptr;
    j["standard_module"] = json::array();
  }
  j["notes"] = r.notes;
  return j;
}

json computation_to_json(const Computation& c) {
  json lifts = json::array();
  for (const auto& l : c.lifts) lifts.push_back(lift_to_json(l));
  return {{"source", parameter_to_json(c.source)},
          {"first_occurrence", report_to_json(c.report)},
          {"lifts", std::move(lifts)}};
}

json document(const std::vector<json>& results) {
  return {{"schema", 1}, {"normalization", kNormalization}, {"results", results}};
}

std::string eta_text(const EnhancedParameter& p) {
  const auto& env = p.ctx.environment();
  ComponentGroup A = p.group();
  std::vector<std::string> parts;
  for (int i = 0; i < A.rank(); ++i)
    parts.push_back(atom_name(env, A.basis[static_cast<size_t>(i)]) + ":" + sign_text(p.eta.at(i)));
  return "{" + join(parts, ", ") + "}";
}

std::string group_text(const GroupContext& ctx) {
  const auto& reg = ctx.chars();
  std::string s = std::string(to_string(ctx.kind)) + "(" + std::to_string(ctx.n);
  switch (ctx.kind) {
    case GroupKind::O_odd:
    case GroupKind::O_even: s += ", disc=" + reg.name(ctx.chi_W); break;
    case GroupKind::U:
      s += std::string(", parity=") + (ctx.partner_parity == 1 ? "odd" : "even");
      if (ctx.epsilon.is_minus()) s += ", epsilon=-";
      break;
    default: break;
  }
  if (ctx.tower_sign) s += ", tower=" + sign_text(*ctx.tower_sign);
  return s + ")";
}

std::string report_table(const EnhancedParameter& p, const TowerReport& r) {
  const auto& env = p.ctx.environment();
  const auto& reg = env.chars();
  std::ostringstream os;
  std::vector<std::string> t;
  for (int x : r.T_set) t.push_back(std::to_string(x));
  os << "# group   " << group_text(p.ctx) << "\n";
  os << "# chi_V   " << reg.name(p.ctx.chi_V) << "   chi_W " << reg.name(p.ctx.chi_W) << "\n";
  os << "# phi     " << to_string(env, p.phi) << "\n";
  os << "# eta     " << eta_text(p) << "\n";
  if (p.nu) os << "# nu      " << sign_text(*p.nu) << "\n";
  os << "# T       {" << join(t, ", ") << "}   l(pi) = " << r.l_pi << "   kappa = " << r.kappa << "\n";
  os << "# m_down  " << r.m_down << "   m_up " << r.m_up << "   alpha "
     << (r.alpha ? sign_text(*r.alpha) : std::string("none")) << "\n";
  return os.str();
}

std::string computation_table(const Computation& c) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"tower", "role", "m", "theta(phi)", "theta(eta)", "nu", "tempered", "member"});
  for (const auto& l : c.lifts) {
    std::vector<std::string> row{sign_text(l.tower_sign), to_string(l.role), std::to_string(l.m)};
    if (l.zero || !l.parameter) {
      row.insert(row.end(), {"0", "n/a", "n/a", "n/a"});
    } else {
      const auto& q = *l.parameter;
      row.push_back(to_string(q.ctx.environment(), q.phi));
      row.push_back(eta_text(q));
      row.push_back(q.nu ? sign_text(*q.nu) : "n/a");
      row.push_back(l.tempered ? "yes" : "no");
    }
    row.push_back(l.source_member.empty() ? "n/a" : l.source_member);
    rows.push_back(std::move(row));
  }
  std::vector<size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream os;
  os << report_table(c.source, c.report);
  for (const auto& row : rows) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
      std::string cell = row[i];
      if (i + 1 < row.size()) cell.resize(width[i] + 2, ' ');
      line += cell;
    }
    os << line << "\n";
  }
  return os.str();
}

}  // namespace thetacalc::cli
