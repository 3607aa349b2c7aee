#include "thetacalc/cli/session.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "thetacalc/errors.hpp"

namespace thetacalc::cli {

namespace {

struct Line {
  int number = 0;
  /// Text with comments removed; columns refer to the original line.
  std::string text;
};

/// A slice of a line with the 1-based column of its first character.
struct Piece {
  std::string text;
  int column = 1;
};

Piece trim(const Piece& p) {
  size_t b = 0;
  while (b < p.text.size() && std::isspace(static_cast<unsigned char>(p.text[b]))) ++b;
  size_t e = p.text.size();
  while (e > b && std::isspace(static_cast<unsigned char>(p.text[e - 1]))) --e;
  return {p.text.substr(b, e - b), p.column + static_cast<int>(b)};
}

std::vector<Piece> split(const Piece& p, char sep) {
  std::vector<Piece> out;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i <= p.text.size(); ++i) {
    char c = i < p.text.size() ? p.text[i] : sep;
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if ((c == sep && depth == 0) || i == p.text.size()) {
      out.push_back(trim({p.text.substr(start, i - start), p.column + static_cast<int>(start)}));
      start = i + 1;
    }
  }
  return out;
}

/// "key = value" with the value's column.
std::optional<std::pair<Piece, Piece>> key_value(const Piece& p, char sep = '=') {
  auto pos = p.text.find(sep);
  if (pos == std::string::npos) return std::nullopt;
  return std::make_pair(trim({p.text.substr(0, pos), p.column}),
                        trim({p.text.substr(pos + 1), p.column + static_cast<int>(pos) + 1}));
}

[[noreturn]] void fail(int line, int column, const std::string& msg) {
  throw ParseError(line, column, msg);
}

int parse_int(const Piece& p, int line, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(p.text, &used);
    if (used != p.text.size()) throw std::invalid_argument(p.text);
    return v;
  } catch (const std::exception&) {
    fail(line, p.column, std::string("expected an integer ") + what + ", got '" + p.text + "'");
  }
}

Sign parse_sign(const Piece& p, int line) {
  if (p.text == "+" || p.text == "+1" || p.text == "1") return Sign::plus();
  if (p.text == "-" || p.text == "-1") return Sign::minus();
  fail(line, p.column, "expected a sign + or -, got '" + p.text + "'");
}

bool is_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

CharId resolve_char(const Environment& env, const Piece& p, int line) {
  auto id = env.chars().find(p.text);
  if (!id) fail(line, p.column, "unknown character '" + p.text + "'");
  return *id;
}

Atom parse_atom(const Environment& env, const Piece& term, int line) {
  Piece body = term;
  int shift2 = 0;
  auto at = body.text.find('@');
  if (at != std::string::npos) {
    Piece s = trim({body.text.substr(at + 1), body.column + static_cast<int>(at) + 1});
    try {
      shift2 = parse_shift2(s.text);
    } catch (const Error&) {
      fail(line, s.column, "bad exponent '" + s.text + "'");
    }
    body = trim({body.text.substr(0, at), body.column});
  }
  auto parts = split(body, '.');
  std::optional<CharId> chr;
  std::optional<DefId> def;
  std::optional<int> k;
  for (size_t i = 0; i < parts.size(); ++i) {
    const Piece& part = parts[i];
    const std::string& t = part.text;
    bool last = i + 1 == parts.size();
    if (t.rfind("atom(", 0) == 0 && t.back() == ')') {
      if (def) fail(line, part.column, "two atom(...) labels in one term");
      std::string label = t.substr(5, t.size() - 6);
      auto d = env.find_def(label);
      if (!d) fail(line, part.column, "unknown generic atom '" + label + "'");
      def = *d;
      continue;
    }
    if (last && t.size() > 1 && t[0] == 'S' &&
        std::all_of(t.begin() + 1, t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      k = parse_int({t.substr(1), part.column + 1}, line, "SL2 dimension");
      if (*k < 1) fail(line, part.column, "SL2 dimension must be positive");
      continue;
    }
    if (i == 0 && is_name(t)) {
      chr = resolve_char(env, part, line);
      continue;
    }
    fail(line, part.column, "cannot parse '" + t + "' as a character, S<k> or atom(<label>)");
  }
  if (!def && !k) fail(line, term.column, "term '" + term.text + "' needs S<k> or atom(<label>)");
  CharId c = chr.value_or(env.chars().trivial());
  if (def) return Atom::generic(*def, k.value_or(1), c, shift2);
  return Atom::chain(c, *k, shift2);
}

WDRep parse_phi_at(const Environment& env, const Piece& expr, int line) {
  WDRep out;
  Piece e = trim(expr);
  if (e.text == "0" || e.text.empty()) return out;
  for (const Piece& term : split(e, '+')) {
    if (term.text.empty()) fail(line, term.column, "empty term in phi");
    Piece body = term;
    int mult = 1;
    auto star = body.text.find('*');
    if (star != std::string::npos) {
      mult = parse_int(trim({body.text.substr(0, star), body.column}), line, "multiplicity");
      if (mult < 1) fail(line, body.column, "multiplicity must be positive");
      body = trim({body.text.substr(star + 1), body.column + static_cast<int>(star) + 1});
    }
    out.add(parse_atom(env, body, line), mult);
  }
  return out;
}

struct GroupSpec {
  int line = 0;
  GroupKind kind = GroupKind::Mp;
  int n = 0;
  std::optional<CharId> disc;
  std::optional<int> parity;
  std::optional<Sign> tower;
  std::optional<Sign> epsilon;
};

struct Pending {
  GroupSpec group;
  std::optional<std::pair<CharId, int>> chi_V;
  std::optional<std::pair<CharId, int>> chi_W;
  std::optional<std::pair<WDRep, int>> phi;
  std::optional<std::pair<std::vector<std::pair<Piece, Sign>>, int>> eta;
  std::optional<Sign> nu;
  std::optional<Sign> tower;
};

GroupSpec parse_group(const Environment* env, const Piece& v, int line) {
  GroupSpec g;
  g.line = line;
  auto open = v.text.find('(');
  if (open == std::string::npos || v.text.back() != ')')
    fail(line, v.column, "expected Mp(n), Sp(n), Oodd(n, disc=c), Oeven(n, disc=c) or U(n, ...)");
  std::string name = v.text.substr(0, open);
  if (name == "Mp") g.kind = GroupKind::Mp;
  else if (name == "Sp") g.kind = GroupKind::Sp;
  else if (name == "Oodd") g.kind = GroupKind::O_odd;
  else if (name == "Oeven") g.kind = GroupKind::O_even;
  else if (name == "U") g.kind = GroupKind::U;
  else fail(line, v.column, "unknown group '" + name + "'");
  Piece args{v.text.substr(open + 1, v.text.size() - open - 2), v.column + static_cast<int>(open) + 1};
  auto items = split(args, ',');
  if (items.empty() || items[0].text.empty()) fail(line, args.column, "group needs a dimension");
  g.n = parse_int(items[0], line, "dimension");
  for (size_t i = 1; i < items.size(); ++i) {
    auto kv = key_value(items[i]);
    if (!kv) fail(line, items[i].column, "expected key=value, got '" + items[i].text + "'");
    const auto& [key, val] = *kv;
    if (key.text == "disc") {
      if (!env) fail(line, val.column, "internal: no environment");
      g.disc = resolve_char(*env, val, line);
    } else if (key.text == "parity") {
      if (val.text == "even") g.parity = 0;
      else if (val.text == "odd") g.parity = 1;
      else fail(line, val.column, "parity must be even or odd");
    } else if (key.text == "tower") {
      g.tower = parse_sign(val, line);
    } else if (key.text == "epsilon") {
      g.epsilon = parse_sign(val, line);
    } else {
      fail(line, key.column, "unknown group option '" + key.text + "'");
    }
  }
  bool wants_disc = g.kind == GroupKind::O_odd || g.kind == GroupKind::O_even;
  if (g.disc && !wants_disc) fail(line, v.column, "disc= applies to orthogonal groups only");
  if ((g.parity || g.epsilon) && g.kind != GroupKind::U)
    fail(line, v.column, "parity= and epsilon= apply to unitary groups only");
  if (g.tower && g.kind != GroupKind::U && !wants_disc)
    fail(line, v.column, "tower= applies to orthogonal and unitary groups only");
  return g;
}

std::optional<CharId> first_with(const CharacterRegistry& reg, ConjRestriction r) {
  for (CharId c = 0; c < reg.size(); ++c)
    if (reg.at(c).conj_restriction == r && reg.is_quadratic(c)) return c;
  return std::nullopt;
}

EnhancedParameter finalize(const EnvPtr& env, const Pending& p) {
  const auto& g = p.group;
  const auto& reg = env->chars();
  const int line = g.line;
  if (!p.phi) fail(line, 1, "parameter has no phi line");
  const WDRep& phi = p.phi->first;
  Sign neutral = Sign::plus();
  auto char_or = [&](const std::optional<std::pair<CharId, int>>& c, CharId d) {
    return c ? c->first : d;
  };
  std::optional<Sign> tower = g.tower ? g.tower : p.tower;

  GroupContext ctx;
  EnhancedParameter out;
  out.phi = phi;
  out.nu = p.nu;
  try {
    switch (g.kind) {
      case GroupKind::Mp:
      case GroupKind::Sp:
        if (p.chi_W) fail(p.chi_W->second, 1, "chi_W is fixed to 1 for symplectic groups");
        ctx = make_context(env, g.kind, g.n, char_or(p.chi_V, reg.trivial()), reg.trivial(), 0,
                           std::nullopt);
        break;
      case GroupKind::O_odd:
      case GroupKind::O_even: {
        if (p.chi_V) fail(p.chi_V->second, 1, "chi_V is fixed to 1 for orthogonal groups");
        if (g.disc && p.chi_W) fail(p.chi_W->second, 1, "disc given twice");
        CharId fallback = g.kind == GroupKind::O_even ? det_character(*env, phi) : reg.trivial();
        CharId disc = g.disc ? *g.disc : char_or(p.chi_W, fallback);
        ctx = make_context(env, g.kind, g.n, reg.trivial(), disc, 0, neutral);
        break;
      }
      case GroupKind::U: {
        int parity = g.parity.value_or(0);
        auto want = [](int par) {
          return par == 1 ? ConjRestriction::omega_on_F : ConjRestriction::trivial_on_F;
        };
        auto dv = first_with(reg, want(parity));
        auto dw = first_with(reg, want(((g.n % 2) + 2) % 2));
        if (!p.chi_V && !dv) fail(line, 1, "no character restricting to omega^m; give chi_V");
        if (!p.chi_W && !dw) fail(line, 1, "no character restricting to omega^n; give chi_W");
        ctx = make_context(env, g.kind, g.n, p.chi_V ? p.chi_V->first : *dv,
                           p.chi_W ? p.chi_W->first : *dw, parity, neutral,
                           g.epsilon.value_or(Sign::plus()));
        break;
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(line, 1, e.message());
  }
  out.ctx = ctx;
  ComponentGroup A = out.group();
  out.eta.signs.assign(static_cast<size_t>(A.rank()), Sign::plus());
  std::vector<bool> seen(static_cast<size_t>(A.rank()), false);
  if (p.eta) {
    for (const auto& [key, sign] : p.eta->first) {
      int idx = -1;
      for (int i = 0; i < A.rank(); ++i)
        if (atom_name(*env, A.basis[static_cast<size_t>(i)]) == key.text) idx = i;
      if (idx < 0) {
        Atom probe;
        bool parsed = true;
        try {
          probe = parse_atom(*env, key, p.eta->second);
        } catch (const ParseError&) {
          parsed = false;
        }
        if (parsed) idx = A.index_of(probe);
      }
      if (idx < 0) fail(p.eta->second, key.column, "unknown basis slot " + key.text);
      if (seen[static_cast<size_t>(idx)])
        fail(p.eta->second, key.column, "basis slot " + key.text + " assigned twice");
      seen[static_cast<size_t>(idx)] = true;
      out.eta.signs[static_cast<size_t>(idx)] = sign;
    }
  }
  for (int i = 0; i < A.rank(); ++i)
    if (!seen[static_cast<size_t>(i)])
      fail(p.eta ? p.eta->second : line, 1,
           "eta has no value for basis slot " + atom_name(*env, A.basis[static_cast<size_t>(i)]));
  if (out.ctx.has_towers()) out.ctx.tower_sign = tower ? *tower : out.eta.eval(A.z());
  out.tempered = true;
  for (const auto& [a, m] : out.phi.terms()) out.tempered = out.tempered && a.tempered();
  if (g.kind == GroupKind::O_odd && !out.nu) fail(line, 1, "odd orthogonal parameters need a nu line");
  if (g.kind != GroupKind::O_odd && out.nu) fail(line, 1, "nu applies to odd orthogonal groups only");
  auto v = validate_parameter(out);
  if (!v.empty()) {
    std::string msg = "invalid parameter:";
    for (const auto& x : v) msg += " [" + x.code + "] " + x.message + ";";
    msg.pop_back();
    fail(line, 1, msg);
  }
  return out;
}

struct RegistryDraft {
  int line = 0;
  std::optional<FieldContext> field;
  CharacterRegistry::Spec spec;
  std::vector<std::tuple<std::string, int, AdditiveCharTag, Sign, int>> chain_roots;
  std::vector<GenericAtomDef> defs;
};

std::map<std::string, Piece> options(const std::vector<Piece>& words, size_t from, int line) {
  std::map<std::string, Piece> out;
  for (size_t i = from; i < words.size(); ++i) {
    auto kv = key_value(words[i]);
    if (!kv) {
      out[words[i].text] = {"", words[i].column};
      continue;
    }
    if (out.count(kv->first.text)) fail(line, kv->first.column, "option '" + kv->first.text + "' repeated");
    out[kv->first.text] = kv->second;
  }
  return out;
}

std::vector<Piece> words_of(const Piece& p) {
  std::vector<Piece> out;
  size_t i = 0;
  while (i < p.text.size()) {
    while (i < p.text.size() && std::isspace(static_cast<unsigned char>(p.text[i]))) ++i;
    size_t b = i;
    while (i < p.text.size() && !std::isspace(static_cast<unsigned char>(p.text[i]))) ++i;
    if (i > b) out.push_back({p.text.substr(b, i - b), p.column + static_cast<int>(b)});
  }
  return out;
}

AdditiveCharTag parse_tag(const Piece& p, int line) {
  try {
    return AdditiveCharTag::parse(p.text);
  } catch (const Error&) {
    fail(line, p.column, "unknown additive character tag '" + p.text + "'");
  }
}

void registry_line(RegistryDraft& d, const Piece& body, int line) {
  auto words = words_of(body);
  const std::string& head = words[0].text;
  // Trailing "= <sign>" for root table lines.
  auto rhs = [&]() -> Sign {
    if (words.size() < 2 || words[words.size() - 2].text != "=")
      fail(line, body.column, "expected '= <sign>' at the end of the line");
    return parse_sign(words.back(), line);
  };
  if (head == "field") {
    auto kv = key_value(body);
    if (!kv) fail(line, body.column, "expected field = split | quadratic(omega=<sign>)");
    const Piece& v = kv->second;
    if (v.text == "split") {
      d.field = FieldContext::split_field();
    } else if (v.text.rfind("quadratic", 0) == 0) {
      Sign w = Sign::plus();
      auto open = v.text.find('(');
      if (open != std::string::npos) {
        Piece inner{v.text.substr(open + 1, v.text.size() - open - 2), v.column + static_cast<int>(open) + 1};
        auto iv = key_value(inner);
        if (!iv || iv->first.text != "omega") fail(line, inner.column, "expected omega=<sign>");
        w = parse_sign(iv->second, line);
      }
      d.field = FieldContext::quadratic_field(w);
    } else {
      fail(line, v.column, "field must be split or quadratic(omega=<sign>)");
    }
  } else if (head == "moduli") {
    auto kv = key_value(body);
    if (!kv) fail(line, body.column, "expected moduli = <n> <n> ...");
    d.spec.moduli.clear();
    for (const auto& w : words_of(kv->second)) d.spec.moduli.push_back(parse_int(w, line, "modulus"));
  } else if (head == "chi_minus_one") {
    auto kv = key_value(body);
    if (!kv) fail(line, body.column, "expected chi_minus_one = <char>");
    d.spec.chi_minus_one = kv->second.text;
  } else if (head == "char") {
    if (words.size() < 2 || !is_name(words[1].text)) fail(line, body.column, "expected char <name> ...");
    CharacterRegistry::Entry e;
    e.chr.name = words[1].text;
    auto opt = options(words, 2, line);
    for (const auto& [key, val] : opt) {
      if (key == "coords") {
        for (const auto& c : split(val, ',')) e.coords.push_back(parse_int(c, line, "coordinate"));
      } else if (key == "minus1") {
        e.chr.value_at_minus1 = parse_sign(val, line);
      } else if (key == "values") {
        for (const auto& item : split(val, ',')) {
          auto kv = key_value(item, ':');
          if (!kv) fail(line, item.column, "expected <symbol>:<sign>");
          e.chr.value_table[kv->first.text] = parse_sign(kv->second, line);
        }
      } else if (key == "conductor") {
        e.chr.conductor = parse_int(val, line, "conductor");
      } else if (key == "restriction") {
        if (val.text == "trivial") e.chr.conj_restriction = ConjRestriction::trivial_on_F;
        else if (val.text == "omega") e.chr.conj_restriction = ConjRestriction::omega_on_F;
        else fail(line, val.column, "restriction must be trivial or omega");
      } else if (key == "conj_dual") {
        e.conj_dual = val.text;
      } else {
        fail(line, val.column, "unknown char option '" + key + "'");
      }
    }
    e.chr.is_trivial = std::all_of(e.coords.begin(), e.coords.end(), [](int c) { return c == 0; });
    d.spec.entries.push_back(std::move(e));
  } else if (head == "chain_root") {
    if (words.size() != 6) fail(line, body.column, "expected chain_root <char> <k> <tag> = <sign>");
    d.chain_roots.emplace_back(words[1].text, parse_int(words[2], line, "k"), parse_tag(words[3], line),
                               rhs(), line);
  } else if (head == "atom") {
    if (words.size() < 2 || !is_name(words[1].text)) fail(line, body.column, "expected atom <label> ...");
    GenericAtomDef def;
    def.label = words[1].text;
    for (const auto& [key, val] : options(words, 2, line)) {
      if (key == "dim") {
        def.weil_dim = parse_int(val, line, "dimension");
      } else if (key == "duality") {
        bool ok = false;
        for (Duality x : {Duality::orthogonal, Duality::symplectic, Duality::conjugate_orthogonal,
                          Duality::conjugate_symplectic, Duality::none})
          if (val.text == to_string(x)) {
            def.duality = x;
            ok = true;
          }
        if (!ok) fail(line, val.column, "unknown duality '" + val.text + "'");
      } else if (key == "det") {
        def.det_char = val.text;
      } else if (key == "dual") {
        def.dual_label = val.text;
      } else if (key == "conj_dual") {
        def.conj_dual_label = val.text;
      } else {
        fail(line, val.column, "unknown atom option '" + key + "'");
      }
    }
    d.defs.push_back(std::move(def));
  } else if (head == "atom_root" || head == "pair_root") {
    bool pair = head == "pair_root";
    size_t want = pair ? 6 : 7;
    if (words.size() != want)
      fail(line, body.column,
           pair ? "expected pair_root <label> <label> <tag> = <sign>"
                : "expected atom_root <label> <k> <twist> <tag> = <sign>");
    auto it = std::find_if(d.defs.begin(), d.defs.end(),
                           [&](const GenericAtomDef& x) { return x.label == words[1].text; });
    if (it == d.defs.end()) fail(line, words[1].column, "atom '" + words[1].text + "' not declared yet");
    Sign s = rhs();
    if (pair)
      it->pair_root_table[{words[2].text, parse_tag(words[3], line)}] = s;
    else
      it->root_table[{parse_int(words[2], line, "k"), words[3].text, parse_tag(words[4], line)}] = s;
  } else {
    fail(line, words[0].column, "unknown registry entry '" + head + "'");
  }
}

EnvPtr build_env(const RegistryDraft& d) {
  FieldContext field = d.field.value_or(FieldContext::split_field());
  CharacterRegistry reg;
  try {
    if (d.spec.entries.empty()) {
      reg = field.is_split() ? CharacterRegistry::default_split() : CharacterRegistry::default_unitary();
      if (field.is_quadratic() && !(field == Environment::default_unitary()->field()))
        fail(d.line, 1, "the default unitary characters need omega(-1) = +; declare chars");
    } else {
      reg = CharacterRegistry::build(d.spec, field);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(d.line, 1, e.message());
  }
  for (const auto& [name, k, tag, s, line] : d.chain_roots) {
    auto id = reg.find(name);
    if (!id) fail(line, 1, "unknown character '" + name + "'");
    reg.set_chain_root(*id, k, tag, s);
  }
  try {
    return std::make_shared<const Environment>(field, std::move(reg), d.defs);
  } catch (const Error& e) {
    fail(d.line, 1, e.message());
  }
}

}  // namespace

int parse_shift2(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
          t.end());
  auto bad = [&]() { return Error(ErrorCode::ParseError, "bad exponent '" + text + "'"); };
  try {
    size_t used = 0;
    auto slash = t.find('/');
    if (slash == std::string::npos) {
      int v = std::stoi(t, &used);
      if (used != t.size()) throw bad();
      return 2 * v;
    }
    std::string num = t.substr(0, slash);
    std::string den = t.substr(slash + 1);
    int v = std::stoi(num, &used);
    if (used != num.size() || den != "2") throw bad();
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

std::string shift_text(int shift2) {
  if (shift2 % 2 == 0) return std::to_string(shift2 / 2);
  return std::to_string(shift2) + "/2";
}

EnvPtr parse_environment(const std::string& text, bool unitary_default) {
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  std::optional<RegistryDraft> draft;
  bool open = false;
  while (std::getline(in, raw)) {
    ++n;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    Piece p = trim({raw, 1});
    if (p.text.empty()) continue;
    if (open) {
      if (p.text == "}") {
        open = false;
        continue;
      }
      registry_line(*draft, p, n);
    } else if (p.text.rfind("registry", 0) == 0) {
      if (draft) fail(n, p.column, "only one registry block is allowed");
      draft.emplace();
      draft->line = n;
      open = true;
    }
  }
  if (open) fail(draft->line, 1, "registry block is not closed");
  if (draft) return build_env(*draft);
  return unitary_default ? Environment::default_unitary() : Environment::default_split();
}

WDRep parse_phi(const Environment& env, const std::string& text) {
  return parse_phi_at(env, {text, 1}, 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Session parse_session(const std::string& text) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      lines.push_back({n, raw});
    }
  }

  std::optional<RegistryDraft> draft;
  std::vector<int> group_lines;
  bool in_registry = false;
  bool registry_done = false;
  int registry_open_line = 0;

  for (const Line& L : lines) {
    Piece p = trim({L.text, 1});
    if (p.text.empty()) continue;
    if (in_registry) {
      if (p.text == "}") {
        in_registry = false;
        registry_done = true;
        continue;
      }
      registry_line(*draft, p, L.number);
      continue;
    }
    if (p.text.rfind("registry", 0) == 0) {
      Piece rest = trim({p.text.substr(8), p.column + 8});
      if (rest.text != "{") fail(L.number, rest.column, "expected 'registry {'");
      if (registry_done || draft) fail(L.number, p.column, "only one registry block is allowed");
      if (!group_lines.empty()) fail(L.number, p.column, "the registry block must precede every group line");
      draft.emplace();
      draft->line = L.number;
      registry_open_line = L.number;
      in_registry = true;
      continue;
    }
    auto kv = key_value(p);
    if (!kv) fail(L.number, p.column, "expected <key> = <value>");
    const auto& [key, val] = *kv;
    if (key.text == "group") {
      group_lines.push_back(L.number);
      continue;
    }
    if (group_lines.empty()) fail(L.number, key.column, "'" + key.text + "' before any group line");
  }
  if (in_registry) fail(registry_open_line, 1, "registry block is not closed");
  if (group_lines.empty()) fail(lines.empty() ? 1 : lines.back().number, 1, "no group line");

  // Second pass with the environment fixed.
  EnvPtr env;
  if (draft) {
    env = build_env(*draft);
  } else {
    bool unitary = false, other = false;
    for (const Line& L : lines) {
      Piece p = trim({L.text, 1});
      auto kv = key_value(p);
      if (!kv || kv->first.text != "group") continue;
      (kv->second.text.rfind("U(", 0) == 0 ? unitary : other) = true;
    }
    if (unitary && other)
      fail(1, 1, "unitary and non-unitary groups need separate files or an explicit registry");
    env = unitary ? Environment::default_unitary() : Environment::default_split();
  }

  Session s;
  s.env = env;
  std::optional<Pending> cur;
  in_registry = false;
  auto flush = [&]() {
    if (cur) s.params.push_back(finalize(env, *cur));
    cur.reset();
  };
  for (const Line& L : lines) {
    Piece p = trim({L.text, 1});
    if (p.text.empty()) continue;
    if (in_registry) {
      if (p.text == "}") in_registry = false;
      continue;
    }
    if (p.text.rfind("registry", 0) == 0) {
      in_registry = true;
      continue;
    }
    auto kv = key_value(p);
    const auto& [key, val] = *kv;
    const int ln = L.number;
    if (key.text == "group") {
      flush();
      cur.emplace();
      cur->group = parse_group(env.get(), val, ln);
      continue;
    }
    auto once = [&](bool present) {
      if (present) fail(ln, key.column, "'" + key.text + "' given twice for this group");
    };
    if (key.text == "chi_V" || key.text == "chi_W") {
      auto& slot = key.text == "chi_V" ? cur->chi_V : cur->chi_W;
      once(slot.has_value());
      slot = std::make_pair(resolve_char(*env, val, ln), ln);
    } else if (key.text == "phi") {
      once(cur->phi.has_value());
      cur->phi = std::make_pair(parse_phi_at(*env, val, ln), ln);
    } else if (key.text == "eta") {
      once(cur->eta.has_value());
      if (val.text.size() < 2 || val.text.front() != '{' || val.text.back() != '}')
        fail(ln, val.column, "expected eta = { <slot>:<sign>, ... }");
      Piece inner = trim({val.text.substr(1, val.text.size() - 2), val.column + 1});
      std::vector<std::pair<Piece, Sign>> items;
      if (!inner.text.empty()) {
        for (const Piece& item : split(inner, ',')) {
          auto iv = key_value(item, ':');
          if (!iv) fail(ln, item.column, "expected <slot>:<sign>, got '" + item.text + "'");
          items.emplace_back(iv->first, parse_sign(iv->second, ln));
        }
      }
      cur->eta = std::make_pair(std::move(items), ln);
    } else if (key.text == "nu") {
      once(cur->nu.has_value());
      cur->nu = parse_sign(val, ln);
    } else if (key.text == "tower") {
      once(cur->tower.has_value() || cur->group.tower.has_value());
      cur->tower = parse_sign(val, ln);
    } else {
      fail(ln, key.column, "unknown key '" + key.text + "'");
    }
  }
  flush();
  return s;
}

}  // namespace thetacalc::cli
