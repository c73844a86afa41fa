#include "rog/workspace.hpp"

#include <algorithm>
#include <sstream>

#include "rog/errors.hpp"
#include "rog/finite.hpp"

namespace rog {

namespace {

struct Field {
  int line = 0;
  std::string value;
};

struct Section {
  int line = 0;
  std::string kind;  // "group" | "action" | "morphism"
  std::string name;
  std::map<std::string, Field> fields;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = strip(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      std::string inner = strip(s.substr(1, s.size() - 2));
      size_t dot = inner.find('.');
      if (dot == std::string::npos)
        fail(line, "section header must look like [group.NAME], [action.NAME] or [morphism.NAME]");
      Section sec;
      sec.line = line;
      sec.kind = inner.substr(0, dot);
      sec.name = strip(inner.substr(dot + 1));
      if (sec.kind != "group" && sec.kind != "action" && sec.kind != "morphism")
        fail(line, "unknown section kind '" + sec.kind + "'");
      if (sec.name.empty()) fail(line, "empty section name");
      sections.push_back(std::move(sec));
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    if (sections.empty()) fail(line, "field outside of any section");
    std::string key = strip(s.substr(0, eq));
    std::string value = strip(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty field name");
    auto& sec = sections.back();
    if (sec.fields.count(key)) fail(line, "duplicate field '" + key + "'");
    sec.fields[key] = {line, value};
  }
  return sections;
}

const Field& need(const Section& s, const std::string& key) {
  auto it = s.fields.find(key);
  if (it == s.fields.end())
    fail(s.line, s.kind + "." + s.name + " is missing the field '" + key + "'");
  return it->second;
}

bool has(const Section& s, const std::string& key) { return s.fields.count(key) != 0; }

// --- literal parsers -------------------------------------------------------

struct Cursor {
  const std::string& s;
  size_t i = 0;
  int line;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c, const std::string& what) {
    if (!eat(c)) fail(line, "expected '" + std::string(1, c) + "' in " + what);
  }
  bool done() {
    skip_ws();
    return i == s.size();
  }
};

Int parse_int_at(Cursor& c, const std::string& what) {
  c.skip_ws();
  size_t start = c.i;
  if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) ++c.i;
  while (c.i < c.s.size() && isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  if (c.i == start || (c.i == start + 1 && !isdigit(static_cast<unsigned char>(c.s[start]))))
    fail(c.line, "expected an integer in " + what);
  return Int(c.s.substr(start, c.i - start), 10);
}

std::vector<Int> parse_int_list(Cursor& c, const std::string& what) {
  std::vector<Int> out;
  c.expect('[', what);
  if (c.eat(']')) return out;
  for (;;) {
    out.push_back(parse_int_at(c, what));
    if (c.eat(']')) return out;
    c.expect(',', what);
  }
}

std::vector<std::vector<Int>> parse_int_matrix(Cursor& c, const std::string& what) {
  std::vector<std::vector<Int>> out;
  c.expect('[', what);
  if (c.eat(']')) return out;
  for (;;) {
    out.push_back(parse_int_list(c, what));
    if (c.eat(']')) return out;
    c.expect(',', what);
  }
}

std::vector<Int> field_int_list(const Field& f, const std::string& what) {
  Cursor c{f.value, 0, f.line};
  auto v = parse_int_list(c, what);
  if (!c.done()) fail(f.line, "trailing characters after " + what);
  return v;
}

std::vector<std::vector<Int>> field_int_matrix(const Field& f, const std::string& what) {
  Cursor c{f.value, 0, f.line};
  auto v = parse_int_matrix(c, what);
  if (!c.done()) fail(f.line, "trailing characters after " + what);
  return v;
}

std::vector<std::vector<std::vector<Int>>> field_matrix_list(const Field& f,
                                                             const std::string& what) {
  Cursor c{f.value, 0, f.line};
  std::vector<std::vector<std::vector<Int>>> out;
  c.expect('[', what);
  if (!c.eat(']')) {
    for (;;) {
      out.push_back(parse_int_matrix(c, what));
      if (c.eat(']')) break;
      c.expect(',', what);
    }
  }
  if (!c.done()) fail(f.line, "trailing characters after " + what);
  return out;
}

long field_long(const Field& f, const std::string& what) {
  Cursor c{f.value, 0, f.line};
  Int v = parse_int_at(c, what);
  if (!c.done()) fail(f.line, "trailing characters after " + what);
  if (!v.fits_slong_p()) fail(f.line, what + " out of range");
  return v.get_si();
}

Rat field_rat(const Field& f, const std::string& what) {
  try {
    return parse_rat(f.value);
  } catch (const std::exception& e) {
    fail(f.line, what + ": " + e.what());
  }
}

IntMatrix to_matrix(const std::vector<std::vector<Int>>& rows, int line,
                    const std::string& what) {
  if (rows.empty()) return IntMatrix(0, 0);
  size_t cols = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) fail(line, what + " has ragged rows");
  return IntMatrix::from_rows(rows);
}

// --- builders ---------------------------------------------------------------

RPGroup build_finite_group(const Section& s, long /*bound*/) {
  auto rows_int = field_int_matrix(need(s, "table"), "table");
  std::vector<std::vector<long>> rows;
  for (const auto& r : rows_int) {
    rows.emplace_back();
    for (const Int& v : r) {
      if (!v.fits_slong_p()) fail(need(s, "table").line, "table entry out of range");
      rows.back().push_back(v.get_si());
    }
  }
  std::vector<int> relabel;
  FiniteGroupTable t;
  try {
    t = FiniteGroupTable::from_table(rows, &relabel);
  } catch (const ValidationError& e) {
    fail(need(s, "table").line, std::string("group ") + s.name + ": " + e.what());
  }
  auto cone_field = need(s, "cone");
  auto cone_raw = field_int_list(cone_field, "cone");
  std::vector<int> members;
  for (const Int& v : cone_raw) {
    if (!v.fits_slong_p() || v < 0 || v.get_si() >= static_cast<long>(t.n))
      fail(cone_field.line, "cone member out of range");
    members.push_back(relabel[v.get_si()]);
  }
  auto c = finite_carrier(std::move(t), s.name);
  try {
    return make_rpgroup(c, explicit_cone(c, std::move(members)));
  } catch (const ValidationError& e) {
    fail(cone_field.line, std::string("group ") + s.name + ": " + e.what());
  }
}

RPGroup build_abelian_group(const Section& s, long bound) {
  long rank = has(s, "rank") ? field_long(need(s, "rank"), "rank") : 0;
  if (rank < 0) fail(need(s, "rank").line, "rank must be nonnegative");
  std::vector<Int> torsion;
  if (has(s, "torsion")) torsion = field_int_list(need(s, "torsion"), "torsion");
  AbelianPtr carrier;
  try {
    carrier = std::make_shared<const AbelianCarrier>(static_cast<unsigned>(rank), torsion, s.name);
  } catch (const ValidationError& e) {
    fail(s.line, std::string("group ") + s.name + ": " + e.what());
  }
  const Field& cf = need(s, "cone");
  std::string kind = cf.value;
  long cone_bound = has(s, "bound") ? field_long(need(s, "bound"), "bound") : bound;
  ConePtr cone;
  if (kind == "trivial") cone = trivial_cone(carrier);
  else if (kind == "total") cone = total_cone(carrier);
  else if (kind == "orthant" || kind == "natural") cone = orthant_cone(carrier);
  else if (kind == "generated") {
    auto gens = field_int_matrix(need(s, "generators"), "generators");
    for (const auto& g : gens)
      if (g.size() != carrier->dim())
        fail(need(s, "generators").line, "generator has wrong coordinate count");
    cone = generated_cone(carrier, gens, cone_bound);
  } else {
    fail(cf.line, "unknown abelian cone kind '" + kind + "'");
  }
  return make_rpgroup(carrier, cone);
}

RPGroup build_builtin_group(const Section& s, long bound) {
  const Field& cf = need(s, "carrier");
  const Field& kf = need(s, "cone");
  if (cf.value == "Z") {
    auto z = z_carrier();
    if (kf.value == "trivial") return make_rpgroup(z, trivial_cone(z));
    if (kf.value == "natural") return make_rpgroup(z, natural_cone());
    if (kf.value == "total") return make_rpgroup(z, total_cone(z));
    if (kf.value == "generated") {
      auto gens = field_int_matrix(need(s, "generators"), "generators");
      long cone_bound = has(s, "bound") ? field_long(need(s, "bound"), "bound") : bound;
      for (const auto& g : gens)
        if (g.size() != 1) fail(need(s, "generators").line, "Z generators are singletons");
      return make_rpgroup(z, generated_cone(z, gens, cone_bound));
    }
    fail(kf.line, "unknown Z cone '" + kf.value + "' (trivial|natural|total|generated)");
  }
  if (cf.value == "Q") {
    auto q = q_carrier();
    if (kf.value == "nonneg") return make_rpgroup(q, orthant_cone(q));
    if (kf.value == "trivial") return make_rpgroup(q, trivial_cone(q));
    if (kf.value == "total") return make_rpgroup(q, total_cone(q));
    fail(kf.line, "unknown Q cone '" + kf.value + "' (nonneg|trivial|total)");
  }
  fail(cf.line, "unknown builtin carrier '" + cf.value + "' (Z|Q)");
}

ActionPtr build_action(const Section& s, const std::map<std::string, RPGroup>& groups) {
  auto find_group = [&](const std::string& key) -> const RPGroup& {
    const Field& f = need(s, key);
    auto it = groups.find(f.value);
    if (it == groups.end()) fail(f.line, "unknown group '" + f.value + "'");
    return it->second;
  };
  const RPGroup& acted = find_group("acted");
  const RPGroup& actor = find_group("actor");
  const Field& kf = need(s, "kind");
  try {
    if (kf.value == "trivial") return GroupAction::trivial(acted, actor);
    if (kf.value == "scalar")
      return GroupAction::scalar_action(acted, actor, field_rat(need(s, "value"), "value"));
    if (kf.value == "matrix") {
      auto mats_raw = field_matrix_list(need(s, "images"), "images");
      std::vector<IntMatrix> mats;
      for (const auto& m : mats_raw)
        mats.push_back(to_matrix(m, need(s, "images").line, "action image"));
      return GroupAction::matrix_action(acted, actor, std::move(mats));
    }
    if (kf.value == "permutation") {
      auto gens_raw = field_int_list(need(s, "gens"), "gens");
      auto images_raw = field_int_matrix(need(s, "images"), "images");
      std::vector<int> gens;
      for (const Int& g : gens_raw) gens.push_back(static_cast<int>(g.get_si()));
      std::vector<std::vector<int>> images;
      for (const auto& p : images_raw) {
        images.emplace_back();
        for (const Int& v : p) images.back().push_back(static_cast<int>(v.get_si()));
      }
      return GroupAction::finite_action(acted, actor, gens, std::move(images));
    }
  } catch (const ValidationError& e) {
    fail(s.line, std::string("action ") + s.name + ": " + e.what());
  }
  fail(kf.line, "unknown action kind '" + kf.value + "' (trivial|scalar|matrix|permutation)");
}

Morphism build_morphism(const Section& s, const std::map<std::string, RPGroup>& groups) {
  auto find_group = [&](const std::string& key) -> const RPGroup& {
    const Field& f = need(s, key);
    auto it = groups.find(f.value);
    if (it == groups.end()) fail(f.line, "unknown group '" + f.value + "'");
    return it->second;
  };
  const RPGroup& src = find_group("source");
  const RPGroup& tgt = find_group("target");
  try {
    if (has(s, "table")) {
      auto raw = field_int_list(need(s, "table"), "table");
      std::vector<int> table;
      for (const Int& v : raw) table.push_back(static_cast<int>(v.get_si()));
      return finite_morphism(src, tgt, std::move(table), s.name);
    }
    if (has(s, "matrix")) {
      auto rows = field_int_matrix(need(s, "matrix"), "matrix");
      return matrix_morphism(src, tgt, to_matrix(rows, need(s, "matrix").line, "matrix"), s.name);
    }
    if (has(s, "scalar"))
      return scalar_morphism(src, tgt, field_rat(need(s, "scalar"), "scalar"), s.name);
  } catch (const ValidationError& e) {
    fail(s.line, std::string("morphism ") + s.name + ": " + e.what());
  }
  fail(s.line, "morphism " + s.name + " needs one of: table, matrix, scalar");
}

}  // namespace

Workspace parse_workspace(const std::string& text, long default_bound) {
  auto sections = split_sections(text);
  Workspace ws;
  ws.default_bound = default_bound;

  // duplicate names
  for (const auto& s : sections) {
    bool dup = (s.kind == "group" && ws.groups.count(s.name)) ||
               (s.kind == "action" && ws.actions.count(s.name)) ||
               (s.kind == "morphism" && ws.morphisms.count(s.name));
    if (dup) fail(s.line, "duplicate " + s.kind + " name '" + s.name + "'");
    if (s.kind == "group") ws.groups[s.name] = RPGroup{};  // reserve
    if (s.kind == "action") ws.actions[s.name] = nullptr;
    if (s.kind == "morphism") ws.morphisms[s.name] = Morphism{};
  }
  ws.groups.clear();
  ws.actions.clear();
  ws.morphisms.clear();

  // plain groups first, then actions, then semidirect groups (which may nest),
  // then morphisms
  for (const auto& s : sections) {
    if (s.kind != "group") continue;
    const Field& kf = need(s, "kind");
    if (kf.value == "finite") ws.groups.emplace(s.name, build_finite_group(s, default_bound));
    else if (kf.value == "abelian") ws.groups.emplace(s.name, build_abelian_group(s, default_bound));
    else if (kf.value == "builtin") ws.groups.emplace(s.name, build_builtin_group(s, default_bound));
    else if (kf.value != "semidirect")
      fail(kf.line, "unknown group kind '" + kf.value + "' (finite|abelian|builtin|semidirect)");
  }
  for (const auto& s : sections)
    if (s.kind == "action") ws.actions.emplace(s.name, build_action(s, ws.groups));

  // semidirect groups may reference other semidirect groups: iterate
  for (bool progress = true; progress;) {
    progress = false;
    bool missing = false;
    for (const auto& s : sections) {
      if (s.kind != "group" || need(s, "kind").value != "semidirect" || ws.groups.count(s.name))
        continue;
      const Field& xf = need(s, "x");
      const Field& bf = need(s, "b");
      const Field& af = need(s, "action");
      const Field& cf = need(s, "cone");
      if (!ws.groups.count(xf.value) || !ws.groups.count(bf.value)) {
        missing = true;
        continue;
      }
      auto ait = ws.actions.find(af.value);
      if (ait == ws.actions.end()) fail(af.line, "unknown action '" + af.value + "'");
      ConePolicy policy;
      if (cf.value == "prod") policy = ConePolicy::Prod;
      else if (cf.value == "lex") policy = ConePolicy::Lex;
      else fail(cf.line, "unknown semidirect cone '" + cf.value + "' (prod|lex)");
      try {
        SemidirectGroup sg = semidirect(ws.groups.at(xf.value), ws.groups.at(bf.value),
                                        ait->second, policy);
        ws.semidirects.emplace(s.name, sg);
        ws.groups.emplace(s.name, sg.group);
      } catch (const ValidationError& e) {
        fail(s.line, std::string("group ") + s.name + ": " + e.what());
      }
      progress = true;
    }
    if (!progress && missing) {
      for (const auto& s : sections) {
        if (s.kind != "group" || need(s, "kind").value != "semidirect" || ws.groups.count(s.name))
          continue;
        const Field& xf = need(s, "x");
        const Field& bf = need(s, "b");
        if (!ws.groups.count(xf.value)) fail(xf.line, "unknown group '" + xf.value + "'");
        if (!ws.groups.count(bf.value)) fail(bf.line, "unknown group '" + bf.value + "'");
      }
    }
  }

  for (const auto& s : sections)
    if (s.kind == "morphism") ws.morphisms.emplace(s.name, build_morphism(s, ws.groups));
  return ws;
}

const RPGroup& need_group(const Workspace& ws, const std::string& name) {
  auto it = ws.groups.find(name);
  if (it == ws.groups.end()) throw ValidationError("unknown group '" + name + "'");
  return it->second;
}

const Morphism& need_morphism(const Workspace& ws, const std::string& name) {
  auto it = ws.morphisms.find(name);
  if (it == ws.morphisms.end()) throw ValidationError("unknown morphism '" + name + "'");
  return it->second;
}

const SemidirectGroup& need_semidirect(const Workspace& ws, const std::string& name) {
  auto it = ws.semidirects.find(name);
  if (it == ws.semidirects.end())
    throw ValidationError("'" + name + "' is not a semidirect group of this workspace");
  return it->second;
}

Element parse_element(const RPGroup& g, const std::string& text) {
  std::string t = strip(text);
  switch (g.carrier->kind()) {
    case CarrierKind::Finite: {
      Cursor c{t, 0, 0};
      Int v = parse_int_at(c, "element");
      if (!c.done() || !v.fits_slong_p()) throw ValidationError("bad finite element '" + text + "'");
      Element e = Element::fin(v.get_si());
      g.carrier->require(e);
      return e;
    }
    case CarrierKind::Abelian: {
      // bracketed "[1,-2]" or bare "1,-2" (command-line friendly)
      std::vector<Int> v;
      if (!t.empty() && t.front() == '[') {
        Cursor c{t, 0, 0};
        v = parse_int_list(c, "element");
        if (!c.done()) throw ValidationError("bad element '" + text + "'");
      } else {
        size_t start = 0;
        while (start <= t.size()) {
          size_t comma = t.find(',', start);
          std::string part = strip(t.substr(start, comma == std::string::npos
                                                       ? std::string::npos
                                                       : comma - start));
          v.push_back(parse_int(part));
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      }
      const auto& ab = static_cast<const AbelianCarrier&>(*g.carrier);
      if (v.size() != ab.dim()) throw ValidationError("element has wrong coordinate count");
      return Element::vec(ab.normalize(std::move(v)));
    }
    case CarrierKind::Rationals:
      return Element::rat(parse_rat(t));
    default: {
      if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw ValidationError("semidirect elements look like (x;b)");
      std::string inner = t.substr(1, t.size() - 2);
      int depth = 0;
      size_t split = std::string::npos;
      for (size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(' || inner[i] == '[') ++depth;
        if (inner[i] == ')' || inner[i] == ']') --depth;
        if (inner[i] == ';' && depth == 0) {
          split = i;
          break;
        }
      }
      if (split == std::string::npos) throw ValidationError("semidirect elements look like (x;b)");
      const auto& sd = static_cast<const SemidirectCarrier&>(*g.carrier);
      Element x = parse_element(sd.x(), inner.substr(0, split));
      Element b = parse_element(sd.b(), inner.substr(split + 1));
      return Element::pair(std::move(x), std::move(b));
    }
  }
}

}  // namespace rog
