#include "rog/report.hpp"

#include <sstream>

namespace rog {

std::string tri_text(const Tri& t) { return t.str(); }

void Report::verdict(const std::string& name, const Tri& t, std::optional<std::string> witness) {
  verdicts.push_back({name, t, std::move(witness)});
}

bool Report::any_no() const {
  for (const auto& v : verdicts)
    if (v.tri.is_no()) return true;
  return false;
}

Json Report::to_json() const {
  Json out = Json::object();
  out["command"] = command;
  out["inputs"] = inputs;
  Json vs = Json::array();
  for (const auto& v : verdicts) {
    Json e = Json::object();
    e["name"] = v.name;
    e["value"] = v.tri.str();
    if (v.tri.is_unknown()) e["bound"] = v.tri.bound;
    if (v.witness) e["witness"] = *v.witness;
    vs.push_back(std::move(e));
  }
  out["verdicts"] = std::move(vs);
  out["objects"] = objects;
  if (!notes.empty()) out["notes"] = notes;
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "== " << command << "\n";
  if (!inputs.empty()) {
    for (auto it = inputs.begin(); it != inputs.end(); ++it)
      os << "   " << it.key() << ": "
         << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
  }
  for (const auto& v : verdicts) {
    os << "   " << v.name << ": " << v.tri.str();
    if (v.tri.is_unknown()) os << " (bound " << v.tri.bound << ")";
    if (v.witness) os << "  [witness " << *v.witness << "]";
    os << "\n";
  }
  if (!objects.empty()) {
    for (auto it = objects.begin(); it != objects.end(); ++it)
      os << "   " << it.key() << " = "
         << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
  }
  for (const auto& n : notes) os << "   note: " << n << "\n";
  return os.str();
}

Json group_json(const RPGroup& g) {
  Json out = Json::object();
  out["carrier"] = g.carrier->describe();
  out["cone"] = g.cone->describe();
  switch (g.carrier->kind()) {
    case CarrierKind::Finite:
      out["order"] = std::to_string(*g.carrier->order());
      break;
    case CarrierKind::Abelian: {
      const auto& ab = static_cast<const AbelianCarrier&>(*g.carrier);
      out["rank"] = ab.rank();
      Json tor = Json::array();
      for (const Int& d : ab.torsion()) tor.push_back(d.get_str());
      out["torsion"] = std::move(tor);
      break;
    }
    default:
      break;
  }
  if (auto gens = g.cone->generators()) {
    Json gj = Json::array();
    for (const Element& e : *gens) gj.push_back(g.carrier->show(e));
    out["cone_generators"] = std::move(gj);
  }
  return out;
}

Json morphism_json(const Morphism& f) {
  Json out = Json::object();
  out["source"] = f.source.describe();
  out["target"] = f.target.describe();
  switch (f.rep) {
    case Morphism::Rep::FiniteTable: {
      Json t = Json::array();
      for (int v : f.table) t.push_back(v);
      out["table"] = std::move(t);
      break;
    }
    case Morphism::Rep::Matrix: {
      Json rows = Json::array();
      for (size_t i = 0; i < f.mat.rows; ++i) {
        Json r = Json::array();
        for (size_t j = 0; j < f.mat.cols; ++j) r.push_back(f.mat.at(i, j).get_str());
        rows.push_back(std::move(r));
      }
      out["matrix"] = std::move(rows);
      break;
    }
    case Morphism::Rep::Scalar:
      out["scalar"] = show_rat(f.scalar);
      break;
    default:
      out["map"] = "structural";
  }
  return out;
}

Json class_json(const Morphism& f, const MorphClass& c) {
  Json out = morphism_json(f);
  auto put = [&](const char* key, const Tri& t, const std::optional<Element>& w,
                 const RPGroup& home) {
    Json e = Json::object();
    e["value"] = t.str();
    if (t.is_unknown()) e["bound"] = t.bound;
    if (w) e["witness"] = home.carrier->show(*w);
    out[key] = std::move(e);
  };
  put("mono", c.mono, c.mono_witness, f.source);
  put("epi", c.epi, c.epi_witness, f.target);
  put("regular_mono", c.regular_mono, c.regmono_witness, f.source);
  put("regular_epi", c.regular_epi, c.regepi_witness, f.target);
  put("iso", c.iso, std::nullopt, f.source);
  return out;
}

Json analysis_json(const SemidirectGroup& s, const SplitExtAnalysis& a) {
  Json out = Json::object();
  out["group"] = s.group.describe();
  auto tri = [](const Tri& t) {
    Json e = Json::object();
    e["value"] = t.str();
    if (t.is_unknown()) e["bound"] = t.bound;
    return e;
  };
  out["condition_iii"] = tri(a.condition_iii);
  out["lex_compatible"] = tri(a.lex_compatible);
  out["prod_compatible"] = tri(a.prod_compatible);
  out["exists_compatible"] = tri(a.exists_compatible);
  if (a.witness_b)
    out["condition_iii_witness_b"] = s.b.carrier->show(*a.witness_b);
  if (a.witness_x)
    out["condition_iii_witness_x"] = s.x.carrier->show(*a.witness_x);
  if (a.prod_witness_b) out["prod_witness_b"] = s.b.carrier->show(*a.prod_witness_b);
  if (a.prod_witness_x) out["prod_witness_x"] = s.x.carrier->show(*a.prod_witness_x);
  Json inv = Json::array();
  for (const Element& e : a.invertible_part_generators) inv.push_back(s.b.carrier->show(e));
  out["invertible_part_generators"] = std::move(inv);
  out["invertible_part_exact"] = tri(a.invertible_exact);
  out["lex_closure_crosscheck"] = tri(a.lex_closure_crosscheck);
  out["crosscheck_note"] = a.crosscheck_note;
  if (a.enumerated_cones) {
    Json cones = Json::array();
    for (const auto& c : *a.enumerated_cones) {
      Json cj = Json::array();
      for (int i : c) cj.push_back(i);
      cones.push_back(std::move(cj));
    }
    out["compatible_cones"] = std::move(cones);
  }
  return out;
}

}  // namespace rog
