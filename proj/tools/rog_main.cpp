// rog: a calculator for right-preordered groups given as (group, cone) pairs.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rog/report.hpp"
#include "rog/scenarios.hpp"
#include "rog/workspace.hpp"

using namespace rog;

namespace {

struct Options {
  long bound = 512;
  long cap = 24;
  long seed = 0;
  std::string output = "text";

  SearchBudget budget() const { return SearchBudget{bound, 200000}; }
};

Workspace load(const std::string& path, const Options& opt) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str(), opt.bound);
}

int emit(const Report& r, const Options& opt, int code_on_no = 0) {
  if (opt.output == "json")
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.to_text();
  return (code_on_no != 0 && r.any_no()) ? code_on_no : 0;
}

std::string witness_str(const RPGroup& g, const std::optional<Element>& w) {
  return w ? g.carrier->show(*w) : std::string();
}

void add_witness(Report& rep, const std::string& name, const Tri& t, const RPGroup& g,
                 const std::optional<Element>& w) {
  if (w)
    rep.verdict(name, t, g.carrier->show(*w));
  else
    rep.verdict(name, t);
}

// --- commands ---------------------------------------------------------------

int cmd_check(const Workspace& ws, const std::vector<std::string>& names, const Options& opt) {
  Report rep;
  rep.command = "check";
  SearchBudget budget = opt.budget();
  std::vector<std::string> gnames = names;
  if (gnames.empty()) {
    for (const auto& [n, g] : ws.groups) gnames.push_back(n);
    for (const auto& [n, f] : ws.morphisms) gnames.push_back(n);
  }
  for (const std::string& n : gnames) {
    if (ws.groups.count(n)) {
      const RPGroup& g = ws.groups.at(n);
      rep.objects[n] = group_json(g);
      rep.verdict(n + ".cone_contains_zero", g.cone->contains(g.carrier->zero(), budget));
      // closure sampled on cone generators
      if (auto gens = g.cone->generators()) {
        Tri closed = Tri::yes();
        std::optional<std::string> w;
        for (size_t i = 0; i < gens->size() && !closed.is_no(); ++i)
          for (size_t j = 0; j < gens->size(); ++j) {
            Element s = g.carrier->op((*gens)[i], (*gens)[j]);
            Tri t = g.cone->contains(s, budget);
            if (t.is_no()) {
              closed = t;
              w = g.carrier->show(s);
              break;
            }
            closed = tri_and(closed, t);
          }
        rep.verdict(n + ".cone_closed_under_op", closed, w);
      }
    } else if (ws.morphisms.count(n)) {
      const Morphism& f = ws.morphisms.at(n);
      rep.objects[n] = morphism_json(f);
      rep.verdict(n + ".homomorphism", Tri::yes());  // validated at load
      MonotoneResult m = is_monotone_witness(f, budget);
      add_witness(rep, n + ".monotone", m.verdict, f.source, m.witness);
    } else {
      throw ValidationError("unknown name '" + n + "'");
    }
  }
  return emit(rep, opt, 1);
}

int cmd_classify(const Workspace& ws, const std::string& name, const Options& opt) {
  const Morphism& f = need_morphism(ws, name);
  MorphClass c = classify(f, opt.budget());
  Report rep;
  rep.command = "classify";
  rep.inputs["morphism"] = name;
  rep.objects[name] = class_json(f, c);
  rep.verdict("mono", c.mono, c.mono_witness ? std::optional<std::string>(
                                                   f.source.carrier->show(*c.mono_witness))
                                             : std::nullopt);
  rep.verdict("epi", c.epi, c.epi_witness ? std::optional<std::string>(
                                                f.target.carrier->show(*c.epi_witness))
                                          : std::nullopt);
  rep.verdict("regular_mono", c.regular_mono,
              c.regmono_witness
                  ? std::optional<std::string>(f.source.carrier->show(*c.regmono_witness))
                  : std::nullopt);
  rep.verdict("regular_epi", c.regular_epi,
              c.regepi_witness
                  ? std::optional<std::string>(f.target.carrier->show(*c.regepi_witness))
                  : std::nullopt);
  rep.verdict("iso", c.iso);
  return emit(rep, opt);
}

int cmd_factorize(const Workspace& ws, const std::string& name, const Options& opt) {
  const Morphism& f = need_morphism(ws, name);
  Factorizations fs = factorize(f);
  Report rep;
  rep.command = "factorize";
  rep.inputs["morphism"] = name;
  rep.objects["middle_epi_regmono"] = group_json(fs.epi_regmono_middle);
  rep.objects["e"] = morphism_json(fs.e);
  rep.objects["m"] = morphism_json(fs.m);
  rep.objects["middle_regepi_mono"] = group_json(fs.regepi_mono_middle);
  rep.objects["e2"] = morphism_json(fs.e2);
  rep.objects["m2"] = morphism_json(fs.m2);
  rep.verdict("m.e_equals_f", Tri::of(maps_equal(compose(fs.m, fs.e), f)));
  rep.verdict("m2.e2_equals_f", Tri::of(maps_equal(compose(fs.m2, fs.e2), f)));
  return emit(rep, opt);
}

int cmd_construct(const Workspace& ws, const std::vector<std::string>& args, const Options& opt) {
  if (args.empty()) throw ValidationError("construct needs a construction kind");
  const std::string& kind = args[0];
  Report rep;
  rep.command = "construct " + kind;
  auto store = [&rep](const ConstructedGroup& c) {
    rep.objects["object"] = group_json(c.object);
    for (const auto& leg : c.legs) rep.objects[leg.label] = morphism_json(leg);
  };
  auto arg = [&](size_t i) -> const std::string& {
    if (i >= args.size()) throw ValidationError("construct " + kind + ": missing argument");
    return args[i];
  };
  if (kind == "product") {
    store(product(need_group(ws, arg(1)), need_group(ws, arg(2))));
  } else if (kind == "equalizer") {
    store(equalizer(need_morphism(ws, arg(1)), need_morphism(ws, arg(2))));
  } else if (kind == "pullback") {
    store(pullback(need_morphism(ws, arg(1)), need_morphism(ws, arg(2))));
  } else if (kind == "kernel") {
    store(kernel(need_morphism(ws, arg(1))));
  } else if (kind == "coequalizer") {
    const Morphism& f = need_morphism(ws, arg(1));
    const Morphism& g = need_morphism(ws, arg(2));
    ConstructedGroup c = coequalizer(f, g);
    store(c);
    ConePreservationNote note = coequalizer_cone_note(f, g, c);
    rep.verdict("cone_functor_preserves", note.preserved);
    rep.notes.push_back(note.note);
  } else if (kind == "cokernel") {
    store(cokernel(need_morphism(ws, arg(1))));
  } else if (kind == "coproduct") {
    coproduct(need_group(ws, arg(1)), need_group(ws, arg(2)));  // always throws
  } else {
    throw ValidationError("unknown construction '" + kind + "'");
  }
  return emit(rep, opt);
}

int cmd_lift(const Workspace& ws, const std::vector<std::string>& args, const Options& opt) {
  if (args.size() < 2) throw ValidationError("lift needs a kind and a group");
  Report rep;
  rep.command = "lift " + args[0];
  const RPGroup& g = need_group(ws, args[1]);
  if (args[0] == "discrete") {
    rep.objects["object"] = group_json(discrete_lift(g.carrier));
  } else if (args[0] == "total") {
    rep.objects["object"] = group_json(total_lift(g.carrier));
  } else if (args[0] == "initial") {
    std::vector<Morphism> legs;
    for (size_t i = 2; i < args.size(); ++i) legs.push_back(need_morphism(ws, args[i]));
    for (auto& f : legs)
      if (f.source.carrier.get() != g.carrier.get())
        throw ValidationError("initial lift: morphism " + f.label + " does not start at " +
                              args[1]);
    ConePtr cone = initial_lift(g.carrier, legs);
    rep.objects["object"] = group_json(RPGroup{g.carrier, cone});
  } else {
    throw ValidationError("unknown lift '" + args[0] + "' (initial|discrete|total)");
  }
  return emit(rep, opt);
}

int cmd_reflect(const Workspace& ws, const std::string& name, const Options& opt) {
  Reflected r = reflect_to_ordgrp(need_group(ws, name));
  Report rep;
  rep.command = "reflect";
  rep.inputs["group"] = name;
  rep.objects["object"] = group_json(r.object);
  rep.objects["unit"] = morphism_json(r.unit);
  rep.verdict("unit_monotone", is_monotone(r.unit, opt.budget()));
  return emit(rep, opt);
}

int cmd_object_check(const Workspace& ws, const std::string& name, const Options& opt) {
  const RPGroup& g = need_group(ws, name);
  SearchBudget budget = opt.budget();
  GroupConeResult r = is_group_cone(g, budget);
  Report rep;
  rep.command = "object-check";
  rep.inputs["group"] = name;
  rep.objects[name] = group_json(g);
  std::optional<std::string> w =
      r.witness ? std::optional<std::string>(g.carrier->show(*r.witness)) : std::nullopt;
  rep.verdict("cone_is_group", r.verdict, w);
  rep.verdict("protomodular", r.verdict, w);
  rep.verdict("maltsev", r.verdict, w);
  rep.verdict("strongly_unital", r.verdict, w);
  rep.verdict("preorder_is_equivalence", r.verdict, w);
  SymmetricPart sym = symmetric_part(g, budget);
  rep.objects["symmetric_part"] = sym.cone->describe();
  rep.verdict("symmetric_part_exact", sym.exact);
  return emit(rep, opt);
}

int cmd_splitext(const Workspace& ws, const std::vector<std::string>& args, const Options& opt) {
  if (args.empty()) throw ValidationError("splitext needs a subcommand (analyze|enumerate|counterexample)");
  Report rep;
  SearchBudget budget = opt.budget();
  if (args[0] == "analyze") {
    if (args.size() < 2) throw ValidationError("splitext analyze needs a semidirect group");
    const SemidirectGroup& s = need_semidirect(ws, args[1]);
    bool enumerable = s.x.carrier->kind() == CarrierKind::Finite &&
                      s.b.carrier->kind() == CarrierKind::Finite &&
                      s.x.carrier->order().value_or(opt.cap + 1) *
                              s.b.carrier->order().value_or(opt.cap + 1) <=
                          static_cast<unsigned long>(opt.cap);
    SplitExtAnalysis a = analyze(s, budget, enumerable, static_cast<unsigned>(opt.cap));
    rep.command = "splitext analyze";
    rep.inputs["group"] = args[1];
    rep.objects["analysis"] = analysis_json(s, a);
    rep.verdict("condition_iii", a.condition_iii,
                a.witness_b ? std::optional<std::string>("b=" + s.b.carrier->show(*a.witness_b))
                            : std::nullopt);
    rep.verdict("lex_compatible", a.lex_compatible);
    rep.verdict("prod_compatible", a.prod_compatible,
                a.prod_witness_b
                    ? std::optional<std::string>("b=" + s.b.carrier->show(*a.prod_witness_b))
                    : std::nullopt);
    rep.verdict("exists_compatible", a.exists_compatible);
    rep.notes.push_back(a.crosscheck_note);
    return emit(rep, opt);
  }
  if (args[0] == "enumerate") {
    if (args.size() < 2) throw ValidationError("splitext enumerate needs a semidirect group");
    const SemidirectGroup& s = need_semidirect(ws, args[1]);
    auto cones = enumerate_compatible_cones(s, static_cast<unsigned>(opt.cap));
    rep.command = "splitext enumerate";
    rep.inputs["group"] = args[1];
    rep.objects["count"] = cones.size();
    Json arr = Json::array();
    for (const auto& c : cones) {
      Json cj = Json::array();
      for (int i : c) cj.push_back(i);
      arr.push_back(std::move(cj));
    }
    rep.objects["cones"] = std::move(arr);
    rep.verdict("compatible_cone_exists", Tri::of(!cones.empty()));
    return emit(rep, opt);
  }
  if (args[0] == "counterexample") {
    if (args.size() < 3)
      throw ValidationError("splitext counterexample needs a group and an element");
    const RPGroup& y = need_group(ws, args[1]);
    Element b = parse_element(y, args[2]);
    CounterexampleReport r = protomodular_counterexample(y, b, budget);
    rep.command = "splitext counterexample";
    rep.inputs["group"] = args[1];
    rep.inputs["element"] = args[2];
    rep.objects["product"] = group_json(r.product);
    rep.objects["query"] = r.product.carrier->show(r.query);
    rep.verdict("query_in_point_cone", r.membership);
    rep.verdict("point_is_strong", r.strong.verdict,
                r.strong.witness
                    ? std::optional<std::string>(r.product.carrier->show(*r.strong.witness))
                    : std::nullopt);
    return emit(rep, opt);
  }
  throw ValidationError("unknown splitext subcommand '" + args[0] + "'");
}

int cmd_jointly_epi(const Workspace& ws, const std::vector<std::string>& names,
                    const Options& opt) {
  std::vector<Morphism> legs;
  for (const auto& n : names) legs.push_back(need_morphism(ws, n));
  JointlyEpiResult r = jointly_strongly_epi(legs, opt.budget());
  Report rep;
  rep.command = "jointly-epi";
  Json in = Json::array();
  for (const auto& n : names) in.push_back(n);
  rep.inputs["morphisms"] = std::move(in);
  std::optional<std::string> w;
  if (r.witness && !legs.empty()) w = legs[0].target.carrier->show(*r.witness);
  rep.verdict("jointly_strongly_epi", r.verdict, w);
  if (!r.failed_condition.empty())
    rep.notes.push_back("failing condition: " + r.failed_condition + " generation");
  return emit(rep, opt);
}

int cmd_paper_examples(const Options& opt) {
  Report rep;
  rep.command = "paper-examples";
  rep.inputs["seed"] = opt.seed;
  auto results = run_scenario_bundle(opt.budget());
  for (const auto& r : results) {
    rep.verdict(r.name, Tri::of(r.pass));
    rep.notes.push_back(r.name + ": " + r.detail);
  }
  return emit(rep, opt, 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculator for right-preordered groups: cones, limits, colimits, "
               "factorizations, split extensions"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--bound", opt.bound, "search budget for semidecidable cone queries")
      ->capture_default_str();
  app.add_option("--cap", opt.cap, "enumeration cap (group orders)")->capture_default_str();
  app.add_option("--seed", opt.seed, "seed recorded for randomized suites")
      ->capture_default_str();
  app.add_option("--output", opt.output, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string file, name;
  std::vector<std::string> rest;

  auto* check = app.add_subcommand("check", "validate groups, cones and morphisms");
  check->add_option("file", file)->required();
  check->add_option("names", rest);

  auto* classify_c = app.add_subcommand("classify", "mono/epi/regular/iso classification");
  classify_c->add_option("file", file)->required();
  classify_c->add_option("morphism", name)->required();

  auto* factorize_c = app.add_subcommand("factorize", "both factorization systems");
  factorize_c->add_option("file", file)->required();
  factorize_c->add_option("morphism", name)->required();

  auto* construct_c = app.add_subcommand(
      "construct", "product|equalizer|pullback|kernel|coequalizer|cokernel|coproduct");
  construct_c->add_option("file", file)->required();
  construct_c->add_option("args", rest)->required();

  auto* lift_c = app.add_subcommand("lift", "initial|discrete|total");
  lift_c->add_option("file", file)->required();
  lift_c->add_option("args", rest)->required();

  auto* reflect_c = app.add_subcommand("reflect", "reflection into two-sided preordered groups");
  reflect_c->add_option("file", file)->required();
  reflect_c->add_option("group", name)->required();

  auto* object_c = app.add_subcommand("object-check", "protomodular-object tests");
  object_c->add_option("file", file)->required();
  object_c->add_option("group", name)->required();

  auto* splitext_c = app.add_subcommand("splitext", "analyze|enumerate|counterexample");
  splitext_c->add_option("file", file)->required();
  splitext_c->add_option("args", rest)->required();

  auto* jointly_c = app.add_subcommand("jointly-epi", "jointly-strongly-epimorphic test");
  jointly_c->add_option("file", file)->required();
  jointly_c->add_option("morphisms", rest)->required();

  auto* paper_c = app.add_subcommand("paper-examples", "run the bundled example scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (paper_c->parsed()) return cmd_paper_examples(opt);
    Workspace ws = load(file, opt);
    if (check->parsed()) return cmd_check(ws, rest, opt);
    if (classify_c->parsed()) return cmd_classify(ws, name, opt);
    if (factorize_c->parsed()) return cmd_factorize(ws, name, opt);
    if (construct_c->parsed()) return cmd_construct(ws, rest, opt);
    if (lift_c->parsed()) return cmd_lift(ws, rest, opt);
    if (reflect_c->parsed()) return cmd_reflect(ws, name, opt);
    if (object_c->parsed()) return cmd_object_check(ws, name, opt);
    if (splitext_c->parsed()) return cmd_splitext(ws, rest, opt);
    if (jointly_c->parsed()) return cmd_jointly_epi(ws, rest, opt);
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
