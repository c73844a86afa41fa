#include "rog/scenarios.hpp"

#include <sstream>

#include "rog/abelian.hpp"
#include "rog/catops.hpp"
#include "rog/errors.hpp"
#include "rog/splitext.hpp"

namespace rog {

namespace {

Element zi(long v) { return Element::vec({Int(v)}); }
Element pr(Element a, Element b) { return Element::pair(std::move(a), std::move(b)); }

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "FAILED: " << what << "; ";
    }
  }
  ScenarioResult result(const std::string& name, const std::string& ok_msg) {
    return {name, pass, pass ? ok_msg : detail.str()};
  }
};

ScenarioResult coequalizer_scenario() {
  Check c;
  RPGroup zd = z_with(ConeKind::Trivial);
  RPGroup zn = z_natural();
  Morphism f = matrix_morphism(zd, zn, IntMatrix::from_rows({{Int(1)}}), "f");
  Morphism g = matrix_morphism(zd, zn, IntMatrix::from_rows({{Int(2)}}), "g");
  ConstructedGroup q = coequalizer(f, g);
  c.expect(static_cast<const AbelianCarrier&>(*q.object.carrier).dim() == 0,
           "coequalizer carrier is trivial");
  c.expect(q.object.cone->contains(q.object.carrier->zero()).is_yes(), "cone contains 0");
  ConePreservationNote note = coequalizer_cone_note(f, g, q);
  c.expect(note.preserved.is_no(), "positive-cone functor does not preserve this coequalizer");
  return c.result("coequalizer-cone-collapse",
                  "coequalizer is the zero map onto the trivial group; monoid-level "
                  "coequalizer stays the identity on N");
}

ScenarioResult group_cone_scenario() {
  Check c;
  c.expect(is_group_cone(z_natural()).verdict.is_no(), "(Z,N) cone is not a group");
  c.expect(is_group_cone(z_with(ConeKind::Total)).verdict.is_yes(), "(Z,Z) cone is a group");
  c.expect(is_group_cone(z_with(ConeKind::Trivial)).verdict.is_yes(), "(Z,{0}) cone is a group");
  return c.result("group-cone-objects",
                  "(Z,N) fails, (Z,Z) and (Z,{0}) pass the protomodular-object test");
}

ScenarioResult counterexample_scenario() {
  Check c;
  CounterexampleReport r = protomodular_counterexample(z_natural(), zi(1));
  c.expect(r.membership.is_no(), "(0,1) lies outside the point submonoid");
  c.expect(r.strong.verdict.is_no(), "the point over (Z,N) is not strong");
  c.expect(r.strong.witness.has_value() &&
               r.strong.witness->vec() == std::vector<Int>{0, 1},
           "witness is (0,1)");
  return c.result("non-strong-point", "(0,b) escapes the submonoid generated by the kernel "
                                      "and section images");
}

ScenarioResult flip_natural_scenario() {
  Check c;
  RPGroup x = z_natural();
  RPGroup b = z_with(ConeKind::Total);
  auto act = GroupAction::matrix_action(x, b, {IntMatrix::from_rows({{Int(-1)}})});
  SemidirectGroup s = semidirect(x, b, act, ConePolicy::Lex);
  SplitExtAnalysis a = analyze(s);
  c.expect(a.exists_compatible.is_no(), "no compatible right-preorder exists");
  c.expect(a.witness_b && abs(a.witness_b->vec()[0]) == 1, "witness b = +-1");
  c.expect(a.witness_x && a.witness_x->vec()[0] == 1, "witness x = 1");
  c.expect(a.lex_closure_crosscheck.is_no(), "sampled closure of P_lex also fails");
  return c.result("flip-extension-natural-cone",
                  "phi_b(x) = (-1)^b x with P_X = N admits no compatible cone; witness b = 1");
}

ScenarioResult flip_discrete_scenario() {
  Check c;
  RPGroup x = z_with(ConeKind::Trivial);
  RPGroup b = z_with(ConeKind::Total);
  auto act = GroupAction::matrix_action(x, b, {IntMatrix::from_rows({{Int(-1)}})});
  SemidirectGroup s = semidirect(x, b, act, ConePolicy::Prod);
  SplitExtAnalysis a = analyze(s);
  c.expect(a.prod_compatible.is_yes(), "P_prod is compatible");
  c.expect(a.lex_compatible.is_yes(), "P_lex is compatible");
  for (long xv = -2; xv <= 2 && c.pass; ++xv)
    for (long bv = -2; bv <= 2; ++bv) {
      Element e = pr(zi(xv), zi(bv));
      if (!tri_same(prod_member(s, e), lex_member(s, e))) {
        c.expect(false, "P_prod coincides with P_lex");
        break;
      }
    }
  // the two-sided obstruction premise: the same flip is not monotone on the
  // usual order of Z
  RPGroup xn = z_natural();
  auto act_n = GroupAction::matrix_action(xn, b, {IntMatrix::from_rows({{Int(-1)}})});
  MonotoneResult m = act_n->monotone_on(zi(1));
  c.expect(m.verdict.is_no(), "phi_1 is not monotone on the reference cone N");
  c.expect(m.witness && m.witness->vec()[0] == 1, "obstruction witness x = 1");
  return c.result("flip-extension-discrete-cone",
                  "with P_X = {0} the product cone works and equals the lex cone; phi_1 "
                  "still reverses the usual order of Z");
}

ScenarioResult rational_scenario(const Rat& q, bool expect_prod, const std::string& name) {
  Check c;
  RPGroup x = make_rpgroup(q_carrier(), orthant_cone(q_carrier()));
  RPGroup b = z_natural();
  auto act = GroupAction::scalar_action(x, b, q);
  SemidirectGroup s = semidirect(x, b, act, ConePolicy::Lex);
  SplitExtAnalysis a = analyze(s);
  c.expect(a.lex_compatible.is_yes(), "lex cone compatible (antisymmetric base)");
  c.expect(a.exists_compatible.is_yes(), "a compatible cone exists");
  if (expect_prod) {
    c.expect(a.prod_compatible.is_yes(), "prod cone compatible for positive q");
  } else {
    c.expect(a.prod_compatible.is_no(), "prod cone incompatible for negative q");
    c.expect(a.prod_witness_b && a.prod_witness_b->vec()[0] == 1, "witness b = 1");
  }
  return c.result(name, expect_prod
                            ? "positive scaling keeps both cones compatible"
                            : "negative scaling keeps lex compatible; phi_1 is not monotone");
}

// Half-plane cones P_beta = {(x,b) : b >= 0 and x + beta*b >= 0} on Z x Z
// over X = B = (Z, N) with the trivial action: an infinite family of
// compatible cones, sampled at five slopes.
ScenarioResult half_plane_family_scenario() {
  Check c;
  RPGroup x = z_natural(), b = z_natural();
  SemidirectGroup base = semidirect(x, b, GroupAction::trivial(x, b), ConePolicy::Prod);
  CarrierPtr carrier = base.group.carrier;

  std::vector<Rat> slopes{Rat(0), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
  auto member = [&](const Rat& beta, const Element& e) {
    const Int& xv = e.pr().first.vec()[0];
    const Int& bv = e.pr().second.vec()[0];
    if (bv < 0) return false;
    return beta.get_den() * xv + beta.get_num() * bv >= 0;
  };

  for (const Rat& beta : slopes) {
    // submonoid + sandwich + kernel condition on a grid
    for (long xv = -6; xv <= 6; ++xv)
      for (long bv = -6; bv <= 6; ++bv) {
        Element e = pr(zi(xv), zi(bv));
        bool in_beta = member(beta, e);
        if (prod_member(base, e).is_yes())
          c.expect(in_beta, "P_prod inside the half-plane cone (slope " + show_rat(beta) + ")");
        if (in_beta)
          c.expect(lex_member(base, e).is_yes(),
                   "half-plane cone inside P_lex (slope " + show_rat(beta) + ")");
        if (bv == 0)
          c.expect(in_beta == (xv >= 0),
                   "kernel condition at x = " + std::to_string(xv));
      }
    for (long x1 = -4; x1 <= 4; ++x1)
      for (long b1 = -4; b1 <= 4; ++b1)
        for (long x2 = -4; x2 <= 4; ++x2)
          for (long b2 = -4; b2 <= 4; ++b2) {
            Element e1 = pr(zi(x1), zi(b1)), e2 = pr(zi(x2), zi(b2));
            if (member(beta, e1) && member(beta, e2))
              c.expect(member(beta, carrier->op(e1, e2)),
                       "closure at slope " + show_rat(beta));
          }
  }
  // pairwise distinct: a separating integer point between any two slopes
  for (size_t i = 0; i < slopes.size(); ++i)
    for (size_t j = i + 1; j < slopes.size(); ++j) {
      const Rat &b1 = slopes[i], &b2 = slopes[j];  // b1 < b2
      Int xv = -(b1.get_num() * b2.get_den() + b2.get_num() * b1.get_den());
      Int bv = 2 * b1.get_den() * b2.get_den();
      Element e = pr(Element::vec({xv}), Element::vec({bv}));
      c.expect(!member(b1, e) && member(b2, e),
               "separating point between slopes " + show_rat(b1) + " and " + show_rat(b2));
    }
  return c.result("half-plane-family",
                  "five half-plane cones are compatible and pairwise distinct");
}

}  // namespace

std::vector<ScenarioResult> run_scenario_bundle(const SearchBudget&) {
  std::vector<ScenarioResult> out;
  out.push_back(coequalizer_scenario());
  out.push_back(group_cone_scenario());
  out.push_back(counterexample_scenario());
  out.push_back(flip_natural_scenario());
  out.push_back(flip_discrete_scenario());
  out.push_back(rational_scenario(Rat(-2), false, "rational-scaling-negative"));
  out.push_back(rational_scenario(Rat(1, 2), true, "rational-scaling-positive"));
  out.push_back(half_plane_family_scenario());
  return out;
}

}  // namespace rog
