#include "doctest.h"
#include "rog/report.hpp"
#include "rog/scenarios.hpp"
#include "rog/workspace.hpp"

using namespace rog;

namespace {

const char* kDemo = R"(
# comment
[group.Zn]
kind = builtin
carrier = Z
cone = natural

[group.K4]
kind = finite
table = [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]
cone = [0,1]

[group.A]
kind = abelian
rank = 1
torsion = [2,6]
cone = generated
generators = [[1,0,0]]

[group.Q]
kind = builtin
carrier = Q
cone = nonneg

[group.Zt]
kind = builtin
carrier = Z
cone = total

[action.flip]
kind = matrix
actor = Zt
acted = Zn
images = [[[-1]]]

[group.S]
kind = semidirect
x = Zn
b = Zt
action = flip
cone = lex

[morphism.double]
source = Zn
target = Zn
matrix = [[2]]
)";

}  // namespace

TEST_CASE("parse_workspace builds every backend") {
  Workspace ws = parse_workspace(kDemo);
  CHECK(ws.groups.size() == 6);
  CHECK(ws.actions.size() == 1);
  CHECK(ws.morphisms.size() == 1);
  CHECK(ws.semidirects.size() == 1);

  const RPGroup& zn = need_group(ws, "Zn");
  CHECK(zn.cone->contains(Element::vec({Int(4)})).is_yes());
  const RPGroup& a = need_group(ws, "A");
  const auto& ac = static_cast<const AbelianCarrier&>(*a.carrier);
  CHECK(ac.rank() == 1);
  CHECK(ac.torsion() == std::vector<Int>{2, 6});
  const SemidirectGroup& s = need_semidirect(ws, "S");
  CHECK(lex_member(s, Element::pair(Element::vec({Int(-1)}), Element::vec({Int(3)}))).is_no());
}

TEST_CASE("parse errors name the line and field") {
  CHECK_THROWS_WITH_AS(parse_workspace("[group.G]\nkind = finite\n"),
                       doctest::Contains("missing the field 'table'"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_workspace("x = 1\n"), doctest::Contains("line 1"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_workspace("[group.G]\nkind = finite\ntable = [[0,1],[1,0]\ncone = [0]\n"),
                       doctest::Contains("line 3"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_workspace("[group.G]\nkind = abelian\nrank = 1\ntorsion = [4,2]\ncone = total\n"),
      doctest::Contains("divisibility"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_workspace("[morphism.f]\nsource = X\ntarget = X\nmatrix = [[1]]\n"),
      doctest::Contains("unknown group"), ValidationError);
}

TEST_CASE("finite tables with displaced identity relabel cones consistently") {
  // Z/2 with identity written at index 1; the declared cone {1} is the
  // identity-only cone after relabeling
  const char* doc = R"(
[group.G]
kind = finite
table = [[1,0],[0,1]]
cone = [1]
)";
  Workspace ws = parse_workspace(doc);
  const RPGroup& g = need_group(ws, "G");
  CHECK(g.cone->contains(Element::fin(0)).is_yes());
  CHECK(g.cone->contains(Element::fin(1)).is_no());
}

TEST_CASE("parse_element per backend") {
  Workspace ws = parse_workspace(kDemo);
  CHECK(parse_element(need_group(ws, "Zn"), "[-3]") == Element::vec({Int(-3)}));
  CHECK(parse_element(need_group(ws, "K4"), "2") == Element::fin(2));
  CHECK(parse_element(need_group(ws, "Q"), "3/4") == Element::rat(Rat(3, 4)));
  Element p = parse_element(need_group(ws, "S"), "([1];[-2])");
  CHECK(p.pr().first.vec()[0] == 1);
  CHECK(p.pr().second.vec()[0] == -2);
  CHECK_THROWS_AS(parse_element(need_group(ws, "K4"), "7"), DomainError);
}

TEST_CASE("reports serialize deterministically") {
  Report r;
  r.command = "demo";
  r.inputs["group"] = "Zn";
  r.verdict("alpha", Tri::yes());
  r.verdict("beta", Tri::unknown(42));
  r.verdict("gamma", Tri::no(), "w");
  std::string a = r.to_json().dump(2);
  std::string b = r.to_json().dump(2);
  CHECK(a == b);
  CHECK(a.find("\"bound\": 42") != std::string::npos);
  CHECK(r.any_no());
  std::string text = r.to_text();
  CHECK(text.find("beta: unknown (bound 42)") != std::string::npos);
}

TEST_CASE("the scenario bundle passes and is deterministic") {
  auto r1 = run_scenario_bundle();
  auto r2 = run_scenario_bundle();
  REQUIRE(r1.size() == r2.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].pass);
    CHECK(r1[i].name == r2[i].name);
    CHECK(r1[i].detail == r2[i].detail);
  }
}

TEST_CASE("parse_element accepts bare coordinate lists for CLI arguments") {
  Workspace ws = parse_workspace(kDemo);
  CHECK(parse_element(need_group(ws, "Zn"), "-3") == Element::vec({Int(-3)}));
  CHECK(parse_element(need_group(ws, "A"), "1,0,3") ==
        Element::vec({Int(1), Int(0), Int(3)}));
  Element p = parse_element(need_group(ws, "S"), "(2;-1)");
  CHECK(p.pr().first.vec()[0] == 2);
  CHECK(p.pr().second.vec()[0] == -1);
}
