#ifndef ROG_WORKSPACE_HPP
#define ROG_WORKSPACE_HPP

#include <map>
#include <string>

#include "rog/splitext.hpp"

namespace rog {

// A parsed input document: named groups, actions and morphisms. The format
// is a sectioned key-value file:
//
//   [group.K4]
//   kind = finite
//   table = [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]
//   cone = [0,1]
//
//   [group.Z]
//   kind = builtin
//   carrier = Z          # Z | Q
//   cone = natural       # Z: trivial|natural|total|generated; Q: nonneg|trivial|total
//   generators = [[2],[3]]
//
//   [group.A]
//   kind = abelian
//   rank = 2
//   torsion = [2,6]
//   cone = generated     # trivial|total|orthant|generated
//   generators = [[1,0,0,0]]
//
//   [group.S]
//   kind = semidirect
//   x = A
//   b = Z
//   action = act
//   cone = lex           # prod|lex
//
//   [action.act]
//   kind = matrix        # matrix | permutation | scalar | trivial
//   actor = Z
//   acted = A
//   images = [[[ -1 ]]]  # matrix: one per actor coordinate
//   # permutation: gens = [1], images = [[0,2,1]]
//   # scalar: value = -2 or 1/2
//
//   [morphism.f]
//   source = Z
//   target = Z
//   matrix = [[2]]       # or table = [0,1,...] or scalar = 1/2
//
// Every parse error names the line and field.
struct Workspace {
  std::map<std::string, RPGroup> groups;
  std::map<std::string, ActionPtr> actions;
  std::map<std::string, Morphism> morphisms;
  std::map<std::string, SemidirectGroup> semidirects;
  long default_bound = 512;
};

Workspace parse_workspace(const std::string& text, long default_bound = 512);

const RPGroup& need_group(const Workspace& ws, const std::string& name);
const Morphism& need_morphism(const Workspace& ws, const std::string& name);
const SemidirectGroup& need_semidirect(const Workspace& ws, const std::string& name);

// Element literals: finite index "3", integer vector "[1,-2]", rational
// "3/4", semidirect pair "([1];2)".
Element parse_element(const RPGroup& g, const std::string& text);

}  // namespace rog

#endif
