#ifndef ROG_ABELIAN_HPP
#define ROG_ABELIAN_HPP

#include <optional>
#include <vector>

#include "rog/group.hpp"
#include "rog/matrix.hpp"
#include "rog/morphism.hpp"

namespace rog {

// Z^n modulo the lattice spanned by the relation rows, in invariant-factor
// form. to_canonical maps old coordinates to canonical ones (apply, then
// normalize); from_canonical is a section: to_canonical(from_canonical(y)) = y.
struct PresentedGroup {
  AbelianPtr group;
  IntMatrix to_canonical;    // group->dim() x n
  IntMatrix from_canonical;  // n x group->dim()
};
PresentedGroup presented_group(const IntMatrix& relation_rows, size_t n_gens);

// The subgroup of `ambient` generated by `gens`, as an abstract group with
// its inclusion. gen_to_canonical sends the i-th standard basis vector of
// Z^k to the class of gens[i].
struct SubgroupPresentation {
  AbelianPtr group;
  IntMatrix gen_to_canonical;  // group->dim() x k
  IntMatrix inclusion;         // ambient.dim() x group->dim()
};
SubgroupPresentation subgroup_from_generators(const AbelianCarrier& ambient,
                                              const std::vector<std::vector<Int>>& gens);

// Solve m*t = x in the target group (congruences on torsion coordinates);
// t ranges over Z^cols.
std::optional<std::vector<Int>> solve_in_group(const AbelianCarrier& target,
                                               const IntMatrix& m, const std::vector<Int>& x);

// Generators (ambient coordinates) of {x : m*x = 0 in target}, as a
// subgroup of `source`. The source relation lattice is included.
std::vector<std::vector<Int>> kernel_subgroup_gens(const AbelianCarrier& source,
                                                   const AbelianCarrier& target,
                                                   const IntMatrix& m);

// --- affine monoid membership -------------------------------------------

// Breadth-first search over coefficient vectors ordered by total size.
//  Yes:     witness coefficients attached.
//  No:      exact. x is outside the generated subgroup (lattice
//             certificate), a positivity certificate bounds the complete
//             search, or the reachable set saturated.
//  Unknown: budget exhausted without a certificate.
struct MemberResult {
  Tri verdict;
  std::vector<Int> coeffs;  // witness when Yes
  const char* reason = "";  // "lattice" | "certificate" | "saturated" | "found" | "budget"
};
MemberResult cone_member(const AffineMonoid& m, const std::vector<Int>& x,
                         const SearchBudget& budget = {});

// The positivity certificate used for exact No answers: an integer linear
// functional on the free coordinates, strictly positive on every generator.
std::optional<std::vector<Int>> positivity_certificate(const AffineMonoid& m);

// Yes iff every generator has its negation in the monoid (commutative
// carriers: the monoid is then a group).
struct GregariousResult {
  Tri verdict;
  std::optional<size_t> witness_gen;  // index of a non-invertible generator
};
GregariousResult is_gregarious(const AffineMonoid& m, const SearchBudget& budget = {});

// Group completion: the subgroup of the ambient generated by the monoid's
// generators, carrying the monoid as its cone (re-expressed in the new
// coordinates).
struct Completion {
  RPGroup group;
  IntMatrix gen_to_canonical;  // Z^k -> completion coordinates
};
Completion grothendieck_completion(const AffineMonoid& m);

// Yes iff the cone is a group, i.e. equals its symmetric part; by the
// protomodularity theorem this single test classifies the object as
// protomodular / Mal'tsev / strongly unital.
struct GroupConeResult {
  Tri verdict;
  std::optional<Element> witness;  // positive element with no positive inverse
};
GroupConeResult is_group_cone(const RPGroup& g, const SearchBudget& budget = {});

// RPGroup helpers.
RPGroup z_natural();                 // (Z, N)
RPGroup z_with(ConeKind builtin);    // (Z, {0}) / (Z, Z)
RPGroup abelian_rpgroup(AbelianPtr c, ConePtr p);

}  // namespace rog

#endif
