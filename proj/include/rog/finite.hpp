#ifndef ROG_FINITE_HPP
#define ROG_FINITE_HPP

#include <vector>

#include "rog/finite_table.hpp"
#include "rog/group.hpp"
#include "rog/morphism.hpp"

namespace rog {

// Least subset containing S and the identity, closed under the operation.
// Finite submonoids of groups are subgroups, so the result is one.
std::vector<int> submonoid_closure(const FiniteGroupTable& g, const std::vector<int>& seed);

// Least submonoid containing M and closed under g+m-g for all g. Idempotent;
// the identity on abelian tables.
std::vector<int> conjugation_closure(const FiniteGroupTable& g, const std::vector<int>& m);

bool is_subgroup(const FiniteGroupTable& g, const std::vector<int>& h);
bool is_normal(const FiniteGroupTable& g, const std::vector<int>& h,
               std::pair<int, int>* witness = nullptr);

std::vector<int> normal_closure(const FiniteGroupTable& g, const std::vector<int>& seed);

// Coset table of G/N plus the projection index map (identity coset is 0,
// cosets ordered by least member). Throws ValidationError with a conjugation
// witness when N is not normal.
struct FiniteQuotient {
  FiniteGroupTable table;
  std::vector<int> projection;  // G index -> quotient index
};
FiniteQuotient quotient(const FiniteGroupTable& g, const std::vector<int>& n);

// All subgroups (equivalently all submonoids), sorted by size then
// lexicographic element list. Throws ResourceError above the cap.
std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroupTable& g, unsigned cap = 24);

// A small generating set (greedy).
std::vector<int> generating_set(const FiniteGroupTable& g);

// All automorphisms as permutation tables (index 0 fixed). Intended for
// small orders; cost grows with order!.
std::vector<std::vector<int>> automorphisms(const FiniteGroupTable& g);

// All homomorphisms a -> b up to `cap` many (deterministic order), found by
// assigning images to a generating set of a and propagating.
std::vector<std::vector<int>> homomorphisms(const FiniteGroupTable& a,
                                            const FiniteGroupTable& b, size_t cap);

// RPGroup wrappers.
RPGroup finite_rpgroup(FiniteGroupTable t, std::vector<int> cone_members, std::string name = "");

}  // namespace rog

#endif
