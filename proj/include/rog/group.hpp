#ifndef ROG_GROUP_HPP
#define ROG_GROUP_HPP

#include <memory>
#include <string>
#include <vector>

#include "rog/cone.hpp"

namespace rog {

// A right-preordered group: carrier plus positive cone. The preorder is
// x <= y iff y - x lies in the cone.
struct RPGroup {
  CarrierPtr carrier;
  ConePtr cone;

  std::string describe() const {
    return "(" + carrier->describe() + ", " + cone->describe() + ")";
  }
};

RPGroup make_rpgroup(CarrierPtr c, ConePtr p);

// Same object of the category: identical carrier and the same cone (shared,
// or at least structurally indistinguishable).
bool same_object(const RPGroup& a, const RPGroup& b);

// Cone membership of y - x (right-invariant preorder induced by the cone).
Tri leq(const RPGroup& g, const Element& x, const Element& y,
        const SearchBudget& budget = {});

// b ~ 0: both b and -b positive.
Tri equiv_zero(const RPGroup& g, const Element& b, const SearchBudget& budget = {});

// P intersect -P, the symmetric part of the preorder; a subgroup whenever
// returned exactly. For abelian generated cones this is the subgroup spanned
// by the generators whose negation lies in the cone (commutative carriers
// only; property-tested against brute force).
struct SymmetricPart {
  ConePtr cone;
  Tri exact;  // Yes: cone below is P /\ -P exactly; Unknown: best effort
};
SymmetricPart symmetric_part(const RPGroup& g, const SearchBudget& budget = {});

// Explicit reflexive relation on a finite carrier, rel[x*n+y] = (x <= y).
struct ExplicitRelation {
  size_t n = 0;
  std::vector<char> rel;

  bool at(size_t x, size_t y) const { return rel[x * n + y] != 0; }
  void set(size_t x, size_t y) { rel[x * n + y] = 1; }
  static ExplicitRelation empty(size_t n);
  bool operator==(const ExplicitRelation& o) const = default;
};

// The positive cone {x : 0 <= x} of a validated right-preorder on a finite
// carrier. Throws ValidationError naming the violated axiom and a witness
// when rel is not reflexive, transitive and right-invariant.
ConePtr cone_from_preorder(const std::shared_ptr<const FiniteCarrier>& c,
                           const ExplicitRelation& rel);

// The relation induced by the cone of a finite RPGroup (exact).
ExplicitRelation relation_of(const RPGroup& g);

}  // namespace rog

#endif
