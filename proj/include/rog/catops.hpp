#ifndef ROG_CATOPS_HPP
#define ROG_CATOPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "rog/abelian.hpp"
#include "rog/morphism.hpp"

namespace rog {

// A constructed object together with its structural morphisms:
// product -> projections; equalizer/kernel -> inclusion;
// pullback -> the two projections; coequalizer/cokernel -> projection.
struct ConstructedGroup {
  RPGroup object;
  std::vector<Morphism> legs;
};

// Limits are formed as in Grp and equipped with the limit preorder.
ConstructedGroup product(const RPGroup& g, const RPGroup& h);
ConstructedGroup equalizer(const Morphism& f, const Morphism& g);
ConstructedGroup pullback(const Morphism& f, const Morphism& g);  // common target
ConstructedGroup kernel(const Morphism& f);

// Quotient of the target by the normal closure (finite) or sublattice
// (abelian) of the pointwise differences; cone is the image of the target
// cone under the projection.
ConstructedGroup coequalizer(const Morphism& f, const Morphism& g);
ConstructedGroup cokernel(const Morphism& f);

// Coproducts of right-preordered groups are free products, which are
// infinite for nontrivial factors; always throws UnsupportedError.
ConstructedGroup coproduct(const RPGroup& g, const RPGroup& h);

// Whether the positive-cone functor preserved the coequalizer: compares the
// monoid coequalizer of the cone restrictions with the cone of the computed
// coequalizer. Exact for finite targets; for abelian targets decided when
// the restrictions agree on the source cone.
struct ConePreservationNote {
  Tri preserved;
  std::string note;
};
ConePreservationNote coequalizer_cone_note(const Morphism& f, const Morphism& g,
                                           const ConstructedGroup& coeq);

// Initial lift along the forgetful functor to Grp: largest cone on x making
// every map monotone. Source cones of `legs` are ignored. Empty family gives
// the total cone (the right adjoint).
ConePtr initial_lift(const CarrierPtr& x, const std::vector<Morphism>& legs);

RPGroup discrete_lift(const CarrierPtr& x);
RPGroup total_lift(const CarrierPtr& x);

struct MorphClass {
  Tri mono, epi, regular_mono, regular_epi, iso;
  std::optional<Element> mono_witness;       // two elements collapsed: their difference
  std::optional<Element> epi_witness;        // element not attained
  std::optional<Element> regmono_witness;    // x with f(x) positive but x not (or conversely)
  std::optional<Element> regepi_witness;     // positive target element outside f(P_X)
};
MorphClass classify(const Morphism& f, const SearchBudget& budget = {});

// Both factorization systems: f = m . e with middle (f(X), P_Y /\ f(X)),
// and f = m2 . e2 with middle (f(X), f(P_X)).
struct Factorizations {
  RPGroup epi_regmono_middle;
  Morphism e, m;
  RPGroup regepi_mono_middle;
  Morphism e2, m2;
};
Factorizations factorize(const Morphism& f);

// Yes iff the images generate the target group and the cone images generate
// the target cone as a monoid.
struct JointlyEpiResult {
  Tri verdict;
  std::string failed_condition;  // "group" | "cone" | ""
  std::optional<Element> witness;
};
JointlyEpiResult jointly_strongly_epi(const std::vector<Morphism>& fs,
                                      const SearchBudget& budget = {});

// Reflection into two-sided preordered groups: same carrier, conjugation-
// closed cone; the unit is the identity on elements.
struct Reflected {
  RPGroup object;
  Morphism unit;
};
Reflected reflect_to_ordgrp(const RPGroup& g);

// Explicit member list of a cone over a finite-table carrier (throws if any
// membership is undecided, which cannot happen for the stock cones).
std::vector<int> finite_cone_members(const RPGroup& g);

}  // namespace rog

#endif
