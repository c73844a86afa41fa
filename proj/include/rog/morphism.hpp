#ifndef ROG_MORPHISM_HPP
#define ROG_MORPHISM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rog/group.hpp"
#include "rog/matrix.hpp"

namespace rog {

// A group homomorphism between RPGroup carriers, with enough structure for
// exact analysis where the backend allows it:
//   FiniteTable: full image table, finite source and target
//   Matrix:      integer matrix on coordinates, abelian source and target
//   Scalar:      multiplication by a rational, Q to Q
//   Func:        structural maps (semidirect kernel/section/projection)
class Morphism {
 public:
  enum class Rep { FiniteTable, Matrix, Scalar, Func };

  RPGroup source, target;
  Rep rep = Rep::Func;
  std::vector<int> table;
  IntMatrix mat;
  Rat scalar;
  std::function<Element(const Element&)> fn;
  std::string label;
  // Set by constructions whose monotonicity is forced (kernel inclusions,
  // sections of compatible semidirect cones); checked before searching.
  std::optional<Tri> known_monotone;
  // Set when the source cone is the preimage of the target cone along this
  // very map (equalizer and kernel inclusions, the (Epi, RegMono) middle).
  bool preimage_cone_by_construction = false;

  Element apply(const Element& x) const;
  std::string describe() const;
};

// Constructors validate the homomorphism property (exhaustively for finite
// sources, by well-definedness for matrices) but do not require monotonicity;
// is_monotone reports it.
Morphism finite_morphism(RPGroup source, RPGroup target, std::vector<int> table,
                         std::string label = "");
Morphism matrix_morphism(RPGroup source, RPGroup target, IntMatrix m, std::string label = "");
Morphism scalar_morphism(RPGroup source, RPGroup target, const Rat& q, std::string label = "");
Morphism func_morphism(RPGroup source, RPGroup target,
                       std::function<Element(const Element&)> fn, std::string label = "");
Morphism identity_morphism(const RPGroup& g);
Morphism zero_morphism(RPGroup source, RPGroup target);

Morphism compose(const Morphism& g, const Morphism& f);  // g after f

// Yes iff every source-cone element (finite) or generator maps into the
// target cone; No carries a witness through `witness`.
struct MonotoneResult {
  Tri verdict;
  std::optional<Element> witness;
};
MonotoneResult is_monotone_witness(const Morphism& f, const SearchBudget& budget = {});
Tri is_monotone(const Morphism& f, const SearchBudget& budget = {});

// Pointwise equality: exhaustive on finite sources, on coordinates for
// matrices (mod target relations), exact for scalars.
bool maps_equal(const Morphism& f, const Morphism& g);

}  // namespace rog

#endif
