#ifndef ROG_SPLITEXT_HPP
#define ROG_SPLITEXT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rog/catops.hpp"

namespace rog {

// An action of B on X: a homomorphism from B into Aut(X).
//   finite B, finite X:     one permutation of X per element of B
//   abelian B, abelian X:   one invertible matrix per coordinate generator
//   abelian B (= Z), Q:     a nonzero rational scalar q, phi_b = q^b
// Validation is exact: images are checked to be automorphisms, to commute
// where the actor is abelian, and to respect torsion orders; finite actions
// are closed from generator images with conflict detection.
class GroupAction {
 public:
  enum class Rep { FinitePerms, Matrices, Scalar };

  static std::shared_ptr<const GroupAction> trivial(RPGroup x, RPGroup b);
  // B finite: images[i] is the permutation for generator gens[i] of B.
  static std::shared_ptr<const GroupAction> finite_action(RPGroup x, RPGroup b,
                                                          const std::vector<int>& gens,
                                                          std::vector<std::vector<int>> images);
  // B abelian: one matrix per coordinate of B (free then torsion).
  static std::shared_ptr<const GroupAction> matrix_action(RPGroup x, RPGroup b,
                                                          std::vector<IntMatrix> images);
  // B = Z acting on X = Q by phi_b(x) = q^b x.
  static std::shared_ptr<const GroupAction> scalar_action(RPGroup x, RPGroup b, const Rat& q);

  const RPGroup& acted() const { return x_; }
  const RPGroup& actor() const { return b_; }
  Rep rep() const { return rep_; }
  bool is_trivial() const { return trivial_; }
  const Rat& scalar() const { return q_; }

  // phi_b(x); nullopt when the exact value is out of reach (rational scalar
  // powers past the exponent cap, oversized matrix exponents).
  std::optional<Element> apply(const Element& b, const Element& x) const;

  // Is phi_b monotone with respect to the cone of X?
  MonotoneResult monotone_on(const Element& b, const SearchBudget& budget = {}) const;

  std::string describe() const;

 private:
  GroupAction() = default;
  RPGroup x_, b_;
  Rep rep_ = Rep::FinitePerms;
  bool trivial_ = false;
  std::vector<std::vector<int>> perms_;           // FinitePerms: per B element
  std::vector<IntMatrix> mats_, mat_invs_;        // Matrices: per B coordinate
  Rat q_;                                         // Scalar
};

using ActionPtr = std::shared_ptr<const GroupAction>;

enum class ConePolicy { Prod, Lex, Custom };

class SemidirectCarrier final : public Carrier {
 public:
  SemidirectCarrier(RPGroup x, RPGroup b, ActionPtr action);

  CarrierKind kind() const override { return CarrierKind::Semidirect; }
  Element zero() const override;
  Element op(const Element& a, const Element& c) const override;
  Element neg(const Element& a) const override;
  bool valid(const Element& a) const override;
  std::optional<unsigned long> order() const override;
  std::string show(const Element& a) const override;
  std::string describe() const override;

  const RPGroup& x() const { return x_; }
  const RPGroup& b() const { return b_; }
  const ActionPtr& action() const { return action_; }

 private:
  RPGroup x_, b_;
  ActionPtr action_;
};

// X x|_phi B with a cone policy. The kernel, projection and section come
// with their forced monotonicity for the stock policies.
struct SemidirectGroup {
  RPGroup group;
  RPGroup x, b;
  ActionPtr action;
  ConePolicy policy;

  Morphism kernel_inclusion() const;  // <1,0>
  Morphism projection() const;        // pi_B
  Morphism section() const;           // <0,1>
};

SemidirectGroup semidirect(RPGroup x, RPGroup b, ActionPtr action, ConePolicy policy,
                           ConePtr custom_cone = nullptr);

Tri prod_member(const SemidirectGroup& s, const Element& e, const SearchBudget& budget = {});
Tri lex_member(const SemidirectGroup& s, const Element& e, const SearchBudget& budget = {});

// {b in P_B : some b2 in P_B has b + b2 ~ 0}; for finite B this is P_B
// itself (a subgroup); for abelian B it is the symmetric part P /\ -P.
// group_generators generate it as a monoid (finite: full member list).
struct InvertiblePart {
  std::vector<Element> group_generators;
  Tri exact;
  Tri whole_cone;  // equals P_B?
};
InvertiblePart invertible_part(const RPGroup& b, const SearchBudget& budget = {});

// (iii) of the splitting theorem: phi_b monotone for every b with a
// positive quasi-inverse.
struct ConditionIII {
  Tri verdict;
  std::optional<Element> witness_b, witness_x;
};
ConditionIII check_condition_iii(const SemidirectGroup& s, const SearchBudget& budget = {});

struct SplitExtAnalysis {
  Tri condition_iii;
  Tri lex_compatible;     // equals condition_iii by the theorem
  Tri prod_compatible;    // phi_b monotone for every b in P_B
  Tri exists_compatible;  // equals lex_compatible
  std::vector<Element> invertible_part_generators;
  Tri invertible_exact;
  std::optional<Element> witness_b, witness_x;            // condition (iii) failure
  std::optional<Element> prod_witness_b, prod_witness_x;  // prod-compatibility failure
  Tri lex_closure_crosscheck;  // sampled/exhaustive submonoid check of P_lex
  std::string crosscheck_note;
  std::optional<std::vector<std::vector<int>>> enumerated_cones;  // finite case
};
SplitExtAnalysis analyze(const SemidirectGroup& s, const SearchBudget& budget = {},
                         bool enumerate_finite = false, unsigned cap = 24);

// Finite semidirect product flattened to a table; index = xi*|B| + bi.
struct MaterializedSemidirect {
  FiniteGroupTable table;
  unsigned nx = 1, nb = 1;
  std::vector<int> prod_cone, lex_cone;
};
MaterializedSemidirect materialize(const SemidirectGroup& s, unsigned cap = 24);

// All cones P with P_prod <= P <= P_lex on a finite semidirect product;
// every one makes the extension split in ROrdGrp (the kernel condition and
// the monotonicity of projection and section are forced by the sandwich).
std::vector<std::vector<int>> enumerate_compatible_cones(const SemidirectGroup& s,
                                                         unsigned cap = 24);

// Split epimorphism p with section s: is the point strong, i.e. are the
// kernel inclusion and the section jointly strongly epimorphic?
Tri strong_point_test(const Morphism& p, const Morphism& s, const SearchBudget& budget = {});

// The non-strong point built from a positive b with no positive
// quasi-inverse: Y x <b> carries the submonoid P generated by <1,0>(P_Y)
// and <j,1>(N); membership of (0, b) decides strongness.
struct CounterexampleReport {
  RPGroup product;                 // Y (+) Z
  AffineMonoid point_cone;         // the submonoid P
  Element query;                   // (0, b), as a product element
  Tri membership;                  // expected exact No
  JointlyEpiResult strong;         // expected No with witness (0, b)
};
CounterexampleReport protomodular_counterexample(const RPGroup& y, const Element& b,
                                                 const SearchBudget& budget = {});

}  // namespace rog

#endif
