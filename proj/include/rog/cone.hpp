#ifndef ROG_CONE_HPP
#define ROG_CONE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rog/carrier.hpp"
#include "rog/tri.hpp"

namespace rog {

// Budget for semidecidable membership queries: `bound` caps the sum of
// coefficients explored by generated-cone searches, `node_cap` the states
// visited (cooperative interruption of long searches).
struct SearchBudget {
  long bound = 512;
  long node_cap = 200000;
};

enum class ConeKind {
  Explicit,   // finite carrier, explicit index set
  Trivial,    // {0}
  Total,      // whole carrier
  Orthant,    // abelian: free coords >= 0, torsion coords = 0; Q: x >= 0
  Generated,  // abelian, affine monoid with bounded search
  Predicate,  // conjunction of pullbacks along homomorphisms (initial lift)
  Custom,     // caller-supplied membership
  SemidirectProd,
  SemidirectLex,
};

// Positive cone oracle: a submonoid of the carrier queried through Tri.
class Cone {
 public:
  virtual ~Cone() = default;

  virtual ConeKind kind() const = 0;
  virtual CarrierPtr carrier() const = 0;
  virtual Tri contains(const Element& x, const SearchBudget& budget) const = 0;
  virtual std::string describe() const = 0;

  // Monoid generators, when the cone carries them (explicit sets list all
  // members; builtin abelian cones list unit vectors; Q cones have none).
  virtual std::optional<std::vector<Element>> generators() const { return std::nullopt; }

  Tri contains(const Element& x) const { return contains(x, SearchBudget{}); }
};

using ConePtr = std::shared_ptr<const Cone>;

class ExplicitCone final : public Cone {
 public:
  // `members` are element indices of a finite carrier; validated to contain 0
  // and be closed under the operation.
  ExplicitCone(std::shared_ptr<const FiniteCarrier> c, std::vector<int> members);

  ConeKind kind() const override { return ConeKind::Explicit; }
  CarrierPtr carrier() const override { return carrier_; }
  Tri contains(const Element& x, const SearchBudget&) const override;
  std::string describe() const override;
  std::optional<std::vector<Element>> generators() const override;

  const std::vector<int>& members() const { return members_; }  // sorted
  const std::vector<char>& mask() const { return mask_; }
  bool has(int i) const { return mask_[i] != 0; }

 private:
  std::shared_ptr<const FiniteCarrier> carrier_;
  std::vector<int> members_;
  std::vector<char> mask_;
};

class BuiltinCone final : public Cone {
 public:
  BuiltinCone(CarrierPtr c, ConeKind k);

  ConeKind kind() const override { return kind_; }
  CarrierPtr carrier() const override { return carrier_; }
  Tri contains(const Element& x, const SearchBudget&) const override;
  std::string describe() const override;
  std::optional<std::vector<Element>> generators() const override;

 private:
  CarrierPtr carrier_;
  ConeKind kind_;
};

// Affine monoid inside an f.g. abelian group: the submonoid generated by
// `gens`, membership by bounded coefficient search with exactness
// certificates (see abelian.hpp).
struct AffineMonoid {
  AbelianPtr ambient;
  std::vector<std::vector<Int>> gens;  // normalized coordinates
  long default_bound = 512;
};

class GeneratedCone final : public Cone {
 public:
  explicit GeneratedCone(AffineMonoid m);

  ConeKind kind() const override { return ConeKind::Generated; }
  CarrierPtr carrier() const override { return monoid_.ambient; }
  Tri contains(const Element& x, const SearchBudget& budget) const override;
  std::string describe() const override;
  std::optional<std::vector<Element>> generators() const override;

  const AffineMonoid& monoid() const { return monoid_; }

 private:
  AffineMonoid monoid_;
};

// Largest cone making each map monotone: x positive iff every image is.
class PredicateCone final : public Cone {
 public:
  struct Leg {
    std::function<Element(const Element&)> map;
    ConePtr target;
    std::string label;
  };

  PredicateCone(CarrierPtr c, std::vector<Leg> legs, std::string desc);

  ConeKind kind() const override { return ConeKind::Predicate; }
  CarrierPtr carrier() const override { return carrier_; }
  Tri contains(const Element& x, const SearchBudget& budget) const override;
  std::string describe() const override { return desc_; }

  const std::vector<Leg>& legs() const { return legs_; }

 private:
  CarrierPtr carrier_;
  std::vector<Leg> legs_;
  std::string desc_;
};

class CustomCone final : public Cone {
 public:
  CustomCone(CarrierPtr c, std::function<Tri(const Element&, const SearchBudget&)> member,
             std::string desc, std::optional<std::vector<Element>> gens = std::nullopt);

  ConeKind kind() const override { return ConeKind::Custom; }
  CarrierPtr carrier() const override { return carrier_; }
  Tri contains(const Element& x, const SearchBudget& budget) const override;
  std::string describe() const override { return desc_; }
  std::optional<std::vector<Element>> generators() const override { return gens_; }

 private:
  CarrierPtr carrier_;
  std::function<Tri(const Element&, const SearchBudget&)> member_;
  std::string desc_;
  std::optional<std::vector<Element>> gens_;
};

ConePtr trivial_cone(CarrierPtr c);
ConePtr total_cone(CarrierPtr c);
ConePtr orthant_cone(CarrierPtr c);  // abelian or Q
ConePtr natural_cone();              // N inside Z
ConePtr generated_cone(AbelianPtr ambient, std::vector<std::vector<Int>> gens,
                       long default_bound = 512);
ConePtr explicit_cone(std::shared_ptr<const FiniteCarrier> c, std::vector<int> members);

}  // namespace rog

#endif
