#ifndef ROG_CARRIER_HPP
#define ROG_CARRIER_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rog/element.hpp"
#include "rog/finite_table.hpp"

namespace rog {

enum class CarrierKind { Finite, Abelian, Rationals, Semidirect };

// Group carrier: the bare group, no order structure. Implementations are
// immutable; every operation is pure.
class Carrier {
 public:
  virtual ~Carrier() = default;

  virtual CarrierKind kind() const = 0;
  virtual Element zero() const = 0;
  virtual Element op(const Element& a, const Element& b) const = 0;
  virtual Element neg(const Element& a) const = 0;
  virtual bool valid(const Element& a) const = 0;
  virtual std::optional<unsigned long> order() const = 0;  // nullopt: infinite
  virtual std::string show(const Element& a) const = 0;
  virtual std::string describe() const = 0;

  Element sub(const Element& a, const Element& b) const { return op(a, neg(b)); }

  // All elements, in canonical order. Only for finite carriers.
  std::vector<Element> elements() const;

  void require(const Element& a) const;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

class FiniteCarrier final : public Carrier {
 public:
  explicit FiniteCarrier(FiniteGroupTable t, std::string name = "")
      : tbl_(std::move(t)), name_(std::move(name)) {}

  CarrierKind kind() const override { return CarrierKind::Finite; }
  Element zero() const override { return Element::fin(0); }
  Element op(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  bool valid(const Element& a) const override;
  std::optional<unsigned long> order() const override { return tbl_.n; }
  std::string show(const Element& a) const override;
  std::string describe() const override;

  const FiniteGroupTable& table() const { return tbl_; }

 private:
  FiniteGroupTable tbl_;
  std::string name_;
};

// Z^rank (+) Z/d1 (+) ... (+) Z/dk with d1 | d2 | ..., each di >= 2.
// Element layout: free coordinates first, then torsion coordinates reduced
// into [0, di).
class AbelianCarrier final : public Carrier {
 public:
  AbelianCarrier(unsigned rank, std::vector<Int> torsion, std::string name = "");

  CarrierKind kind() const override { return CarrierKind::Abelian; }
  Element zero() const override { return Element::vec(std::vector<Int>(dim())); }
  Element op(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  bool valid(const Element& a) const override;
  std::optional<unsigned long> order() const override;
  std::string show(const Element& a) const override;
  std::string describe() const override;

  unsigned rank() const { return rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  size_t dim() const { return rank_ + torsion_.size(); }
  bool is_trivial() const { return dim() == 0; }

  std::vector<Int> normalize(std::vector<Int> raw) const;
  Element normalized(const std::vector<Int>& raw) const { return Element::vec(normalize(raw)); }

 private:
  unsigned rank_;
  std::vector<Int> torsion_;
  std::string name_;
};

using AbelianPtr = std::shared_ptr<const AbelianCarrier>;

// The additive group of rationals.
class RationalsCarrier final : public Carrier {
 public:
  CarrierKind kind() const override { return CarrierKind::Rationals; }
  Element zero() const override { return Element::rat(Rat(0)); }
  Element op(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  bool valid(const Element& a) const override { return a.is_rat(); }
  std::optional<unsigned long> order() const override { return std::nullopt; }
  std::string show(const Element& a) const override { return show_rat(a.rat()); }
  std::string describe() const override { return "Q"; }
};

// Convenience constructors for the stock carriers.
std::shared_ptr<const AbelianCarrier> z_carrier();               // Z
std::shared_ptr<const AbelianCarrier> zn_carrier(unsigned rank); // Z^rank
std::shared_ptr<const RationalsCarrier> q_carrier();
std::shared_ptr<const FiniteCarrier> finite_carrier(FiniteGroupTable t, std::string name = "");

}  // namespace rog

#endif
