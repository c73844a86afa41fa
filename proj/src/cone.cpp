#include "rog/cone.hpp"

#include <algorithm>
#include <sstream>

#include "rog/abelian.hpp"
#include "rog/errors.hpp"

namespace rog {

ExplicitCone::ExplicitCone(std::shared_ptr<const FiniteCarrier> c, std::vector<int> members)
    : carrier_(std::move(c)), members_(std::move(members)) {
  const auto& tbl = carrier_->table();
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  mask_.assign(tbl.n, 0);
  for (int i : members_) {
    if (i < 0 || static_cast<unsigned>(i) >= tbl.n)
      throw ValidationError("cone member " + std::to_string(i) + " outside the carrier");
    mask_[i] = 1;
  }
  if (!mask_[0]) throw ValidationError("cone does not contain the identity");
  for (int a : members_)
    for (int b : members_)
      if (!mask_[tbl.op(a, b)])
        throw ValidationError("cone not closed under the operation: " + std::to_string(a) +
                              " + " + std::to_string(b) + " escapes");
}

Tri ExplicitCone::contains(const Element& x, const SearchBudget&) const {
  carrier_->require(x);
  return Tri::of(mask_[x.fin()] != 0);
}

std::string ExplicitCone::describe() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ",";
    os << members_[i];
  }
  os << "}";
  return os.str();
}

std::optional<std::vector<Element>> ExplicitCone::generators() const {
  std::vector<Element> out;
  for (int i : members_) out.push_back(Element::fin(i));
  return out;
}

BuiltinCone::BuiltinCone(CarrierPtr c, ConeKind k) : carrier_(std::move(c)), kind_(k) {
  if (k != ConeKind::Trivial && k != ConeKind::Total && k != ConeKind::Orthant)
    throw ValidationError("BuiltinCone kind must be trivial/total/orthant");
  if (k == ConeKind::Orthant && carrier_->kind() != CarrierKind::Abelian &&
      carrier_->kind() != CarrierKind::Rationals)
    throw ValidationError("orthant cone needs an abelian or rational carrier");
}

Tri BuiltinCone::contains(const Element& x, const SearchBudget&) const {
  carrier_->require(x);
  switch (kind_) {
    case ConeKind::Trivial:
      return Tri::of(x == carrier_->zero());
    case ConeKind::Total:
      return Tri::yes();
    default: {  // Orthant
      if (carrier_->kind() == CarrierKind::Rationals) return Tri::of(sgn(x.rat()) >= 0);
      const auto& ab = static_cast<const AbelianCarrier&>(*carrier_);
      for (unsigned i = 0; i < ab.rank(); ++i)
        if (x.vec()[i] < 0) return Tri::no();
      for (size_t i = ab.rank(); i < ab.dim(); ++i)
        if (x.vec()[i] != 0) return Tri::no();
      return Tri::yes();
    }
  }
}

std::string BuiltinCone::describe() const {
  switch (kind_) {
    case ConeKind::Trivial: return "{0}";
    case ConeKind::Total: return "total";
    default:
      if (carrier_->kind() == CarrierKind::Rationals) return "Q>=0";
      {
        const auto& ab = static_cast<const AbelianCarrier&>(*carrier_);
        if (ab.rank() == 1 && ab.dim() == 1) return "N";
      }
      return "orthant";
  }
}

std::optional<std::vector<Element>> BuiltinCone::generators() const {
  if (carrier_->kind() == CarrierKind::Rationals) {
    if (kind_ == ConeKind::Trivial) return std::vector<Element>{};
    return std::nullopt;  // Q>=0 / Q are not finitely generated monoids
  }
  const auto& ab = static_cast<const AbelianCarrier&>(*carrier_);
  std::vector<Element> gens;
  auto unit = [&ab](size_t i) {
    std::vector<Int> v(ab.dim());
    v[i] = 1;
    return Element::vec(std::move(v));
  };
  switch (kind_) {
    case ConeKind::Trivial:
      return gens;
    case ConeKind::Orthant:
      for (unsigned i = 0; i < ab.rank(); ++i) gens.push_back(unit(i));
      return gens;
    default:  // Total: +-free units and torsion units
      for (unsigned i = 0; i < ab.rank(); ++i) {
        gens.push_back(unit(i));
        std::vector<Int> v(ab.dim());
        v[i] = -1;
        gens.push_back(Element::vec(std::move(v)));
      }
      for (size_t i = ab.rank(); i < ab.dim(); ++i) gens.push_back(unit(i));
      return gens;
  }
}

GeneratedCone::GeneratedCone(AffineMonoid m) : monoid_(std::move(m)) {
  for (auto& g : monoid_.gens) g = monoid_.ambient->normalize(std::move(g));
  std::sort(monoid_.gens.begin(), monoid_.gens.end(),
            [](const std::vector<Int>& a, const std::vector<Int>& b) {
              return Element::vec(a) < Element::vec(b);
            });
  monoid_.gens.erase(std::unique(monoid_.gens.begin(), monoid_.gens.end()), monoid_.gens.end());
  // the zero generator adds nothing
  std::erase_if(monoid_.gens, [this](const std::vector<Int>& g) {
    return std::all_of(g.begin(), g.end(), [](const Int& c) { return c == 0; });
  });
}

Tri GeneratedCone::contains(const Element& x, const SearchBudget& budget) const {
  monoid_.ambient->require(x);
  return cone_member(monoid_, x.vec(), budget).verdict;
}

std::string GeneratedCone::describe() const {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < monoid_.gens.size(); ++i) {
    if (i) os << ",";
    os << show_vec(monoid_.gens[i]);
  }
  os << ">";
  return os.str();
}

std::optional<std::vector<Element>> GeneratedCone::generators() const {
  std::vector<Element> out;
  for (const auto& g : monoid_.gens) out.push_back(Element::vec(g));
  return out;
}

PredicateCone::PredicateCone(CarrierPtr c, std::vector<Leg> legs, std::string desc)
    : carrier_(std::move(c)), legs_(std::move(legs)), desc_(std::move(desc)) {}

Tri PredicateCone::contains(const Element& x, const SearchBudget& budget) const {
  carrier_->require(x);
  Tri acc = Tri::yes();
  for (const auto& leg : legs_) {
    acc = tri_and(acc, leg.target->contains(leg.map(x), budget));
    if (acc.is_no()) return acc;
  }
  return acc;
}

CustomCone::CustomCone(CarrierPtr c, std::function<Tri(const Element&, const SearchBudget&)> member,
                       std::string desc, std::optional<std::vector<Element>> gens)
    : carrier_(std::move(c)), member_(std::move(member)), desc_(std::move(desc)),
      gens_(std::move(gens)) {}

Tri CustomCone::contains(const Element& x, const SearchBudget& budget) const {
  carrier_->require(x);
  return member_(x, budget);
}

ConePtr trivial_cone(CarrierPtr c) { return std::make_shared<BuiltinCone>(std::move(c), ConeKind::Trivial); }
ConePtr total_cone(CarrierPtr c) { return std::make_shared<BuiltinCone>(std::move(c), ConeKind::Total); }
ConePtr orthant_cone(CarrierPtr c) { return std::make_shared<BuiltinCone>(std::move(c), ConeKind::Orthant); }
ConePtr natural_cone() { return orthant_cone(z_carrier()); }

ConePtr generated_cone(AbelianPtr ambient, std::vector<std::vector<Int>> gens, long default_bound) {
  AffineMonoid m{std::move(ambient), std::move(gens), default_bound};
  return std::make_shared<GeneratedCone>(std::move(m));
}

ConePtr explicit_cone(std::shared_ptr<const FiniteCarrier> c, std::vector<int> members) {
  return std::make_shared<ExplicitCone>(std::move(c), std::move(members));
}

}  // namespace rog
