#include "rog/carrier.hpp"

#include <sstream>

namespace rog {

std::vector<Element> Carrier::elements() const {
  auto n = order();
  if (!n) throw UnsupportedError("element enumeration needs a finite carrier");
  if (kind() == CarrierKind::Finite) {
    std::vector<Element> out;
    out.reserve(*n);
    for (unsigned long i = 0; i < *n; ++i) out.push_back(Element::fin(static_cast<long>(i)));
    return out;
  }
  throw UnsupportedError("element enumeration implemented for finite tables only");
}

void Carrier::require(const Element& a) const {
  if (!valid(a)) throw DomainError("element does not belong to carrier " + describe());
}

Element FiniteCarrier::op(const Element& a, const Element& b) const {
  require(a);
  require(b);
  return Element::fin(tbl_.op(static_cast<int>(a.fin()), static_cast<int>(b.fin())));
}

Element FiniteCarrier::neg(const Element& a) const {
  require(a);
  return Element::fin(tbl_.inv[a.fin()]);
}

bool FiniteCarrier::valid(const Element& a) const {
  return a.is_fin() && a.fin() >= 0 && a.fin() < static_cast<long>(tbl_.n);
}

std::string FiniteCarrier::show(const Element& a) const { return std::to_string(a.fin()); }

std::string FiniteCarrier::describe() const {
  if (!name_.empty()) return name_;
  return "finite(order " + std::to_string(tbl_.n) + ")";
}

AbelianCarrier::AbelianCarrier(unsigned rank, std::vector<Int> torsion, std::string name)
    : rank_(rank), torsion_(std::move(torsion)), name_(std::move(name)) {
  for (size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2)
      throw ValidationError("invariant factors must be >= 2");
    if (i + 1 < torsion_.size() && torsion_[i + 1] % torsion_[i] != 0)
      throw ValidationError("invariant factors must form a divisibility chain (d" +
                            std::to_string(i + 1) + " does not divide d" + std::to_string(i + 2) +
                            ")");
  }
}

std::vector<Int> AbelianCarrier::normalize(std::vector<Int> raw) const {
  if (raw.size() != dim()) throw DomainError("coordinate vector has wrong length");
  for (size_t i = 0; i < torsion_.size(); ++i) {
    Int& c = raw[rank_ + i];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), torsion_[i].get_mpz_t());  // floor mod: 0 <= c < d
  }
  return raw;
}

Element AbelianCarrier::op(const Element& a, const Element& b) const {
  require(a);
  require(b);
  std::vector<Int> s(dim());
  for (size_t i = 0; i < dim(); ++i) s[i] = a.vec()[i] + b.vec()[i];
  return Element::vec(normalize(std::move(s)));
}

Element AbelianCarrier::neg(const Element& a) const {
  require(a);
  std::vector<Int> s(dim());
  for (size_t i = 0; i < dim(); ++i) s[i] = -a.vec()[i];
  return Element::vec(normalize(std::move(s)));
}

bool AbelianCarrier::valid(const Element& a) const {
  if (!a.is_vec() || a.vec().size() != dim()) return false;
  for (size_t i = 0; i < torsion_.size(); ++i) {
    const Int& c = a.vec()[rank_ + i];
    if (c < 0 || c >= torsion_[i]) return false;
  }
  return true;
}

std::optional<unsigned long> AbelianCarrier::order() const {
  if (rank_ > 0) return std::nullopt;
  Int n = 1;
  for (const Int& d : torsion_) n *= d;
  if (!n.fits_ulong_p()) return std::nullopt;  // astronomically large torsion: treat as unenumerable
  return n.get_ui();
}

std::string AbelianCarrier::show(const Element& a) const { return show_vec(a.vec()); }

std::string AbelianCarrier::describe() const {
  if (!name_.empty()) return name_;
  if (dim() == 0) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank_ == 1) {
    os << "Z";
    first = false;
  } else if (rank_ > 1) {
    os << "Z^" << rank_;
    first = false;
  }
  for (const Int& d : torsion_) {
    if (!first) os << "(+)";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

Element RationalsCarrier::op(const Element& a, const Element& b) const {
  require(a);
  require(b);
  return Element::rat(a.rat() + b.rat());
}

Element RationalsCarrier::neg(const Element& a) const {
  require(a);
  return Element::rat(-a.rat());
}

std::shared_ptr<const AbelianCarrier> z_carrier() {
  static const auto z = std::make_shared<const AbelianCarrier>(1, std::vector<Int>{}, "Z");
  return z;
}

std::shared_ptr<const AbelianCarrier> zn_carrier(unsigned rank) {
  return std::make_shared<const AbelianCarrier>(rank, std::vector<Int>{});
}

std::shared_ptr<const RationalsCarrier> q_carrier() {
  static const auto q = std::make_shared<const RationalsCarrier>();
  return q;
}

std::shared_ptr<const FiniteCarrier> finite_carrier(FiniteGroupTable t, std::string name) {
  return std::make_shared<const FiniteCarrier>(std::move(t), std::move(name));
}

}  // namespace rog
