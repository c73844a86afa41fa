#include "rog/group.hpp"

#include <sstream>

#include "rog/abelian.hpp"
#include "rog/errors.hpp"

namespace rog {

RPGroup make_rpgroup(CarrierPtr c, ConePtr p) {
  if (p->carrier().get() != c.get())
    throw ValidationError("cone belongs to a different carrier");
  if (p->contains(c->zero()).is_no())
    throw ValidationError("cone does not contain the identity");
  return RPGroup{std::move(c), std::move(p)};
}

bool same_object(const RPGroup& a, const RPGroup& b) {
  if (a.carrier.get() != b.carrier.get()) return false;
  if (a.cone.get() == b.cone.get()) return true;
  return a.cone->kind() == b.cone->kind() && a.cone->describe() == b.cone->describe();
}

Tri leq(const RPGroup& g, const Element& x, const Element& y, const SearchBudget& budget) {
  g.carrier->require(x);
  g.carrier->require(y);
  return g.cone->contains(g.carrier->op(y, g.carrier->neg(x)), budget);
}

Tri equiv_zero(const RPGroup& g, const Element& b, const SearchBudget& budget) {
  g.carrier->require(b);
  return tri_and(g.cone->contains(b, budget), g.cone->contains(g.carrier->neg(b), budget));
}

SymmetricPart symmetric_part(const RPGroup& g, const SearchBudget& budget) {
  switch (g.cone->kind()) {
    case ConeKind::Explicit: {
      const auto& ec = static_cast<const ExplicitCone&>(*g.cone);
      auto fc = std::static_pointer_cast<const FiniteCarrier>(g.carrier);
      const auto& tbl = fc->table();
      std::vector<int> members;
      for (int i : ec.members())
        if (ec.has(tbl.inv[i])) members.push_back(i);
      return {explicit_cone(fc, std::move(members)), Tri::yes()};
    }
    case ConeKind::Trivial:
      return {g.cone, Tri::yes()};
    case ConeKind::Total:
      return {g.cone, Tri::yes()};
    case ConeKind::Orthant:
      // free part >= 0 and <= 0 forces 0; torsion part is pinned to 0 already
      return {trivial_cone(g.carrier), Tri::yes()};
    case ConeKind::Generated: {
      // Commutative carrier: P /\ -P is spanned by the generators whose
      // negation lies in P (invertible generators).
      const auto& gc = static_cast<const GeneratedCone&>(*g.cone);
      const auto& m = gc.monoid();
      bool all_decided = true;
      std::vector<std::vector<Int>> sym_gens;
      long max_bound = -1;
      for (const auto& gen : m.gens) {
        std::vector<Int> negg(gen.size());
        for (size_t i = 0; i < gen.size(); ++i) negg[i] = -gen[i];
        negg = m.ambient->normalize(std::move(negg));
        MemberResult r = cone_member(m, negg, budget);
        if (r.verdict.is_yes()) {
          sym_gens.push_back(gen);
          sym_gens.push_back(negg);
        } else if (r.verdict.is_unknown()) {
          all_decided = false;
          max_bound = std::max(max_bound, r.verdict.bound);
        }
      }
      ConePtr cone = generated_cone(m.ambient, std::move(sym_gens), m.default_bound);
      return {cone, all_decided ? Tri::yes() : Tri::unknown(max_bound)};
    }
    default:
      throw UnsupportedError(
          "symmetric_part needs an explicit, builtin, or generated cone; got " +
          g.cone->describe());
  }
}

ExplicitRelation ExplicitRelation::empty(size_t n) {
  ExplicitRelation r;
  r.n = n;
  r.rel.assign(n * n, 0);
  return r;
}

ConePtr cone_from_preorder(const std::shared_ptr<const FiniteCarrier>& c,
                           const ExplicitRelation& rel) {
  const auto& tbl = c->table();
  const size_t n = tbl.n;
  if (rel.n != n) throw ValidationError("relation size does not match the carrier order");

  for (size_t x = 0; x < n; ++x)
    if (!rel.at(x, x))
      throw ValidationError("relation is not reflexive: " + std::to_string(x) +
                            " is not related to itself");
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!rel.at(x, y)) continue;
      for (size_t z = 0; z < n; ++z)
        if (rel.at(y, z) && !rel.at(x, z))
          throw ValidationError("relation is not transitive: " + std::to_string(x) + " <= " +
                                std::to_string(y) + " <= " + std::to_string(z) +
                                " but not " + std::to_string(x) + " <= " + std::to_string(z));
    }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!rel.at(x, y)) continue;
      for (size_t z = 0; z < n; ++z) {
        size_t xz = static_cast<size_t>(tbl.op(static_cast<int>(x), static_cast<int>(z)));
        size_t yz = static_cast<size_t>(tbl.op(static_cast<int>(y), static_cast<int>(z)));
        if (!rel.at(xz, yz))
          throw ValidationError("relation is not right-invariant: " + std::to_string(x) +
                                " <= " + std::to_string(y) + " but adding " + std::to_string(z) +
                                " breaks it");
      }
    }

  std::vector<int> members;
  for (size_t y = 0; y < n; ++y)
    if (rel.at(0, y)) members.push_back(static_cast<int>(y));
  return explicit_cone(c, std::move(members));
}

ExplicitRelation relation_of(const RPGroup& g) {
  auto n = g.carrier->order();
  if (!n || g.carrier->kind() != CarrierKind::Finite)
    throw UnsupportedError("relation_of needs a finite-table carrier");
  ExplicitRelation r = ExplicitRelation::empty(*n);
  for (size_t x = 0; x < *n; ++x)
    for (size_t y = 0; y < *n; ++y) {
      Tri t = leq(g, Element::fin(static_cast<long>(x)), Element::fin(static_cast<long>(y)));
      if (t.is_unknown())
        throw UnsupportedError("cone membership undecided on a finite carrier");
      if (t.is_yes()) r.set(x, y);
    }
  return r;
}

}  // namespace rog
