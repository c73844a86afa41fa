#include "rog/catops.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rog/errors.hpp"
#include "rog/finite.hpp"
#include "rog/splitext.hpp"

namespace rog {

namespace {

const FiniteCarrier& as_finite(const Carrier& c) { return static_cast<const FiniteCarrier&>(c); }
const AbelianCarrier& as_abelian(const Carrier& c) { return static_cast<const AbelianCarrier&>(c); }

std::shared_ptr<const FiniteCarrier> finite_ptr(const RPGroup& g) {
  return std::static_pointer_cast<const FiniteCarrier>(g.carrier);
}
AbelianPtr abelian_ptr(const RPGroup& g) {
  return std::static_pointer_cast<const AbelianCarrier>(g.carrier);
}

bool both(const RPGroup& g, const RPGroup& h, CarrierKind k) {
  return g.carrier->kind() == k && h.carrier->kind() == k;
}

// Relation rows of an f.g. abelian carrier (one row d_j * e_{rank+j} per
// torsion coordinate).
IntMatrix carrier_relation_rows(const AbelianCarrier& c) {
  IntMatrix r(c.torsion().size(), c.dim());
  for (size_t j = 0; j < c.torsion().size(); ++j) r.at(j, c.rank() + j) = c.torsion()[j];
  return r;
}

struct SubTable {
  FiniteGroupTable table;
  std::vector<int> embed;  // new index -> parent index
  std::vector<int> idx;    // parent index -> new index or -1
};

SubTable subgroup_table(const FiniteGroupTable& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  SubTable s;
  s.embed = members;
  s.idx.assign(g.n, -1);
  for (size_t i = 0; i < members.size(); ++i) s.idx[members[i]] = static_cast<int>(i);
  unsigned m = static_cast<unsigned>(members.size());
  s.table.n = m;
  s.table.t.resize(static_cast<size_t>(m) * m);
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b) {
      int p = g.op(members[a], members[b]);
      if (s.idx[p] < 0) throw ValidationError("subset is not closed under the operation");
      s.table.t[static_cast<size_t>(a) * m + b] = s.idx[p];
    }
  s.table.inv.assign(m, -1);
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b)
      if (s.table.op(a, b) == 0) s.table.inv[a] = static_cast<int>(b);
  return s;
}

// Image cone of a cone under a morphism given by where generators go.
// Homomorphic images of monoid generators generate the image monoid.
ConePtr image_cone_abelian(const RPGroup& source, const AbelianPtr& target_carrier,
                           const std::function<std::vector<Int>(const Element&)>& push,
                           long default_bound) {
  switch (source.cone->kind()) {
    case ConeKind::Total:
      // images of a group's generators under a surjection-onto-image: the
      // cone is built on the image carrier, where it is everything
      return total_cone(target_carrier);
    case ConeKind::Trivial:
      return trivial_cone(target_carrier);
    default: {
      auto gens = source.cone->generators();
      if (!gens)
        throw UnsupportedError("cannot form the image of a cone without generators: " +
                               source.cone->describe());
      std::vector<std::vector<Int>> img;
      for (const Element& g : *gens) img.push_back(push(g));
      return generated_cone(target_carrier, std::move(img), default_bound);
    }
  }
}

long cone_default_bound(const RPGroup& g) {
  if (g.cone->kind() == ConeKind::Generated)
    return static_cast<const GeneratedCone&>(*g.cone).monoid().default_bound;
  return 512;
}

}  // namespace

std::vector<int> finite_cone_members(const RPGroup& g) {
  if (g.carrier->kind() != CarrierKind::Finite)
    throw UnsupportedError("finite_cone_members needs a finite-table carrier");
  auto n = *g.carrier->order();
  std::vector<int> out;
  for (unsigned long i = 0; i < n; ++i) {
    Tri t = g.cone->contains(Element::fin(static_cast<long>(i)));
    if (t.is_unknown()) throw UnsupportedError("undecided cone membership on a finite carrier");
    if (t.is_yes()) out.push_back(static_cast<int>(i));
  }
  return out;
}

// --- limits ------------------------------------------------------------------

ConstructedGroup product(const RPGroup& g, const RPGroup& h) {
  if (both(g, h, CarrierKind::Finite)) {
    const auto& gt = as_finite(*g.carrier).table();
    const auto& ht = as_finite(*h.carrier).table();
    FiniteGroupTable pt = product_table(gt, ht);
    auto pc = finite_carrier(std::move(pt));
    auto gm = finite_cone_members(g);
    auto hm = finite_cone_members(h);
    std::vector<int> members;
    for (int a : gm)
      for (int b : hm) members.push_back(a * static_cast<int>(ht.n) + b);
    RPGroup p = make_rpgroup(pc, explicit_cone(pc, std::move(members)));
    std::vector<int> p1(pc->table().n), p2(pc->table().n);
    for (unsigned i = 0; i < pc->table().n; ++i) {
      p1[i] = static_cast<int>(i / ht.n);
      p2[i] = static_cast<int>(i % ht.n);
    }
    Morphism m1 = finite_morphism(p, g, std::move(p1), "pr1");
    Morphism m2 = finite_morphism(p, h, std::move(p2), "pr2");
    return {p, {m1, m2}};
  }
  if (both(g, h, CarrierKind::Abelian)) {
    const auto& gc = as_abelian(*g.carrier);
    const auto& hc = as_abelian(*h.carrier);
    size_t n = gc.dim() + hc.dim();
    IntMatrix rel(gc.torsion().size() + hc.torsion().size(), n);
    size_t r = 0;
    for (size_t j = 0; j < gc.torsion().size(); ++j, ++r) rel.at(r, gc.rank() + j) = gc.torsion()[j];
    for (size_t j = 0; j < hc.torsion().size(); ++j, ++r)
      rel.at(r, gc.dim() + hc.rank() + j) = hc.torsion()[j];
    PresentedGroup p = presented_group(rel, n);

    // raw-coordinate embeddings and projections
    IntMatrix eg(n, gc.dim()), eh(n, hc.dim());
    for (size_t i = 0; i < gc.dim(); ++i) eg.at(i, i) = 1;
    for (size_t i = 0; i < hc.dim(); ++i) eh.at(gc.dim() + i, i) = 1;
    IntMatrix pg(gc.dim(), n), ph(hc.dim(), n);
    for (size_t i = 0; i < gc.dim(); ++i) pg.at(i, i) = 1;
    for (size_t i = 0; i < hc.dim(); ++i) ph.at(i, gc.dim() + i) = 1;

    IntMatrix inj_g = mul(p.to_canonical, eg);
    IntMatrix inj_h = mul(p.to_canonical, eh);
    IntMatrix proj_g = mul(pg, p.from_canonical);
    IntMatrix proj_h = mul(ph, p.from_canonical);

    AbelianPtr pc = p.group;
    ConePtr gcone = g.cone, hcone = h.cone;
    // capture carriers by shared_ptr to keep them alive inside the closure
    auto gcar = abelian_ptr(g);
    auto hcar = abelian_ptr(h);
    IntMatrix projg2 = proj_g, projh2 = proj_h;
    auto member = [gcar, hcar, gcone, hcone, projg2, projh2](const Element& x,
                                                             const SearchBudget& b) {
      Element xg = gcar->normalized(mat_apply(projg2, x.vec()));
      Element xh = hcar->normalized(mat_apply(projh2, x.vec()));
      return tri_and(gcone->contains(xg, b), hcone->contains(xh, b));
    };
    std::optional<std::vector<Element>> gens;
    auto ggens = g.cone->generators();
    auto hgens = h.cone->generators();
    if (ggens && hgens) {
      std::vector<Element> out;
      for (const Element& a : *ggens) out.push_back(pc->normalized(mat_apply(inj_g, a.vec())));
      for (const Element& b : *hgens) out.push_back(pc->normalized(mat_apply(inj_h, b.vec())));
      gens = std::move(out);
    }
    ConePtr cone = std::make_shared<CustomCone>(
        pc, member, g.cone->describe() + " x " + h.cone->describe(), std::move(gens));
    RPGroup prod = make_rpgroup(pc, cone);
    Morphism m1 = matrix_morphism(prod, g, proj_g, "pr1");
    Morphism m2 = matrix_morphism(prod, h, proj_h, "pr2");
    return {prod, {m1, m2}};
  }
  throw UnsupportedError("product supports finite x finite and abelian x abelian carriers");
}

ConstructedGroup equalizer(const Morphism& f, const Morphism& g) {
  if (!same_object(f.source, g.source) || !same_object(f.target, g.target))
    throw ValidationError("equalizer needs a parallel pair (same source and target objects)");
  if (f.rep == Morphism::Rep::FiniteTable && g.rep == Morphism::Rep::FiniteTable) {
    const auto& st = as_finite(*f.source.carrier).table();
    std::vector<int> members;
    for (unsigned x = 0; x < st.n; ++x)
      if (f.table[x] == g.table[x]) members.push_back(static_cast<int>(x));
    SubTable sub = subgroup_table(st, members);
    auto ec = finite_carrier(sub.table);
    std::vector<int> cone_members;
    for (size_t i = 0; i < sub.embed.size(); ++i)
      if (f.source.cone->contains(Element::fin(sub.embed[i])).is_yes())
        cone_members.push_back(static_cast<int>(i));
    RPGroup e = make_rpgroup(ec, explicit_cone(ec, std::move(cone_members)));
    Morphism incl = finite_morphism(e, f.source, sub.embed, "incl");
    incl.known_monotone = Tri::yes();
    incl.preimage_cone_by_construction = true;
    return {e, {incl}};
  }
  if (f.rep == Morphism::Rep::Matrix && g.rep == Morphism::Rep::Matrix) {
    const auto& sc = as_abelian(*f.source.carrier);
    const auto& tc = as_abelian(*f.target.carrier);
    IntMatrix d(tc.dim(), sc.dim());
    for (size_t i = 0; i < d.rows; ++i)
      for (size_t j = 0; j < d.cols; ++j) d.at(i, j) = f.mat.at(i, j) - g.mat.at(i, j);
    auto kgens = kernel_subgroup_gens(sc, tc, d);
    SubgroupPresentation s = subgroup_from_generators(sc, kgens);
    auto scar = abelian_ptr(f.source);
    ConePtr source_cone = f.source.cone;
    IntMatrix incl_mat = s.inclusion;
    PredicateCone::Leg leg{
        [scar, incl_mat](const Element& x) { return scar->normalized(mat_apply(incl_mat, x.vec())); },
        source_cone, "incl"};
    ConePtr cone = std::make_shared<PredicateCone>(
        s.group, std::vector<PredicateCone::Leg>{leg},
        "incl^-1(" + source_cone->describe() + ")");
    RPGroup e = make_rpgroup(s.group, cone);
    Morphism incl = matrix_morphism(e, f.source, s.inclusion, "incl");
    incl.known_monotone = Tri::yes();
    incl.preimage_cone_by_construction = true;
    return {e, {incl}};
  }
  if (f.rep == Morphism::Rep::Scalar && g.rep == Morphism::Rep::Scalar) {
    if (f.scalar == g.scalar) {
      RPGroup e = f.source;
      return {e, {identity_morphism(e)}};
    }
    auto triv = std::make_shared<const AbelianCarrier>(0, std::vector<Int>{});
    RPGroup e = make_rpgroup(triv, trivial_cone(triv));
    RPGroup tgt = f.source;
    Morphism incl = func_morphism(
        e, tgt, [](const Element&) { return Element::rat(Rat(0)); }, "incl");
    incl.known_monotone = Tri::yes();
    return {e, {incl}};
  }
  throw UnsupportedError("equalizer supports finite-table, matrix, and scalar morphisms");
}

ConstructedGroup pullback(const Morphism& f, const Morphism& g) {
  if (!same_object(f.target, g.target))
    throw ValidationError("pullback needs a common target object");
  ConstructedGroup prod = product(f.source, g.source);
  Morphism fp = compose(f, prod.legs[0]);
  Morphism gp = compose(g, prod.legs[1]);
  ConstructedGroup eq = equalizer(fp, gp);
  Morphism p1 = compose(prod.legs[0], eq.legs[0]);
  p1.label = "pb1";
  Morphism p2 = compose(prod.legs[1], eq.legs[0]);
  p2.label = "pb2";
  return {eq.object, {p1, p2}};
}

ConstructedGroup kernel(const Morphism& f) {
  // the projection of a semidirect product: the kernel is X carrying the
  // cone {x : (x,0) in P}, which the kernel condition identifies with P_X
  if (f.rep == Morphism::Rep::Func && f.source.carrier->kind() == CarrierKind::Semidirect &&
      f.label == "pi_B") {
    const auto& sd = static_cast<const SemidirectCarrier&>(*f.source.carrier);
    if (f.target.carrier.get() == sd.b().carrier.get()) {
      RPGroup x = sd.x();
      Element bz = sd.b().carrier->zero();
      ConePtr total = f.source.cone;
      PredicateCone::Leg leg{
          [bz](const Element& e) { return Element::pair(e, bz); }, total, "<1,0>"};
      ConePtr cone = std::make_shared<PredicateCone>(
          x.carrier, std::vector<PredicateCone::Leg>{leg},
          "<1,0>^-1(" + total->describe() + ")");
      RPGroup k = make_rpgroup(x.carrier, cone);
      Morphism incl = func_morphism(
          k, f.source, [bz](const Element& e) { return Element::pair(e, bz); }, "ker");
      incl.known_monotone = Tri::yes();
      incl.preimage_cone_by_construction = true;
      return {k, {incl}};
    }
  }
  ConstructedGroup k = equalizer(f, zero_morphism(f.source, f.target));
  k.legs[0].label = "ker";
  return k;
}

// --- colimits ----------------------------------------------------------------

ConstructedGroup coequalizer(const Morphism& f, const Morphism& g) {
  if (!same_object(f.source, g.source) || !same_object(f.target, g.target))
    throw ValidationError("coequalizer needs a parallel pair (same source and target objects)");
  if (f.rep == Morphism::Rep::FiniteTable && g.rep == Morphism::Rep::FiniteTable) {
    const auto& st = as_finite(*f.source.carrier).table();
    const auto& tt = as_finite(*f.target.carrier).table();
    std::vector<int> diffs;
    for (unsigned x = 0; x < st.n; ++x) diffs.push_back(tt.op(f.table[x], tt.inv[g.table[x]]));
    std::vector<int> n = normal_closure(tt, diffs);
    FiniteQuotient q = quotient(tt, n);
    auto qc = finite_carrier(q.table);
    std::vector<int> image;
    for (int p : finite_cone_members(f.target)) image.push_back(q.projection[p]);
    RPGroup obj = make_rpgroup(qc, explicit_cone(qc, std::move(image)));
    Morphism proj = finite_morphism(f.target, obj, q.projection, "coeq");
    proj.known_monotone = Tri::yes();
    return {obj, {proj}};
  }
  if (f.rep == Morphism::Rep::Matrix && g.rep == Morphism::Rep::Matrix) {
    const auto& sc = as_abelian(*f.source.carrier);
    const auto& tc = as_abelian(*f.target.carrier);
    IntMatrix rel(tc.torsion().size() + sc.dim(), tc.dim());
    for (size_t j = 0; j < tc.torsion().size(); ++j) rel.at(j, tc.rank() + j) = tc.torsion()[j];
    for (size_t x = 0; x < sc.dim(); ++x)
      for (size_t i = 0; i < tc.dim(); ++i)
        rel.at(tc.torsion().size() + x, i) = f.mat.at(i, x) - g.mat.at(i, x);
    PresentedGroup p = presented_group(rel, tc.dim());
    auto qcar = p.group;
    IntMatrix toc = p.to_canonical;
    ConePtr cone = image_cone_abelian(
        f.target, qcar,
        [qcar, toc](const Element& y) { return qcar->normalize(mat_apply(toc, y.vec())); },
        cone_default_bound(f.target));
    RPGroup obj = make_rpgroup(qcar, cone);
    Morphism proj = matrix_morphism(f.target, obj, p.to_canonical, "coeq");
    proj.known_monotone = Tri::yes();
    return {obj, {proj}};
  }
  if (f.rep == Morphism::Rep::Scalar && g.rep == Morphism::Rep::Scalar) {
    if (f.scalar == g.scalar) {
      RPGroup obj = f.target;
      return {obj, {identity_morphism(obj)}};
    }
    auto triv = std::make_shared<const AbelianCarrier>(0, std::vector<Int>{});
    RPGroup obj = make_rpgroup(triv, trivial_cone(triv));
    Morphism proj = func_morphism(
        f.target, obj, [triv](const Element&) { return triv->zero(); }, "coeq");
    proj.known_monotone = Tri::yes();
    return {obj, {proj}};
  }
  throw UnsupportedError("coequalizer supports finite-table, matrix, and scalar morphisms");
}

ConstructedGroup cokernel(const Morphism& f) {
  ConstructedGroup c = coequalizer(f, zero_morphism(f.source, f.target));
  c.legs[0].label = "coker";
  return c;
}

ConstructedGroup coproduct(const RPGroup& g, const RPGroup& h) {
  (void)g;
  (void)h;
  throw UnsupportedError(
      "unsupported: coproducts in ROrdGrp are free products (infinite for nontrivial factors); "
      "their cone would be the coproduct of the positive cones, a submonoid of the free "
      "product, which this engine does not represent");
}

ConePreservationNote coequalizer_cone_note(const Morphism& f, const Morphism& g,
                                           const ConstructedGroup& coeq) {
  const Morphism& proj = coeq.legs[0];
  // restrictions of f and g to the source cone
  std::vector<Element> cone_elts;
  if (auto gens = f.source.cone->generators()) {
    cone_elts = *gens;
  } else {
    return {Tri::unknown(-1), "source cone has no generator list; not compared"};
  }
  bool restrictions_equal = true;
  for (const Element& p : cone_elts)
    if (!(f.apply(p) == g.apply(p))) restrictions_equal = false;

  if (f.target.carrier->kind() == CarrierKind::Finite) {
    // Full monoid coequalizer of the restrictions: the quotient of P_Y by the
    // least monoid congruence identifying P(f)(x) with P(g)(x).
    std::vector<int> py = finite_cone_members(f.target);
    const auto& tt = as_finite(*f.target.carrier).table();
    std::map<int, int> pos;
    for (size_t i = 0; i < py.size(); ++i) pos[py[i]] = static_cast<int>(i);
    size_t m = py.size();
    // union-find over cone elements
    std::vector<int> parent(m);
    for (size_t i = 0; i < m; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[a] = b;
    };
    // seed pairs: images of source-cone elements (finite sources enumerate)
    std::vector<int> px = finite_cone_members(f.source);
    for (int x : px) {
      int a = f.table[x], b = g.table[x];
      if (!pos.count(a) || !pos.count(b)) return {Tri::unknown(-1), "restriction escapes the cone"};
      unite(pos[a], pos[b]);
    }
    // close under left/right translation by cone elements
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
          if (find(static_cast<int>(i)) != find(static_cast<int>(j))) continue;
          for (size_t c = 0; c < m; ++c) {
            int l1 = tt.op(py[c], py[i]), l2 = tt.op(py[c], py[j]);
            if (find(pos[l1]) != find(pos[l2])) {
              unite(pos[l1], pos[l2]);
              changed = true;
            }
            int r1 = tt.op(py[i], py[c]), r2 = tt.op(py[j], py[c]);
            if (find(pos[r1]) != find(pos[r2])) {
              unite(pos[r1], pos[r2]);
              changed = true;
            }
          }
        }
    }
    std::set<int> classes;
    for (size_t i = 0; i < m; ++i) classes.insert(find(static_cast<int>(i)));
    // canonical comparison map: class of p -> proj(p); bijective iff the
    // cone functor preserved this coequalizer
    std::map<int, long> class_image;
    bool injective = true;
    std::set<long> images;
    for (size_t i = 0; i < m; ++i) {
      long q = proj.apply(Element::fin(py[i])).fin();
      int cls = find(static_cast<int>(i));
      auto it = class_image.find(cls);
      if (it == class_image.end()) {
        class_image[cls] = q;
        if (!images.insert(q).second) injective = false;
      } else if (it->second != q) {
        injective = false;  // cannot happen: proj coequalizes
      }
    }
    size_t cone_q = finite_cone_members(coeq.object).size();
    bool preserved = injective && classes.size() == cone_q;
    std::ostringstream os;
    os << "Mon-coequalizer of the cone restrictions has " << classes.size()
       << " element(s); cone of the coequalizer has " << cone_q << " element(s)";
    if (!preserved) os << " -- the positive-cone functor did not preserve this coequalizer";
    return {Tri::of(preserved), os.str()};
  }

  if (restrictions_equal) {
    // Equal restrictions: the monoid coequalizer is the identity on P_Y; the
    // functor preserves iff proj is injective on P_Y. A target-cone generator
    // collapsing to zero witnesses failure.
    std::vector<Element> target_gens;
    if (auto tg = f.target.cone->generators()) target_gens = *tg;
    for (const Element& p : target_gens) {
      Element q = proj.apply(p);
      bool p_zero = p == f.target.carrier->zero();
      bool q_zero = q == coeq.object.carrier->zero();
      if (!p_zero && q_zero) {
        std::ostringstream os;
        os << "Mon-coequalizer of the cone restrictions is the identity on "
           << f.target.cone->describe() << ", but the projection collapses "
           << f.target.carrier->show(p)
           << " to 0 -- the positive-cone functor did not preserve this coequalizer";
        return {Tri::no(), os.str()};
      }
    }
    return {Tri::unknown(-1),
            "restrictions are equal; no collapsing generator found at this bound"};
  }
  return {Tri::unknown(-1), "monoid coequalizer of distinct restrictions not computed "
                            "for infinite carriers"};
}

// --- lifts ---------------------------------------------------------------

ConePtr initial_lift(const CarrierPtr& x, const std::vector<Morphism>& legs) {
  for (const auto& f : legs)
    if (f.source.carrier.get() != x.get())
      throw ValidationError("initial lift: morphism does not start at the given group");
  if (legs.empty()) return total_cone(x);
  if (x->kind() == CarrierKind::Finite) {
    auto fc = std::static_pointer_cast<const FiniteCarrier>(x);
    std::vector<int> members;
    bool all_decided = true;
    for (unsigned i = 0; i < fc->table().n && all_decided; ++i) {
      Tri acc = Tri::yes();
      for (const auto& f : legs) {
        acc = tri_and(acc, f.target.cone->contains(f.apply(Element::fin(i))));
        if (acc.is_no()) break;
      }
      if (acc.is_unknown()) all_decided = false;
      if (acc.is_yes()) members.push_back(static_cast<int>(i));
    }
    if (all_decided) return explicit_cone(fc, std::move(members));
  }
  std::vector<PredicateCone::Leg> plegs;
  std::ostringstream os;
  os << "lift{";
  for (size_t i = 0; i < legs.size(); ++i) {
    const Morphism m = legs[i];
    plegs.push_back({[m](const Element& e) { return m.apply(e); }, m.target.cone,
                     m.label.empty() ? "f" + std::to_string(i) : m.label});
    if (i) os << ",";
    os << plegs.back().label << "^-1(" << m.target.cone->describe() << ")";
  }
  os << "}";
  return std::make_shared<PredicateCone>(x, std::move(plegs), os.str());
}

RPGroup discrete_lift(const CarrierPtr& x) { return make_rpgroup(x, trivial_cone(x)); }
RPGroup total_lift(const CarrierPtr& x) { return make_rpgroup(x, total_cone(x)); }

// --- classification -------------------------------------------------------

namespace {

// Rational Fourier-Motzkin feasibility for systems c.x + c0 >= 0. Exact;
// gives up (nullopt) past the row cap.
std::optional<bool> fm_feasible(std::vector<std::vector<Rat>> rows, size_t nvars,
                                size_t row_cap = 4000) {
  for (size_t v = 0; v < nvars; ++v) {
    size_t col = nvars - 1 - v;
    std::vector<std::vector<Rat>> zero, pos, neg;
    for (auto& r : rows) {
      int s = sgn(r[col]);
      if (s == 0) zero.push_back(std::move(r));
      else if (s > 0) pos.push_back(std::move(r));
      else neg.push_back(std::move(r));
    }
    rows = std::move(zero);
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // eliminate: q_col * p - p_col * q with signs arranged positive
        std::vector<Rat> r(p.size());
        Rat a = -q[col], b = p[col];
        for (size_t i = 0; i < p.size(); ++i) r[i] = a * p[i] + b * q[i];
        rows.push_back(std::move(r));
        if (rows.size() > row_cap) return std::nullopt;
      }
  }
  for (const auto& r : rows)
    if (sgn(r[nvars]) < 0) return false;
  return true;
}

// Is {x : m x >= 0 componentwise} contained in {x : x >= 0 componentwise}?
// Free abelian carriers only. Exact via Fourier-Motzkin on the homogeneous
// cone (integer and rational points agree for containment questions).
std::optional<bool> orthant_preimage_contained(const IntMatrix& m) {
  size_t n = m.cols;
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Rat>> rows;
    for (size_t r = 0; r < m.rows; ++r) {
      std::vector<Rat> row(n + 1);
      for (size_t c = 0; c < n; ++c) row[c] = Rat(m.at(r, c));
      rows.push_back(std::move(row));
    }
    std::vector<Rat> bad(n + 1);
    bad[i] = Rat(-1);
    bad[n] = Rat(-1);  // -x_i - 1 >= 0, i.e. x_i <= -1
    rows.push_back(std::move(bad));
    auto feas = fm_feasible(std::move(rows), n);
    if (!feas) return std::nullopt;
    if (*feas) return false;  // witness direction exists
  }
  return true;
}

struct InjSurj {
  Tri inj, surj;
  std::optional<Element> inj_witness, surj_witness;
};

InjSurj injective_surjective(const Morphism& f) {
  switch (f.rep) {
    case Morphism::Rep::FiniteTable: {
      const auto& tt = as_finite(*f.target.carrier).table();
      std::vector<int> hit(tt.n, -1);
      std::optional<Element> iw, sw;
      Tri inj = Tri::yes();
      for (size_t x = 0; x < f.table.size(); ++x) {
        if (hit[f.table[x]] >= 0 && inj.is_yes()) {
          inj = Tri::no();
          const auto& st = as_finite(*f.source.carrier).table();
          iw = Element::fin(st.op(static_cast<int>(x), st.inv[hit[f.table[x]]]));
        }
        if (hit[f.table[x]] < 0) hit[f.table[x]] = static_cast<int>(x);
      }
      Tri surj = Tri::yes();
      for (unsigned y = 0; y < tt.n; ++y)
        if (hit[y] < 0) {
          surj = Tri::no();
          sw = Element::fin(y);
          break;
        }
      return {inj, surj, iw, sw};
    }
    case Morphism::Rep::Matrix: {
      const auto& sc = as_abelian(*f.source.carrier);
      const auto& tc = as_abelian(*f.target.carrier);
      auto kgens = kernel_subgroup_gens(sc, tc, f.mat);
      Tri inj = Tri::yes();
      std::optional<Element> iw;
      for (const auto& kv : kgens)
        if (kv != std::vector<Int>(sc.dim())) {
          inj = Tri::no();
          iw = Element::vec(kv);
          break;
        }
      IntMatrix rel = vstack(carrier_relation_rows(tc), f.mat.transpose());
      PresentedGroup q = presented_group(rel, tc.dim());
      Tri surj = Tri::of(q.group->dim() == 0);
      std::optional<Element> sw;
      if (surj.is_no()) {
        // a basis preimage that generates the nontrivial quotient
        std::vector<Int> pick = q.from_canonical.col(0);
        sw = Element::vec(tc.normalize(std::move(pick)));
      }
      return {inj, surj, iw, sw};
    }
    case Morphism::Rep::Scalar: {
      bool zero = sgn(f.scalar) == 0;
      return {Tri::of(!zero), Tri::of(!zero),
              zero ? std::optional<Element>(Element::rat(Rat(1))) : std::nullopt,
              zero ? std::optional<Element>(Element::rat(Rat(1))) : std::nullopt};
    }
    default:
      throw UnsupportedError("classify needs a finite-table, matrix, or scalar morphism");
  }
}

// P_Y <= f(P_X) as monoids (cone restriction surjective), abelian case.
Tri cone_restriction_surjective_abelian(const Morphism& f, const SearchBudget& budget) {
  auto tgens = f.target.cone->generators();
  auto sgens = f.source.cone->generators();
  if (!tgens || !sgens) {
    if (f.target.cone->kind() == ConeKind::Trivial) return Tri::yes();
    return Tri::unknown(budget.bound);
  }
  std::vector<std::vector<Int>> img;
  for (const Element& g : *sgens) img.push_back(f.apply(g).vec());
  AffineMonoid image{abelian_ptr(f.target), std::move(img), budget.bound};
  GeneratedCone gc(image);  // normalizes and dedups
  Tri acc = Tri::yes();
  for (const Element& t : *tgens) {
    acc = tri_and(acc, cone_member(gc.monoid(), t.vec(), budget).verdict);
    if (acc.is_no()) return acc;
  }
  return acc;
}

}  // namespace

MorphClass classify(const Morphism& f, const SearchBudget& budget) {
  MorphClass out;
  InjSurj is = injective_surjective(f);
  out.mono = is.inj;
  out.epi = is.surj;
  out.mono_witness = is.inj_witness;
  out.epi_witness = is.surj_witness;

  // regular epi: f and its cone restriction both surjective
  Tri cone_surj;
  switch (f.rep) {
    case Morphism::Rep::FiniteTable: {
      std::vector<char> image(as_finite(*f.target.carrier).table().n, 0);
      for (int p : finite_cone_members(f.source)) image[f.table[p]] = 1;
      cone_surj = Tri::yes();
      for (int q : finite_cone_members(f.target))
        if (!image[q]) {
          cone_surj = Tri::no();
          out.regepi_witness = Element::fin(q);
          break;
        }
      break;
    }
    case Morphism::Rep::Matrix:
      cone_surj = cone_restriction_surjective_abelian(f, budget);
      break;
    case Morphism::Rep::Scalar: {
      ConeKind t = f.target.cone->kind();
      ConeKind s = f.source.cone->kind();
      if (t == ConeKind::Trivial) cone_surj = Tri::yes();
      else if (s == ConeKind::Trivial)
        cone_surj = Tri::no();
      else if (t == ConeKind::Orthant)
        cone_surj = Tri::of(s != ConeKind::Orthant ? sgn(f.scalar) != 0 : sgn(f.scalar) > 0);
      else  // total target: need f(P_X) = Q
        cone_surj = Tri::of(s == ConeKind::Total && sgn(f.scalar) != 0);
      if (cone_surj.is_no()) out.regepi_witness = Element::rat(Rat(1));
      break;
    }
    default:
      cone_surj = Tri::unknown(budget.bound);
  }
  out.regular_epi = tri_and(out.epi, cone_surj);

  // regular mono: injective with P_X = f^{-1}(P_Y)
  Tri pre_eq;
  switch (f.rep) {
    case Morphism::Rep::FiniteTable: {
      pre_eq = Tri::yes();
      const auto& st = as_finite(*f.source.carrier).table();
      for (unsigned x = 0; x < st.n; ++x) {
        bool in_src = f.source.cone->contains(Element::fin(x)).is_yes();
        bool in_pre = f.target.cone->contains(Element::fin(f.table[x])).is_yes();
        if (in_src != in_pre) {
          pre_eq = Tri::no();
          out.regmono_witness = Element::fin(x);
          break;
        }
      }
      break;
    }
    case Morphism::Rep::Matrix: {
      if (f.preimage_cone_by_construction) {
        pre_eq = Tri::yes();  // the source cone is this very preimage
        break;
      }
      Tri fwd = is_monotone(f, budget);  // P_X <= f^-1(P_Y)
      // reverse direction: witness search over a coordinate box, then exact
      // reasoning for builtin cone pairs
      const auto& sc = as_abelian(*f.source.carrier);
      Tri rev = Tri::unknown(64);
      std::optional<Element> w;
      if (sc.dim() > 0) {
        // largest affordable radius <= 64 for the witness box
        long radius = 64;
        const double cap = 300000.0;
        while (radius > 1) {
          double pts = 1;
          for (size_t i = 0; i < sc.dim() && pts <= cap; ++i) pts *= 2.0 * radius + 1;
          if (pts <= cap) break;
          radius /= 2;
        }
        std::vector<Int> x(sc.dim());
        std::function<bool(size_t)> scan = [&](size_t i) -> bool {
          if (i == sc.dim()) {
            Element e = Element::vec(sc.normalize(x));
            if (f.target.cone->contains(f.apply(e), budget).is_yes() &&
                f.source.cone->contains(e, budget).is_no()) {
              w = e;
              return true;
            }
            return false;
          }
          long lo = -radius, hi = radius;
          if (i >= sc.rank()) {
            lo = 0;
            const Int& d = sc.torsion()[i - sc.rank()];
            hi = d.fits_slong_p() ? std::min<long>(radius, d.get_si() - 1) : radius;
          }
          for (long v = lo; v <= hi; ++v) {
            x[i] = v;
            if (scan(i + 1)) return true;
          }
          return false;
        };
        scan(0);
        rev = w ? Tri::no() : Tri::unknown(radius);
      }
      if (rev.is_unknown()) {
        ConeKind s = f.source.cone->kind(), t = f.target.cone->kind();
        const auto& tc = as_abelian(*f.target.carrier);
        if (t == ConeKind::Trivial && is.inj.is_yes()) {
          // f^{-1}{0} = ker f = 0: equality iff P_X = {0}
          if (s == ConeKind::Trivial) rev = Tri::yes();
        } else if (t == ConeKind::Total) {
          if (s == ConeKind::Total) rev = Tri::yes();
        } else if (t == ConeKind::Orthant && s == ConeKind::Orthant &&
                   sc.torsion().empty() && tc.torsion().empty()) {
          auto contained = orthant_preimage_contained(f.mat);
          if (contained) rev = Tri::of(*contained);
        }
      }
      if (rev.is_unknown() && is.inj.is_yes() && is.surj.is_yes()) {
        // bijective: the reverse containment says the inverse is monotone
        const auto& tc = as_abelian(*f.target.carrier);
        IntMatrix inv(sc.dim(), tc.dim());
        bool ok = true;
        for (size_t j = 0; j < tc.dim() && ok; ++j) {
          std::vector<Int> ej(tc.dim());
          ej[j] = 1;
          auto sol = solve_in_group(tc, f.mat, ej);
          if (!sol) {
            ok = false;
            break;
          }
          for (size_t i = 0; i < sc.dim(); ++i) inv.at(i, j) = (*sol)[i];
        }
        if (ok) {
          Morphism finv = matrix_morphism(f.target, f.source, inv, "inv");
          rev = is_monotone(finv, budget);
        }
      }
      pre_eq = tri_and(fwd, rev);
      if (w) out.regmono_witness = w;
      break;
    }
    case Morphism::Rep::Scalar: {
      ConeKind s = f.source.cone->kind(), t = f.target.cone->kind();
      if (sgn(f.scalar) == 0) {
        pre_eq = Tri::of(s == ConeKind::Total);
      } else {
        // preimage of target cone under x -> qx
        ConeKind pre;
        if (t == ConeKind::Trivial) pre = ConeKind::Trivial;
        else if (t == ConeKind::Total) pre = ConeKind::Total;
        else pre = ConeKind::Orthant;  // orientation checked below
        bool flip = t == ConeKind::Orthant && sgn(f.scalar) < 0;
        if (flip) {
          pre_eq = Tri::no();  // preimage is Q<=0, never a stock source cone
          out.regmono_witness = Element::rat(Rat(-1));
        } else {
          pre_eq = Tri::of(s == pre);
        }
      }
      break;
    }
    default:
      pre_eq = Tri::unknown(budget.bound);
  }
  out.regular_mono = tri_and(out.mono, pre_eq);
  out.iso = tri_and(out.epi, out.regular_mono);
  if (out.iso.is_yes()) {
    out.mono = out.epi = out.regular_mono = out.regular_epi = Tri::yes();
  }
  return out;
}

// --- factorizations -----------------------------------------------------

Factorizations factorize(const Morphism& f) {
  if (f.rep == Morphism::Rep::FiniteTable) {
    const auto& st = as_finite(*f.source.carrier).table();
    const auto& tt = as_finite(*f.target.carrier).table();
    std::set<int> image_set(f.table.begin(), f.table.end());
    SubTable sub = subgroup_table(tt, std::vector<int>(image_set.begin(), image_set.end()));
    auto mc = finite_carrier(sub.table);

    std::vector<int> middle1_cone;  // P_Y /\ f(X)
    for (size_t i = 0; i < sub.embed.size(); ++i)
      if (f.target.cone->contains(Element::fin(sub.embed[i])).is_yes())
        middle1_cone.push_back(static_cast<int>(i));
    std::vector<int> middle2_cone;  // f(P_X)
    {
      std::set<int> img;
      for (int p : finite_cone_members(f.source)) img.insert(sub.idx[f.table[p]]);
      middle2_cone.assign(img.begin(), img.end());
    }
    RPGroup mid1 = make_rpgroup(mc, explicit_cone(mc, std::move(middle1_cone)));
    RPGroup mid2 = make_rpgroup(mc, explicit_cone(mc, std::move(middle2_cone)));

    std::vector<int> e_table(st.n);
    for (unsigned x = 0; x < st.n; ++x) e_table[x] = sub.idx[f.table[x]];
    Factorizations out{mid1,
                       finite_morphism(f.source, mid1, e_table, "e"),
                       finite_morphism(mid1, f.target, sub.embed, "m"),
                       mid2,
                       finite_morphism(f.source, mid2, e_table, "e'"),
                       finite_morphism(mid2, f.target, sub.embed, "m'")};
    return out;
  }
  if (f.rep == Morphism::Rep::Matrix) {
    const auto& sc = as_abelian(*f.source.carrier);
    const auto& tc = as_abelian(*f.target.carrier);
    std::vector<std::vector<Int>> image_gens;
    for (size_t j = 0; j < sc.dim(); ++j) image_gens.push_back(tc.normalize(f.mat.col(j)));
    SubgroupPresentation s = subgroup_from_generators(tc, image_gens);
    auto mcar = s.group;
    auto tcar = abelian_ptr(f.target);

    IntMatrix incl = s.inclusion;
    PredicateCone::Leg leg{
        [tcar, incl](const Element& x) { return tcar->normalized(mat_apply(incl, x.vec())); },
        f.target.cone, "m"};
    ConePtr cone1 = std::make_shared<PredicateCone>(
        mcar, std::vector<PredicateCone::Leg>{leg},
        f.target.cone->describe() + " /\\ f(X)");
    RPGroup mid1 = make_rpgroup(mcar, cone1);

    IntMatrix e_mat = s.gen_to_canonical;
    ConePtr cone2 = image_cone_abelian(
        f.source, mcar,
        [mcar, e_mat](const Element& x) { return mcar->normalize(mat_apply(e_mat, x.vec())); },
        cone_default_bound(f.source));
    RPGroup mid2 = make_rpgroup(mcar, cone2);

    Factorizations out{mid1,
                       matrix_morphism(f.source, mid1, s.gen_to_canonical, "e"),
                       matrix_morphism(mid1, f.target, s.inclusion, "m"),
                       mid2,
                       matrix_morphism(f.source, mid2, s.gen_to_canonical, "e'"),
                       matrix_morphism(mid2, f.target, s.inclusion, "m'")};
    out.m.known_monotone = Tri::yes();
    out.m.preimage_cone_by_construction = true;
    return out;
  }
  if (f.rep == Morphism::Rep::Scalar && sgn(f.scalar) != 0) {
    // bijective on carriers: image is Q itself
    auto qc = f.target.carrier;
    RPGroup mid1 = f.target;
    ConePtr cone2;
    switch (f.source.cone->kind()) {
      case ConeKind::Trivial: cone2 = trivial_cone(qc); break;
      case ConeKind::Total: cone2 = total_cone(qc); break;
      case ConeKind::Orthant:
        if (sgn(f.scalar) > 0) {
          cone2 = orthant_cone(qc);
        } else {
          cone2 = std::make_shared<CustomCone>(
              qc, [](const Element& x, const SearchBudget&) { return Tri::of(sgn(x.rat()) <= 0); },
              "Q<=0");
        }
        break;
      default:
        throw UnsupportedError("factorize: unsupported rational cone");
    }
    RPGroup mid2 = make_rpgroup(qc, cone2);
    Factorizations out{mid1,
                       scalar_morphism(f.source, mid1, f.scalar, "e"),
                       identity_morphism(mid1),
                       mid2,
                       scalar_morphism(f.source, mid2, f.scalar, "e'"),
                       scalar_morphism(mid2, f.target, Rat(1), "m'")};
    return out;
  }
  throw UnsupportedError("factorize supports finite-table, matrix, and nonzero scalar morphisms");
}

// --- jointly strongly epimorphic families ---------------------------------

JointlyEpiResult jointly_strongly_epi(const std::vector<Morphism>& fs,
                                      const SearchBudget& budget) {
  if (fs.empty()) throw ValidationError("jointly_strongly_epi needs at least one morphism");
  const RPGroup& target = fs[0].target;
  for (const auto& f : fs)
    if (!same_object(f.target, target))
      throw ValidationError("jointly_strongly_epi needs a common target object");

  if (target.carrier->kind() == CarrierKind::Finite) {
    const auto& tt = as_finite(*target.carrier).table();
    std::vector<int> image_seed;
    std::vector<int> cone_seed;
    for (const auto& f : fs) {
      if (f.rep != Morphism::Rep::FiniteTable)
        throw UnsupportedError("finite jointly_strongly_epi needs table morphisms");
      for (int v : f.table) image_seed.push_back(v);
      for (int p : finite_cone_members(f.source)) cone_seed.push_back(f.table[p]);
    }
    std::vector<int> grp = submonoid_closure(tt, image_seed);
    if (grp.size() != tt.n) {
      for (unsigned y = 0; y < tt.n; ++y)
        if (!std::binary_search(grp.begin(), grp.end(), static_cast<int>(y)))
          return {Tri::no(), "group", Element::fin(y)};
    }
    // monoid closure of cone images inside P_X
    std::vector<char> in(tt.n, 0);
    std::vector<int> work;
    in[0] = 1;
    work.push_back(0);
    for (int c : cone_seed)
      if (!in[c]) {
        in[c] = 1;
        work.push_back(c);
      }
    for (size_t i = 0; i < work.size(); ++i)
      for (size_t j = 0; j < work.size(); ++j) {
        int p = tt.op(work[i], work[j]);
        if (!in[p]) {
          in[p] = 1;
          work.push_back(p);
        }
      }
    for (int q : finite_cone_members(target))
      if (!in[q]) return {Tri::no(), "cone", Element::fin(q)};
    return {Tri::yes(), "", std::nullopt};
  }

  if (target.carrier->kind() == CarrierKind::Abelian) {
    const auto& tc = as_abelian(*target.carrier);
    // (1) group generation: quotient by all images is trivial
    std::vector<std::vector<Int>> img_rows;
    for (const auto& f : fs) {
      if (f.rep != Morphism::Rep::Matrix)
        throw UnsupportedError("abelian jointly_strongly_epi needs matrix morphisms");
      for (size_t j = 0; j < f.mat.cols; ++j) img_rows.push_back(f.mat.col(j));
    }
    IntMatrix rel = vstack(carrier_relation_rows(tc), IntMatrix::from_rows(img_rows));
    PresentedGroup q = presented_group(rel, tc.dim());
    if (q.group->dim() != 0) {
      std::vector<Int> pick = q.from_canonical.col(0);
      return {Tri::no(), "group", Element::vec(tc.normalize(std::move(pick)))};
    }
    // (2) cone generation: target cone generators lie in the monoid generated
    // by the image cones
    auto tgens = target.cone->generators();
    if (!tgens) return {Tri::unknown(budget.bound), "cone", std::nullopt};
    std::vector<std::vector<Int>> cone_img;
    for (const auto& f : fs) {
      auto sgens = f.source.cone->generators();
      if (!sgens) return {Tri::unknown(budget.bound), "cone", std::nullopt};
      for (const Element& g : *sgens) cone_img.push_back(f.apply(g).vec());
    }
    AffineMonoid m{abelian_ptr(target), std::move(cone_img), budget.bound};
    GeneratedCone gc(m);
    Tri acc = Tri::yes();
    for (const Element& t : *tgens) {
      MemberResult r = cone_member(gc.monoid(), t.vec(), budget);
      if (r.verdict.is_no()) return {Tri::no(), "cone", t};
      acc = tri_and(acc, r.verdict);
    }
    return {acc, acc.is_yes() ? "" : "cone", std::nullopt};
  }
  throw UnsupportedError("jointly_strongly_epi supports finite and abelian targets");
}

// --- reflection -----------------------------------------------------------

Reflected reflect_to_ordgrp(const RPGroup& g) {
  switch (g.carrier->kind()) {
    case CarrierKind::Finite: {
      auto fc = finite_ptr(g);
      std::vector<int> closed = conjugation_closure(fc->table(), finite_cone_members(g));
      RPGroup refl = make_rpgroup(g.carrier, explicit_cone(fc, std::move(closed)));
      Morphism unit = identity_morphism(g);
      unit.target = refl;
      unit.label = "unit";
      unit.known_monotone = Tri::yes();  // the closure contains the cone
      return {refl, unit};
    }
    case CarrierKind::Abelian:
    case CarrierKind::Rationals: {
      // conjugation is trivial: the reflection is the identity
      Morphism unit = identity_morphism(g);
      unit.label = "unit";
      return {g, unit};
    }
    default:
      throw UnsupportedError(
          "reflect_to_ordgrp supports finite and abelian carriers; materialize a finite "
          "semidirect product first");
  }
}

}  // namespace rog
