#include "rog/morphism.hpp"

#include "rog/abelian.hpp"
#include "rog/errors.hpp"

namespace rog {

Element Morphism::apply(const Element& x) const {
  source.carrier->require(x);
  switch (rep) {
    case Rep::FiniteTable:
      return Element::fin(table[x.fin()]);
    case Rep::Matrix: {
      const auto& tgt = static_cast<const AbelianCarrier&>(*target.carrier);
      return Element::vec(tgt.normalize(mat_apply(mat, x.vec())));
    }
    case Rep::Scalar:
      return Element::rat(scalar * x.rat());
    default:
      return fn(x);
  }
}

std::string Morphism::describe() const {
  std::string base = label.empty() ? "morphism" : label;
  return base + ": " + source.describe() + " -> " + target.describe();
}

Morphism finite_morphism(RPGroup source, RPGroup target, std::vector<int> table,
                         std::string label) {
  const auto& st = static_cast<const FiniteCarrier&>(*source.carrier).table();
  const auto& tt = static_cast<const FiniteCarrier&>(*target.carrier).table();
  if (table.size() != st.n) throw ValidationError("morphism table has wrong length");
  for (int v : table)
    if (v < 0 || static_cast<unsigned>(v) >= tt.n)
      throw ValidationError("morphism table entry outside the target");
  if (table[0] != 0) throw ValidationError("morphism does not preserve the identity");
  for (unsigned a = 0; a < st.n; ++a)
    for (unsigned b = 0; b < st.n; ++b)
      if (table[st.op(a, b)] != tt.op(table[a], table[b]))
        throw ValidationError("not a homomorphism: fails at (" + std::to_string(a) + "," +
                              std::to_string(b) + ")");
  Morphism m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.rep = Morphism::Rep::FiniteTable;
  m.table = std::move(table);
  m.label = std::move(label);
  return m;
}

Morphism matrix_morphism(RPGroup source, RPGroup target, IntMatrix mat, std::string label) {
  const auto& sc = static_cast<const AbelianCarrier&>(*source.carrier);
  const auto& tc = static_cast<const AbelianCarrier&>(*target.carrier);
  if (mat.rows != tc.dim() || mat.cols != sc.dim())
    throw ValidationError("morphism matrix has wrong shape");
  // well-definedness: source torsion relations must map to zero
  for (size_t j = 0; j < sc.torsion().size(); ++j) {
    std::vector<Int> img(tc.dim());
    for (size_t i = 0; i < tc.dim(); ++i) img[i] = sc.torsion()[j] * mat.at(i, sc.rank() + j);
    img = tc.normalize(std::move(img));
    if (img != std::vector<Int>(tc.dim()))
      throw ValidationError("matrix is not well-defined on torsion coordinate " +
                            std::to_string(j));
  }
  Morphism m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.rep = Morphism::Rep::Matrix;
  m.mat = std::move(mat);
  m.label = std::move(label);
  return m;
}

Morphism scalar_morphism(RPGroup source, RPGroup target, const Rat& q, std::string label) {
  if (source.carrier->kind() != CarrierKind::Rationals ||
      target.carrier->kind() != CarrierKind::Rationals)
    throw ValidationError("scalar morphisms connect rational carriers");
  Morphism m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.rep = Morphism::Rep::Scalar;
  m.scalar = q;
  m.label = std::move(label);
  return m;
}

Morphism func_morphism(RPGroup source, RPGroup target,
                       std::function<Element(const Element&)> fn, std::string label) {
  Morphism m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.rep = Morphism::Rep::Func;
  m.fn = std::move(fn);
  m.label = std::move(label);
  return m;
}

Morphism identity_morphism(const RPGroup& g) {
  switch (g.carrier->kind()) {
    case CarrierKind::Finite: {
      const auto& t = static_cast<const FiniteCarrier&>(*g.carrier).table();
      std::vector<int> id(t.n);
      for (unsigned i = 0; i < t.n; ++i) id[i] = static_cast<int>(i);
      return finite_morphism(g, g, std::move(id), "id");
    }
    case CarrierKind::Abelian: {
      const auto& c = static_cast<const AbelianCarrier&>(*g.carrier);
      return matrix_morphism(g, g, IntMatrix::identity(c.dim()), "id");
    }
    case CarrierKind::Rationals:
      return scalar_morphism(g, g, Rat(1), "id");
    default:
      return func_morphism(g, g, [](const Element& x) { return x; }, "id");
  }
}

Morphism zero_morphism(RPGroup source, RPGroup target) {
  auto sk = source.carrier->kind();
  auto tk = target.carrier->kind();
  if (sk == CarrierKind::Finite && tk == CarrierKind::Finite) {
    const auto& st = static_cast<const FiniteCarrier&>(*source.carrier).table();
    return finite_morphism(std::move(source), std::move(target), std::vector<int>(st.n, 0), "0");
  }
  if (sk == CarrierKind::Abelian && tk == CarrierKind::Abelian) {
    const auto& sc = static_cast<const AbelianCarrier&>(*source.carrier);
    const auto& tc = static_cast<const AbelianCarrier&>(*target.carrier);
    return matrix_morphism(std::move(source), std::move(target), IntMatrix(tc.dim(), sc.dim()),
                           "0");
  }
  if (sk == CarrierKind::Rationals && tk == CarrierKind::Rationals)
    return scalar_morphism(std::move(source), std::move(target), Rat(0), "0");
  Element z = target.carrier->zero();
  return func_morphism(std::move(source), std::move(target),
                       [z](const Element&) { return z; }, "0");
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (g.source.carrier.get() != f.target.carrier.get())
    throw ValidationError("composition: carriers do not match");
  Morphism m;
  m.source = f.source;
  m.target = g.target;
  m.label = (g.label.empty() ? "g" : g.label) + "." + (f.label.empty() ? "f" : f.label);
  if (f.rep == Morphism::Rep::FiniteTable && g.rep == Morphism::Rep::FiniteTable) {
    m.rep = Morphism::Rep::FiniteTable;
    m.table.resize(f.table.size());
    for (size_t i = 0; i < f.table.size(); ++i) m.table[i] = g.table[f.table[i]];
    return m;
  }
  if (f.rep == Morphism::Rep::Matrix && g.rep == Morphism::Rep::Matrix) {
    m.rep = Morphism::Rep::Matrix;
    m.mat = mul(g.mat, f.mat);
    return m;
  }
  if (f.rep == Morphism::Rep::Scalar && g.rep == Morphism::Rep::Scalar) {
    m.rep = Morphism::Rep::Scalar;
    m.scalar = g.scalar * f.scalar;
    return m;
  }
  m.rep = Morphism::Rep::Func;
  Morphism fc = f, gc = g;
  m.fn = [fc, gc](const Element& x) { return gc.apply(fc.apply(x)); };
  return m;
}

namespace {

// Monotonicity of a scalar map between rational carriers with builtin cones.
MonotoneResult scalar_monotone(const Morphism& f) {
  ConeKind s = f.source.cone->kind(), t = f.target.cone->kind();
  auto image_contained = [&](bool nonneg_image) -> MonotoneResult {
    // image cone is {0}, Q>=0 or Q<=0 depending on scalar sign
    if (sgn(f.scalar) == 0) return {Tri::yes(), std::nullopt};
    if (t == ConeKind::Total) return {Tri::yes(), std::nullopt};
    if (t == ConeKind::Trivial)
      return {Tri::no(), Element::rat(Rat(1))};
    // target Q>=0
    if (nonneg_image) return {Tri::yes(), std::nullopt};
    return {Tri::no(), Element::rat(Rat(1))};
  };
  switch (s) {
    case ConeKind::Trivial:
      return {Tri::yes(), std::nullopt};
    case ConeKind::Orthant:
      return image_contained(sgn(f.scalar) >= 0);
    case ConeKind::Total: {
      if (sgn(f.scalar) == 0) return {Tri::yes(), std::nullopt};
      if (t == ConeKind::Total) return {Tri::yes(), std::nullopt};
      return {Tri::no(), Element::rat(sgn(f.scalar) > 0 ? Rat(-1) : Rat(1))};
    }
    default:
      return {Tri::unknown(-1), std::nullopt};
  }
}

}  // namespace

MonotoneResult is_monotone_witness(const Morphism& f, const SearchBudget& budget) {
  if (f.known_monotone) return {*f.known_monotone, std::nullopt};
  if (f.rep == Morphism::Rep::Scalar && f.source.cone->kind() != ConeKind::Custom)
    return scalar_monotone(f);
  auto gens = f.source.cone->generators();
  if (!gens) {
    if (f.source.cone->kind() == ConeKind::Total && f.target.cone->kind() == ConeKind::Total)
      return {Tri::yes(), std::nullopt};
    return {Tri::unknown(budget.bound), std::nullopt};
  }
  Tri acc = Tri::yes();
  for (const Element& g : *gens) {
    Tri t = f.target.cone->contains(f.apply(g), budget);
    if (t.is_no()) return {Tri::no(), g};
    acc = tri_and(acc, t);
  }
  return {acc, std::nullopt};
}

Tri is_monotone(const Morphism& f, const SearchBudget& budget) {
  return is_monotone_witness(f, budget).verdict;
}

bool maps_equal(const Morphism& f, const Morphism& g) {
  if (f.source.carrier.get() != g.source.carrier.get() ||
      f.target.carrier.get() != g.target.carrier.get())
    return false;
  if (f.rep == Morphism::Rep::Matrix && g.rep == Morphism::Rep::Matrix) {
    const auto& tc = static_cast<const AbelianCarrier&>(*f.target.carrier);
    for (size_t j = 0; j < f.mat.cols; ++j) {
      std::vector<Int> d(tc.dim());
      for (size_t i = 0; i < tc.dim(); ++i) d[i] = f.mat.at(i, j) - g.mat.at(i, j);
      if (tc.normalize(std::move(d)) != std::vector<Int>(tc.dim())) return false;
    }
    return true;
  }
  if (f.rep == Morphism::Rep::Scalar && g.rep == Morphism::Rep::Scalar)
    return f.scalar == g.scalar;
  auto n = f.source.carrier->order();
  if (n && f.source.carrier->kind() == CarrierKind::Finite) {
    for (unsigned long i = 0; i < *n; ++i) {
      Element x = Element::fin(static_cast<long>(i));
      if (!(f.apply(x) == g.apply(x))) return false;
    }
    return true;
  }
  throw UnsupportedError("maps_equal needs matching finite/abelian representations");
}

}  // namespace rog
