#include "rog/splitext.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "rog/errors.hpp"
#include "rog/finite.hpp"

namespace rog {

namespace {

const FiniteCarrier& as_finite(const Carrier& c) { return static_cast<const FiniteCarrier&>(c); }
const AbelianCarrier& as_abelian(const Carrier& c) { return static_cast<const AbelianCarrier&>(c); }

// reduce torsion rows so matrix powers stay small
IntMatrix normalize_matrix(const AbelianCarrier& x, IntMatrix m) {
  for (size_t j = 0; j < x.torsion().size(); ++j)
    for (size_t c = 0; c < m.cols; ++c) {
      Int& e = m.at(x.rank() + j, c);
      mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), x.torsion()[j].get_mpz_t());
    }
  return m;
}

bool matrices_equal_mod(const AbelianCarrier& x, const IntMatrix& a, const IntMatrix& b) {
  for (size_t j = 0; j < a.cols; ++j) {
    std::vector<Int> d(x.dim());
    for (size_t i = 0; i < x.dim(); ++i) d[i] = a.at(i, j) - b.at(i, j);
    if (x.normalize(std::move(d)) != std::vector<Int>(x.dim())) return false;
  }
  return true;
}

IntMatrix mat_pow(const AbelianCarrier& x, IntMatrix base, unsigned long e) {
  IntMatrix acc = IntMatrix::identity(x.dim());
  while (e) {
    if (e & 1) acc = normalize_matrix(x, mul(acc, base));
    base = normalize_matrix(x, mul(base, base));
    e >>= 1;
  }
  return acc;
}

}  // namespace

// --- GroupAction ----------------------------------------------------------

std::shared_ptr<const GroupAction> GroupAction::trivial(RPGroup x, RPGroup b) {
  auto a = std::shared_ptr<GroupAction>(new GroupAction());
  a->x_ = std::move(x);
  a->b_ = std::move(b);
  a->trivial_ = true;
  return a;
}

std::shared_ptr<const GroupAction> GroupAction::finite_action(RPGroup x, RPGroup b,
                                                              const std::vector<int>& gens,
                                                              std::vector<std::vector<int>> images) {
  if (x.carrier->kind() != CarrierKind::Finite || b.carrier->kind() != CarrierKind::Finite)
    throw ValidationError("finite_action needs finite carriers");
  const auto& xt = as_finite(*x.carrier).table();
  const auto& bt = as_finite(*b.carrier).table();
  if (gens.size() != images.size())
    throw ValidationError("one image per generator required");

  auto check_auto = [&xt](const std::vector<int>& p) {
    if (p.size() != xt.n) throw ValidationError("automorphism image has wrong size");
    std::vector<char> used(xt.n, 0);
    for (int v : p) {
      if (v < 0 || static_cast<unsigned>(v) >= xt.n || used[v])
        throw ValidationError("action image is not a bijection");
      used[v] = 1;
    }
    if (p[0] != 0) throw ValidationError("action image does not fix the identity");
    for (unsigned i = 0; i < xt.n; ++i)
      for (unsigned j = 0; j < xt.n; ++j)
        if (p[xt.op(i, j)] != xt.op(p[i], p[j]))
          throw ValidationError("action image is not an automorphism: fails at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
  };
  for (const auto& p : images) check_auto(p);

  std::vector<std::vector<int>> phi(bt.n);
  std::vector<char> known(bt.n, 0);
  std::vector<int> id(xt.n);
  for (unsigned i = 0; i < xt.n; ++i) id[i] = static_cast<int>(i);
  phi[0] = id;
  known[0] = 1;
  std::vector<int> work{0};
  auto set_phi = [&](int elt, std::vector<int> perm) {
    if (known[elt]) {
      if (phi[elt] != perm)
        throw ValidationError("generator images are inconsistent with the relations of the "
                              "actor at element " + std::to_string(elt));
      return;
    }
    known[elt] = 1;
    phi[elt] = std::move(perm);
    work.push_back(elt);
  };
  for (size_t k = 0; k < gens.size(); ++k) set_phi(gens[k], images[k]);
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t k = 0; k < gens.size(); ++k) {
      int e = bt.op(work[i], gens[k]);
      std::vector<int> comp(xt.n);
      for (unsigned v = 0; v < xt.n; ++v) comp[v] = phi[work[i]][images[k][v]];
      set_phi(e, std::move(comp));
      // also close on the left to reach every element of non-cyclic actors
      int e2 = bt.op(gens[k], work[i]);
      std::vector<int> comp2(xt.n);
      for (unsigned v = 0; v < xt.n; ++v) comp2[v] = images[k][phi[work[i]][v]];
      set_phi(e2, std::move(comp2));
    }
  for (unsigned e = 0; e < bt.n; ++e)
    if (!known[e])
      throw ValidationError("the given generators do not generate the actor (element " +
                            std::to_string(e) + " unreached)");

  auto a = std::shared_ptr<GroupAction>(new GroupAction());
  a->x_ = std::move(x);
  a->b_ = std::move(b);
  a->rep_ = Rep::FinitePerms;
  a->perms_ = std::move(phi);
  a->trivial_ = true;
  for (const auto& p : a->perms_)
    if (p != id) a->trivial_ = false;
  return a;
}

std::shared_ptr<const GroupAction> GroupAction::matrix_action(RPGroup x, RPGroup b,
                                                              std::vector<IntMatrix> images) {
  if (x.carrier->kind() != CarrierKind::Abelian || b.carrier->kind() != CarrierKind::Abelian)
    throw ValidationError("matrix_action needs abelian carriers");
  const auto& xc = as_abelian(*x.carrier);
  const auto& bc = as_abelian(*b.carrier);
  if (images.size() != bc.dim())
    throw ValidationError("matrix_action needs one matrix per actor coordinate");

  std::vector<IntMatrix> invs;
  for (auto& m : images) {
    if (m.rows != xc.dim() || m.cols != xc.dim())
      throw ValidationError("action matrix has wrong shape");
    m = normalize_matrix(xc, std::move(m));
    // well-definedness on torsion
    for (size_t j = 0; j < xc.torsion().size(); ++j) {
      std::vector<Int> img(xc.dim());
      for (size_t i = 0; i < xc.dim(); ++i) img[i] = xc.torsion()[j] * m.at(i, xc.rank() + j);
      if (xc.normalize(std::move(img)) != std::vector<Int>(xc.dim()))
        throw ValidationError("action matrix is not well-defined on torsion");
    }
    // two-sided inverse
    IntMatrix inv(xc.dim(), xc.dim());
    for (size_t j = 0; j < xc.dim(); ++j) {
      std::vector<Int> ej(xc.dim());
      ej[j] = 1;
      auto sol = solve_in_group(xc, m, ej);
      if (!sol) throw ValidationError("action matrix is not surjective, hence not invertible");
      for (size_t i = 0; i < xc.dim(); ++i) inv.at(i, j) = (*sol)[i];
    }
    inv = normalize_matrix(xc, std::move(inv));
    if (!matrices_equal_mod(xc, normalize_matrix(xc, mul(m, inv)), IntMatrix::identity(xc.dim())) ||
        !matrices_equal_mod(xc, normalize_matrix(xc, mul(inv, m)), IntMatrix::identity(xc.dim())))
      throw ValidationError("action matrix is not invertible");
    invs.push_back(std::move(inv));
  }
  for (size_t i = 0; i < images.size(); ++i)
    for (size_t j = i + 1; j < images.size(); ++j)
      if (!matrices_equal_mod(xc, normalize_matrix(xc, mul(images[i], images[j])),
                              normalize_matrix(xc, mul(images[j], images[i]))))
        throw ValidationError("action matrices do not commute (coordinates " + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
  for (size_t j = 0; j < bc.torsion().size(); ++j) {
    const Int& d = bc.torsion()[j];
    if (!d.fits_ulong_p()) throw ValidationError("actor torsion too large for validation");
    if (!matrices_equal_mod(xc, mat_pow(xc, images[bc.rank() + j], d.get_ui()),
                            IntMatrix::identity(xc.dim())))
      throw ValidationError("action matrix order does not divide the actor torsion factor");
  }

  auto a = std::shared_ptr<GroupAction>(new GroupAction());
  a->x_ = std::move(x);
  a->b_ = std::move(b);
  a->rep_ = Rep::Matrices;
  a->trivial_ = true;
  for (const auto& m : images)
    if (!matrices_equal_mod(xc, m, IntMatrix::identity(xc.dim()))) a->trivial_ = false;
  a->mats_ = std::move(images);
  a->mat_invs_ = std::move(invs);
  return a;
}

std::shared_ptr<const GroupAction> GroupAction::scalar_action(RPGroup x, RPGroup b, const Rat& q) {
  if (x.carrier->kind() != CarrierKind::Rationals)
    throw ValidationError("scalar_action acts on the rationals");
  if (b.carrier->kind() != CarrierKind::Abelian) throw ValidationError("scalar_action actor must be Z");
  const auto& bc = as_abelian(*b.carrier);
  if (bc.rank() != 1 || !bc.torsion().empty())
    throw ValidationError("scalar_action actor must be Z");
  if (sgn(q) == 0) throw ValidationError("scalar action needs a nonzero rational");
  auto a = std::shared_ptr<GroupAction>(new GroupAction());
  a->x_ = std::move(x);
  a->b_ = std::move(b);
  a->rep_ = Rep::Scalar;
  a->q_ = q;
  a->trivial_ = q == 1;
  return a;
}

std::optional<Element> GroupAction::apply(const Element& b, const Element& x) const {
  b_.carrier->require(b);
  x_.carrier->require(x);
  if (trivial_) return x;
  switch (rep_) {
    case Rep::FinitePerms:
      return Element::fin(perms_[b.fin()][x.fin()]);
    case Rep::Matrices: {
      const auto& xc = as_abelian(*x_.carrier);
      IntMatrix acc = IntMatrix::identity(xc.dim());
      for (size_t i = 0; i < mats_.size(); ++i) {
        const Int& e = b.vec()[i];
        if (e == 0) continue;
        Int a = abs(e);
        if (!a.fits_ulong_p() || a > 1048576) return std::nullopt;  // exponent out of reach
        acc = normalize_matrix(
            xc, mul(acc, mat_pow(xc, e > 0 ? mats_[i] : mat_invs_[i], a.get_ui())));
      }
      return Element::vec(xc.normalize(mat_apply(acc, x.vec())));
    }
    default: {
      auto p = rat_pow(q_, b.vec()[0]);
      if (!p) return std::nullopt;
      return Element::rat(*p * x.rat());
    }
  }
}

MonotoneResult GroupAction::monotone_on(const Element& b, const SearchBudget& budget) const {
  if (trivial_) return {Tri::yes(), std::nullopt};
  if (rep_ == Rep::Scalar) {
    // sign of q^b decides, no exponent cap needed
    bool negative = sgn(q_) < 0 && b.vec()[0] % 2 != 0;
    switch (x_.cone->kind()) {
      case ConeKind::Trivial:
      case ConeKind::Total:
        return {Tri::yes(), std::nullopt};
      case ConeKind::Orthant:
        if (negative) return {Tri::no(), Element::rat(Rat(1))};
        return {Tri::yes(), std::nullopt};
      default:
        return {Tri::unknown(budget.bound), std::nullopt};
    }
  }
  auto gens = x_.cone->generators();
  if (!gens) return {Tri::unknown(budget.bound), std::nullopt};
  Tri acc = Tri::yes();
  for (const Element& g : *gens) {
    auto img = apply(b, g);
    if (!img) return {Tri::unknown(budget.bound), std::nullopt};
    Tri t = x_.cone->contains(*img, budget);
    if (t.is_no()) return {Tri::no(), g};
    acc = tri_and(acc, t);
  }
  return {acc, std::nullopt};
}

std::string GroupAction::describe() const {
  if (trivial_) return "trivial";
  switch (rep_) {
    case Rep::FinitePerms: return "permutation action";
    case Rep::Matrices: return "matrix action";
    default: return "phi_b(x) = (" + show_rat(q_) + ")^b x";
  }
}

// --- carrier and cones -----------------------------------------------------

SemidirectCarrier::SemidirectCarrier(RPGroup x, RPGroup b, ActionPtr action)
    : x_(std::move(x)), b_(std::move(b)), action_(std::move(action)) {
  if (action_->acted().carrier.get() != x_.carrier.get() ||
      action_->actor().carrier.get() != b_.carrier.get())
    throw ValidationError("action does not match the semidirect factors");
}

Element SemidirectCarrier::zero() const {
  return Element::pair(x_.carrier->zero(), b_.carrier->zero());
}

Element SemidirectCarrier::op(const Element& a, const Element& c) const {
  require(a);
  require(c);
  auto twisted = action_->apply(a.pr().second, c.pr().first);
  if (!twisted)
    throw ResourceError("action value out of exact reach (exponent cap); try smaller elements");
  return Element::pair(x_.carrier->op(a.pr().first, *twisted),
                       b_.carrier->op(a.pr().second, c.pr().second));
}

Element SemidirectCarrier::neg(const Element& a) const {
  require(a);
  Element nb = b_.carrier->neg(a.pr().second);
  auto twisted = action_->apply(nb, x_.carrier->neg(a.pr().first));
  if (!twisted)
    throw ResourceError("action value out of exact reach (exponent cap); try smaller elements");
  return Element::pair(*twisted, nb);
}

bool SemidirectCarrier::valid(const Element& a) const {
  return a.is_pair() && x_.carrier->valid(a.pr().first) && b_.carrier->valid(a.pr().second);
}

std::optional<unsigned long> SemidirectCarrier::order() const {
  auto nx = x_.carrier->order(), nb = b_.carrier->order();
  if (!nx || !nb) return std::nullopt;
  return *nx * *nb;
}

std::string SemidirectCarrier::show(const Element& a) const {
  return "(" + x_.carrier->show(a.pr().first) + "; " + b_.carrier->show(a.pr().second) + ")";
}

std::string SemidirectCarrier::describe() const {
  std::string join = action_->is_trivial() ? " x " : " x| ";
  return x_.carrier->describe() + join + b_.carrier->describe();
}

namespace {

class SemidirectProdCone final : public Cone {
 public:
  explicit SemidirectProdCone(std::shared_ptr<const SemidirectCarrier> c) : c_(std::move(c)) {}
  ConeKind kind() const override { return ConeKind::SemidirectProd; }
  CarrierPtr carrier() const override { return c_; }
  Tri contains(const Element& e, const SearchBudget& budget) const override {
    c_->require(e);
    return tri_and(c_->x().cone->contains(e.pr().first, budget),
                   c_->b().cone->contains(e.pr().second, budget));
  }
  std::string describe() const override {
    return c_->x().cone->describe() + " x " + c_->b().cone->describe();
  }

 private:
  std::shared_ptr<const SemidirectCarrier> c_;
};

class SemidirectLexCone final : public Cone {
 public:
  explicit SemidirectLexCone(std::shared_ptr<const SemidirectCarrier> c) : c_(std::move(c)) {}
  ConeKind kind() const override { return ConeKind::SemidirectLex; }
  CarrierPtr carrier() const override { return c_; }
  Tri contains(const Element& e, const SearchBudget& budget) const override {
    c_->require(e);
    const Element& x = e.pr().first;
    const Element& b = e.pr().second;
    Tri bpos = c_->b().cone->contains(b, budget);
    Tri bneg = c_->b().cone->contains(c_->b().carrier->neg(b), budget);
    Tri strictly = tri_and(bpos, tri_not(bneg));
    Tri equiv = tri_and(bpos, bneg);
    return tri_or(strictly, tri_and(equiv, c_->x().cone->contains(x, budget)));
  }
  std::string describe() const override {
    return "lex(" + c_->x().cone->describe() + ", " + c_->b().cone->describe() + ")";
  }

 private:
  std::shared_ptr<const SemidirectCarrier> c_;
};

}  // namespace

SemidirectGroup semidirect(RPGroup x, RPGroup b, ActionPtr action, ConePolicy policy,
                           ConePtr custom_cone) {
  auto carrier = std::make_shared<const SemidirectCarrier>(x, b, action);
  ConePtr cone;
  switch (policy) {
    case ConePolicy::Prod: cone = std::make_shared<SemidirectProdCone>(carrier); break;
    case ConePolicy::Lex: cone = std::make_shared<SemidirectLexCone>(carrier); break;
    case ConePolicy::Custom: {
      if (!custom_cone) throw ValidationError("custom cone policy needs a cone");
      if (custom_cone->carrier().get() != carrier.get())
        throw ValidationError("custom cone must be built on this semidirect carrier");
      cone = custom_cone;
      // kernel condition spot check: cone generators of X must embed positively
      if (auto gens = x.cone->generators()) {
        for (const Element& g : *gens) {
          Element e = Element::pair(g, b.carrier->zero());
          if (cone->contains(e).is_no())
            throw ValidationError("custom cone violates the kernel condition at " +
                                  carrier->show(e));
        }
      }
      break;
    }
  }
  SemidirectGroup s;
  s.group = RPGroup{carrier, cone};
  s.x = std::move(x);
  s.b = std::move(b);
  s.action = std::move(action);
  s.policy = policy;
  return s;
}

Morphism SemidirectGroup::kernel_inclusion() const {
  Element bz = b.carrier->zero();
  Morphism m = func_morphism(x, group,
                             [bz](const Element& e) { return Element::pair(e, bz); }, "<1,0>");
  if (policy != ConePolicy::Custom) m.known_monotone = Tri::yes();
  return m;
}

Morphism SemidirectGroup::projection() const {
  Morphism m = func_morphism(group, b, [](const Element& e) { return e.pr().second; }, "pi_B");
  if (policy != ConePolicy::Custom) m.known_monotone = Tri::yes();
  return m;
}

Morphism SemidirectGroup::section() const {
  Element xz = x.carrier->zero();
  Morphism m = func_morphism(b, group,
                             [xz](const Element& e) { return Element::pair(xz, e); }, "<0,1>");
  if (policy != ConePolicy::Custom) m.known_monotone = Tri::yes();
  return m;
}

Tri prod_member(const SemidirectGroup& s, const Element& e, const SearchBudget& budget) {
  s.group.carrier->require(e);
  return tri_and(s.x.cone->contains(e.pr().first, budget),
                 s.b.cone->contains(e.pr().second, budget));
}

Tri lex_member(const SemidirectGroup& s, const Element& e, const SearchBudget& budget) {
  SemidirectLexCone lex(std::static_pointer_cast<const SemidirectCarrier>(s.group.carrier));
  return lex.contains(e, budget);
}

// --- condition (iii) machinery ---------------------------------------------

InvertiblePart invertible_part(const RPGroup& b, const SearchBudget& budget) {
  switch (b.cone->kind()) {
    case ConeKind::Explicit: {
      // finite cones are subgroups: every positive element has b' = -b
      auto members = static_cast<const ExplicitCone&>(*b.cone).members();
      std::vector<Element> gens;
      for (int i : members) gens.push_back(Element::fin(i));
      return {gens, Tri::yes(), Tri::yes()};
    }
    case ConeKind::Trivial:
      return {{}, Tri::yes(), Tri::yes()};
    case ConeKind::Total: {
      if (b.carrier->kind() == CarrierKind::Finite) {
        std::vector<Element> gens;
        for (unsigned long i = 0; i < *b.carrier->order(); ++i)
          gens.push_back(Element::fin(static_cast<long>(i)));
        return {gens, Tri::yes(), Tri::yes()};
      }
      if (b.carrier->kind() == CarrierKind::Abelian) {
        auto gens = b.cone->generators();
        return {*gens, Tri::yes(), Tri::yes()};
      }
      return {{}, Tri::unknown(budget.bound), Tri::yes()};  // Q total: not finitely generated
    }
    case ConeKind::Orthant: {
      if (b.carrier->kind() == CarrierKind::Rationals)
        return {{}, Tri::yes(), Tri::no()};
      const auto& ab = as_abelian(*b.carrier);
      return {{}, Tri::yes(), Tri::of(ab.rank() == 0)};
    }
    case ConeKind::Generated: {
      RPGroup g = b;
      SymmetricPart sym = symmetric_part(g, budget);
      auto gens = sym.cone->generators();
      GroupConeResult whole = is_group_cone(g, budget);
      return {gens ? *gens : std::vector<Element>{}, sym.exact, whole.verdict};
    }
    default:
      return {{}, Tri::unknown(budget.bound), Tri::unknown(budget.bound)};
  }
}

ConditionIII check_condition_iii(const SemidirectGroup& s, const SearchBudget& budget) {
  InvertiblePart ip = invertible_part(s.b, budget);
  Tri acc = Tri::yes();
  for (const Element& h : ip.group_generators) {
    MonotoneResult m = s.action->monotone_on(h, budget);
    if (m.verdict.is_no()) return {Tri::no(), h, m.witness};
    acc = tri_and(acc, m.verdict);
  }
  acc = tri_and(acc, ip.exact.is_yes() ? Tri::yes() : Tri::unknown(ip.exact.bound));
  return {acc, std::nullopt, std::nullopt};
}

namespace {

// Deterministic element samples for closure spot checks.
std::vector<Element> sample_elements(const CarrierPtr& c, long radius, size_t cap) {
  std::vector<Element> out;
  switch (c->kind()) {
    case CarrierKind::Finite: {
      for (unsigned long i = 0; i < *c->order() && out.size() < cap; ++i)
        out.push_back(Element::fin(static_cast<long>(i)));
      return out;
    }
    case CarrierKind::Abelian: {
      const auto& ab = static_cast<const AbelianCarrier&>(*c);
      if (ab.dim() == 0) return {c->zero()};
      long r = radius;
      double pts = 1;
      for (size_t i = 0; i < ab.dim(); ++i) pts *= 2.0 * r + 1;
      while (r > 1 && pts > static_cast<double>(cap)) {
        r /= 2;
        pts = 1;
        for (size_t i = 0; i < ab.dim(); ++i) pts *= 2.0 * r + 1;
      }
      std::vector<Int> v(ab.dim());
      std::function<void(size_t)> rec = [&](size_t i) {
        if (out.size() >= cap) return;
        if (i == ab.dim()) {
          out.push_back(Element::vec(ab.normalize(v)));
          return;
        }
        for (long t = -r; t <= r; ++t) {
          v[i] = t;
          rec(i + 1);
        }
      };
      rec(0);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case CarrierKind::Rationals: {
      std::vector<Rat> qs;
      for (long n = -radius; n <= radius; ++n) {
        qs.push_back(Rat(n));
        qs.push_back(Rat(n, 2));
        qs.push_back(Rat(n, 3));
      }
      std::sort(qs.begin(), qs.end());
      qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
      for (const Rat& q : qs)
        if (out.size() < cap) out.push_back(Element::rat(q));
      return out;
    }
    default: {
      const auto& sd = static_cast<const SemidirectCarrier&>(*c);
      auto xs = sample_elements(sd.x().carrier, radius, 32);
      auto bs = sample_elements(sd.b().carrier, radius, 32);
      for (const Element& x : xs)
        for (const Element& b : bs) {
          if (out.size() >= cap) return out;
          out.push_back(Element::pair(x, b));
        }
      return out;
    }
  }
}

}  // namespace

SplitExtAnalysis analyze(const SemidirectGroup& s, const SearchBudget& budget,
                         bool enumerate_finite, unsigned cap) {
  SplitExtAnalysis a;
  ConditionIII c3 = check_condition_iii(s, budget);
  a.condition_iii = c3.verdict;
  a.witness_b = c3.witness_b;
  a.witness_x = c3.witness_x;
  a.lex_compatible = c3.verdict;
  a.exists_compatible = c3.verdict;

  InvertiblePart ip = invertible_part(s.b, budget);
  a.invertible_part_generators = ip.group_generators;
  a.invertible_exact = ip.exact;

  // prod compatibility: phi_b monotone for every b in P_B
  {
    auto gens = s.b.cone->generators();
    if (!gens) {
      a.prod_compatible = Tri::unknown(budget.bound);
    } else {
      Tri acc = Tri::yes();
      for (const Element& g : *gens) {
        MonotoneResult m = s.action->monotone_on(g, budget);
        if (m.verdict.is_no()) {
          a.prod_witness_b = g;
          a.prod_witness_x = m.witness;
          acc = Tri::no();
          break;
        }
        acc = tri_and(acc, m.verdict);
      }
      a.prod_compatible = acc;
    }
  }

  // direct closure cross-check of P_lex (sampled; the theorem is authoritative)
  {
    SemidirectLexCone lex(std::static_pointer_cast<const SemidirectCarrier>(s.group.carrier));
    auto sample = sample_elements(s.group.carrier, 16, 1024);
    std::vector<Element> members;
    for (const Element& e : sample)
      if (members.size() < 160 && lex.contains(e, budget).is_yes()) members.push_back(e);
    a.lex_closure_crosscheck = Tri::yes();
    std::ostringstream note;
    bool violated = false;
    for (size_t i = 0; i < members.size() && !violated; ++i)
      for (size_t j = 0; j < members.size() && !violated; ++j) {
        Element sum = s.group.carrier->op(members[i], members[j]);
        if (lex.contains(sum, budget).is_no()) {
          violated = true;
          a.lex_closure_crosscheck = Tri::no();
          note << "P_lex closure fails: " << s.group.carrier->show(members[i]) << " + "
               << s.group.carrier->show(members[j]) << " escapes";
        }
      }
    if (!violated)
      note << "closure holds on " << members.size() << " sampled members";
    if (violated && a.condition_iii.is_yes())
      note << " -- INCONSISTENT with the theorem verdict";
    a.crosscheck_note = note.str();
  }

  if (enumerate_finite && s.x.carrier->kind() == CarrierKind::Finite &&
      s.b.carrier->kind() == CarrierKind::Finite) {
    a.enumerated_cones = enumerate_compatible_cones(s, cap);
  }
  return a;
}

MaterializedSemidirect materialize(const SemidirectGroup& s, unsigned cap) {
  auto nx = s.x.carrier->order(), nb = s.b.carrier->order();
  if (!nx || !nb || s.x.carrier->kind() != CarrierKind::Finite ||
      s.b.carrier->kind() != CarrierKind::Finite)
    throw UnsupportedError("materialize needs finite table factors");
  unsigned long total = *nx * *nb;
  if (total > cap)
    throw ResourceError("semidirect order " + std::to_string(total) + " exceeds the cap " +
                        std::to_string(cap));
  MaterializedSemidirect m;
  m.nx = static_cast<unsigned>(*nx);
  m.nb = static_cast<unsigned>(*nb);
  unsigned n = static_cast<unsigned>(total);
  m.table.n = n;
  m.table.t.resize(static_cast<size_t>(n) * n);
  auto enc = [&m](long xi, long bi) { return static_cast<int>(xi * m.nb + bi); };
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      Element a = Element::pair(Element::fin(i / m.nb), Element::fin(i % m.nb));
      Element c = Element::pair(Element::fin(j / m.nb), Element::fin(j % m.nb));
      Element r = s.group.carrier->op(a, c);
      m.table.t[static_cast<size_t>(i) * n + j] = enc(r.pr().first.fin(), r.pr().second.fin());
    }
  m.table.inv.assign(n, -1);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (m.table.op(i, j) == 0) m.table.inv[i] = static_cast<int>(j);
  for (unsigned i = 0; i < n; ++i) {
    Element e = Element::pair(Element::fin(i / m.nb), Element::fin(i % m.nb));
    if (prod_member(s, e).is_yes()) m.prod_cone.push_back(static_cast<int>(i));
    if (lex_member(s, e).is_yes()) m.lex_cone.push_back(static_cast<int>(i));
  }
  return m;
}

std::vector<std::vector<int>> enumerate_compatible_cones(const SemidirectGroup& s, unsigned cap) {
  MaterializedSemidirect m = materialize(s, cap);
  std::vector<char> lex_mask(m.table.n, 0);
  for (int i : m.lex_cone) lex_mask[i] = 1;
  auto inside_lex = [&lex_mask](const std::vector<int>& set) {
    for (int i : set)
      if (!lex_mask[i]) return false;
    return true;
  };
  std::vector<int> base = submonoid_closure(m.table, m.prod_cone);
  std::vector<std::vector<int>> out;
  if (!inside_lex(base)) return out;
  std::set<std::vector<int>> found{base};
  std::vector<std::vector<int>> work{base};
  for (size_t i = 0; i < work.size(); ++i) {
    for (int g : m.lex_cone) {
      if (std::binary_search(work[i].begin(), work[i].end(), g)) continue;
      std::vector<int> seed = work[i];
      seed.push_back(g);
      std::vector<int> ext = submonoid_closure(m.table, seed);
      if (!inside_lex(ext)) continue;
      if (found.insert(ext).second) work.push_back(std::move(ext));
    }
  }
  out.assign(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

Tri strong_point_test(const Morphism& p, const Morphism& s, const SearchBudget& budget) {
  if (p.target.carrier.get() != s.source.carrier.get() ||
      p.source.carrier.get() != s.target.carrier.get())
    throw ValidationError("strong_point_test needs a split epimorphism with its section");
  Morphism ps = compose(p, s);
  Morphism id = identity_morphism(p.target);
  bool split = false;
  try {
    split = maps_equal(ps, id);
  } catch (const UnsupportedError&) {
    // sample-based check for representations without exact comparison
    split = true;
    for (const Element& e : sample_elements(p.target.carrier, 8, 64))
      if (!(ps.apply(e) == e)) {
        split = false;
        break;
      }
  }
  if (!split) throw ValidationError("p does not split along s (p.s != id)");
  ConstructedGroup k = kernel(p);
  return jointly_strongly_epi({k.legs[0], s}, budget).verdict;
}

CounterexampleReport protomodular_counterexample(const RPGroup& y, const Element& b,
                                                 const SearchBudget& budget) {
  if (y.carrier->kind() != CarrierKind::Abelian)
    throw UnsupportedError("protomodular_counterexample needs an abelian carrier");
  const auto& yc = as_abelian(*y.carrier);
  Tri in_cone = y.cone->contains(b, budget);
  if (!in_cone.is_yes())
    throw ValidationError("b must be a certified positive element (membership " +
                          std::string(in_cone.str()) + ")");
  Tri inv_in_cone = y.cone->contains(y.carrier->neg(b), budget);
  if (inv_in_cone.is_yes())
    throw ValidationError("b is invertible in the cone (u+b+v=0 is solvable); "
                          "no counterexample arises");
  if (inv_in_cone.is_unknown())
    throw ValidationError("cannot certify that b has no positive quasi-inverse "
                          "(membership of -b unknown at bound " +
                          std::to_string(inv_in_cone.bound) + ")");

  auto ygens = y.cone->generators();
  if (!ygens)
    throw UnsupportedError("the cone of Y needs a generator list");

  // product Y (+) Z: free coords of Y, the new Z coordinate, then Y torsion
  unsigned yr = yc.rank();
  std::vector<Int> tor = yc.torsion();
  auto prod = std::make_shared<const AbelianCarrier>(yr + 1, tor);
  auto embed_y = [&](const std::vector<Int>& v) {
    std::vector<Int> w(prod->dim());
    for (unsigned i = 0; i < yr; ++i) w[i] = v[i];
    for (size_t j = 0; j < tor.size(); ++j) w[yr + 1 + j] = v[yr + j];
    return w;
  };

  std::vector<std::vector<Int>> pgens;
  for (const Element& g : *ygens) pgens.push_back(embed_y(g.vec()));
  std::vector<Int> sec = embed_y(b.vec());
  sec[yr] = 1;
  pgens.push_back(sec);

  // target cone P_Y x N with its monoid generators
  ConePtr ycone = y.cone;
  auto ycar = std::static_pointer_cast<const AbelianCarrier>(y.carrier);
  auto split_y = [ycar, yr, tor](const Element& e) {
    std::vector<Int> v(ycar->dim());
    for (unsigned i = 0; i < yr; ++i) v[i] = e.vec()[i];
    for (size_t j = 0; j < tor.size(); ++j) v[yr + j] = e.vec()[yr + 1 + j];
    return ycar->normalized(std::move(v));
  };
  std::vector<Element> tgens;
  for (const Element& g : *ygens) tgens.push_back(Element::vec(embed_y(g.vec())));
  {
    std::vector<Int> uz(prod->dim());
    uz[yr] = 1;
    tgens.push_back(Element::vec(uz));
  }
  auto member = [ycone, split_y, yr](const Element& e, const SearchBudget& bud) {
    Tri xin = ycone->contains(split_y(e), bud);
    return tri_and(xin, Tri::of(e.vec()[yr] >= 0));
  };
  ConePtr target_cone = std::make_shared<CustomCone>(
      prod, member, ycone->describe() + " x N", tgens);
  RPGroup product = make_rpgroup(prod, target_cone);

  // legs of the point: kernel <1,0> and section <j,1>
  IntMatrix emb(prod->dim(), yc.dim());
  for (unsigned i = 0; i < yr; ++i) emb.at(i, i) = 1;
  for (size_t j = 0; j < tor.size(); ++j) emb.at(yr + 1 + j, yr + j) = 1;
  Morphism leg1 = matrix_morphism(y, product, emb, "<1,0>");
  IntMatrix seccol(prod->dim(), 1);
  for (size_t i = 0; i < prod->dim(); ++i) seccol.at(i, 0) = sec[i];
  Morphism leg2 = matrix_morphism(z_natural(), product, seccol, "<j,1>");

  AffineMonoid point{prod, pgens, budget.bound};
  std::vector<Int> query(prod->dim());
  query[yr] = 1;
  MemberResult mem = cone_member(point, query, budget);
  JointlyEpiResult strong = jointly_strongly_epi({leg1, leg2}, budget);

  return {product, point, Element::vec(query), mem.verdict, strong};
}

}  // namespace rog
