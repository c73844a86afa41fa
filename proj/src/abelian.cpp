#include "rog/abelian.hpp"

#include <algorithm>
#include <map>

#include "rog/errors.hpp"

namespace rog {

namespace {

// dim x k matrix whose columns generate the relation lattice of the torsion
// coordinates (d_j at row rank+j).
IntMatrix torsion_embed(const AbelianCarrier& g) {
  IntMatrix e(g.dim(), g.torsion().size());
  for (size_t j = 0; j < g.torsion().size(); ++j) e.at(g.rank() + j, j) = g.torsion()[j];
  return e;
}

IntMatrix cols_matrix(const std::vector<std::vector<Int>>& cols, size_t dim) {
  IntMatrix m(dim, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != dim) throw ValidationError("generator has wrong coordinate length");
    for (size_t i = 0; i < dim; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

}  // namespace

PresentedGroup presented_group(const IntMatrix& relation_rows, size_t n_gens) {
  if (relation_rows.rows > 0 && relation_rows.cols != n_gens)
    throw ValidationError("relation rows must have one column per generator");
  IntMatrix b = relation_rows.transpose();  // lattice as columns, n_gens x m
  if (relation_rows.rows == 0) b = IntMatrix(n_gens, 0);
  SnfResult r = snf(b);
  size_t nmin = std::min(b.rows, b.cols);

  std::vector<size_t> free_rows, torsion_rows;
  std::vector<Int> torsion;
  for (size_t i = 0; i < n_gens; ++i) {
    if (i >= nmin || r.d.at(i, i) == 0) {
      free_rows.push_back(i);
    } else if (r.d.at(i, i) >= 2) {
      torsion_rows.push_back(i);
      torsion.push_back(r.d.at(i, i));
    }  // d == 1: coordinate dies
  }

  auto group = std::make_shared<const AbelianCarrier>(static_cast<unsigned>(free_rows.size()),
                                                      torsion);
  size_t dim = group->dim();

  IntMatrix to_c(dim, n_gens);
  size_t row = 0;
  for (size_t i : free_rows) {
    for (size_t j = 0; j < n_gens; ++j) to_c.at(row, j) = r.u.at(i, j);
    ++row;
  }
  for (size_t i : torsion_rows) {
    for (size_t j = 0; j < n_gens; ++j) to_c.at(row, j) = r.u.at(i, j);
    ++row;
  }

  IntMatrix from_c(n_gens, dim);
  size_t col = 0;
  for (size_t i : free_rows) {
    for (size_t j = 0; j < n_gens; ++j) from_c.at(j, col) = r.uinv.at(j, i);
    ++col;
  }
  for (size_t i : torsion_rows) {
    for (size_t j = 0; j < n_gens; ++j) from_c.at(j, col) = r.uinv.at(j, i);
    ++col;
  }

  return {group, to_c, from_c};
}

SubgroupPresentation subgroup_from_generators(const AbelianCarrier& ambient,
                                              const std::vector<std::vector<Int>>& gens) {
  const size_t k = gens.size();
  IntMatrix g = cols_matrix(gens, ambient.dim());
  IntMatrix stacked = hstack(g, torsion_embed(ambient));
  auto ker = kernel_basis(stacked);
  IntMatrix relations(ker.size(), k);
  for (size_t i = 0; i < ker.size(); ++i)
    for (size_t j = 0; j < k; ++j) relations.at(i, j) = ker[i][j];
  PresentedGroup p = presented_group(relations, k);
  IntMatrix incl = (ambient.dim() == 0 || p.group->dim() == 0)
                       ? IntMatrix(ambient.dim(), p.group->dim())
                       : mul(g, p.from_canonical);
  return {p.group, p.to_canonical, incl};
}

std::optional<std::vector<Int>> solve_in_group(const AbelianCarrier& target, const IntMatrix& m,
                                               const std::vector<Int>& x) {
  if (x.size() != target.dim()) throw ValidationError("solve_in_group target mismatch");
  IntMatrix a = hstack(m, torsion_embed(target));
  auto t = solve(a, x);
  if (!t) return std::nullopt;
  t->resize(m.cols);
  return t;
}

std::vector<std::vector<Int>> kernel_subgroup_gens(const AbelianCarrier& source,
                                                   const AbelianCarrier& target,
                                                   const IntMatrix& m) {
  if (m.cols != source.dim() || m.rows != target.dim())
    throw ValidationError("kernel_subgroup_gens dimension mismatch");
  IntMatrix a = hstack(m, torsion_embed(target));
  auto ker = kernel_basis(a);
  std::vector<std::vector<Int>> out;
  for (auto& v : ker) {
    v.resize(source.dim());
    out.push_back(source.normalize(std::move(v)));
  }
  return out;
}

// --- membership ------------------------------------------------------------

namespace {

// Complete certificate search in two free coordinates: exact feasibility of
// {lambda : lambda . g_i >= 1} by eliminating the second variable, then a
// rational point scaled to integers.
std::optional<std::vector<Int>> certificate_rank2(const AffineMonoid& m) {
  struct Row {
    Rat p, q;  // a*p + b*q >= 1
  };
  std::vector<Row> rows;
  for (const auto& g : m.gens) rows.push_back({Rat(g[0]), Rat(g[1])});
  if (rows.empty()) return std::nullopt;

  // interval for a from rows with q = 0 and from lower/upper pairs
  bool has_lo = false, has_hi = false;
  Rat lo, hi;
  auto tighten_lo = [&](const Rat& v) {
    if (!has_lo || v > lo) lo = v;
    has_lo = true;
  };
  auto tighten_hi = [&](const Rat& v) {
    if (!has_hi || v < hi) hi = v;
    has_hi = true;
  };
  std::vector<Row> lowers, uppers;
  for (const auto& r : rows) {
    if (sgn(r.q) > 0) lowers.push_back(r);
    else if (sgn(r.q) < 0) uppers.push_back(r);
    else {
      if (sgn(r.p) == 0) return std::nullopt;  // 0 >= 1
      if (sgn(r.p) > 0) tighten_lo(1 / r.p);
      else tighten_hi(1 / r.p);
    }
  }
  for (const auto& l : lowers)
    for (const auto& u : uppers) {
      // (1 - a p_l)/q_l <= (1 - a p_u)/q_u with q_l > 0 > q_u:
      // q_u (1 - a p_l) >= q_l (1 - a p_u)
      // a (q_l p_u - q_u p_l) >= q_l - q_u
      Rat coef = l.q * u.p - u.q * l.p;
      Rat rhs = l.q - u.q;  // > 0
      if (sgn(coef) == 0) {
        if (rhs > 0) return std::nullopt;
      } else if (sgn(coef) > 0) {
        tighten_lo(rhs / coef);
      } else {
        tighten_hi(rhs / coef);
      }
    }
  if (has_lo && has_hi && lo > hi) return std::nullopt;
  Rat a = has_lo ? lo : (has_hi ? hi : Rat(0));
  // b interval at this a
  bool bh_lo = false, bh_hi = false;
  Rat blo, bhi;
  for (const auto& l : lowers) {
    Rat v = (1 - a * l.p) / l.q;
    if (!bh_lo || v > blo) blo = v;
    bh_lo = true;
  }
  for (const auto& u : uppers) {
    Rat v = (1 - a * u.p) / u.q;
    if (!bh_hi || v < bhi) bhi = v;
    bh_hi = true;
  }
  // the pairwise eliminations are the exact projection onto a, so the b
  // interval is nonempty for any a in [lo, hi]
  if (bh_lo && bh_hi && blo > bhi) return std::nullopt;
  Rat b = bh_lo ? blo : (bh_hi ? bhi : Rat(0));
  // scale to integers
  Int den = lcm(a.get_den(), b.get_den());
  std::vector<Int> lam{a.get_num() * (den / a.get_den()), b.get_num() * (den / b.get_den())};
  // paranoid verification
  for (const auto& g : m.gens) {
    if (lam[0] * g[0] + lam[1] * g[1] <= 0) return std::nullopt;
  }
  return lam;
}

}  // namespace

std::optional<std::vector<Int>> positivity_certificate(const AffineMonoid& m) {
  const unsigned r = m.ambient->rank();
  if (r == 0) return std::nullopt;
  if (r == 2 && !m.gens.empty()) return certificate_rank2(m);
  std::vector<std::vector<Int>> candidates;
  auto unit = [r](size_t i, int s) {
    std::vector<Int> v(r);
    v[i] = s;
    return v;
  };
  for (unsigned i = 0; i < r; ++i) {
    candidates.push_back(unit(i, 1));
    candidates.push_back(unit(i, -1));
  }
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = i + 1; j < r; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          auto v = unit(i, si);
          v[j] = sj;
          candidates.push_back(v);
        }
  if (r > 2) {
    std::vector<Int> all(r, 1), neg(r, -1);
    candidates.push_back(all);
    candidates.push_back(neg);
  }
  for (const auto& lam : candidates) {
    bool ok = !m.gens.empty();
    for (const auto& g : m.gens) {
      Int v = 0;
      for (unsigned i = 0; i < r; ++i) v += lam[i] * g[i];
      if (v <= 0) {
        ok = false;
        break;
      }
    }
    if (ok) return lam;
  }
  return std::nullopt;
}

namespace {

// Functional from the candidate family that is >= 0 on every generator and
// < 0 on x: membership is impossible (the value never decreases along sums).
bool nonneg_separation(const AffineMonoid& m, const std::vector<Int>& x) {
  const unsigned r = m.ambient->rank();
  if (r == 0) return false;
  std::vector<std::vector<Int>> candidates;
  auto unit = [r](size_t i, int s) {
    std::vector<Int> v(r);
    v[i] = s;
    return v;
  };
  for (unsigned i = 0; i < r; ++i) {
    candidates.push_back(unit(i, 1));
    candidates.push_back(unit(i, -1));
  }
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = i + 1; j < r; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          auto v = unit(i, si);
          v[j] = sj;
          candidates.push_back(v);
        }
  auto value = [r](const std::vector<Int>& lam, const std::vector<Int>& v) {
    Int s = 0;
    for (unsigned i = 0; i < r; ++i) s += lam[i] * v[i];
    return s;
  };
  for (const auto& lam : candidates) {
    if (value(lam, x) >= 0) continue;
    bool ok = true;
    for (const auto& g : m.gens)
      if (value(lam, g) < 0) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

// With coefficient kernel of rank <= 1 the coefficient space is a line (or a
// point): nonnegativity of t is decided exactly.
std::optional<MemberResult> low_rank_decision(const AffineMonoid& m, const std::vector<Int>& t0,
                                              const std::vector<std::vector<Int>>& kernel) {
  const size_t k = m.gens.size();
  if (kernel.empty()) {
    for (const Int& c : t0)
      if (c < 0) return MemberResult{Tri::no(), {}, "certificate"};
    return MemberResult{Tri::yes(), t0, "found"};
  }
  if (kernel.size() != 1) return std::nullopt;
  const auto& kv = kernel[0];
  // t = t0 + s*kv >= 0 componentwise: intersect the per-coordinate bounds on s
  bool has_lo = false, has_hi = false;
  Int lo = 0, hi = 0;
  for (size_t i = 0; i < k; ++i) {
    if (kv[i] == 0) {
      if (t0[i] < 0) return MemberResult{Tri::no(), {}, "certificate"};
      continue;
    }
    // s*kv[i] >= -t0[i]
    if (kv[i] > 0) {
      Int b, num = -t0[i];  // s >= ceil(-t0[i] / kv[i])
      mpz_cdiv_q(b.get_mpz_t(), num.get_mpz_t(), kv[i].get_mpz_t());
      if (!has_lo || b > lo) lo = b;
      has_lo = true;
    } else {
      Int b, den = -kv[i];  // s <= floor(t0[i] / -kv[i])
      mpz_fdiv_q(b.get_mpz_t(), t0[i].get_mpz_t(), den.get_mpz_t());
      if (!has_hi || b < hi) hi = b;
      has_hi = true;
    }
  }
  if (has_lo && has_hi && lo > hi) return MemberResult{Tri::no(), {}, "certificate"};
  Int s = has_lo ? lo : (has_hi ? hi : Int(0));
  std::vector<Int> t(k);
  for (size_t i = 0; i < k; ++i) t[i] = t0[i] + s * kv[i];
  return MemberResult{Tri::yes(), t, "found"};
}

}  // namespace

MemberResult cone_member(const AffineMonoid& m, const std::vector<Int>& x_raw,
                         const SearchBudget& budget) {
  const auto& amb = *m.ambient;
  std::vector<Int> x = amb.normalize(x_raw);
  const size_t k = m.gens.size();
  std::vector<Int> zero(amb.dim());
  if (x == zero) return {Tri::yes(), std::vector<Int>(k), "found"};
  if (k == 0) return {Tri::no(), {}, "saturated"};

  // lattice certificate: no integer combination at all
  {
    IntMatrix g = cols_matrix(m.gens, amb.dim());
    IntMatrix stacked = hstack(g, torsion_embed(amb));
    auto full = solve(stacked, x);
    if (!full) return {Tri::no(), {}, "lattice"};
    if (amb.torsion().empty()) {
      // coefficient solution space is t0 + kernel lattice; ranks 0 and 1 are
      // decided in closed form
      std::vector<Int> t0(full->begin(), full->begin() + k);
      auto ker = kernel_basis(g);
      if (auto r = low_rank_decision(m, t0, ker)) return *r;
    }
  }

  if (nonneg_separation(m, x)) return {Tri::no(), {}, "certificate"};

  auto lam = positivity_certificate(m);
  Int lam_x = 0, lam_min = 0;
  std::vector<Int> lam_gen(k);
  long complete_bound = -1;  // level up to which the search is provably complete
  if (lam) {
    for (unsigned i = 0; i < amb.rank(); ++i) lam_x += (*lam)[i] * x[i];
    for (size_t j = 0; j < k; ++j) {
      Int v = 0;
      for (unsigned i = 0; i < amb.rank(); ++i) v += (*lam)[i] * m.gens[j][i];
      lam_gen[j] = v;
      if (j == 0 || v < lam_min) lam_min = v;
    }
    if (lam_x < lam_min) return {Tri::no(), {}, "certificate"};
    Int cb = lam_x / lam_min;
    complete_bound = cb.fits_slong_p() ? cb.get_si() : budget.bound + 1;
  }

  long limit = budget.bound;
  if (complete_bound >= 0 && complete_bound < limit) limit = complete_bound;

  std::vector<std::vector<Int>> states{zero};
  std::vector<std::pair<size_t, size_t>> parent{{0, k}};  // (state idx, generator)
  std::map<std::vector<Int>, size_t> seen{{zero, 0}};
  std::vector<size_t> frontier{0};
  long nodes = 0;
  bool truncated = false;

  auto reconstruct = [&](size_t s) {
    std::vector<Int> coeffs(k);
    while (s != 0) {
      coeffs[parent[s].second] += 1;
      s = parent[s].first;
    }
    return coeffs;
  };

  for (long level = 1; level <= limit; ++level) {
    std::vector<size_t> next;
    for (size_t ui : frontier) {
      for (size_t j = 0; j < k; ++j) {
        std::vector<Int> w(amb.dim());
        for (size_t i = 0; i < amb.dim(); ++i) w[i] = states[ui][i] + m.gens[j][i];
        w = amb.normalize(std::move(w));
        if (seen.count(w)) continue;
        if (lam) {
          Int lw = 0;
          for (unsigned i = 0; i < amb.rank(); ++i) lw += (*lam)[i] * w[i];
          if (lw > lam_x) continue;  // strictly increasing functional: dead branch
        }
        if (++nodes > budget.node_cap) {
          truncated = true;
          break;
        }
        size_t idx = states.size();
        bool hit = w == x;
        seen.emplace(w, idx);
        states.push_back(std::move(w));
        parent.emplace_back(ui, j);
        if (hit) return {Tri::yes(), reconstruct(idx), "found"};
        next.push_back(idx);
      }
      if (truncated) break;
    }
    if (truncated) return {Tri::unknown(level - 1), {}, "budget"};
    if (next.empty()) {
      // Reachable set closed under every generator: exhaustion is complete.
      // With a certificate the pruning keeps this sound for the query x
      // (discarded states can never return below lam_x).
      return {Tri::no(), {}, lam ? "certificate" : "saturated"};
    }
    frontier = std::move(next);
  }

  if (complete_bound >= 0 && complete_bound <= budget.bound)
    return {Tri::no(), {}, "certificate"};
  return {Tri::unknown(budget.bound), {}, "budget"};
}

GregariousResult is_gregarious(const AffineMonoid& m, const SearchBudget& budget) {
  Tri acc = Tri::yes();
  for (size_t j = 0; j < m.gens.size(); ++j) {
    std::vector<Int> neg(m.gens[j].size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -m.gens[j][i];
    MemberResult r = cone_member(m, neg, budget);
    if (r.verdict.is_no()) return {Tri::no(), j};
    acc = tri_and(acc, r.verdict);
  }
  return {acc, std::nullopt};
}

Completion grothendieck_completion(const AffineMonoid& m) {
  SubgroupPresentation s = subgroup_from_generators(*m.ambient, m.gens);
  std::vector<std::vector<Int>> cone_gens;
  for (size_t j = 0; j < m.gens.size(); ++j)
    cone_gens.push_back(s.group->normalize(s.gen_to_canonical.col(j)));
  RPGroup g = make_rpgroup(s.group, generated_cone(s.group, cone_gens, m.default_bound));
  return {g, s.gen_to_canonical};
}

GroupConeResult is_group_cone(const RPGroup& g, const SearchBudget& budget) {
  switch (g.cone->kind()) {
    case ConeKind::Trivial:
    case ConeKind::Total:
      return {Tri::yes(), std::nullopt};
    case ConeKind::Explicit: {
      const auto& ec = static_cast<const ExplicitCone&>(*g.cone);
      const auto& tbl = static_cast<const FiniteCarrier&>(*g.carrier).table();
      for (int i : ec.members())
        if (!ec.has(tbl.inv[i])) return {Tri::no(), Element::fin(i)};  // unreachable for valid cones
      return {Tri::yes(), std::nullopt};
    }
    case ConeKind::Orthant: {
      if (g.carrier->kind() == CarrierKind::Rationals)
        return {Tri::no(), Element::rat(Rat(1))};
      const auto& ab = static_cast<const AbelianCarrier&>(*g.carrier);
      if (ab.rank() == 0) return {Tri::yes(), std::nullopt};
      std::vector<Int> e(ab.dim());
      e[0] = 1;
      return {Tri::no(), Element::vec(std::move(e))};
    }
    case ConeKind::Generated: {
      const auto& gc = static_cast<const GeneratedCone&>(*g.cone);
      GregariousResult r = is_gregarious(gc.monoid(), budget);
      std::optional<Element> w;
      if (r.witness_gen) w = Element::vec(gc.monoid().gens[*r.witness_gen]);
      return {r.verdict, w};
    }
    default:
      throw UnsupportedError("is_group_cone needs a finite or abelian backend");
  }
}

RPGroup z_natural() { return make_rpgroup(z_carrier(), natural_cone()); }

RPGroup z_with(ConeKind builtin) {
  auto z = z_carrier();
  switch (builtin) {
    case ConeKind::Trivial: return make_rpgroup(z, trivial_cone(z));
    case ConeKind::Total: return make_rpgroup(z, total_cone(z));
    case ConeKind::Orthant: return z_natural();
    default: throw ValidationError("z_with expects a builtin cone kind");
  }
}

RPGroup abelian_rpgroup(AbelianPtr c, ConePtr p) { return make_rpgroup(c, std::move(p)); }

}  // namespace rog
