#include "rog/finite.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rog/errors.hpp"

namespace rog {

std::vector<int> submonoid_closure(const FiniteGroupTable& g, const std::vector<int>& seed) {
  std::vector<char> in(g.n, 0);
  in[0] = 1;
  std::vector<int> work{0};
  for (int s : seed) {
    if (s < 0 || static_cast<unsigned>(s) >= g.n)
      throw DomainError("closure seed outside the carrier");
    if (!in[s]) {
      in[s] = 1;
      work.push_back(s);
    }
  }
  // fixed-point saturation over products
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = 0; j < work.size(); ++j) {
      int p = g.op(work[i], work[j]);
      if (!in[p]) {
        in[p] = 1;
        work.push_back(p);
      }
    }
  std::vector<int> out;
  for (unsigned i = 0; i < g.n; ++i)
    if (in[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> conjugation_closure(const FiniteGroupTable& g, const std::vector<int>& m) {
  std::vector<int> cur = submonoid_closure(g, m);
  for (;;) {
    std::vector<int> seed = cur;
    bool grew = false;
    for (unsigned x = 0; x < g.n; ++x)
      for (int e : cur) {
        int c = g.op(g.op(static_cast<int>(x), e), g.inv[x]);
        if (!std::binary_search(cur.begin(), cur.end(), c)) {
          seed.push_back(c);
          grew = true;
        }
      }
    if (!grew) return cur;
    cur = submonoid_closure(g, seed);
  }
}

bool is_subgroup(const FiniteGroupTable& g, const std::vector<int>& h) {
  std::vector<char> in(g.n, 0);
  for (int x : h) {
    if (x < 0 || static_cast<unsigned>(x) >= g.n) return false;
    in[x] = 1;
  }
  if (!in[0]) return false;
  for (int a : h) {
    if (!in[g.inv[a]]) return false;
    for (int b : h)
      if (!in[g.op(a, b)]) return false;
  }
  return true;
}

bool is_normal(const FiniteGroupTable& g, const std::vector<int>& h,
               std::pair<int, int>* witness) {
  std::vector<char> in(g.n, 0);
  for (int x : h) in[x] = 1;
  for (unsigned x = 0; x < g.n; ++x)
    for (int e : h) {
      int c = g.op(g.op(static_cast<int>(x), e), g.inv[x]);
      if (!in[c]) {
        if (witness) *witness = {static_cast<int>(x), e};
        return false;
      }
    }
  return true;
}

std::vector<int> normal_closure(const FiniteGroupTable& g, const std::vector<int>& seed) {
  std::vector<int> conj;
  for (int e : seed)
    for (unsigned x = 0; x < g.n; ++x) conj.push_back(g.op(g.op(static_cast<int>(x), e), g.inv[x]));
  std::vector<int> cur = submonoid_closure(g, conj);
  // closure of a conjugation-stable set is conjugation-stable, hence normal
  return cur;
}

FiniteQuotient quotient(const FiniteGroupTable& g, const std::vector<int>& n) {
  if (!is_subgroup(g, n)) throw ValidationError("quotient needs a subgroup");
  std::pair<int, int> w;
  if (!is_normal(g, n, &w))
    throw ValidationError("subgroup is not normal: conjugating " + std::to_string(w.second) +
                          " by " + std::to_string(w.first) + " escapes");
  std::vector<int> coset_of(g.n, -1);
  std::vector<int> reps;
  for (unsigned x = 0; x < g.n; ++x) {
    if (coset_of[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(x));
    for (int e : n) coset_of[g.op(e, static_cast<int>(x))] = id;  // Nx = xN by normality
  }
  unsigned q = static_cast<unsigned>(reps.size());
  std::vector<int> t(static_cast<size_t>(q) * q);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b) t[static_cast<size_t>(a) * q + b] = coset_of[g.op(reps[a], reps[b])];
  FiniteGroupTable qt;
  qt.n = q;
  qt.t = std::move(t);
  qt.inv.assign(q, -1);
  for (unsigned i = 0; i < q; ++i)
    for (unsigned j = 0; j < q; ++j)
      if (qt.op(static_cast<int>(i), static_cast<int>(j)) == 0) qt.inv[i] = static_cast<int>(j);
  return {std::move(qt), std::move(coset_of)};
}

std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroupTable& g, unsigned cap) {
  if (g.n > cap)
    throw ResourceError("subgroup enumeration capped at order " + std::to_string(cap) +
                        " (group has order " + std::to_string(g.n) + ")");
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> work;
  std::vector<int> triv{0};
  found.insert(triv);
  work.push_back(triv);
  // cyclic extension: every subgroup arises by repeatedly adjoining one element
  for (size_t i = 0; i < work.size(); ++i) {
    std::vector<int> h = work[i];
    for (unsigned x = 1; x < g.n; ++x) {
      if (std::binary_search(h.begin(), h.end(), static_cast<int>(x))) continue;
      std::vector<int> seed = h;
      seed.push_back(static_cast<int>(x));
      std::vector<int> ext = submonoid_closure(g, seed);
      if (found.insert(ext).second) work.push_back(std::move(ext));
    }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<int> generating_set(const FiniteGroupTable& g) {
  std::vector<int> gens;
  std::vector<int> cur{0};
  while (cur.size() < g.n) {
    for (unsigned x = 1; x < g.n; ++x)
      if (!std::binary_search(cur.begin(), cur.end(), static_cast<int>(x))) {
        gens.push_back(static_cast<int>(x));
        break;
      }
    cur = submonoid_closure(g, gens);
  }
  return gens;
}

std::vector<std::vector<int>> automorphisms(const FiniteGroupTable& g) {
  std::vector<int> gens = generating_set(g);
  std::vector<std::vector<int>> out;
  std::vector<int> image(g.n, -1);

  // order profile prunes the image candidates
  auto elt_order = [&g](int x) {
    int o = 1, c = x;
    while (c != 0) {
      c = g.op(c, x);
      ++o;
    }
    return o;
  };
  std::vector<int> ord(g.n);
  for (unsigned i = 0; i < g.n; ++i) ord[i] = elt_order(static_cast<int>(i));

  // extend the partial map on generators to the closure; detect conflicts
  std::function<void(size_t)> rec = [&](size_t gi) {
    if (gi == gens.size()) {
      // build the full map by word closure
      std::vector<int> map(g.n, -1);
      map[0] = 0;
      std::vector<int> known{0};
      for (size_t k = 0; k < gens.size(); ++k) map[gens[k]] = image[gens[k]];
      for (int x : gens)
        if (std::find(known.begin(), known.end(), x) == known.end()) known.push_back(x);
      for (size_t i = 0; i < known.size(); ++i)
        for (size_t j = 0; j < known.size(); ++j) {
          int p = g.op(known[i], known[j]);
          int fp = g.op(map[known[i]], map[known[j]]);
          if (map[p] < 0) {
            map[p] = fp;
            known.push_back(p);
          } else if (map[p] != fp) {
            return;  // inconsistent
          }
        }
      if (known.size() != g.n) return;  // generators failed to generate (cannot happen)
      std::vector<char> used(g.n, 0);
      for (int v : map) {
        if (v < 0 || used[v]) return;
        used[v] = 1;
      }
      out.push_back(map);
      return;
    }
    for (unsigned y = 0; y < g.n; ++y) {
      if (ord[y] != ord[gens[gi]]) continue;
      image[gens[gi]] = static_cast<int>(y);
      rec(gi + 1);
    }
    image[gens[gi]] = -1;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> homomorphisms(const FiniteGroupTable& a, const FiniteGroupTable& b,
                                            size_t cap) {
  std::vector<int> gens = generating_set(a);
  std::vector<std::vector<int>> out;
  std::vector<int> image(gens.size(), 0);

  std::function<void(size_t)> rec = [&](size_t gi) {
    if (out.size() >= cap) return;
    if (gi == gens.size()) {
      std::vector<int> map(a.n, -1);
      map[0] = 0;
      std::vector<int> known{0};
      for (size_t k = 0; k < gens.size(); ++k) {
        if (map[gens[k]] < 0) {
          map[gens[k]] = image[k];
          known.push_back(gens[k]);
        } else if (map[gens[k]] != image[k]) {
          return;
        }
      }
      for (size_t i = 0; i < known.size(); ++i)
        for (size_t j = 0; j < known.size(); ++j) {
          int p = a.op(known[i], known[j]);
          int fp = b.op(map[known[i]], map[known[j]]);
          if (map[p] < 0) {
            map[p] = fp;
            known.push_back(p);
          } else if (map[p] != fp) {
            return;
          }
        }
      if (known.size() != a.n) return;
      out.push_back(map);
      return;
    }
    for (unsigned y = 0; y < b.n; ++y) {
      image[gi] = static_cast<int>(y);
      rec(gi + 1);
      if (out.size() >= cap) return;
    }
  };
  rec(0);
  return out;
}

RPGroup finite_rpgroup(FiniteGroupTable t, std::vector<int> cone_members, std::string name) {
  auto c = finite_carrier(std::move(t), std::move(name));
  return make_rpgroup(c, explicit_cone(c, std::move(cone_members)));
}

}  // namespace rog
