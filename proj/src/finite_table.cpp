#include "rog/finite_table.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "rog/errors.hpp"

namespace rog {

namespace {

std::string idx(int i) { return std::to_string(i); }

FiniteGroupTable finish(unsigned n, std::vector<int> t) {
  FiniteGroupTable g;
  g.n = n;
  g.t = std::move(t);
  g.inv.assign(n, -1);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (g.t[i * n + j] == 0) g.inv[i] = static_cast<int>(j);
  return g;
}

}  // namespace

FiniteGroupTable FiniteGroupTable::from_table(const std::vector<std::vector<long>>& rows,
                                              std::vector<int>* relabel) {
  const size_t n = rows.size();
  if (n == 0) throw ValidationError("empty operation table");
  std::vector<int> t(n * n);
  for (size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw ValidationError("operation table is not square at row " + idx(static_cast<int>(i)));
    for (size_t j = 0; j < n; ++j) {
      long v = rows[i][j];
      if (v < 0 || static_cast<size_t>(v) >= n)
        throw ValidationError("table entry out of range at (" + idx(static_cast<int>(i)) + "," +
                              idx(static_cast<int>(j)) + ")");
      t[i * n + j] = static_cast<int>(v);
    }
  }

  // Latin square
  for (size_t i = 0; i < n; ++i) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (size_t j = 0; j < n; ++j) {
      if (seen_row[t[i * n + j]]++)
        throw ValidationError("row " + idx(static_cast<int>(i)) + " repeats an element");
      if (seen_col[t[j * n + i]]++)
        throw ValidationError("column " + idx(static_cast<int>(i)) + " repeats an element");
    }
  }

  // identity
  int e = -1;
  for (size_t c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
      ok = t[c * n + i] == static_cast<int>(i) && t[i * n + c] == static_cast<int>(i);
    if (ok) e = static_cast<int>(c);
  }
  if (e < 0) throw ValidationError("no two-sided identity element");

  // associativity (exhaustive)
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c)
        if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]])
          throw ValidationError("associativity fails at (" + idx(static_cast<int>(a)) + "," +
                                idx(static_cast<int>(b)) + "," + idx(static_cast<int>(c)) + ")");

  // inverses exist by the Latin property + associativity; normalize e -> 0.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (e != 0) std::swap(perm[0], perm[e]);  // perm maps new -> old
  std::vector<int> inv_perm(n);
  for (size_t i = 0; i < n; ++i) inv_perm[perm[i]] = static_cast<int>(i);
  std::vector<int> nt(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      nt[i * n + j] = inv_perm[t[static_cast<size_t>(perm[i]) * n + perm[j]]];
  if (relabel) *relabel = inv_perm;
  return finish(static_cast<unsigned>(n), std::move(nt));
}

FiniteGroupTable trivial_table() { return finish(1, {0}); }

FiniteGroupTable cyclic_table(unsigned n) {
  if (n == 0) throw ValidationError("cyclic group order must be positive");
  std::vector<int> t(static_cast<size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) t[static_cast<size_t>(i) * n + j] = (i + j) % n;
  return finish(n, std::move(t));
}

// indices 0..n-1: rotations r^i; n..2n-1: reflections s r^i
FiniteGroupTable dihedral_table(unsigned n) {
  if (n == 0) throw ValidationError("dihedral parameter must be positive");
  unsigned m = 2 * n;
  auto enc = [n](bool flip, unsigned r) { return (flip ? n : 0u) + r; };
  std::vector<int> t(static_cast<size_t>(m) * m);
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b) {
      bool fa = a >= n, fb = b >= n;
      unsigned ra = a % n, rb = b % n;
      // (s^fa r^ra)(s^fb r^rb) = s^(fa+fb) r^(rb + (fb ? -ra : ra))
      unsigned r = fb ? (rb + n - ra % n) % n : (ra + rb) % n;
      t[static_cast<size_t>(a) * m + b] = static_cast<int>(enc(fa != fb, r));
    }
  return finish(m, std::move(t));
}

// presentation <a, b | a^{2n} = 1, b^2 = a^n, b a b^{-1} = a^{-1}>,
// elements a^i b^j with 0 <= i < 2n, j in {0,1}; index = i + 2n*j.
FiniteGroupTable dicyclic_table(unsigned n) {
  if (n == 0) throw ValidationError("dicyclic parameter must be positive");
  unsigned m = 4 * n;
  auto mulidx = [n](unsigned i1, unsigned j1, unsigned i2, unsigned j2) {
    // (a^i1 b^j1)(a^i2 b^j2): move b past a^i2: b a^k = a^{-k} b
    unsigned two_n = 2 * n;
    unsigned i = j1 ? (i1 + two_n - i2 % two_n) % two_n : (i1 + i2) % two_n;
    unsigned j = j1 + j2;
    if (j >= 2) {  // b^2 = a^n
      j -= 2;
      i = (i + n) % two_n;
    }
    return i + two_n * j;
  };
  std::vector<int> t(static_cast<size_t>(m) * m);
  for (unsigned x = 0; x < m; ++x)
    for (unsigned y = 0; y < m; ++y)
      t[static_cast<size_t>(x) * m + y] =
          static_cast<int>(mulidx(x % (2 * n), x / (2 * n), y % (2 * n), y / (2 * n)));
  return finish(m, std::move(t));
}

namespace {

std::vector<std::array<int, 4>> perms_of(unsigned n) {
  std::array<int, 4> base{0, 1, 2, 3};
  std::vector<std::array<int, 4>> out;
  std::vector<int> v(base.begin(), base.begin() + n);
  std::sort(v.begin(), v.end());
  do {
    std::array<int, 4> p{0, 1, 2, 3};
    for (unsigned i = 0; i < n; ++i) p[i] = v[i];
    out.push_back(p);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

FiniteGroupTable perm_group_table(const std::vector<std::array<int, 4>>& ps, unsigned deg) {
  // identity first, then sorted: ensures normalization keeps index 0.
  auto sorted = ps;
  std::sort(sorted.begin(), sorted.end());
  unsigned m = static_cast<unsigned>(sorted.size());
  auto find = [&](const std::array<int, 4>& p) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), p) - sorted.begin());
  };
  std::vector<std::vector<long>> rows(m, std::vector<long>(m));
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      std::array<int, 4> c{0, 1, 2, 3};
      for (unsigned k = 0; k < deg; ++k) c[k] = sorted[i][sorted[j][k]];
      rows[i][j] = find(c);
    }
  return FiniteGroupTable::from_table(rows);
}

}  // namespace

FiniteGroupTable symmetric_table(unsigned n) {
  if (n > 4) throw ValidationError("symmetric_table supports n <= 4");
  if (n < 2) return trivial_table();
  return perm_group_table(perms_of(n), n);
}

FiniteGroupTable alternating4_table() {
  auto all = perms_of(4);
  std::vector<std::array<int, 4>> even;
  for (const auto& p : all) {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inversions;
    if (inversions % 2 == 0) even.push_back(p);
  }
  return perm_group_table(even, 4);
}

FiniteGroupTable product_table(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  unsigned m = a.n * b.n;
  std::vector<int> t(static_cast<size_t>(m) * m);
  auto enc = [&b](int x, int y) { return x * static_cast<int>(b.n) + y; };
  for (unsigned i1 = 0; i1 < a.n; ++i1)
    for (unsigned j1 = 0; j1 < b.n; ++j1)
      for (unsigned i2 = 0; i2 < a.n; ++i2)
        for (unsigned j2 = 0; j2 < b.n; ++j2)
          t[static_cast<size_t>(enc(i1, j1)) * m + enc(i2, j2)] =
              enc(a.op(i1, i2), b.op(j1, j2));
  return finish(m, std::move(t));
}

}  // namespace rog
