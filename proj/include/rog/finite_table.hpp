#ifndef ROG_FINITE_TABLE_HPP
#define ROG_FINITE_TABLE_HPP

#include <string>
#include <vector>

namespace rog {

// A finite group as a Cayley table over dense indices 0..n-1, identity at
// index 0 (from_table relabels if needed). Validation is exhaustive.
struct FiniteGroupTable {
  unsigned n = 1;
  std::vector<int> t;    // n*n row-major: t[i*n+j] = i op j
  std::vector<int> inv;  // inverse index map

  int op(int i, int j) const { return t[static_cast<size_t>(i) * n + j]; }

  // Validates (Latin square, associativity, two-sided identity and inverses)
  // and normalizes the identity to index 0. Throws ValidationError naming the
  // violated axiom and a witness. `relabel` (optional out) maps input indices
  // to normalized indices.
  static FiniteGroupTable from_table(const std::vector<std::vector<long>>& rows,
                                     std::vector<int>* relabel = nullptr);

  bool operator==(const FiniteGroupTable& o) const { return n == o.n && t == o.t; }
};

FiniteGroupTable trivial_table();
FiniteGroupTable cyclic_table(unsigned n);
FiniteGroupTable dihedral_table(unsigned n);   // order 2n, n >= 1
FiniteGroupTable dicyclic_table(unsigned n);   // order 4n, n >= 1; n=2 gives Q8
FiniteGroupTable symmetric_table(unsigned n);  // n <= 4
FiniteGroupTable alternating4_table();
FiniteGroupTable product_table(const FiniteGroupTable& a, const FiniteGroupTable& b);

}  // namespace rog

#endif
