#ifndef ROG_MATRIX_HPP
#define ROG_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rog/numeric.hpp"

namespace rog {

// Dense integer matrix, row-major, arbitrary-precision entries.
struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

  static IntMatrix identity(size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  Int& at(size_t r, size_t c) { return a[r * cols + c]; }
  const Int& at(size_t r, size_t c) const { return a[r * cols + c]; }

  std::vector<Int> col(size_t c) const;
  std::vector<Int> row(size_t r) const;

  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const = default;
  std::string str() const;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
std::vector<Int> mat_apply(const IntMatrix& a, const std::vector<Int>& x);

// Stacks b below a (same column count) / to the right of a (same row count).
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

// Exact determinant (square), fraction-free Bareiss elimination.
Int det(const IntMatrix& m);

// Smith normal form u*a*v = d with u, v unimodular, d diagonal with
// nonnegative entries in a divisibility chain d1 | d2 | ... (zeros last).
// uinv and vinv are maintained alongside so no matrix inversion is needed.
struct SnfResult {
  IntMatrix u, uinv, d, v, vinv;
  std::vector<Int> diag() const;  // min(rows,cols) diagonal entries of d
};
SnfResult snf(const IntMatrix& a);

// Basis (as columns, returned row-wise as vectors) of {t : a*t = 0} over Z.
std::vector<std::vector<Int>> kernel_basis(const IntMatrix& a);

// One integral solution of a*t = x, if any.
std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& x);

}  // namespace rog

#endif
