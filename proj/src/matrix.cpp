#include "rog/matrix.hpp"

#include <sstream>

#include "rog/errors.hpp"

namespace rog {

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw ValidationError("ragged matrix rows");
    for (size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Int> IntMatrix::col(size_t c) const {
  std::vector<Int> v(rows);
  for (size_t i = 0; i < rows; ++i) v[i] = at(i, c);
  return v;
}

std::vector<Int> IntMatrix::row(size_t r) const {
  return std::vector<Int>(a.begin() + r * cols, a.begin() + (r + 1) * cols);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix m(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
  return m;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < rows; ++i) {
    if (i) os << ",";
    os << "[";
    for (size_t j = 0; j < cols; ++j) {
      if (j) os << ",";
      os << at(i, j).get_str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw ValidationError("matrix product dimension mismatch");
  IntMatrix c(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t k = 0; k < a.cols; ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

std::vector<Int> mat_apply(const IntMatrix& a, const std::vector<Int>& x) {
  if (a.cols != x.size()) throw ValidationError("matrix apply dimension mismatch");
  std::vector<Int> y(a.rows);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j)
      if (a.at(i, j) != 0) y[i] += a.at(i, j) * x[j];
  return y;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.cols && a.rows != 0 && b.rows != 0)
    throw ValidationError("vstack column mismatch");
  size_t cols = a.rows ? a.cols : b.cols;
  IntMatrix m(a.rows + b.rows, cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = a.at(i, j);
  for (size_t i = 0; i < b.rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(a.rows + i, j) = b.at(i, j);
  return m;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows) throw ValidationError("hstack row mismatch");
  IntMatrix m(a.rows, a.cols + b.cols);
  for (size_t i = 0; i < a.rows; ++i) {
    for (size_t j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    for (size_t j = 0; j < b.cols; ++j) m.at(i, a.cols + j) = b.at(i, j);
  }
  return m;
}

Int det(const IntMatrix& m) {
  if (m.rows != m.cols) throw ValidationError("determinant of non-square matrix");
  size_t n = m.rows;
  if (n == 0) return 1;
  IntMatrix w = m;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && w.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

std::vector<Int> SnfResult::diag() const {
  size_t k = std::min(d.rows, d.cols);
  std::vector<Int> out(k);
  for (size_t i = 0; i < k; ++i) out[i] = d.at(i, i);
  return out;
}

namespace {

struct SnfWork {
  IntMatrix d, u, uinv, v, vinv;

  // Row ops act on (d, u) and the inverse op on uinv; column ops on (d, v)
  // and vinv. Invariant throughout: u * a * v == d, u*uinv == I, v*vinv == I.
  void swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (size_t c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    for (size_t r = 0; r < uinv.rows; ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
  }
  void swap_cols(size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (size_t r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    for (size_t c = 0; c < vinv.cols; ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
  }
  // row i += f * row j
  void add_row(size_t i, size_t j, const Int& f) {
    for (size_t c = 0; c < d.cols; ++c) d.at(i, c) += f * d.at(j, c);
    for (size_t c = 0; c < u.cols; ++c) u.at(i, c) += f * u.at(j, c);
    for (size_t r = 0; r < uinv.rows; ++r) uinv.at(r, j) -= f * uinv.at(r, i);
  }
  // col i += f * col j
  void add_col(size_t i, size_t j, const Int& f) {
    for (size_t r = 0; r < d.rows; ++r) d.at(r, i) += f * d.at(r, j);
    for (size_t r = 0; r < v.rows; ++r) v.at(r, i) += f * v.at(r, j);
    for (size_t c = 0; c < vinv.cols; ++c) vinv.at(j, c) -= f * vinv.at(i, c);
  }
  void negate_row(size_t i) {
    for (size_t c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
    for (size_t c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    for (size_t r = 0; r < uinv.rows; ++r) uinv.at(r, i) = -uinv.at(r, i);
  }
};

// Smallest nonzero |entry| in the trailing submatrix, row-major scan.
bool find_pivot(const IntMatrix& d, size_t s, size_t& pi, size_t& pj) {
  bool found = false;
  Int best;
  for (size_t i = s; i < d.rows; ++i)
    for (size_t j = s; j < d.cols; ++j) {
      const Int& e = d.at(i, j);
      if (e == 0) continue;
      Int a = abs(e);
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SnfResult snf(const IntMatrix& a) {
  SnfWork w;
  w.d = a;
  w.u = IntMatrix::identity(a.rows);
  w.uinv = IntMatrix::identity(a.rows);
  w.v = IntMatrix::identity(a.cols);
  w.vinv = IntMatrix::identity(a.cols);

  size_t n = std::min(a.rows, a.cols);
  for (size_t s = 0; s < n; ++s) {
    size_t pi = s, pj = s;
    if (!find_pivot(w.d, s, pi, pj)) break;
    w.swap_rows(s, pi);
    w.swap_cols(s, pj);
    for (;;) {
      // Clear column s below the pivot, then row s right of it, re-pivoting
      // on the smallest remainder until the pivot is lone.
      bool dirty = false;
      for (size_t i = s + 1; i < w.d.rows; ++i) {
        if (w.d.at(i, s) == 0) continue;
        Int q = w.d.at(i, s) / w.d.at(s, s);  // C++ truncation; remainder may be negative
        w.add_row(i, s, -q);
        if (w.d.at(i, s) != 0) {
          // remainder strictly smaller in absolute value: promote it
          w.swap_rows(s, i);
          dirty = true;
        }
      }
      if (dirty) continue;
      for (size_t j = s + 1; j < w.d.cols; ++j) {
        if (w.d.at(s, j) == 0) continue;
        Int q = w.d.at(s, j) / w.d.at(s, s);
        w.add_col(j, s, -q);
        if (w.d.at(s, j) != 0) {
          w.swap_cols(s, j);
          dirty = true;
        }
      }
      if (!dirty) break;
    }
  }

  // Divisibility chain: fold any offender into position s via a column add.
  for (size_t s = 0; s + 1 < n; ++s) {
    if (w.d.at(s, s) == 0) continue;
    for (size_t t = s + 1; t < n; ++t) {
      if (w.d.at(t, t) % w.d.at(s, s) == 0) continue;
      w.add_col(s, t, 1);
      // re-reduce the 2x2 block; the generic loop does the job
      for (;;) {
        bool dirty = false;
        Int q = w.d.at(t, s) / w.d.at(s, s);
        if (q != 0) w.add_row(t, s, -q);
        if (w.d.at(t, s) != 0) {
          w.swap_rows(s, t);
          dirty = true;
        } else {
          Int qc = w.d.at(s, t) / w.d.at(s, s);
          if (qc != 0) w.add_col(t, s, -qc);
          if (w.d.at(s, t) != 0) {
            w.swap_cols(s, t);
            dirty = true;
          }
        }
        if (!dirty) break;
      }
      // restart the divisibility sweep from this position
      t = s;
    }
  }

  // Zeros must trail: compact nonzero diagonal entries forward.
  for (size_t s = 0; s + 1 < n; ++s) {
    if (w.d.at(s, s) != 0) continue;
    size_t t = s + 1;
    while (t < n && w.d.at(t, t) == 0) ++t;
    if (t == n) break;
    w.swap_rows(s, t);
    w.swap_cols(s, t);
  }

  for (size_t s = 0; s < n; ++s)
    if (w.d.at(s, s) < 0) w.negate_row(s);

  return {w.u, w.uinv, w.d, w.v, w.vinv};
}

std::vector<std::vector<Int>> kernel_basis(const IntMatrix& a) {
  SnfResult r = snf(a);
  size_t n = std::min(a.rows, a.cols);
  std::vector<std::vector<Int>> basis;
  for (size_t j = 0; j < a.cols; ++j) {
    bool free = j >= n || r.d.at(j, j) == 0;
    if (free) basis.push_back(r.v.col(j));
  }
  return basis;
}

std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& x) {
  if (x.size() != a.rows) throw ValidationError("solve dimension mismatch");
  SnfResult r = snf(a);
  std::vector<Int> y = mat_apply(r.u, x);
  size_t n = std::min(a.rows, a.cols);
  std::vector<Int> s(a.cols);
  for (size_t i = 0; i < a.rows; ++i) {
    if (i < n && r.d.at(i, i) != 0) {
      if (y[i] % r.d.at(i, i) != 0) return std::nullopt;
      s[i] = y[i] / r.d.at(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_apply(r.v, s);
}

}  // namespace rog
