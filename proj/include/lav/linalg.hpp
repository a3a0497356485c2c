#ifndef LAV_LINALG_HPP
#define LAV_LINALG_HPP

// Exact linear algebra over Q and Z: determinants, inverses, Hermite and
// Smith normal forms.

#include "lav/numeric.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace lav {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> zeros(size_t rows, size_t cols) {
  return Matrix<T>(rows, std::vector<T>(cols, T(0)));
}

template <class T>
Matrix<T> identity(size_t n) {
  auto m = zeros<T>(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  auto c = zeros<T>(n, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline Rat det(Matrix<Rat> a) {
  size_t n = a.size();
  Rat d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

/// Inverse of a square rational matrix; throws on singular input.
inline Matrix<Rat> inverse(Matrix<Rat> a) {
  size_t n = a.size();
  auto inv = identity<Rat>(n);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw InputError("singular matrix");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Rat s = a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] /= s;
      inv[c][j] /= s;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `gens`
/// (assumed of full column rank). Result is square, upper triangular, with
/// positive pivots and entries above each pivot reduced into [0, pivot).
inline Matrix<Int> hnf(Matrix<Int> gens) {
  if (gens.empty()) throw InputError("hnf of empty generator set");
  size_t d = gens[0].size();
  Matrix<Int> out;
  size_t row0 = 0;
  for (size_t c = 0; c < d; ++c) {
    // gcd-combine all rows from row0 down into a single pivot row
    for (size_t r = row0 + 1; r < gens.size(); ++r) {
      while (gens[r][c] != 0) {
        Int q = gens[row0][c] / gens[r][c];
        for (size_t j = c; j < d; ++j) gens[row0][j] -= q * gens[r][j];
        std::swap(gens[row0], gens[r]);
      }
    }
    if (row0 >= gens.size() || gens[row0][c] == 0) throw InputError("hnf: lattice is not of full rank");
    if (gens[row0][c] < 0)
      for (size_t j = c; j < d; ++j) gens[row0][j] = -gens[row0][j];
    ++row0;
  }
  gens.resize(d);
  for (size_t c = 0; c < d; ++c) {
    for (size_t r = 0; r < c; ++r) {
      Int q = gens[r][c] / gens[c][c];
      if (gens[r][c] - q * gens[c][c] < 0) q -= 1;
      if (q != 0)
        for (size_t j = c; j < d; ++j) gens[r][j] -= q * gens[c][j];
    }
  }
  return gens;
}

/// Smith normal form U * R * V = D of an integer matrix R (rows x cols).
struct SmithForm {
  Matrix<Int> U, V, D;
  std::vector<Int> diagonal;  // min(rows, cols) entries, each dividing the next
};

inline SmithForm smith(const Matrix<Int>& R) {
  size_t m = R.size(), n = m ? R[0].size() : 0;
  SmithForm s{identity<Int>(m), identity<Int>(n), R, {}};
  auto& A = s.D;
  auto row_op = [&](size_t dst, size_t src, const Int& f) {  // row dst -= f * row src
    for (size_t j = 0; j < n; ++j) A[dst][j] -= f * A[src][j];
    for (size_t j = 0; j < m; ++j) s.U[dst][j] -= f * s.U[src][j];
  };
  auto col_op = [&](size_t dst, size_t src, const Int& f) {  // col dst -= f * col src
    for (size_t i = 0; i < m; ++i) A[i][dst] -= f * A[i][src];
    for (size_t i = 0; i < n; ++i) s.V[i][dst] -= f * s.V[i][src];
  };
  auto swap_rows = [&](size_t a, size_t b) {
    std::swap(A[a], A[b]);
    std::swap(s.U[a], s.U[b]);
  };
  auto swap_cols = [&](size_t a, size_t b) {
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : s.V) std::swap(row[a], row[b]);
  };
  size_t t = 0;
  while (t < std::min(m, n)) {
    // pivot: smallest nonzero |entry| in the trailing block
    bool found = false;
    size_t pi = t, pj = t;
    Int best = 0;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (A[i][j] != 0 && (!found || abs(A[i][j]) < best)) {
          found = true;
          best = abs(A[i][j]);
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool clean = true;
    for (size_t i = t + 1; i < m; ++i) {
      Int q = A[i][t] / A[t][t];
      if (q != 0) row_op(i, t, q);
      if (A[i][t] != 0) clean = false;
    }
    for (size_t j = t + 1; j < n; ++j) {
      Int q = A[t][j] / A[t][t];
      if (q != 0) col_op(j, t, q);
      if (A[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    // divisibility of the remaining block by the pivot
    bool divides = true;
    for (size_t i = t + 1; i < m && divides; ++i)
      for (size_t j = t + 1; j < n; ++j)
        if (A[i][j] % A[t][t] != 0) {
          row_op(t, i, Int(-1));
          divides = false;
          break;
        }
    if (!divides) continue;
    if (A[t][t] < 0) {
      for (size_t j = 0; j < n; ++j) A[t][j] = -A[t][j];
      for (size_t j = 0; j < m; ++j) s.U[t][j] = -s.U[t][j];
    }
    ++t;
  }
  for (size_t i = 0; i < std::min(m, n); ++i) s.diagonal.push_back(A[i][i]);
  return s;
}

}  // namespace lav

#endif  // LAV_LINALG_HPP
