/* Copyright 2026 The idfilt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#ifndef IDFILT_LINALG_HPP
#define IDFILT_LINALG_HPP

#include <optional>
#include <vector>

#include "poly.hpp"

namespace idfilt {

// Row echelon form with a dense row per pivot. Each stored row has a 1 at
// its pivot and zeros before it; the pivot is the smallest column index.
template <class K>
class Echelon {
 public:
  explicit Echelon(size_t ncols = 0) : n_(ncols), pivot_row_(ncols, -1) {}

  size_t ncols() const { return n_; }
  size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<K>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  bool is_pivot(size_t c) const { return pivot_row_[c] >= 0; }

  // Returns v minus a combination of stored rows, zero at every pivot.
  void reduce(std::vector<K>& v) const {
    for (size_t c = 0; c < n_; ++c) {
      if (is_zero(v[c]) || pivot_row_[c] < 0) continue;
      const auto& row = rows_[pivot_row_[c]];
      K f = v[c];
      for (size_t j = c; j < n_; ++j)
        if (!is_zero(row[j])) v[j] = v[j] - f * row[j];
    }
  }
  // Same as reduce, also recording the coefficients of the rows used.
  void reduce_tracked(std::vector<K>& v, std::vector<K>& coeffs) const {
    coeffs.assign(rows_.size(), K{});
    for (size_t c = 0; c < n_; ++c) {
      if (is_zero(v[c]) || pivot_row_[c] < 0) continue;
      int r = pivot_row_[c];
      const auto& row = rows_[r];
      K f = v[c];
      coeffs[r] = coeffs[r] + f;
      for (size_t j = c; j < n_; ++j)
        if (!is_zero(row[j])) v[j] = v[j] - f * row[j];
    }
  }
  bool in_span(std::vector<K> v) const {
    reduce(v);
    for (auto& x : v)
      if (!is_zero(x)) return false;
    return true;
  }
  // Inserts v if independent. Returns the new row index or -1.
  int insert(std::vector<K> v) {
    reduce(v);
    size_t c = 0;
    while (c < n_ && is_zero(v[c])) ++c;
    if (c == n_) return -1;
    K inv = v[c] / v[c] / v[c];
    for (size_t j = c; j < n_; ++j)
      if (!is_zero(v[j])) v[j] = v[j] * inv;
    pivot_row_[c] = static_cast<int>(rows_.size());
    pivots_.push_back(static_cast<int>(c));
    rows_.push_back(std::move(v));
    return static_cast<int>(rows_.size()) - 1;
  }

 private:
  size_t n_;
  std::vector<std::vector<K>> rows_;
  std::vector<int> pivots_;
  std::vector<int> pivot_row_;
};

// Reduced row echelon form of a copy of M.
template <class K>
struct RowReduced {
  Matrix<K> m;
  std::vector<int> pivot_cols;
};

template <class K>
RowReduced<K> row_reduce(Matrix<K> M) {
  RowReduced<K> out;
  size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && is_zero(M[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    K inv = M[r][c] / M[r][c] / M[r][c];
    for (size_t j = c; j < cols; ++j) M[r][j] = M[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(M[i][c])) continue;
      K f = M[i][c];
      for (size_t j = c; j < cols; ++j) M[i][j] = M[i][j] - f * M[r][j];
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  out.m = std::move(M);
  return out;
}

template <class K>
size_t rank(const Matrix<K>& M) {
  return row_reduce(M).pivot_cols.size();
}

// Basis of {x : Mx = 0}, one vector per free column, in column order.
template <class K>
std::vector<std::vector<K>> nullspace(const Matrix<K>& M, size_t ncols, const K& one) {
  std::vector<std::vector<K>> basis;
  if (M.empty()) {
    for (size_t c = 0; c < ncols; ++c) {
      std::vector<K> v(ncols, K{});
      v[c] = one;
      basis.push_back(v);
    }
    return basis;
  }
  auto rr = row_reduce(M);
  std::vector<int> is_piv(ncols, -1);
  for (size_t i = 0; i < rr.pivot_cols.size(); ++i) is_piv[rr.pivot_cols[i]] = static_cast<int>(i);
  for (size_t c = 0; c < ncols; ++c) {
    if (is_piv[c] >= 0) continue;
    std::vector<K> v(ncols, K{});
    v[c] = one;
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) v[rr.pivot_cols[i]] = -rr.m[i][c];
    basis.push_back(v);
  }
  return basis;
}

// Some solution of Mx = b, or nullopt if inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& M, const std::vector<K>& b, size_t ncols) {
  Matrix<K> A = M;
  for (size_t i = 0; i < A.size(); ++i) A[i].push_back(b[i]);
  if (A.empty()) return std::vector<K>(ncols, K{});
  auto rr = row_reduce(A);
  std::vector<K> x(ncols, K{});
  for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
    size_t c = rr.pivot_cols[i];
    if (c == ncols) return std::nullopt;
    x[c] = rr.m[i][ncols];
  }
  return x;
}

template <class K>
K determinant(Matrix<K> M, const K& one) {
  size_t n = M.size();
  K det = one;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && is_zero(M[piv][c])) ++piv;
    if (piv == n) return K{} * one;
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = -det;
    }
    det = det * M[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (is_zero(M[i][c])) continue;
      K f = M[i][c] / M[c][c];
      for (size_t j = c; j < n; ++j) M[i][j] = M[i][j] - f * M[c][j];
    }
  }
  return det;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& M, const K& one) {
  size_t n = M.size();
  Matrix<K> A = M;
  for (size_t i = 0; i < n; ++i) {
    A[i].resize(2 * n, K{});
    A[i][n + i] = one;
  }
  auto rr = row_reduce(A);
  if (rr.pivot_cols.size() < n || rr.pivot_cols[n - 1] != int(n - 1)) return std::nullopt;
  Matrix<K> out(n, std::vector<K>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = rr.m[i][n + j];
  return out;
}

template <class K>
Matrix<K> identity(size_t n, const K& one) {
  Matrix<K> I(n, std::vector<K>(n, K{}));
  for (size_t i = 0; i < n; ++i) I[i][i] = one;
  return I;
}

}  // namespace idfilt

#endif
