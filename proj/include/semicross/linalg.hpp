#pragma once
/* Exact linear algebra over the Gaussian rationals: reduced row echelon form
   with a deterministic pivot rule (first nonzero column, then smallest row
   index), nullspaces, and subspace comparison via canonical bases.  Row
   reduction is the workhorse behind every ideal/subspace computation, so
   everything here is allocation-light and branch-simple. */
#include <algorithm>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace semicross {

using Row = std::vector<GaussRat>;
using Matrix = std::vector<Row>;

inline size_t column_count(const Matrix& M) {
  if (M.empty()) return 0;
  size_t cols = M.front().size();
  for (const Row& r : M)
    if (r.size() != cols) throw invalid_input("ragged matrix");
  return cols;
}

inline bool row_is_zero(const Row& r) {
  for (const GaussRat& v : r)
    if (!v.is_zero()) return false;
  return true;
}

/* In-place reduced row echelon form; returns the rank. */
inline size_t rref(Matrix& M) {
  size_t cols = column_count(M);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < M.size(); ++col) {
    size_t pivot = rank;
    while (pivot < M.size() && M[pivot][col].is_zero()) ++pivot;
    if (pivot == M.size()) continue;
    std::swap(M[rank], M[pivot]);
    GaussRat inv = GaussRat{1} / M[rank][col];
    for (size_t j = col; j < cols; ++j) M[rank][j] *= inv;
    for (size_t r = 0; r < M.size(); ++r) {
      if (r == rank || M[r][col].is_zero()) continue;
      GaussRat factor = M[r][col];
      for (size_t j = col; j < cols; ++j) M[r][j] -= factor * M[rank][j];
    }
    ++rank;
  }
  return rank;
}

/* The unique reduced-echelon basis of the row space (zero rows dropped).
   Two matrices span the same subspace exactly when these agree. */
inline Matrix canonical_rows(Matrix M) {
  size_t rank = rref(M);
  M.resize(rank);
  return M;
}

/* Drop duplicate rows (sorting first).  The row space is unchanged; the
   constraint assemblies upstream repeat rows heavily by periodicity, and
   elimination is much cheaper without the copies. */
inline Matrix dedupe_rows(Matrix M) {
  std::sort(M.begin(), M.end());
  M.erase(std::unique(M.begin(), M.end()), M.end());
  return M;
}

/* Residual of v after elimination against reduced-echelon rows; zero exactly
   when v lies in their span. */
inline Row reduce_against(const Matrix& rref_rows, Row v) {
  for (const Row& row : rref_rows) {
    size_t c = 0;
    while (c < row.size() && row[c].is_zero()) ++c;
    if (c == row.size() || c >= v.size()) continue;
    if (v[c].is_zero()) continue;
    GaussRat factor = v[c];
    for (size_t j = c; j < v.size(); ++j) v[j] -= factor * row[j];
  }
  return v;
}

inline bool in_span(const Matrix& rref_rows, const Row& v) {
  return row_is_zero(reduce_against(rref_rows, v));
}

/* Basis of {x : Mx = 0}, one vector per free column, in column order. */
inline Matrix nullspace(Matrix M, size_t cols) {
  for (const Row& r : M)
    if (r.size() != cols) throw invalid_input("matrix width does not match the variable count");
  size_t rank = rref(M);
  M.resize(rank);
  std::vector<size_t> pivot_col(rank);
  std::vector<bool> is_pivot(cols, false);
  for (size_t r = 0; r < rank; ++r) {
    size_t c = 0;
    while (M[r][c].is_zero()) ++c;
    pivot_col[r] = c;
    is_pivot[c] = true;
  }
  Matrix basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Row x(cols);
    x[f] = GaussRat{1};
    for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = -M[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

/* span(V) inside span(U)?  Both arguments may be arbitrary spanning sets. */
inline bool subspace_contains(const Matrix& U, const Matrix& V) {
  Matrix ucan = canonical_rows(U);
  for (const Row& v : V)
    if (!in_span(ucan, v)) return false;
  return true;
}

inline bool subspace_equal(const Matrix& U, const Matrix& V) {
  return canonical_rows(U) == canonical_rows(V);
}

inline size_t subspace_dim(const Matrix& U) { return canonical_rows(U).size(); }

/* dim of span(U) + span(V); with the two summand dims this gives the
   intersection dimension exactly. */
inline size_t subspace_sum_dim(const Matrix& U, const Matrix& V) {
  Matrix all = U;
  all.insert(all.end(), V.begin(), V.end());
  return subspace_dim(all);
}

}  // namespace semicross
