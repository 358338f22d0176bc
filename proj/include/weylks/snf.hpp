#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "weylks/common.hpp"

namespace weylks {

// Dense arbitrary-precision integer matrix, row major. Sized for certificate
// systems (tens of rows/columns), not for bulk numerics.
struct IntMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  friend IntMat operator*(const IntMat& x, const IntMat& y) {
    IntMat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        const Int& v = x.at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
      }
    return out;
  }

  friend bool operator==(const IntMat& x, const IntMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

// U*A*V = D with U, V products of elementary unimodular operations and D
// diagonal (pivots first, then zeros). The divisor-chain refinement of the
// classical Smith form is not needed by any consumer here, so D's diagonal is
// not forced into divisibility order.
struct SmithResult {
  IntMat U, D, V;
  std::size_t rank = 0;
};

inline SmithResult smith_diagonalize(IntMat A) {
  SmithResult res;
  res.U = IntMat::identity(A.rows);
  res.V = IntMat::identity(A.cols);
  const std::size_t bound = std::min(A.rows, A.cols);

  const auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t c = 0; c < A.cols; ++c) std::swap(A.at(r1, c), A.at(r2, c));
    for (std::size_t c = 0; c < res.U.cols; ++c) std::swap(res.U.at(r1, c), res.U.at(r2, c));
  };
  const auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t r = 0; r < A.rows; ++r) std::swap(A.at(r, c1), A.at(r, c2));
    for (std::size_t r = 0; r < res.V.rows; ++r) std::swap(res.V.at(r, c1), res.V.at(r, c2));
  };
  // row r1 -= q * row r2, mirrored into U; columns likewise into V.
  const auto row_sub = [&](std::size_t r1, std::size_t r2, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < A.cols; ++c) A.at(r1, c) -= q * A.at(r2, c);
    for (std::size_t c = 0; c < res.U.cols; ++c) res.U.at(r1, c) -= q * res.U.at(r2, c);
  };
  const auto col_sub = [&](std::size_t c1, std::size_t c2, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < A.rows; ++r) A.at(r, c1) -= q * A.at(r, c2);
    for (std::size_t r = 0; r < res.V.rows; ++r) res.V.at(r, c1) -= q * res.V.at(r, c2);
  };

  std::size_t t = 0;
  for (; t < bound; ++t) {
    // smallest |entry| in the trailing submatrix keeps coefficient growth tame
    std::size_t pr = t, pc = t;
    bool found = false;
    for (std::size_t r = t; r < A.rows; ++r)
      for (std::size_t c = t; c < A.cols; ++c) {
        if (A.at(r, c) == 0) continue;
        if (!found ||
            mpz_cmpabs(A.at(r, c).get_mpz_t(), A.at(pr, pc).get_mpz_t()) < 0) {
          pr = r;
          pc = c;
          found = true;
        }
      }
    if (!found) break;
    swap_rows(t, pr);
    swap_cols(t, pc);

    for (bool dirty = true; dirty;) {
      dirty = false;
      for (std::size_t r = t + 1; r < A.rows; ++r) {
        if (A.at(r, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A.at(r, t).get_mpz_t(), A.at(t, t).get_mpz_t());
        row_sub(r, t, q);
        if (A.at(r, t) != 0) {  // remainder became the smaller pivot
          swap_rows(t, r);
          dirty = true;
        }
      }
      for (std::size_t c = t + 1; c < A.cols; ++c) {
        if (A.at(t, c) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A.at(t, c).get_mpz_t(), A.at(t, t).get_mpz_t());
        col_sub(c, t, q);
        if (A.at(t, c) != 0) {
          swap_cols(t, c);
          dirty = true;
        }
      }
    }
    if (A.at(t, t) < 0) {  // normalize pivot sign via a row negation
      for (std::size_t c = 0; c < A.cols; ++c) A.at(t, c) = -A.at(t, c);
      for (std::size_t c = 0; c < res.U.cols; ++c) res.U.at(t, c) = -res.U.at(t, c);
    }
  }
  res.rank = t;
  res.D = std::move(A);
  return res;
}

namespace detail {

inline std::size_t support_size(const std::vector<Int>& v) {
  std::size_t s = 0;
  for (const auto& x : v)
    if (x != 0) ++s;
  return s;
}

inline Int l1_norm(const std::vector<Int>& v) {
  Int s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

// (support, L1, lex): the quality order used both for reducing kernel basis
// vectors and for choosing among witness candidates.
inline bool sparser(const std::vector<Int>& a, const std::vector<Int>& b) {
  const std::size_t sa = support_size(a), sb = support_size(b);
  if (sa != sb) return sa < sb;
  const Int la = l1_norm(a), lb = l1_norm(b);
  if (la != lb) return la < lb;
  return a < b;
}

}  // namespace detail

// Deterministic pairwise-reduction pass that prefers sparse, small vectors.
// Only adds integer multiples of other basis vectors, so the span (here: a
// kernel lattice) is untouched.
inline std::vector<std::vector<Int>> reduce_kernel_basis(std::vector<std::vector<Int>> basis) {
  for (int pass = 0; pass < 16; ++pass) {
    bool changed = false;
    std::sort(basis.begin(), basis.end(), detail::sparser);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (long c = -4; c <= 4; ++c) {
          if (c == 0) continue;
          std::vector<Int> cand(basis[i].size());
          for (std::size_t k = 0; k < cand.size(); ++k)
            cand[k] = basis[i][k] + c * basis[j][k];
          if (detail::sparser(cand, basis[i])) {
            basis[i] = std::move(cand);
            changed = true;
          }
        }
      }
    if (!changed) break;
  }
  std::sort(basis.begin(), basis.end(), detail::sparser);
  return basis;
}

// Integer basis of {t : t^T A = 0}: the rows of U paired with zero rows of D,
// cleaned up by the reduction pass.
inline std::vector<std::vector<Int>> left_kernel_basis(const IntMat& A) {
  SmithResult s = smith_diagonalize(A);
  std::vector<std::vector<Int>> basis;
  for (std::size_t r = s.rank; r < s.U.rows; ++r) {
    std::vector<Int> v(s.U.cols);
    for (std::size_t c = 0; c < s.U.cols; ++c) v[c] = s.U.at(r, c);
    basis.push_back(std::move(v));
  }
  return reduce_kernel_basis(std::move(basis));
}

}  // namespace weylks
