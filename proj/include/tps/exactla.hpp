#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tps/field.hpp"

namespace tps {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  K& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const K& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw internal_error("ragged rows in Matrix::from_rows");
      for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::vector<K> row(int i) const {
    std::vector<K> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<K> a_;
};

template <class K>
struct RrefResult {
  Matrix<K> mat;
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};

namespace detail {

// Gauss-Jordan with division; pivot = first nonzero entry scanning rows
// top-down per column. Works over any field; the reference path over Q.
template <class K>
RrefResult<K> rref_division(Matrix<K> M) {
  int R = M.rows(), C = M.cols(), r = 0;
  std::vector<int> piv;
  for (int c = 0; c < C && r < R; ++c) {
    int pr = -1;
    for (int i = r; i < R; ++i)
      if (!kis_zero(M(i, c))) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    M.swap_rows(pr, r);
    K iv = kinv(M(r, c));
    for (int j = c; j < C; ++j) M(r, j) = M(r, j) * iv;
    for (int i = 0; i < R; ++i) {
      if (i == r || kis_zero(M(i, c))) continue;
      K f = M(i, c);
      for (int j = c; j < C; ++j) M(i, j) = M(i, j) - f * M(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return {std::move(M), std::move(piv)};
}

// Fraction-free forward elimination (Bareiss). Rows are first scaled to
// integers; every intermediate entry is a minor of the scaled matrix, so the
// one-step division is exact and coefficient growth stays polynomial.
struct BareissEchelon {
  std::vector<std::vector<mpz_class>> a;  // echelon rows, integer entries
  std::vector<int> pivots;
  std::vector<mpz_class> row_scales;      // original row i was multiplied by
  int sign = 1;                           // parity of row swaps
  int rank() const { return static_cast<int>(pivots.size()); }
};

inline BareissEchelon bareiss_echelon(const Matrix<Rat>& M) {
  int R = M.rows(), C = M.cols();
  BareissEchelon e;
  e.a.assign(R, std::vector<mpz_class>(C));
  e.row_scales.assign(R, 1);
  for (int i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < C; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M(i, j).get_den().get_mpz_t());
    e.row_scales[i] = l;
    for (int j = 0; j < C; ++j)
      e.a[i][j] = M(i, j).get_num() * (l / M(i, j).get_den());
  }
  mpz_class prev = 1, t, q, rem;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int pr = -1;
    for (int i = r; i < R; ++i)
      if (e.a[i][c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;  // column is zero below the processed rows
    if (pr != r) {
      std::swap(e.a[pr], e.a[r]);
      e.sign = -e.sign;
    }
    for (int i = r + 1; i < R; ++i) {
      for (int j = c + 1; j < C; ++j) {
        t = e.a[r][c] * e.a[i][j] - e.a[i][c] * e.a[r][j];
        // Entries are minors of the scaled input, so the one-step division
        // is exact; a nonzero remainder means the pivot bookkeeping broke.
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(),
                    prev.get_mpz_t());
        if (rem != 0)
          throw internal_error("fraction-free elimination: inexact division");
        mpz_swap(q.get_mpz_t(), e.a[i][j].get_mpz_t());
      }
      e.a[i][c] = 0;
    }
    prev = e.a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

}  // namespace detail

// Reference implementation (plain division-based elimination); exercised by
// tests against the production path.
template <class K>
RrefResult<K> rref_naive(const Matrix<K>& M) {
  return detail::rref_division(M);
}

// Unique reduced row echelon form. Over Q the forward phase is fraction-free.
template <class K>
RrefResult<K> rref(const Matrix<K>& M) {
  if constexpr (!std::is_same_v<K, Rat>) {
    return detail::rref_division(M);
  } else {
    detail::BareissEchelon e = detail::bareiss_echelon(M);
    int C = M.cols(), rk = e.rank();
    Matrix<Rat> out(M.rows(), C);
    std::vector<std::vector<Rat>> rows(rk, std::vector<Rat>(C));
    for (int i = 0; i < rk; ++i)
      for (int j = 0; j < C; ++j) rows[i][j] = Rat(e.a[i][j]);
    for (int i = rk - 1; i >= 0; --i) {
      int pc = e.pivots[i];
      Rat iv = kinv(rows[i][pc]);
      for (int j = pc; j < C; ++j) rows[i][j] *= iv;
      for (int k = 0; k < i; ++k) {
        if (kis_zero(rows[k][pc])) continue;
        Rat f = rows[k][pc];
        for (int j = pc; j < C; ++j) rows[k][j] -= f * rows[i][j];
      }
    }
    for (int i = 0; i < rk; ++i)
      for (int j = 0; j < C; ++j) out(i, j) = rows[i][j];
    return {std::move(out), std::move(e.pivots)};
  }
}

template <class K>
int rank_of(const Matrix<K>& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  if constexpr (std::is_same_v<K, Rat>) {
    return detail::bareiss_echelon(M).rank();
  } else {
    return detail::rref_division(M).rank();
  }
}

// Canonical kernel basis: the rref free-variable construction, free columns
// taken in ascending order, free variable set to 1.
template <class K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& M) {
  int C = M.cols();
  std::vector<std::vector<K>> out;
  if (C == 0) return out;
  RrefResult<K> R = rref(M);
  std::vector<char> is_piv(C, 0);
  for (int p : R.pivots) is_piv[p] = 1;
  for (int f = 0; f < C; ++f) {
    if (is_piv[f]) continue;
    std::vector<K> v(C, K(0));
    v[f] = K(1);
    for (int i = 0; i < R.rank(); ++i) v[R.pivots[i]] = -R.mat(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

// Any c with M c = b, or nullopt when inconsistent. Free variables are set
// to zero, so the result is the rref particular solution.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& M,
                                    const std::vector<K>& b) {
  if (static_cast<int>(b.size()) != M.rows())
    throw internal_error("solve: rhs length mismatch");
  int R = M.rows(), C = M.cols();
  Matrix<K> aug(R, C + 1);
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < C; ++j) aug(i, j) = M(i, j);
    aug(i, C) = b[i];
  }
  RrefResult<K> E = rref(aug);
  std::vector<K> x(C, K(0));
  for (int i = 0; i < E.rank(); ++i) {
    if (E.pivots[i] == C) return std::nullopt;  // pivot in the rhs column
    x[E.pivots[i]] = E.mat(i, C);
  }
  return x;
}

template <class K>
K det(const Matrix<K>& M) {
  if (M.rows() != M.cols()) throw internal_error("det: matrix not square");
  int n = M.rows();
  if (n == 0) return K(1);
  if constexpr (std::is_same_v<K, Rat>) {
    detail::BareissEchelon e = detail::bareiss_echelon(M);
    if (e.rank() < n) return Rat(0);
    Rat d(e.a[n - 1][n - 1]);
    if (e.sign < 0) d = -d;
    for (const mpz_class& s : e.row_scales) d /= Rat(s);
    return d;
  } else {
    Matrix<K> A = M;
    K d(1);
    for (int c = 0; c < n; ++c) {
      int pr = -1;
      for (int i = c; i < n; ++i)
        if (!kis_zero(A(i, c))) {
          pr = i;
          break;
        }
      if (pr < 0) return K(0);
      if (pr != c) {
        A.swap_rows(pr, c);
        d = -d;
      }
      d = d * A(c, c);
      K iv = kinv(A(c, c));
      for (int i = c + 1; i < n; ++i) {
        if (kis_zero(A(i, c))) continue;
        K f = A(i, c) * iv;
        for (int j = c; j < n; ++j) A(i, j) = A(i, j) - f * A(c, j);
      }
    }
    return d;
  }
}

}  // namespace tps
