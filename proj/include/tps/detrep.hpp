#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tps/bipoly.hpp"
#include "tps/exactla.hpp"
#include "tps/surface.hpp"
#include "tps/syzygy.hpp"
#include "tps/thresholds.hpp"

namespace tps {

enum class QuadricSource { Default, Saturated };

// Square-or-rectangular matrix whose rows are indexed by the monomials of
// R_(mu,nu) and whose columns are moving planes followed by moving quadrics.
template <class K>
struct MPQMatrix {
  int mu = 0, nu = 0;
  int nplanes = 0, nquadrics = 0;
  std::vector<std::pair<int, int>> row_monomials;
  std::vector<MovingForm<K>> columns;

  int rows() const { return static_cast<int>(row_monomials.size()); }
  int cols() const { return static_cast<int>(columns.size()); }
  bool square() const { return rows() == cols(); }

  const XForm<K>& entry(int i, int j) const { return columns[j].entries[i]; }

  int column_degree(int j) const { return columns[j].xdeg; }

  Matrix<K> evaluated(const std::array<K, 4>& x) const {
    Matrix<K> A(rows(), cols());
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) A(i, j) = entry(i, j).eval(x);
    return A;
  }
};

namespace detail {

// Rows of `whole` whose pivots are not pivots of `part`; `part` must be a
// subspace of `whole`. Both are canonical echelon bases, so the leftover
// rows complete the part basis to a basis of the whole space.
template <class K>
RelationSpace<K> pivot_complement(const RelationSpace<K>& whole,
                                  const RelationSpace<K>& part) {
  for (int r = 0; r < part.dim(); ++r)
    if (!all_zero(echelon_residual(whole, part.flat.row(r))))
      throw internal_error("pivot_complement: expected subspace is not one");
  std::vector<bool> used(whole.width(), false);
  for (int p : part.pivots) used[p] = true;
  RelationSpace<K> S;
  S.mu = whole.mu;
  S.nu = whole.nu;
  S.xdeg = whole.xdeg;
  std::vector<std::vector<K>> rows;
  for (int i = 0; i < whole.dim(); ++i) {
    if (used[whole.pivots[i]]) continue;
    rows.push_back(whole.flat.row(i));
    S.pivots.push_back(whole.pivots[i]);
  }
  S.flat = rows.empty() ? Matrix<K>(0, whole.width())
                        : Matrix<K>::from_rows(rows);
  return S;
}

}  // namespace detail

// Quadric columns that extend the plane columns: the complement of the
// plane-generated quadrics inside either the full quadric space or its
// saturation-stable subspace.
template <class K>
RelationSpace<K> quadric_columns(const SurfaceParam<K>& P, int mu, int nu,
                                 QuadricSource src, int sat_cap = 4) {
  auto Vp = plane_generated_quadrics(P, mu, nu);
  if (src == QuadricSource::Saturated) {
    auto sat = saturated_quadrics(P, mu, nu, sat_cap);
    return detail::pivot_complement(sat.space, Vp);
  }
  auto W = quadratic_relations(P, mu, nu);
  return detail::pivot_complement(W, Vp);
}

template <class K>
MPQMatrix<K> assemble_mpq(const SurfaceParam<K>& P, int mu, int nu,
                          QuadricSource src = QuadricSource::Default,
                          int sat_cap = 4) {
  auto V = moving_planes(P, mu, nu);
  auto Q = quadric_columns(P, mu, nu, src, sat_cap);
  MPQMatrix<K> M;
  M.mu = mu;
  M.nu = nu;
  M.nplanes = V.dim();
  M.nquadrics = Q.dim();
  M.row_monomials = monomial_basis(mu, nu);
  for (int i = 0; i < V.dim(); ++i) M.columns.push_back(V.element(i));
  for (int i = 0; i < Q.dim(); ++i) M.columns.push_back(Q.element(i));
  return M;
}

namespace detail {

// Symbolic determinant by dynamic programming over column subsets, one row
// at a time. The sign step counts used columns above the chosen one.
template <class K>
XForm<K> sym_det(const std::vector<std::vector<XForm<K>>>& grid) {
  const int N = static_cast<int>(grid.size());
  if (N == 0) return XForm<K>::constant(K(1));
  if (N > 20) throw internal_error("symbolic determinant dimension cap exceeded");
  std::unordered_map<uint32_t, XForm<K>> cur;
  cur.emplace(0u, XForm<K>::constant(K(1)));
  for (int r = 0; r < N; ++r) {
    std::unordered_map<uint32_t, XForm<K>> next;
    for (const auto& [mask, val] : cur) {
      for (int c = 0; c < N; ++c) {
        if (mask >> c & 1u) continue;
        const XForm<K>& e = grid[r][c];
        if (e.is_zero()) continue;
        XForm<K> term = e * val;
        if (std::popcount(mask >> (c + 1)) & 1) term = term.scaled(K(-1));
        uint32_t nm = mask | (1u << c);
        auto it = next.find(nm);
        if (it == next.end()) {
          next.emplace(nm, std::move(term));
        } else {
          it->second = it->second + term;
          if (it->second.is_zero()) next.erase(it);
        }
      }
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  if (cur.empty()) return XForm<K>(0);
  return cur.begin()->second;
}

}  // namespace detail

// Raw symbolic determinant of a square plane/quadric matrix; homogeneous of
// degree nplanes + 2*nquadrics.
template <class K>
XForm<K> det_forms(const MPQMatrix<K>& M) {
  if (!M.square())
    throw internal_error("symbolic determinant of a non-square matrix");
  std::vector<std::vector<XForm<K>>> grid(M.rows());
  for (int i = 0; i < M.rows(); ++i) {
    grid[i].reserve(M.cols());
    for (int j = 0; j < M.cols(); ++j) grid[i].push_back(M.entry(i, j));
  }
  return detail::sym_det(grid);
}

// Length-two presentation: d1 is the plane/quadric matrix at (mu, nu) and
// d2 expresses one Koszul cycle per column through the plane columns, with
// x-linear entries and zero rows against the quadric columns.
template <class K>
struct ComplexPresentation {
  MPQMatrix<K> d1;
  KoszulCycleSpace<K> cycles;
  std::vector<std::vector<XForm<K>>> d2;  // (l+q) x rho, entries of degree 1

  int rho() const { return cycles.dim(); }
};

template <class K>
ComplexPresentation<K> build_complex(const SurfaceParam<K>& P, int mu, int nu,
                                     QuadricSource src = QuadricSource::Default) {
  if (nu != P.n - 1)
    throw input_error("the presentation is built at t-degree n-1 = " +
                      std::to_string(P.n - 1) + ", got " + std::to_string(nu));
  int m0 = mu0(P);
  if (mu + 1 < m0)
    throw input_error("s-degree too small: need mu >= " + std::to_string(m0) +
                      " rows of monomials, i.e. coefficient degree >= " +
                      std::to_string(m0 - 1));
  ComplexPresentation<K> C;
  C.d1 = assemble_mpq(P, mu, nu, src);
  C.cycles = koszul_z2(P, mu, nu);
  auto V = moving_planes(P, mu, nu);
  const int l = V.dim();
  const int cols = C.d1.cols();
  const int M = dim_r(mu, nu);
  C.d2.assign(cols, std::vector<XForm<K>>(C.rho(), XForm<K>(1)));
  for (int c = 0; c < C.rho(); ++c) {
    auto a = C.cycles.element(c);
    for (int v = 0; v < 4; ++v) {
      // the v-th contraction of the cycle is itself a moving plane
      std::vector<K> g(static_cast<size_t>(4) * M, K(0));
      for (int w = 0; w < 4; ++w) {
        if (w == v) continue;
        const BiPoly<K>& p = a[koszul_pair_index(std::min(v, w), std::max(v, w))];
        const K sgn = v < w ? K(1) : K(-1);
        for (const auto& [e, cf] : p.coef)
          g[static_cast<size_t>(w) * M + e.first * (nu + 1) + e.second] =
              g[static_cast<size_t>(w) * M + e.first * (nu + 1) + e.second] +
              sgn * cf;
      }
      auto res = detail::echelon_residual(V, g);
      if (!detail::all_zero(res))
        throw internal_error("cycle contraction is not a moving plane");
      for (int i = 0; i < l; ++i) {
        const K& lambda = g[V.pivots[i]];
        if (!kis_zero(lambda))
          C.d2[i][c] = C.d2[i][c] + XForm<K>::variable(v).scaled(lambda);
      }
    }
  }
  // composite must vanish: every row monomial, every cycle
  for (int c = 0; c < C.rho(); ++c) {
    for (int k = 0; k < C.d1.rows(); ++k) {
      XForm<K> acc(2);
      for (int j = 0; j < cols; ++j) {
        if (C.d2[j][c].is_zero() || C.d1.entry(k, j).is_zero()) continue;
        acc = acc + C.d1.entry(k, j) * C.d2[j][c];
      }
      if (!acc.is_zero())
        throw internal_error("presentation maps do not compose to zero");
    }
  }
  return C;
}

template <class K>
struct ComplexDet {
  XForm<K> value;            // normalized so the leading coefficient is 1
  std::vector<int> subset;   // column indices factored through d2
};

namespace detail {

inline bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

template <class K>
Matrix<K> eval_d1_minor(const MPQMatrix<K>& d1,
                        const std::vector<bool>& drop,
                        const std::array<K, 4>& x) {
  Matrix<K> A(d1.rows(), d1.rows());
  int jj = 0;
  for (int j = 0; j < d1.cols(); ++j) {
    if (drop[j]) continue;
    for (int i = 0; i < d1.rows(); ++i) A(i, jj) = d1.entry(i, j).eval(x);
    ++jj;
  }
  return A;
}

template <class K>
std::vector<std::vector<XForm<K>>> d2_rows(const ComplexPresentation<K>& C,
                                           const std::vector<int>& subset) {
  std::vector<std::vector<XForm<K>>> g;
  for (int i : subset) g.push_back(C.d2[i]);
  return g;
}

template <class K>
std::vector<std::vector<XForm<K>>> d1_without(const ComplexPresentation<K>& C,
                                              const std::vector<bool>& drop) {
  std::vector<std::vector<XForm<K>>> g(C.d1.rows());
  for (int i = 0; i < C.d1.rows(); ++i)
    for (int j = 0; j < C.d1.cols(); ++j)
      if (!drop[j]) g[i].push_back(C.d1.entry(i, j));
  return g;
}

}  // namespace detail

// Determinant of the presentation: pick rho columns that remain invertible
// inside d2, drop them from d1, and divide the two symbolic determinants.
// skip_admissible > 0 requests a later admissible subset (cross-checks).
template <class K>
ComplexDet<K> complex_determinant(const ComplexPresentation<K>& C,
                                  uint64_t seed = 0,
                                  int skip_admissible = 0) {
  const int rows = C.d1.rows();
  const int cols = C.d1.cols();
  const int rho = C.rho();
  if (cols != rows + rho)
    throw internal_error("presentation shape mismatch: cols != rows + rho");
  std::mt19937_64 gen(seed ^ 0xd1b54a32d192ed03ull);
  std::array<K, 4> x;
  for (auto& v : x) v = krand_eval<K>(gen);

  auto attempt = [&](const std::vector<int>& subset, bool pretest,
                     int& admissible_seen) -> std::optional<ComplexDet<K>> {
    std::vector<bool> drop(cols, false);
    for (int i : subset) drop[i] = true;
    if (pretest) {
      Matrix<K> top = detail::eval_d1_minor(C.d1, drop, x);
      if (kis_zero(det(top))) return std::nullopt;
      if (rho > 0) {
        Matrix<K> bot(rho, rho);
        for (int i = 0; i < rho; ++i)
          for (int j = 0; j < rho; ++j) bot(i, j) = C.d2[subset[i]][j].eval(x);
        if (kis_zero(det(bot))) return std::nullopt;
      }
    }
    XForm<K> denom = detail::sym_det(detail::d2_rows(C, subset));
    if (denom.is_zero()) return std::nullopt;
    XForm<K> numer = detail::sym_det(detail::d1_without(C, drop));
    if (numer.is_zero()) return std::nullopt;
    if (admissible_seen++ < skip_admissible) return std::nullopt;
    auto q = divide_exact(numer, denom);
    if (!q)
      throw internal_error("presentation determinant division is inexact");
    ComplexDet<K> out;
    out.value = q->normalized();
    out.subset = subset;
    return out;
  };

  for (int pass = 0; pass < 2; ++pass) {
    int admissible_seen = 0;
    std::vector<int> subset(rho);
    for (int i = 0; i < rho; ++i) subset[i] = i;
    bool more = rho >= 0;
    while (more) {
      auto got = attempt(subset, pass == 0, admissible_seen);
      if (got) return *got;
      if (rho == 0) break;
      more = detail::next_combination(subset, cols);
    }
  }
  throw verification_error("no admissible column subset found");
}

}  // namespace tps
