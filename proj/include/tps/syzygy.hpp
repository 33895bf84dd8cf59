#pragma once

#include <array>
#include <utility>
#include <vector>

#include "tps/bipoly.hpp"
#include "tps/exactla.hpp"
#include "tps/surface.hpp"

namespace tps {

// Multiplication map  (R_(mu,nu))^b -> R_(mu+dm, nu+dn),  (g_0..g_{b-1}) ->
// sum g_i * polys[i].  Columns are block-major: column b*M + k multiplies
// polys[b] by basis monomial k of R_(mu,nu).
template <class K>
Matrix<K> mult_map(const std::vector<BiPoly<K>>& polys, int mu, int nu) {
  if (polys.empty()) throw internal_error("mult_map with no polynomials");
  int dm = polys[0].sdeg, dn = polys[0].tdeg;
  for (const auto& p : polys)
    if (p.sdeg != dm || p.tdeg != dn)
      throw internal_error("mult_map polynomials of mixed bidegree");
  const int M = dim_r(mu, nu);
  const int T = dim_r(mu + dm, nu + dn);
  const int tcols = nu + dn + 1;
  Matrix<K> A(T, static_cast<int>(polys.size()) * M);
  for (size_t b = 0; b < polys.size(); ++b) {
    for (int i = 0; i <= mu; ++i) {
      for (int j = 0; j <= nu; ++j) {
        int col = static_cast<int>(b) * M + i * (nu + 1) + j;
        for (const auto& [e, c] : polys[b].coef) {
          int row = (i + e.first) * tcols + (j + e.second);
          A(row, col) = A(row, col) + c;
        }
      }
    }
  }
  return A;
}

template <class K>
Matrix<K> mult_map(const SurfaceParam<K>& P, int mu, int nu) {
  return mult_map(std::vector<BiPoly<K>>(P.f.begin(), P.f.end()), mu, nu);
}

// A subspace of moving forms of fixed bidegree and x-degree, stored as the
// reduced row echelon basis of its flattened coordinate vectors.
template <class K>
struct RelationSpace {
  int mu = 0, nu = 0, xdeg = 1;
  Matrix<K> flat{0, 0};
  std::vector<int> pivots;

  int dim() const { return flat.rows(); }
  int width() const { return flat.cols(); }

  MovingForm<K> element(int i) const {
    return MovingForm<K>::from_flat(mu, nu, xdeg, flat.row(i));
  }

  std::vector<MovingForm<K>> elements() const {
    std::vector<MovingForm<K>> out;
    out.reserve(dim());
    for (int i = 0; i < dim(); ++i) out.push_back(element(i));
    return out;
  }

  // Substitutes the parametrization for the x-variables in every basis
  // element and checks the result vanishes identically.
  bool verify(const SurfaceParam<K>& P) const {
    std::vector<BiPoly<K>> subs;
    if (xdeg == 1) {
      subs.assign(P.f.begin(), P.f.end());
    } else {
      for (auto [i, j] : quad_pairs()) subs.push_back(P.f[i] * P.f[j]);
    }
    const int M = dim_r(mu, nu);
    const int B = static_cast<int>(subs.size());
    for (int r = 0; r < dim(); ++r) {
      BiPoly<K> acc(mu + subs[0].sdeg, nu + subs[0].tdeg);
      for (int b = 0; b < B; ++b) {
        BiPoly<K> g(mu, nu);
        for (int k = 0; k < M; ++k) {
          const K& c = flat(r, b * M + k);
          if (!kis_zero(c)) g.add_term(k / (nu + 1), k % (nu + 1), c);
        }
        if (!g.is_zero()) acc = acc + g * subs[b];
      }
      if (!acc.is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const RelationSpace& a, const RelationSpace& b) {
    return a.mu == b.mu && a.nu == b.nu && a.xdeg == b.xdeg &&
           a.flat == b.flat;
  }
};

namespace detail {

template <class K>
RelationSpace<K> space_from_vectors(int mu, int nu, int xdeg,
                                    const std::vector<std::vector<K>>& vecs,
                                    int width) {
  RelationSpace<K> S;
  S.mu = mu;
  S.nu = nu;
  S.xdeg = xdeg;
  if (vecs.empty()) {
    S.flat = Matrix<K>(0, width);
    return S;
  }
  auto R = rref(Matrix<K>::from_rows(vecs));
  Matrix<K> B(R.rank(), width);
  for (int i = 0; i < R.rank(); ++i)
    for (int j = 0; j < width; ++j) B(i, j) = R.mat(i, j);
  S.flat = std::move(B);
  S.pivots = R.pivots;
  return S;
}

// Reduces v against an echelon basis; the residual is zero exactly when v
// lies in the row space.
template <class K>
std::vector<K> echelon_residual(const RelationSpace<K>& S, std::vector<K> v) {
  if (static_cast<int>(v.size()) != S.width())
    throw internal_error("echelon_residual width mismatch");
  for (int i = 0; i < S.dim(); ++i) {
    const K c = v[S.pivots[i]];
    if (kis_zero(c)) continue;
    for (int j = 0; j < S.width(); ++j) v[j] = v[j] - c * S.flat(i, j);
  }
  return v;
}

template <class K>
bool all_zero(const std::vector<K>& v) {
  for (const auto& c : v)
    if (!kis_zero(c)) return false;
  return true;
}

}  // namespace detail

// Moving planes of bidegree (mu, nu): kernel of the multiplication map by
// the four parametrization components.
template <class K>
RelationSpace<K> moving_planes(const SurfaceParam<K>& P, int mu, int nu) {
  auto ker = kernel_basis(mult_map(P, mu, nu));
  return detail::space_from_vectors(mu, nu, 1, ker, 4 * dim_r(mu, nu));
}

// Moving quadrics of bidegree (mu, nu): kernel of the multiplication map by
// the ten pairwise products f_i f_j, blocks ordered as quad_pairs().
template <class K>
RelationSpace<K> quadratic_relations(const SurfaceParam<K>& P, int mu,
                                     int nu) {
  std::vector<BiPoly<K>> prods;
  prods.reserve(10);
  for (auto [i, j] : quad_pairs()) prods.push_back(P.f[i] * P.f[j]);
  auto ker = kernel_basis(mult_map(prods, mu, nu));
  return detail::space_from_vectors(mu, nu, 2, ker, 10 * dim_r(mu, nu));
}

// Quadrics obtained from moving planes by multiplying with a single
// x-variable: the span of x_v * p over v = 0..3 and plane basis elements p.
template <class K>
RelationSpace<K> plane_generated_quadrics(const SurfaceParam<K>& P, int mu,
                                          int nu) {
  auto V = moving_planes(P, mu, nu);
  const int M = dim_r(mu, nu);
  std::vector<std::vector<K>> vecs;
  vecs.reserve(static_cast<size_t>(4) * V.dim());
  for (int r = 0; r < V.dim(); ++r) {
    for (int v = 0; v < 4; ++v) {
      std::vector<K> q(static_cast<size_t>(10) * M, K(0));
      for (int b = 0; b < 4; ++b) {
        int blk = quad_pair_index(v, b);
        for (int k = 0; k < M; ++k) {
          const K& c = V.flat(r, b * M + k);
          if (!kis_zero(c))
            q[static_cast<size_t>(blk) * M + k] =
                q[static_cast<size_t>(blk) * M + k] + c;
        }
      }
      vecs.push_back(std::move(q));
    }
  }
  return detail::space_from_vectors(mu, nu, 2, vecs, 10 * M);
}

// Echelon rows of the full quadric space whose pivots do not occur among
// the pivots of the plane-generated subspace. Together with that subspace
// they span all quadratic relations.
template <class K>
RelationSpace<K> reduced_quadrics(const SurfaceParam<K>& P, int mu, int nu) {
  auto W = quadratic_relations(P, mu, nu);
  auto Vp = plane_generated_quadrics(P, mu, nu);
  for (int r = 0; r < Vp.dim(); ++r)
    if (!detail::all_zero(detail::echelon_residual(W, Vp.flat.row(r))))
      throw internal_error("plane-generated quadric outside quadric space");
  std::vector<bool> used(W.width(), false);
  for (int p : Vp.pivots) used[p] = true;
  RelationSpace<K> S;
  S.mu = mu;
  S.nu = nu;
  S.xdeg = 2;
  std::vector<std::vector<K>> rows;
  std::vector<int> piv;
  for (int i = 0; i < W.dim(); ++i) {
    if (used[W.pivots[i]]) continue;
    rows.push_back(W.flat.row(i));
    piv.push_back(W.pivots[i]);
  }
  S.flat = rows.empty() ? Matrix<K>(0, W.width())
                        : Matrix<K>::from_rows(rows);
  S.pivots = std::move(piv);
  return S;
}

template <class K>
struct SaturationResult {
  RelationSpace<K> space;
  int exponent = 0;  // shift degree at which the chain was last evaluated
  bool stable = false;  // two consecutive members agreed before the cap
};

namespace detail {

// Members of W whose shifts by every bidegree-(d,d) monomial land in the
// plane-generated quadrics one rung up.
template <class K>
RelationSpace<K> saturation_member(const SurfaceParam<K>& P,
                                   const RelationSpace<K>& W, int d) {
  const int mu = W.mu, nu = W.nu;
  if (d == 0) return plane_generated_quadrics(P, mu, nu);
  auto target = plane_generated_quadrics(P, mu + d, nu + d);
  const int M = dim_r(mu, nu);
  const int Md = dim_r(mu + d, nu + d);
  std::vector<std::vector<K>> constraint_rows;
  for (int ws = 0; ws <= d; ++ws) {
    for (int wt = 0; wt <= d; ++wt) {
      // residual(shift_w(W_a)) for each basis member a, laid out as columns
      std::vector<std::vector<K>> resid(W.dim());
      for (int a = 0; a < W.dim(); ++a) {
        std::vector<K> sh(static_cast<size_t>(10) * Md, K(0));
        for (int b = 0; b < 10; ++b)
          for (int i = 0; i <= mu; ++i)
            for (int j = 0; j <= nu; ++j) {
              const K& c = W.flat(a, b * M + i * (nu + 1) + j);
              if (kis_zero(c)) continue;
              size_t pos = static_cast<size_t>(b) * Md +
                           (i + ws) * (nu + d + 1) + (j + wt);
              sh[pos] = sh[pos] + c;
            }
        resid[a] = echelon_residual(target, std::move(sh));
      }
      for (int pos = 0; pos < 10 * Md; ++pos) {
        std::vector<K> row(W.dim(), K(0));
        bool nz = false;
        for (int a = 0; a < W.dim(); ++a) {
          row[a] = resid[a][pos];
          if (!kis_zero(row[a])) nz = true;
        }
        if (nz) constraint_rows.push_back(std::move(row));
      }
    }
  }
  std::vector<std::vector<K>> coords;
  if (constraint_rows.empty()) {
    for (int a = 0; a < W.dim(); ++a) {
      std::vector<K> e(W.dim(), K(0));
      e[a] = K(1);
      coords.push_back(std::move(e));
    }
  } else {
    coords = kernel_basis(Matrix<K>::from_rows(constraint_rows));
  }
  std::vector<std::vector<K>> vecs;
  for (const auto& c : coords) {
    std::vector<K> v(static_cast<size_t>(10) * M, K(0));
    for (int a = 0; a < W.dim(); ++a) {
      if (kis_zero(c[a])) continue;
      for (int j = 0; j < 10 * M; ++j) v[j] = v[j] + c[a] * W.flat(a, j);
    }
    vecs.push_back(std::move(v));
  }
  return space_from_vectors(mu, nu, 2, vecs, 10 * M);
}

}  // namespace detail

// Ascending chain of quadric subspaces whose monomial shifts eventually fall
// into the plane-generated part. Stops at the first repeat or at the cap.
template <class K>
SaturationResult<K> saturated_quadrics(const SurfaceParam<K>& P, int mu,
                                       int nu, int cap = 4) {
  auto W = quadratic_relations(P, mu, nu);
  SaturationResult<K> out;
  RelationSpace<K> cur = detail::saturation_member(P, W, 0);
  for (int d = 0; d < cap; ++d) {
    RelationSpace<K> next = detail::saturation_member(P, W, d + 1);
    if (next == cur) {
      out.space = cur;
      out.exponent = d;
      out.stable = true;
      return out;
    }
    cur = std::move(next);
  }
  out.space = cur;
  out.exponent = cap;
  out.stable = false;
  return out;
}

inline const std::array<std::pair<int, int>, 6>& koszul_pairs() {
  static const std::array<std::pair<int, int>, 6> p = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  return p;
}

inline int koszul_pair_index(int i, int j) {
  static const int tab[4][4] = {
      {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  if (i == j) throw internal_error("koszul_pair_index on the diagonal");
  return tab[i][j];
}

// Kernel of (R_(mu,nu))^6 -> (R_(mu+m,nu+n))^4 sending the basis vector of
// pair (i,j) to f_i e_j - f_j e_i. Blocks ordered as koszul_pairs().
template <class K>
struct KoszulCycleSpace {
  int mu = 0, nu = 0;
  Matrix<K> flat{0, 0};
  std::vector<int> pivots;

  int dim() const { return flat.rows(); }

  std::array<BiPoly<K>, 6> element(int r) const {
    const int M = dim_r(mu, nu);
    std::array<BiPoly<K>, 6> out;
    for (int p = 0; p < 6; ++p) {
      BiPoly<K> g(mu, nu);
      for (int k = 0; k < M; ++k) {
        const K& c = flat(r, p * M + k);
        if (!kis_zero(c)) g.add_term(k / (nu + 1), k % (nu + 1), c);
      }
      out[p] = std::move(g);
    }
    return out;
  }

  bool verify(const SurfaceParam<K>& P) const {
    for (int r = 0; r < dim(); ++r) {
      auto g = element(r);
      std::array<BiPoly<K>, 4> comp;
      for (auto& c : comp) c = BiPoly<K>(mu + P.m, nu + P.n);
      for (int p = 0; p < 6; ++p) {
        auto [i, j] = koszul_pairs()[p];
        if (g[p].is_zero()) continue;
        comp[j] = comp[j] + g[p] * P.f[i];
        comp[i] = comp[i] - g[p] * P.f[j];
      }
      for (const auto& c : comp)
        if (!c.is_zero()) return false;
    }
    return true;
  }
};

template <class K>
KoszulCycleSpace<K> koszul_z2(const SurfaceParam<K>& P, int mu, int nu) {
  const int M = dim_r(mu, nu);
  const int T = dim_r(mu + P.m, nu + P.n);
  const int tcols = nu + P.n + 1;
  Matrix<K> A(4 * T, 6 * M);
  for (int p = 0; p < 6; ++p) {
    auto [fi, fj] = koszul_pairs()[p];
    for (int i = 0; i <= mu; ++i) {
      for (int j = 0; j <= nu; ++j) {
        int col = p * M + i * (nu + 1) + j;
        for (const auto& [e, c] : P.f[fi].coef) {
          int row = fj * T + (i + e.first) * tcols + (j + e.second);
          A(row, col) = A(row, col) + c;
        }
        for (const auto& [e, c] : P.f[fj].coef) {
          int row = fi * T + (i + e.first) * tcols + (j + e.second);
          A(row, col) = A(row, col) - c;
        }
      }
    }
  }
  auto ker = kernel_basis(A);
  KoszulCycleSpace<K> S;
  S.mu = mu;
  S.nu = nu;
  if (ker.empty()) {
    S.flat = Matrix<K>(0, 6 * M);
    return S;
  }
  auto R = rref(Matrix<K>::from_rows(ker));
  Matrix<K> B(R.rank(), 6 * M);
  for (int i = 0; i < R.rank(); ++i)
    for (int j = 0; j < 6 * M; ++j) B(i, j) = R.mat(i, j);
  S.flat = std::move(B);
  S.pivots = R.pivots;
  return S;
}

}  // namespace tps
