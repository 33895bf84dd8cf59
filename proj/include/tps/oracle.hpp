#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tps/bipoly.hpp"
#include "tps/exactla.hpp"
#include "tps/surface.hpp"

namespace tps {

inline int forms_of_degree(int d) { return (d + 1) * (d + 2) * (d + 3) / 6; }

// Degree-d exponent tuples in the canonical (descending lexicographic) order.
inline std::vector<std::array<int, 4>> degree_monomials(int d) {
  std::vector<std::array<int, 4>> out;
  out.reserve(forms_of_degree(d));
  for (int e0 = d; e0 >= 0; --e0)
    for (int e1 = d - e0; e1 >= 0; --e1)
      for (int e2 = d - e0 - e1; e2 >= 0; --e2)
        out.push_back({e0, e1, e2, d - e0 - e1 - e2});
  return out;
}

namespace detail {

template <class K>
K sample_coordinate(std::mt19937_64& gen);

template <>
inline Rat sample_coordinate<Rat>(std::mt19937_64& gen) {
  return Rat(rand_range(gen, -14, 14));
}

template <>
inline Fp sample_coordinate<Fp>(std::mt19937_64& gen) {
  return Fp::from_raw(
      static_cast<uint64_t>(rand_range(gen, 0, static_cast<long long>(Fp::modulus() - 1))));
}

}  // namespace detail

// Points of the image surface drawn from the affine chart s0 = t0 = 1.
// Draws are rejected when all four coordinates vanish (a base point).
template <class K>
std::vector<std::array<K, 4>> sample_surface(const SurfaceParam<K>& P,
                                             int count, uint64_t seed) {
  std::mt19937_64 gen(seed ^ 0xa0761d6478bd642full);
  std::vector<std::array<K, 4>> out;
  out.reserve(count);
  long long budget = 100LL * count;
  while (static_cast<int>(out.size()) < count) {
    if (budget-- <= 0)
      throw input_error(
          "failed to sample enough surface points; too many draws hit the "
          "base locus");
    K s1 = detail::sample_coordinate<K>(gen);
    K t1 = detail::sample_coordinate<K>(gen);
    std::array<K, 4> x;
    bool all_zero = true;
    for (int i = 0; i < 4; ++i) {
      x[i] = P.f[i].eval(K(1), s1, K(1), t1);
      if (!kis_zero(x[i])) all_zero = false;
    }
    if (!all_zero) out.push_back(x);
  }
  return out;
}

template <class K>
struct InterpolationResult {
  std::optional<XForm<K>> form;  // present exactly when the kernel is a line
  int kernel_dim = 0;
};

// Homogeneous degree-d forms vanishing on the samples, found by exact
// kernel computation of the evaluation matrix.
template <class K>
InterpolationResult<K> interpolate_implicit(
    const std::vector<std::array<K, 4>>& samples, int d) {
  const auto monos = degree_monomials(d);
  const int nd = static_cast<int>(monos.size());
  if (static_cast<int>(samples.size()) < 2 * nd)
    throw internal_error("interpolation needs at least twice as many samples "
                         "as monomials");
  Matrix<K> A(2 * nd, nd);
  for (int i = 0; i < 2 * nd; ++i) {
    std::array<std::vector<K>, 4> pw;
    for (int v = 0; v < 4; ++v) {
      pw[v].assign(d + 1, K(1));
      for (int e = 1; e <= d; ++e) pw[v][e] = pw[v][e - 1] * samples[i][v];
    }
    for (int j = 0; j < nd; ++j)
      A(i, j) = pw[0][monos[j][0]] * pw[1][monos[j][1]] * pw[2][monos[j][2]] *
                pw[3][monos[j][3]];
  }
  auto ker = kernel_basis(A);
  InterpolationResult<K> res;
  res.kernel_dim = static_cast<int>(ker.size());
  if (res.kernel_dim == 1) {
    XForm<K> F(d);
    for (int j = 0; j < nd; ++j) F.add_term(monos[j], ker[0][j]);
    res.form = F.normalized();
  }
  return res;
}

template <class K>
struct ImplicitResult {
  XForm<K> form;                    // normalized implicit equation
  int degree = 0;
  std::optional<int> map_degree;    // (2mn - r) / degree, when divisible
  int samples_used = 0;
};

// Smallest-degree form vanishing on the image, confirmed on fresh samples.
template <class K>
ImplicitResult<K> implicit_equation(const SurfaceParam<K>& P, uint64_t seed = 0,
                                    std::optional<int> r = std::nullopt) {
  const int dmax = 2 * P.m * P.n;
  for (int d = 1; d <= dmax; ++d) {
    const int need = 2 * forms_of_degree(d);
    auto samples = sample_surface(P, need, seed + 0x100000001ull * d);
    auto interp = interpolate_implicit(samples, d);
    if (interp.kernel_dim != 1) continue;
    auto fresh = sample_surface(P, 100, seed + 0x100000001ull * d + 1);
    bool ok = true;
    for (const auto& x : fresh)
      if (!kis_zero(interp.form->eval(x))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    ImplicitResult<K> res;
    res.form = *interp.form;
    res.degree = d;
    res.samples_used = need;
    if (r) {
      int product = 2 * P.m * P.n - *r;
      if (product > 0 && product % d == 0) res.map_degree = product / d;
    }
    return res;
  }
  throw input_error(
      "no implicit equation found up to degree 2mn; the image may be "
      "degenerate");
}

// The constant c with a = c*b, when it exists. Two zero forms give 1.
template <class K>
std::optional<K> proportional(const XForm<K>& a, const XForm<K>& b) {
  if (a.is_zero() && b.is_zero()) return K(1);
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  if (a.deg != b.deg || a.coef.size() != b.coef.size()) return std::nullopt;
  auto ia = a.coef.begin();
  auto ib = b.coef.begin();
  K c = ia->second * kinv(ib->second);
  for (; ia != a.coef.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return std::nullopt;
    if (!kis_zero(ia->second - c * ib->second)) return std::nullopt;
  }
  return c;
}

template <class K>
bool power_check(const XForm<K>& a, const XForm<K>& f, int k) {
  return proportional(a, f.pow(k)).has_value();
}

}  // namespace tps
