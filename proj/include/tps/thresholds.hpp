#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tps/surface.hpp"
#include "tps/syzygy.hpp"

namespace tps {

// Degrees of a minimal generating set of the relation module at t-degree
// n-1, read off the second differences of its s-graded dimension counts.
// Rejects inputs whose dimension growth is not that of a free module with
// expected_count generators.
template <class K>
std::vector<int> generator_degrees(const std::vector<BiPoly<K>>& polys,
                                   int m, int n, int expected_count) {
  std::vector<int> kdim;  // kernel dimension at s-degree d
  std::vector<int> degrees;
  const int dcap = 2 * m * n + 2;
  int matched = 0;
  for (int d = 0;; ++d) {
    auto A = mult_map(polys, d, n - 1);
    kdim.push_back(A.cols() - rank_of(A));
    int k1 = d >= 1 ? kdim[d - 1] : 0;
    int k2 = d >= 2 ? kdim[d - 2] : 0;
    int g = kdim[d] - 2 * k1 + k2;
    if (g < 0)
      throw input_error(
          "relation module is not free at s-degree " + std::to_string(d) +
          "; the parametrization is degenerate");
    for (int i = 0; i < g; ++i) degrees.push_back(d);
    if (static_cast<int>(degrees.size()) > expected_count)
      throw input_error(
          "relation module has more than " + std::to_string(expected_count) +
          " generators; check the parametrization for a common factor");
    if (static_cast<int>(degrees.size()) == expected_count && g == 0) {
      if (++matched == 2) break;
    } else {
      matched = 0;
    }
    if (d >= dcap)
      throw input_error("generator degrees did not stabilize by s-degree " +
                        std::to_string(dcap));
  }
  return degrees;
}

// Dimension excess of the relation module, taken from three consecutive
// s-degrees past the last possible generator; disagreement means the
// dimension count never becomes linear and the input is rejected.
template <class K>
int base_degree_r(const SurfaceParam<K>& P) {
  std::vector<BiPoly<K>> polys(P.f.begin(), P.f.end());
  int vals[3];
  for (int t = 0; t < 3; ++t) {
    int d = 2 * P.m - 1 + t;
    auto A = mult_map(polys, d, P.n - 1);
    int kd = A.cols() - rank_of(A);
    vals[t] = kd - 2 * P.n * (d + 1 - P.m);
  }
  if (vals[0] != vals[1] || vals[1] != vals[2])
    throw input_error(
        "relation space dimensions do not stabilize; the parametrization "
        "may have a common factor");
  return vals[0];
}

template <class K>
int mu0(const SurfaceParam<K>& P) {
  std::vector<BiPoly<K>> polys(P.f.begin(), P.f.end());
  return generator_degrees(polys, P.m, P.n, 2 * P.n).back();
}

template <class K>
int nu0(const SurfaceParam<K>& P) {
  return mu0(transpose_params(P));
}

// Threshold obtained from random 3-element combinations of the components.
struct CombThreshold {
  int value = 0;
  int trials = 0;
  bool agreed = true;
  std::vector<int> draws;  // per-trial smallest generator degree
};

template <class K>
CombThreshold eta0(const SurfaceParam<K>& P, int trials = 3,
                   uint64_t seed = 0) {
  if (trials < 1) throw input_error("eta0 needs at least one trial");
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
  CombThreshold out;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::vector<BiPoly<K>> combos;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 10)
        throw internal_error("failed to draw independent combinations");
      std::vector<std::vector<K>> coef(3, std::vector<K>(4));
      combos.clear();
      for (int i = 0; i < 3; ++i) {
        BiPoly<K> h(P.m, P.n);
        for (int b = 0; b < 4; ++b) {
          coef[i][b] = krand_eval<K>(gen);
          h = h + P.f[b].scaled(coef[i][b]);
        }
        combos.push_back(h);
      }
      if (rank_of(Matrix<K>::from_rows(coef)) == 3) break;
    }
    auto degs = generator_degrees(combos, P.m, P.n, P.n);
    out.draws.push_back(degs.front());
  }
  out.value = *std::max_element(out.draws.begin(), out.draws.end());
  for (int d : out.draws)
    if (d != out.value) out.agreed = false;
  return out;
}

template <class K>
CombThreshold zeta0(const SurfaceParam<K>& P, int trials = 3,
                    uint64_t seed = 0) {
  return eta0(transpose_params(P), trials, seed);
}

struct LqRow {
  int mu = 0;
  int l = 0;  // planes available at (mu-1, n-1)
  int q = 0;  // quadrics needed to fill a square matrix of mu*n rows
};

struct AnalysisReport {
  int m = 0, n = 0;
  int r = 0;
  int implied_product = 0;  // 2mn - r
  std::vector<int> degrees_s, degrees_t;
  int mu0 = 0, nu0 = 0;
  CombThreshold eta0, zeta0;
  std::vector<LqRow> lq_table;     // mu from mu0 to 2m
  std::vector<int> window;         // mu0..eta0
  std::vector<int> window_t;       // nu0..zeta0
  std::vector<std::string> warnings;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

nlohmann::ordered_json report_json(const AnalysisReport& R);
nlohmann::ordered_json threshold_json(const CombThreshold& T);

template <class K>
AnalysisReport analyze(const SurfaceParam<K>& P, int trials = 3,
                       uint64_t seed = 0) {
  AnalysisReport R;
  R.m = P.m;
  R.n = P.n;
  const int m = P.m, n = P.n;
  std::vector<BiPoly<K>> polys(P.f.begin(), P.f.end());
  auto Pt = transpose_params(P);
  std::vector<BiPoly<K>> polyt(Pt.f.begin(), Pt.f.end());

  R.r = base_degree_r(P);
  R.implied_product = 2 * m * n - R.r;
  int rt = base_degree_r(Pt);
  if (rt != R.r)
    R.violations.push_back("dimension excess differs between the two "
                           "parameter directions: " +
                           std::to_string(R.r) + " vs " + std::to_string(rt));

  R.degrees_s = generator_degrees(polys, m, n, 2 * n);
  R.degrees_t = generator_degrees(polyt, n, m, 2 * m);
  R.mu0 = R.degrees_s.back();
  R.nu0 = R.degrees_t.back();
  R.eta0 = eta0<K>(P, trials, seed);
  R.zeta0 = zeta0<K>(P, trials, seed);

  auto check_sum = [&](const std::vector<int>& degs, const char* which) {
    int s = 0;
    for (int d : degs) s += d;
    if (s != R.implied_product)
      R.violations.push_back(std::string("generator degrees in ") + which +
                             " sum to " + std::to_string(s) + ", expected " +
                             std::to_string(R.implied_product));
  };
  check_sum(R.degrees_s, "s");
  check_sum(R.degrees_t, "t");

  // All bound checks are exact integer comparisons (cleared denominators).
  auto viol = [&](const std::string& msg) { R.violations.push_back(msg); };
  if (2 * n * R.mu0 < 2 * n * m - R.r) viol("mu0 below its lower bound");
  if (R.mu0 > std::min(2 * m, 2 * m * n - R.r)) viol("mu0 above its upper bound");
  if (2 * m * R.nu0 < 2 * m * n - R.r) viol("nu0 below its lower bound");
  if (R.nu0 > std::min(2 * n, 2 * m * n - R.r)) viol("nu0 above its upper bound");
  if (R.eta0.value < 2 * m - R.r) viol("eta0 below its lower bound");
  if (n * R.eta0.value > 2 * m * n - R.r) viol("eta0 above its upper bound");
  if (R.zeta0.value < 2 * n - R.r) viol("zeta0 below its lower bound");
  if (m * R.zeta0.value > 2 * m * n - R.r) viol("zeta0 above its upper bound");

  for (int mu = R.mu0; mu <= 2 * m; ++mu) {
    LqRow row;
    row.mu = mu;
    row.l = 2 * n * (mu - m) + R.r;
    row.q = n * mu - row.l;
    R.lq_table.push_back(row);
  }
  for (int mu = R.mu0; mu <= R.eta0.value; ++mu) R.window.push_back(mu);
  for (int nu = R.nu0; nu <= R.zeta0.value; ++nu) R.window_t.push_back(nu);

  if (R.r == 2 * m * n)
    R.warnings.push_back(
        "dimension excess equals 2mn; the image may not be a surface");
  if (!R.eta0.agreed)
    R.warnings.push_back(
        "eta0 trials disagree; reporting the largest draw");
  if (!R.zeta0.agreed)
    R.warnings.push_back(
        "zeta0 trials disagree; reporting the largest draw");
  return R;
}

}  // namespace tps
