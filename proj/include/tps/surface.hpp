#pragma once

#include <array>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "tps/bipoly.hpp"
#include "tps/exactla.hpp"

namespace tps {

// A tensor-product parametrization: four bihomogeneous polynomials of the
// same bidegree (m, n), linearly independent over the base field.
template <class K>
struct SurfaceParam {
  int m = 1, n = 1;
  std::array<BiPoly<K>, 4> f;
};

template <class K>
SurfaceParam<K> make_surface(int m, int n,
                             const std::array<std::string, 4>& texts) {
  if (m < 1 || n < 1)
    throw input_error("bidegree must be at least (1,1), got (" +
                      std::to_string(m) + "," + std::to_string(n) + ")");
  SurfaceParam<K> P;
  P.m = m;
  P.n = n;
  std::vector<std::vector<K>> rows;
  for (int i = 0; i < 4; ++i) {
    P.f[i] = parse_bipoly<K>(texts[i], m, n);
    if (P.f[i].is_zero())
      throw input_error("parametrization component " + std::to_string(i) +
                        " is zero");
    rows.push_back(coefficient_vector(P.f[i]));
  }
  if (rank_of(Matrix<K>::from_rows(rows)) != 4)
    throw input_error("parametrization components are linearly dependent");
  return P;
}

template <class K>
SurfaceParam<K> surface_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") ||
      !j.contains("f"))
    throw input_error("surface JSON must contain \"m\", \"n\" and \"f\"");
  if (!j["m"].is_number_integer() || !j["n"].is_number_integer())
    throw input_error("surface JSON: \"m\" and \"n\" must be integers");
  if (!j["f"].is_array() || j["f"].size() != 4)
    throw input_error("surface JSON: \"f\" must be an array of 4 strings");
  std::array<std::string, 4> texts;
  for (int i = 0; i < 4; ++i) {
    if (!j["f"][i].is_string())
      throw input_error("surface JSON: \"f\" must be an array of 4 strings");
    texts[i] = j["f"][i].get<std::string>();
  }
  return make_surface<K>(j["m"].get<int>(), j["n"].get<int>(), texts);
}

template <class K>
SurfaceParam<K> load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open surface file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw input_error("invalid JSON in " + path + ": " + e.what());
  }
  return surface_from_json<K>(j);
}

// Swaps the roles of the two parameter lines.
template <class K>
SurfaceParam<K> transpose_params(const SurfaceParam<K>& P) {
  SurfaceParam<K> Q;
  Q.m = P.n;
  Q.n = P.m;
  for (int i = 0; i < 4; ++i) Q.f[i] = P.f[i].transposed();
  return Q;
}

}  // namespace tps
