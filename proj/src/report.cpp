#include "tps/thresholds.hpp"

namespace tps {

nlohmann::ordered_json threshold_json(const CombThreshold& T) {
  nlohmann::ordered_json j;
  j["value"] = T.value;
  j["trials"] = T.trials;
  j["agreed"] = T.agreed;
  j["draws"] = T.draws;
  return j;
}

nlohmann::ordered_json report_json(const AnalysisReport& R) {
  nlohmann::ordered_json j;
  j["m"] = R.m;
  j["n"] = R.n;
  j["r"] = R.r;
  j["implied_product"] = R.implied_product;
  j["generator_degrees_s"] = R.degrees_s;
  j["generator_degrees_t"] = R.degrees_t;
  j["mu0"] = R.mu0;
  j["nu0"] = R.nu0;
  j["eta0"] = threshold_json(R.eta0);
  j["zeta0"] = threshold_json(R.zeta0);
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (const auto& row : R.lq_table) {
    nlohmann::ordered_json e;
    e["mu"] = row.mu;
    e["planes"] = row.l;
    e["quadrics"] = row.q;
    table.push_back(e);
  }
  j["lq_table"] = table;
  j["window"] = R.window;
  j["window_transposed"] = R.window_t;
  j["warnings"] = R.warnings;
  j["violations"] = R.violations;
  return j;
}

}  // namespace tps
