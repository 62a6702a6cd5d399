#include "bnfkit/bnf/report.hpp"

#include <cmath>

#include "bnfkit/polyalg/json_io.hpp"

namespace bnfkit {

nlohmann::json normal_form_to_json(const NormalFormResult& r, bool include_generators) {
  nlohmann::json j;
  j["schema"] = kNormalFormSchema;
  j["omega"] = r.omega;
  j["m"] = r.order_m;
  j["trunc"] = r.trunc;
  nlohmann::json inv = nlohmann::json::array();
  for (std::size_t k = 0; k < r.invariants.size(); ++k)
    inv.push_back({{"k", k + 1}, {"terms", action_polynomial_to_json(r.invariants[k])}});
  j["invariants"] = inv;
  nlohmann::json log = nlohmann::json::array();
  for (const auto& d : r.divisor_log) {
    nlohmann::json row{{"degree", d.degree}};
    if (std::isfinite(d.min_divisor)) {
      row["min_divisor"] = d.min_divisor;
      row["k"] = d.k;
    } else {
      row["min_divisor"] = nullptr;
    }
    log.push_back(row);
  }
  j["divisor_log"] = log;
  j["remainder_terms"] = r.remainder.size();
  j["remainder_min_degree"] = r.remainder.min_degree();
  if (include_generators) {
    nlohmann::json gens = nlohmann::json::array();
    for (std::size_t i = 0; i < r.generators.size(); ++i)
      gens.push_back({{"degree", i + 3}, {"terms", graded_polynomial_to_json(r.generators[i])}});
    j["generators"] = gens;
  }
  return j;
}

}  // namespace bnfkit
