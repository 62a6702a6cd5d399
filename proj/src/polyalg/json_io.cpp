#include "bnfkit/polyalg/json_io.hpp"

namespace bnfkit {

nlohmann::json action_polynomial_to_json(const ActionPolynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [l, c] : p.terms()) arr.push_back({{"l", l.slots(p.dof())}, {"c", c}});
  return arr;
}

ActionPolynomial action_polynomial_from_json(int n, const nlohmann::json& j) {
  if (!j.is_array()) throw ShapeError("action polynomial JSON must be an array");
  std::vector<ActionPolynomial::Term> t;
  for (const auto& item : j) {
    const auto l = item.at("l").get<std::vector<int>>();
    if (static_cast<int>(l.size()) != n) throw DimensionError("action exponent has wrong length");
    t.emplace_back(Exponent::from(l), item.at("c").get<double>());
  }
  return ActionPolynomial(n, std::move(t));
}

nlohmann::json graded_polynomial_to_json(const GradedPolynomial& p) {
  const int n = p.dof();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    const auto s = e.slots(2 * n);
    arr.push_back({{"a", std::vector<int>(s.begin(), s.begin() + n)},
                   {"b", std::vector<int>(s.begin() + n, s.end())},
                   {"re", c.re},
                   {"im", c.im}});
  }
  return arr;
}

}  // namespace bnfkit
