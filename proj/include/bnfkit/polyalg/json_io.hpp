#pragma once

#include <json.hpp>

#include "bnfkit/polyalg/action_polynomial.hpp"
#include "bnfkit/polyalg/graded_polynomial.hpp"

namespace bnfkit {

/// [{"l": [l_1..l_n], "c": p_l}, ...] in graded-lex order.
nlohmann::json action_polynomial_to_json(const ActionPolynomial& p);
ActionPolynomial action_polynomial_from_json(int n, const nlohmann::json& j);

/// [{"a": [...], "b": [...], "re": .., "im": ..}, ...] in graded-lex order.
nlohmann::json graded_polynomial_to_json(const GradedPolynomial& p);

}  // namespace bnfkit
