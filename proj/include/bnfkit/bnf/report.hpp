#pragma once

#include <json.hpp>

#include "bnfkit/bnf/normal_form.hpp"

namespace bnfkit {

inline constexpr const char* kNormalFormSchema = "bnfkit.normal_form/1";

/// ω, m, trunc, per-k invariant tables, divisor log and remainder size.
/// Generators are included only on request (they can be large).
nlohmann::json normal_form_to_json(const NormalFormResult& r, bool include_generators = false);

}  // namespace bnfkit
