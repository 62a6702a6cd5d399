#pragma once

#include <vector>

#include "bnfkit/bnf/normal_form.hpp"

namespace bnfkit {

/// Φ_m(z) = φ_{χ_3} ∘ … ∘ φ_{χ_2m}(z), each φ_χ the time-one flow of χ
/// integrated with `steps` fourth-order symplectic steps. H∘Φ_m agrees with
/// nf.transformed up to the truncation order.
std::vector<double> apply_normalizing_map(const NormalFormResult& nf, std::vector<double> z, int steps = 32);

}  // namespace bnfkit
