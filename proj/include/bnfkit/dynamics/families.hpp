#pragma once

#include <map>
#include <string>
#include <vector>

#include "bnfkit/polyalg/graded_polynomial.hpp"

namespace bnfkit {

using FamilyParams = std::map<std::string, double>;

/// Named reproducible Hamiltonians (all real, elliptic at the origin):
///   harmonic          Σ w_j I_j, n in 1..4
///   quartic-1dof      I + c·x⁴
///   resonant-coupled  I1 + I2 + kappa·x1·y2 + c·x1³          (1:1 resonance)
///   convex-benchmark  w1·I1 + w2·I2 + beta·(I1² + I2²) + c·(x1³ + x1·x2²)
///   resonant-order    S + S² + eps·S^m·(x1·x2 + y1·y2), S = I1 + I2
/// The last one is an integrable normal form truncated at order 2 whose only
/// non-integrable term sits at degree 2m + 2; it exchanges action between
/// the two modes on a time scale ~ 1/(eps·ρ^m).
std::vector<std::string> builtin_family_names();

/// Parameter names with defaults; DomainError for unknown families.
FamilyParams family_defaults(const std::string& name);

/// Unknown parameter names are a DomainError.
GradedPolynomial builtin_family(const std::string& name, const FamilyParams& params = {});

}  // namespace bnfkit
