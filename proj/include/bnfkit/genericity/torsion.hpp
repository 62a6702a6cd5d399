#pragma once

#include <string>
#include <vector>

#include "bnfkit/polyalg/action_polynomial.hpp"

namespace bnfkit {

enum class TorsionKind { Definite, Indefinite, Degenerate };

std::string to_string(TorsionKind k);

struct TorsionReport {
  TorsionKind kind = TorsionKind::Degenerate;
  /// Eigenvalues (ascending) of the Hessian 2M of B2, M_ii = c_ii, M_ij = c_ij/2.
  std::vector<double> eigenvalues;
  double margin = 0.0;  // min |eigenvalue|
};

/// Classifies the quadratic torsion B2 (ShapeError unless homogeneous of
/// degree 2). Degenerate when margin <= tol * max(1, max |eigenvalue|).
TorsionReport torsion_class(const ActionPolynomial& b2, double tol = 1e-10);

}  // namespace bnfkit
