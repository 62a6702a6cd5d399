#pragma once

#include "bnfkit/bnf/normal_form.hpp"

namespace bnfkit {

struct RescaleContext {
  double s_m = 0.0;
  double r_m = 1.0;
  int m = 1;
  /// Coefficient-space dimension Σ_{k≤m} C(k+n-1, n-1).
  int d_m = 0;
};

RescaleContext make_rescale_context(int n, int m, double s_m, double r_m, double domain_radius);

struct RescaledHamiltonian {
  /// k_m(I') = s_m^{-2} h_m(s_m² I'): degree-k coefficient times s_m^{2k-2}.
  ActionPolynomial integrable;
  /// s_m^{-2} f_m(s_m z'): degree-d term times s_m^{d-2}.
  GradedPolynomial remainder;
  /// K_m = k_m(I(z')) + rescaled remainder.
  GradedPolynomial hamiltonian;
};

/// K_m(z') = s_m^{-2} (H∘Φ_m)(s_m z'). The normal form carries everything
/// needed (H∘Φ_m = h_m + f_m), so the original H is not an input. Throws
/// DomainError unless 0 < s_m <= domain_radius.
RescaledHamiltonian rescale(const NormalFormResult& nf, double s_m, double domain_radius);

/// m = max(1, ceil(c |log r|^a)) for 0 < r < 1 (DomainError otherwise).
int order_schedule(double r, double c = 1.0, double a = 1.0);

}  // namespace bnfkit
