#pragma once

#include <array>
#include <span>
#include <vector>

#include "bnfkit/polyalg/graded_polynomial.hpp"

namespace bnfkit {

/// A real-valued phase-space polynomial compiled to x^α y^β form for fast
/// repeated evaluation of the value and gradient (the imaginary part, which is
/// zero up to rounding for real Hamiltonians, is dropped).
class RealEvaluator {
 public:
  RealEvaluator() = default;
  explicit RealEvaluator(const GradedPolynomial& h);

  int dof() const { return n_; }
  double value(std::span<const double> z) const;
  /// grad[k] = ∂H/∂z_k, z = (x, y).
  void gradient(std::span<const double> z, std::span<double> grad) const;
  /// Hamiltonian vector field J∇H: (∂H/∂y, -∂H/∂x).
  void vector_field(std::span<const double> z, std::span<double> out) const;

 private:
  struct Term {
    double c;
    std::array<std::uint8_t, kMaxSlots> e;
  };
  void fill_powers(std::span<const double> z) const;
  double sum(const std::vector<Term>& terms) const;

  int n_ = 1;
  int max_power_ = 0;
  std::vector<Term> value_;
  std::vector<std::vector<Term>> grad_;
  mutable std::vector<double> powers_;
};

}  // namespace bnfkit
