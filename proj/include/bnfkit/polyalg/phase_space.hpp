#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bnfkit/polyalg/action_polynomial.hpp"
#include "bnfkit/polyalg/graded_polynomial.hpp"

namespace bnfkit {

/// Normal frequency ω ∈ ℝⁿ (radians per unit time).
class Frequency {
 public:
  Frequency() = default;
  explicit Frequency(std::vector<double> omega);

  int dof() const { return static_cast<int>(omega_.size()); }
  const std::vector<double>& values() const { return omega_; }
  double operator[](int j) const { return omega_[static_cast<std::size_t>(j)]; }
  double max_abs() const;
  bool is_zero() const;

  friend bool operator==(const Frequency&, const Frequency&) = default;

 private:
  std::vector<double> omega_;
};

/// I_j = (x_j² + y_j²)/2 for z = (x_1..x_n, y_1..y_n).
std::vector<double> formal_actions(std::span<const double> z);

/// Polynomial in the real coordinates x^α y^β (slots 0..n-1 hold α, n..2n-1
/// hold β). Coefficients stay complex so non-real inputs convert faithfully.
struct RealForm {
  int n = 1;
  std::vector<std::pair<Exponent, Complex<double>>> terms;
};

RealForm to_real_form(const GradedPolynomial& p);
GradedPolynomial from_real_form(const RealForm& r);

/// Majorant Σ |c_{αβ}| s^{|α|+|β|} over the real-coordinate coefficients; an
/// upper bound for sup |P| on the closed complex ball of radius s, attained by
/// monomials. Throws DomainError for s <= 0.
double sup_norm_bound(const GradedPolynomial& p, double s);

/// P∘T for a linear map z = T z' of ℝ^{2n}.
GradedPolynomial compose_linear(const GradedPolynomial& p, const Eigen::MatrixXd& t);

/// Real symmetric Hessian S of a quadratic form H2 = ½ zᵀ S z.
Eigen::MatrixXd quadratic_hessian(const GradedPolynomial& h2);

/// Standard symplectic matrix J = [[0, I], [-I, 0]] on ℝ^{2n}.
Eigen::MatrixXd symplectic_form(int n);

struct QuadraticDiagonalization {
  Frequency omega;
  /// Linear symplectic map with H2∘T = ω·I.
  Eigen::MatrixXd transform;
};

/// Symplectic diagonalization of an elliptic quadratic Hamiltonian with
/// distinct frequency magnitudes. Mode j is matched to the degree of freedom
/// carrying most of its eigenvector, so an already diagonal H2 maps to the
/// identity. Throws NotEllipticError / DegeneracyError / ShapeError.
QuadraticDiagonalization diagonalize_quadratic(const GradedPolynomial& h2);

/// Frequency of a Hamiltonian whose quadratic part is already ω·I; throws
/// PreconditionError otherwise.
Frequency diagonal_frequency(const GradedPolynomial& h);

}  // namespace bnfkit
