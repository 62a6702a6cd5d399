#pragma once

#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "bnfkit/bnf/normal_form.hpp"

namespace bnfkit {

template <class R>
using ActionList = std::vector<BasicActionPolynomial<R>>;

/// Q = BNF_m(P): Q_k is the order-k Birkhoff invariant of base_H + Σ_j P_j(I).
/// P must hold m entries with P_j homogeneous of degree j (ShapeError).
template <class R>
ActionList<R> bnf_map(const BasicGradedPolynomial<R>& base_h, int m, const ActionList<R>& p);

/// D(m) = Σ_{k=1..m} C(k+n-1, n-1).
int coefficient_dimension(int n, int m);

/// Graded coefficient vector (degree 1 first, graded-lex within a degree).
template <class R>
std::vector<R> flatten(const ActionList<R>& p, int n);
template <class R>
ActionList<R> unflatten(const std::vector<R>& v, int n, int m);

struct JacobianReport {
  int n = 1;
  int m = 1;
  double step = 0.0;
  Eigen::MatrixXd jacobian;       // at `step`
  Eigen::MatrixXd jacobian_half;  // at step/2
  double determinant = 0.0;
  double determinant_half = 0.0;
  /// max |J_ij| over blocks strictly above the block diagonal
  double max_upper_block = 0.0;
  /// max |J - I| over the diagonal blocks
  double max_diagonal_block_deviation = 0.0;
  /// max |J(step) - J(step/2)|
  double step_halving_change = 0.0;
};

/// Central finite-difference Jacobian of the coefficient map at P0, with a
/// second stencil at step/2. Stencil points are evaluated on `jobs` threads.
template <class R>
JacobianReport jacobian_unit_check(const BasicGradedPolynomial<R>& base_h, int m, const ActionList<R>& p0,
                                   double fd_step = 1e-4, int jobs = 1);

struct TriangularityReport {
  int changed_degree = 0;
  /// True iff every Q_i, i < j, is bit-identical.
  bool lower_unchanged = true;
  /// True iff Q_1 - P_1 is identical (to rounding) for both inputs.
  double translation_deviation = 0.0;
};

/// Runs the map at P and at P with P_j replaced by `replacement`.
TriangularityReport triangularity_check(const GradedPolynomial& base_h, int m, const ActionList<double>& p, int j,
                                        const ActionPolynomial& replacement);

nlohmann::json jacobian_to_json(const JacobianReport& r);

extern template ActionList<double> bnf_map(const GradedPolynomial&, int, const ActionList<double>&);
extern template ActionList<ExtendedReal> bnf_map(const ExtGradedPolynomial&, int, const ActionList<ExtendedReal>&);
extern template JacobianReport jacobian_unit_check(const GradedPolynomial&, int, const ActionList<double>&, double,
                                                   int);
extern template JacobianReport jacobian_unit_check(const ExtGradedPolynomial&, int, const ActionList<ExtendedReal>&,
                                                   double, int);

}  // namespace bnfkit
