#pragma once

#include <limits>
#include <map>
#include <vector>

#include "bnfkit/polyalg/action_polynomial.hpp"
#include "bnfkit/polyalg/graded_polynomial.hpp"
#include "bnfkit/polyalg/phase_space.hpp"

namespace bnfkit {

/// Resonance guard of the homological equation, relative to max_j |ω_j|.
inline constexpr double kSmallDivisorGuard = 1e-10;

template <class R>
struct HomologicalSplit {
  /// Terms with a = b (the normal-form part).
  BasicGradedPolynomial<R> kernel;
  /// χ with R = kernel + {χ, ω·I}.
  BasicGradedPolynomial<R> generator;
  /// Smallest |k·ω| divided through, and its k = a - b; infinity if none.
  double min_divisor = std::numeric_limits<double>::infinity();
  std::vector<int> min_divisor_k;
};

/// Splits a homogeneous R into its kernel (a = b) terms and the generator
/// χ_ab = R_ab / (i (a-b)·ω). Throws SmallDivisorError if some a != b has
/// |(a-b)·ω| below the guard, ShapeError if R is not homogeneous.
template <class R>
HomologicalSplit<R> homological_solve(const BasicGradedPolynomial<R>& rhs, const std::vector<R>& omega);

/// exp(L_χ) F = Σ_k (1/k!) {…{F, χ}, …, χ}, i.e. F∘φ_χ for the time-one flow
/// φ_χ of χ; terms of degree > trunc are dropped.
template <class R>
BasicGradedPolynomial<R> lie_transform(const BasicGradedPolynomial<R>& f, const BasicGradedPolynomial<R>& chi,
                                       int trunc);

struct DivisorRecord {
  int degree = 0;
  double min_divisor = std::numeric_limits<double>::infinity();
  std::vector<int> k;
};

template <class R>
struct BasicNormalFormResult {
  std::vector<R> omega;
  int order_m = 1;
  int trunc = 2;
  /// invariants[k-1] = B^(k), homogeneous of degree k in I.
  std::vector<BasicActionPolynomial<R>> invariants;
  /// generators[d-3] = χ_d for d = 3..2m; Φ_m = φ_{χ_3} ∘ … ∘ φ_{χ_2m}.
  std::vector<BasicGradedPolynomial<R>> generators;
  /// f_m: terms of degree 2m+1..trunc.
  BasicGradedPolynomial<R> remainder;
  /// H∘Φ_m through degree trunc (normal part plus remainder, complex as computed).
  BasicGradedPolynomial<R> transformed;
  std::vector<DivisorRecord> divisor_log;

  int dof() const { return static_cast<int>(omega.size()); }
  /// h_m = Σ_{k≤m} B^(k).
  BasicActionPolynomial<R> integrable_part() const;
};

using NormalFormResult = BasicNormalFormResult<double>;
using ExtNormalFormResult = BasicNormalFormResult<ExtendedReal>;

struct NormalizeOptions {
  /// Working truncation degree; 0 selects the default 2m + 2.
  int trunc = 0;
};

template <class R>
struct BasicGauge {
  /// Pure-action terms added to χ_d, keyed by d. These commute with ω·I, so
  /// they change the normalizing map but not the invariants.
  std::map<int, BasicGradedPolynomial<R>> extra;
};

/// Birkhoff normalization through total degree 2m.
/// Preconditions: no terms of degree 0 or 1, diagonal quadratic part
/// (PreconditionError), m >= 1 and trunc >= 2m (DomainError). Resonances
/// through order 2m raise SmallDivisorError.
template <class R>
BasicNormalFormResult<R> normalize(const BasicGradedPolynomial<R>& h, int m, NormalizeOptions options = {},
                                   const BasicGauge<R>& gauge = {});

/// Diagonal frequency vector of the quadratic part (PreconditionError if not
/// diagonal).
template <class R>
std::vector<R> quadratic_frequency(const BasicGradedPolynomial<R>& h);

/// Coefficient-wise comparison of B^(1..m) computed at two truncation degrees.
bool invariant_uniqueness_check(const GradedPolynomial& h, int m, int trunc1, int trunc2, double rel_tol = 1e-9);

/// Largest coefficient difference of two invariant lists, relative to the
/// largest coefficient of the matching degree (absolute when that is zero).
double invariant_discrepancy(const std::vector<ActionPolynomial>& a, const std::vector<ActionPolynomial>& b);

/// sup_norm_bound(f_m, s_m).
double remainder_norm(const NormalFormResult& result, double s_m);
double remainder_norm(const ExtNormalFormResult& result, double s_m);

/// s_m = min(γ / m^{1+τ}, s). Throws DomainError on γ, τ, s <= 0 or m < 1.
double radius_schedule(double gamma, double tau, int m, double s = 1.0);

/// Double-precision copy of an extended-precision result.
NormalFormResult to_double_result(const ExtNormalFormResult& r);

extern template HomologicalSplit<double> homological_solve(const GradedPolynomial&, const std::vector<double>&);
extern template HomologicalSplit<ExtendedReal> homological_solve(const ExtGradedPolynomial&,
                                                                 const std::vector<ExtendedReal>&);
extern template GradedPolynomial lie_transform(const GradedPolynomial&, const GradedPolynomial&, int);
extern template ExtGradedPolynomial lie_transform(const ExtGradedPolynomial&, const ExtGradedPolynomial&, int);
extern template NormalFormResult normalize(const GradedPolynomial&, int, NormalizeOptions, const BasicGauge<double>&);
extern template ExtNormalFormResult normalize(const ExtGradedPolynomial&, int, NormalizeOptions,
                                              const BasicGauge<ExtendedReal>&);
extern template std::vector<double> quadratic_frequency(const GradedPolynomial&);
extern template std::vector<ExtendedReal> quadratic_frequency(const ExtGradedPolynomial&);

}  // namespace bnfkit
