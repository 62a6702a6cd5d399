#pragma once

#include <cstdint>
#include <vector>

#include "bnfkit/polyalg/action_polynomial.hpp"

namespace bnfkit {

struct VolumeEstimate {
  double eps = 0.0;
  double rho = 0.0;
  int samples = 0;
  int bad = 0;
  double bad_fraction = 0.0;
  /// Wilson 95% interval on the fraction.
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// fraction · Vol(B_ρ), with the interval scaled alike.
  double volume = 0.0;
  double volume_low = 0.0;
  double volume_high = 0.0;
};

struct VolumeOptions {
  int samples = 20000;
  /// Points per axis of the action grid on [-1, 1]^n (forced odd so 0 is a node).
  int grid = 41;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Monte-Carlo proxy for the bad-parameter volume: ω ∈ B_ρ is bad iff some
/// grid point I with ||I|| ≤ 1 has ||∇h(I) − ω|| ≤ √ε and σ_min(∇²h(I)) ≤ √ε.
/// ω sample i comes from substream i of the seed, so sweeps over ε reuse the
/// same draws (common random numbers).
VolumeEstimate bad_parameter_volume(const ActionPolynomial& h, double rho, double eps, const VolumeOptions& opt = {});

std::vector<VolumeEstimate> volume_sweep(const ActionPolynomial& h, double rho, const std::vector<double>& eps,
                                         const VolumeOptions& opt = {});

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points = 0;
};

/// Weighted least squares of log(volume) on log(eps) over rows with bad > 0;
/// weights are inverse binomial variances of log(fraction).
PowerLawFit fit_volume_power_law(const std::vector<VolumeEstimate>& rows);

/// Wilson score interval for k successes out of n at normal quantile z.
std::pair<double, double> wilson_interval(int k, int n, double z = 1.959963984540054);

double ball_volume(int n, double radius);

/// ∇h and ∇²h at I (exact differentiation of the action polynomial).
std::vector<double> action_gradient(const ActionPolynomial& h, const std::vector<double>& actions);
std::vector<std::vector<double>> action_hessian(const ActionPolynomial& h, const std::vector<double>& actions);

}  // namespace bnfkit
