#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bnfkit/dynamics/integrator.hpp"

namespace bnfkit {

/// Initial points z0 with ||I(z0)|| = rho. The fixed part crosses the action
/// directions {coordinate axes, diagonal} with the phase set {0, π/4, π/2}
/// (for n = 2 the axes and diagonal are the action-plane angles 0, π/2, π/4);
/// then `random_directions` points with |Gaussian| action directions and
/// uniform phases drawn from substream(seed, ·).
std::vector<std::vector<double>> initial_conditions(int n, double rho, int random_directions, std::uint64_t seed);

/// Number of fixed (non-random) initial conditions for n degrees of freedom.
int fixed_direction_count(int n);

struct ExitTime {
  double time = 0.0;
  /// No exit before t_max; time is then t_max, a lower bound.
  bool censored = false;
  bool escaped = false;
};

/// First step time with ||I(t) - I(0)|| > C·rho, rho = ||I(z0)||. Leaving the
/// escape radius counts as an exit. Requires rho > 0 and C > 1 (DomainError).
ExitTime stability_time(const GradedPolynomial& h, const std::vector<double>& z0, double c, double t_max, double dt,
                        double escape_radius = 2.0, StepOptions step = {});

struct FitLine {
  bool valid = false;
  int points = 0;
  double rss = 0.0;
};

struct PolynomialFit : FitLine {
  /// log T = p·log(1/ρ) + c
  double p = 0.0;
  double c = 0.0;
};

struct ExponentialFit : FitLine {
  /// log T = c·ρ^{-a} + b
  double a = 0.0;
  double c = 0.0;
  double b = 0.0;
};

struct StabilityFit {
  PolynomialFit polynomial;
  ExponentialFit exponential;
  /// Model with the smaller rss/(points - parameters): "polynomial",
  /// "exponential", or "none" when too few uncensored points.
  std::string better = "none";
  bool lower_bound_only = false;
};

struct StabilityRow {
  double rho = 0.0;
  std::uint64_t seed = 0;
  /// Minimum exit time over directions.
  double exit_time = 0.0;
  bool censored = false;
  int direction_id = 0;
};

struct StabilityCurve {
  double c = 0.0;
  double t_max = 0.0;
  double dt = 0.0;
  std::vector<StabilityRow> rows;
  StabilityFit fit;
};

struct ScalingOptions {
  double c = 1.5;
  double t_max = 100.0;
  double dt = 1e-2;
  int random_directions = 2;
  std::vector<std::uint64_t> seeds{1};
  double escape_radius = 2.0;
  int jobs = 1;
};

/// Exit times on a decreasing rho grid, minimum over directions per (rho, seed),
/// with both fits over the per-rho minimum of uncensored rows.
StabilityCurve scaling_experiment(const GradedPolynomial& h, const std::vector<double>& rhos, const ScalingOptions& opt);

/// Least-squares fits on (rho, T) pairs; exponential by a grid over a in
/// [0.05, 4] with (c, b) solved in closed form, then golden-section refinement.
StabilityFit fit_stability(const std::vector<double>& rhos, const std::vector<double>& times);

/// CSV columns rho, exit_time, censored, direction_id, seed.
void write_curve_csv(std::ostream& os, const StabilityCurve& curve);
nlohmann::json fit_to_json(const StabilityCurve& curve);

}  // namespace bnfkit
