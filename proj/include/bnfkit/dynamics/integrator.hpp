#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bnfkit/polyalg/real_evaluator.hpp"

namespace bnfkit {

inline constexpr const char* kMidpointSchemeId = "implicit-midpoint";

struct StepOptions {
  /// Fixed-point iterations stop once the update is below tol·max(1, ||z||∞);
  /// one more iteration is then applied.
  double tol = 1e-13;
  int max_iterations = 200;
};

/// One-step map of the implicit midpoint rule z1 = z0 + dt·J∇H((z0 + z1)/2).
class MidpointStepper {
 public:
  MidpointStepper(const GradedPolynomial& h, double dt, StepOptions opt = {});

  int dof() const { return eval_.dof(); }
  double dt() const { return dt_; }
  /// Advances z in place; `time` only labels a StepFailureError.
  void step(std::vector<double>& z, double time = 0.0);
  double energy(const std::vector<double>& z) const { return eval_.value(z); }

 private:
  RealEvaluator eval_;
  double dt_;
  StepOptions opt_;
  std::vector<double> mid_, f_, next_;
};

struct IntegrateOptions {
  double dt = 1e-2;
  double t_max = 1.0;
  /// The trajectory stops (flagged escaped) once ||z|| exceeds this.
  double escape_radius = 2.0;
  /// Keep every k-th step in the record (the last step is always kept).
  int record_stride = 1;
  StepOptions step;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::vector<double>> actions;
  std::vector<double> energy;
  double dt = 0.0;
  std::string scheme_id = kMidpointSchemeId;
  bool escaped = false;

  std::size_t size() const { return times.size(); }
};

/// Fixed-step integration from z0 up to t_max = steps·dt (steps = round(t_max/dt)).
/// Throws DomainError on dt <= 0 or t_max < dt, StepFailureError if the
/// implicit equation does not converge.
TrajectoryRecord integrate(const GradedPolynomial& h, const std::vector<double>& z0, const IntegrateOptions& opt);

struct Drift {
  double max_drift = 0.0;
  double time = 0.0;
};

/// max_t ||I(t) - I(0)|| over the record, with the first time achieving it.
Drift action_drift(const TrajectoryRecord& rec);

/// CSV with columns t, x1..xn, y1..yn, I1..In, H.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec);

/// Time-`duration` flow of h by `steps` fourth-order steps (the symmetric
/// triple-jump composition of the midpoint rule).
std::vector<double> hamiltonian_flow(const GradedPolynomial& h, std::vector<double> z, double duration, int steps,
                                     StepOptions opt = {});

}  // namespace bnfkit
