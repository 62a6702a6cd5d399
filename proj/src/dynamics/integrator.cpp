#include "bnfkit/dynamics/integrator.hpp"

#include <cmath>
#include <iomanip>

#include "bnfkit/polyalg/phase_space.hpp"
#include "bnfkit/polyalg/text_format.hpp"

namespace bnfkit {

namespace {

double inf_norm(const std::vector<double>& z) {
  double m = 0.0;
  for (double v : z) m = std::max(m, std::abs(v));
  return m;
}

double euclid(const std::vector<double>& z) {
  double s = 0.0;
  for (double v : z) s += v * v;
  return std::sqrt(s);
}

}  // namespace

MidpointStepper::MidpointStepper(const GradedPolynomial& h, double dt, StepOptions opt)
    : eval_(h), dt_(dt), opt_(opt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("step size must be positive");
  const std::size_t d = static_cast<std::size_t>(2 * eval_.dof());
  mid_.resize(d);
  f_.resize(d);
  next_.resize(d);
}

void MidpointStepper::step(std::vector<double>& z, double time) {
  const std::size_t d = z.size();
  if (d != mid_.size()) throw DimensionError("phase point has wrong dimension");
  // Explicit Euler predictor.
  eval_.vector_field(z, f_);
  for (std::size_t i = 0; i < d; ++i) next_[i] = z[i] + dt_ * f_[i];
  const double scale = std::max(1.0, inf_norm(z));
  int extra = -1;
  for (int it = 0; it < opt_.max_iterations; ++it) {
    for (std::size_t i = 0; i < d; ++i) mid_[i] = 0.5 * (z[i] + next_[i]);
    eval_.vector_field(mid_, f_);
    double change = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < d; ++i) {
      const double v = z[i] + dt_ * f_[i];
      finite = finite && std::isfinite(v);
      change = std::max(change, std::abs(v - next_[i]));
      next_[i] = v;
    }
    if (!finite) break;
    if (extra >= 0) {
      z.swap(next_);
      return;
    }
    if (change <= opt_.tol * scale) extra = 0;
  }
  throw StepFailureError(time, "implicit midpoint fixed-point iteration did not converge");
}

TrajectoryRecord integrate(const GradedPolynomial& h, const std::vector<double>& z0, const IntegrateOptions& opt) {
  if (!(opt.dt > 0.0)) throw DomainError("integrate: dt must be positive");
  if (!(opt.t_max >= opt.dt)) throw DomainError("integrate: t_max must be at least dt");
  if (opt.record_stride < 1) throw DomainError("integrate: record stride must be >= 1");
  if (static_cast<int>(z0.size()) != 2 * h.dof()) throw DimensionError("integrate: initial point has wrong dimension");
  MidpointStepper stepper(h, opt.dt, opt.step);
  const long steps = std::lround(opt.t_max / opt.dt);
  TrajectoryRecord rec;
  rec.dt = opt.dt;
  auto push = [&](long k, const std::vector<double>& z) {
    rec.times.push_back(static_cast<double>(k) * opt.dt);
    rec.states.push_back(z);
    rec.actions.push_back(formal_actions(z));
    rec.energy.push_back(stepper.energy(z));
  };
  std::vector<double> z = z0;
  push(0, z);
  for (long k = 1; k <= steps; ++k) {
    stepper.step(z, static_cast<double>(k - 1) * opt.dt);
    const bool escaped = !(euclid(z) <= opt.escape_radius);
    if (escaped || k % opt.record_stride == 0 || k == steps) push(k, z);
    if (escaped) {
      rec.escaped = true;
      break;
    }
  }
  return rec;
}

Drift action_drift(const TrajectoryRecord& rec) {
  if (rec.actions.empty()) throw DomainError("action_drift: empty record");
  Drift d;
  const auto& a0 = rec.actions.front();
  for (std::size_t r = 0; r < rec.actions.size(); ++r) {
    double s = 0.0;
    for (std::size_t j = 0; j < a0.size(); ++j) {
      const double v = rec.actions[r][j] - a0[j];
      s += v * v;
    }
    const double dist = std::sqrt(s);
    if (dist > d.max_drift) {
      d.max_drift = dist;
      d.time = rec.times[r];
    }
  }
  return d;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec) {
  const std::size_t n = rec.states.empty() ? 0 : rec.states.front().size() / 2;
  os << "t";
  for (std::size_t j = 1; j <= n; ++j) os << ",x" << j;
  for (std::size_t j = 1; j <= n; ++j) os << ",y" << j;
  for (std::size_t j = 1; j <= n; ++j) os << ",I" << j;
  os << ",H\n";
  for (std::size_t r = 0; r < rec.size(); ++r) {
    os << format_double(rec.times[r]);
    for (double v : rec.states[r]) os << ',' << format_double(v);
    for (double v : rec.actions[r]) os << ',' << format_double(v);
    os << ',' << format_double(rec.energy[r]) << '\n';
  }
}

std::vector<double> hamiltonian_flow(const GradedPolynomial& h, std::vector<double> z, double duration, int steps,
                                     StepOptions opt) {
  if (steps < 1) throw DomainError("hamiltonian_flow: steps must be >= 1");
  if (duration == 0.0) return z;
  const double dt = duration / steps;
  const double c = std::cbrt(2.0);
  const double w1 = 1.0 / (2.0 - c), w0 = -c / (2.0 - c);
  // Negative sub-steps are fine for the midpoint rule; the stepper only
  // requires a positive step, so run the backward part on -h.
  MidpointStepper fwd(h, std::abs(w1 * dt), opt);
  MidpointStepper mid(w0 * dt > 0 ? h : h * Complex<double>(-1.0), std::abs(w0 * dt), opt);
  MidpointStepper fwd_neg(h * Complex<double>(-1.0), std::abs(w1 * dt), opt);
  MidpointStepper mid_neg(w0 * dt > 0 ? h * Complex<double>(-1.0) : h, std::abs(w0 * dt), opt);
  const bool forward = dt > 0;
  for (int k = 0; k < steps; ++k) {
    MidpointStepper& a = forward ? fwd : fwd_neg;
    MidpointStepper& b = forward ? mid : mid_neg;
    a.step(z);
    b.step(z);
    a.step(z);
  }
  return z;
}

}  // namespace bnfkit
