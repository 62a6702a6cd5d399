#include "bnfkit/dynamics/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "bnfkit/brick/rng.hpp"
#include "bnfkit/parallel.hpp"
#include "bnfkit/polyalg/phase_space.hpp"
#include "bnfkit/polyalg/text_format.hpp"

namespace bnfkit {

namespace {

std::vector<double> point_from(const std::vector<double>& actions, const std::vector<double>& phases) {
  const std::size_t n = actions.size();
  std::vector<double> z(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = std::sqrt(2.0 * actions[j]);
    z[j] = r * std::cos(phases[j]);
    z[n + j] = r * std::sin(phases[j]);
  }
  return z;
}

double action_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

}  // namespace

int fixed_direction_count(int n) { return n == 1 ? 3 : 3 * (n + 1); }

std::vector<std::vector<double>> initial_conditions(int n, double rho, int random_directions, std::uint64_t seed) {
  if (n < 1 || n > kMaxDof) throw DimensionError("initial_conditions: dimension out of range");
  if (!(rho > 0.0)) throw DomainError("initial_conditions: rho must be positive");
  if (random_directions < 0) throw DomainError("initial_conditions: negative direction count");
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<std::vector<double>> dirs;
  if (n == 1) {
    dirs.push_back({rho});
  } else {
    for (std::size_t j = 0; j < un; ++j) {
      std::vector<double> a(un, 0.0);
      a[j] = rho;
      dirs.push_back(a);
    }
    dirs.push_back(std::vector<double>(un, rho / std::sqrt(static_cast<double>(n))));
  }
  std::vector<std::vector<double>> out;
  for (const auto& a : dirs)
    for (double phase : {0.0, M_PI / 4, M_PI / 2}) out.push_back(point_from(a, std::vector<double>(un, phase)));
  for (int r = 0; r < random_directions; ++r) {
    SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(r));
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    std::vector<double> a(un), ph(un);
    double norm = 0.0;
    while (norm == 0.0) {
      norm = 0.0;
      for (double& v : a) {
        v = std::abs(g(rng));
        norm += v * v;
      }
    }
    norm = std::sqrt(norm);
    for (double& v : a) v *= rho / norm;
    for (double& v : ph) v = u(rng);
    out.push_back(point_from(a, ph));
  }
  return out;
}

ExitTime stability_time(const GradedPolynomial& h, const std::vector<double>& z0, double c, double t_max, double dt,
                        double escape_radius, StepOptions step) {
  if (!(c > 1.0)) throw DomainError("stability_time: C must exceed 1");
  if (!(dt > 0.0) || !(t_max >= dt)) throw DomainError("stability_time: need dt > 0 and t_max >= dt");
  const std::vector<double> i0 = formal_actions(z0);
  double rho = 0.0;
  for (double v : i0) rho += v * v;
  rho = std::sqrt(rho);
  if (!(rho > 0.0)) throw DomainError("stability_time: initial point has zero actions");
  MidpointStepper stepper(h, dt, step);
  const long steps = std::lround(t_max / dt);
  std::vector<double> z = z0;
  const double limit = c * rho;
  for (long k = 1; k <= steps; ++k) {
    stepper.step(z, static_cast<double>(k - 1) * dt);
    double r2 = 0.0;
    for (double v : z) r2 += v * v;
    const double t = static_cast<double>(k) * dt;
    if (!(std::sqrt(r2) <= escape_radius)) return {t, false, true};
    if (action_distance(formal_actions(z), i0) > limit) return {t, false, false};
  }
  return {static_cast<double>(steps) * dt, true, false};
}

StabilityFit fit_stability(const std::vector<double>& rhos, const std::vector<double>& times) {
  StabilityFit fit;
  const std::size_t n = rhos.size();
  std::vector<double> lr, lt;
  for (std::size_t i = 0; i < n; ++i) {
    lr.push_back(std::log(1.0 / rhos[i]));
    lt.push_back(std::log(times[i]));
  }
  // Ordinary least squares y = s·x + t; returns rss.
  auto line = [&](const std::vector<double>& x, double& s, double& t) {
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(lt.begin(), lt.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (lt[i] - my);
    }
    s = sxx > 0.0 ? sxy / sxx : 0.0;
    t = my - s * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) rss += std::pow(lt[i] - s * x[i] - t, 2);
    return rss;
  };
  if (n >= 2) {
    fit.polynomial.valid = true;
    fit.polynomial.points = static_cast<int>(n);
    fit.polynomial.rss = line(lr, fit.polynomial.p, fit.polynomial.c);
  }
  if (n >= 3) {
    auto rss_at = [&](double a, double& c, double& b) {
      std::vector<double> x;
      for (double r : rhos) x.push_back(std::pow(r, -a));
      return line(x, c, b);
    };
    double best_a = 0.05, c = 0.0, b = 0.0, best = std::numeric_limits<double>::infinity();
    for (double a = 0.05; a <= 4.0 + 1e-12; a += 0.05) {
      const double r = rss_at(a, c, b);
      if (r < best) {
        best = r;
        best_a = a;
      }
    }
    double lo = std::max(0.01, best_a - 0.05), hi = best_a + 0.05;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 60; ++it) {
      const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
      if (rss_at(m1, c, b) < rss_at(m2, c, b))
        hi = m2;
      else
        lo = m1;
    }
    const double a = 0.5 * (lo + hi);
    fit.exponential.valid = true;
    fit.exponential.points = static_cast<int>(n);
    fit.exponential.a = a;
    fit.exponential.rss = rss_at(a, fit.exponential.c, fit.exponential.b);
  }
  // Compare residual variance per degree of freedom, so the extra parameter
  // of the exponential model is not rewarded; with no spare degree of freedom
  // a model cannot be preferred.
  auto variance = [](const FitLine& f, int params) {
    return f.valid && f.points > params ? f.rss / (f.points - params) : std::numeric_limits<double>::infinity();
  };
  const double vp = variance(fit.polynomial, 2), ve = variance(fit.exponential, 3);
  if (fit.polynomial.valid) fit.better = "polynomial";
  if (ve < vp) fit.better = "exponential";
  return fit;
}

StabilityCurve scaling_experiment(const GradedPolynomial& h, const std::vector<double>& rhos,
                                  const ScalingOptions& opt) {
  if (rhos.empty()) throw DomainError("scaling_experiment: empty rho grid");
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (!(rhos[i] > 0.0 && rhos[i] < 1.0)) throw DomainError("scaling_experiment: rho must lie in (0, 1)");
    if (i > 0 && !(rhos[i] < rhos[i - 1])) throw DomainError("scaling_experiment: rho grid must be decreasing");
  }
  if (opt.seeds.empty()) throw DomainError("scaling_experiment: no seeds");
  const int n = h.dof();
  struct Task {
    std::size_t row;
    int direction;
    std::vector<double> z0;
  };
  std::vector<Task> tasks;
  StabilityCurve curve;
  curve.c = opt.c;
  curve.t_max = opt.t_max;
  curve.dt = opt.dt;
  for (std::size_t r = 0; r < rhos.size(); ++r)
    for (std::uint64_t seed : opt.seeds) {
      SplitMix64 task_rng = substream(seed, r);
      const auto pts = initial_conditions(n, rhos[r], opt.random_directions, task_rng());
      for (std::size_t d = 0; d < pts.size(); ++d) tasks.push_back({curve.rows.size(), static_cast<int>(d), pts[d]});
      curve.rows.push_back({rhos[r], seed, 0.0, true, 0});
    }
  std::vector<ExitTime> results(tasks.size());
  parallel_for(tasks.size(), opt.jobs, [&](std::size_t i) {
    results[i] = stability_time(h, tasks[i].z0, opt.c, opt.t_max, opt.dt, opt.escape_radius);
  });
  std::vector<bool> seen(curve.rows.size(), false);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    StabilityRow& row = curve.rows[tasks[i].row];
    if (!seen[tasks[i].row] || results[i].time < row.exit_time) {
      row.exit_time = results[i].time;
      row.censored = results[i].censored;
      row.direction_id = tasks[i].direction;
      seen[tasks[i].row] = true;
    }
  }
  std::vector<double> fr, ft;
  for (double rho : rhos) {
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& row : curve.rows)
      if (row.rho == rho && !row.censored) {
        best = std::min(best, row.exit_time);
        any = true;
      }
    if (any) {
      fr.push_back(rho);
      ft.push_back(best);
    }
  }
  curve.fit = fit_stability(fr, ft);
  curve.fit.lower_bound_only = fr.empty();
  return curve;
}

void write_curve_csv(std::ostream& os, const StabilityCurve& curve) {
  os << "rho,exit_time,censored,direction_id,seed\n";
  for (const auto& r : curve.rows)
    os << format_double(r.rho) << ',' << format_double(r.exit_time) << ',' << (r.censored ? 1 : 0) << ','
       << r.direction_id << ',' << r.seed << '\n';
}

nlohmann::json fit_to_json(const StabilityCurve& curve) {
  const auto& f = curve.fit;
  nlohmann::json j{{"schema", "bnfkit.stability_fit/1"},
                   {"C", curve.c},
                   {"t_max", curve.t_max},
                   {"dt", curve.dt},
                   {"scheme", kMidpointSchemeId},
                   {"better", f.better},
                   {"lower_bound_only", f.lower_bound_only}};
  j["polynomial"] = f.polynomial.valid
                        ? nlohmann::json{{"p", f.polynomial.p}, {"c", f.polynomial.c}, {"rss", f.polynomial.rss},
                                         {"points", f.polynomial.points}}
                        : nlohmann::json(nullptr);
  j["exponential"] = f.exponential.valid ? nlohmann::json{{"a", f.exponential.a},
                                                          {"c", f.exponential.c},
                                                          {"b", f.exponential.b},
                                                          {"rss", f.exponential.rss},
                                                          {"points", f.exponential.points}}
                                         : nlohmann::json(nullptr);
  return j;
}

}  // namespace bnfkit
