#include "bnfkit/genericity/bad_volume.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "bnfkit/brick/rng.hpp"
#include "bnfkit/parallel.hpp"

namespace bnfkit {

namespace {

double monomial_value(Exponent l, const std::vector<double>& x, int n, int skip_a = -1, int skip_b = -1) {
  double v = 1.0;
  for (int j = 0; j < n; ++j) {
    int p = l[j] - (j == skip_a) - (j == skip_b);
    if (p < 0) return 0.0;
    for (int q = 0; q < p; ++q) v *= x[static_cast<std::size_t>(j)];
  }
  return v;
}

struct GridPoint {
  std::vector<double> gradient;
};

}  // namespace

std::vector<double> action_gradient(const ActionPolynomial& h, const std::vector<double>& actions) {
  const int n = h.dof();
  if (static_cast<int>(actions.size()) != n) throw DimensionError("action point has wrong dimension");
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);
  for (const auto& [l, c] : h.terms())
    for (int j = 0; j < n; ++j)
      if (l[j] > 0) g[static_cast<std::size_t>(j)] += c * l[j] * monomial_value(l, actions, n, j);
  return g;
}

std::vector<std::vector<double>> action_hessian(const ActionPolynomial& h, const std::vector<double>& actions) {
  const int n = h.dof();
  if (static_cast<int>(actions.size()) != n) throw DimensionError("action point has wrong dimension");
  std::vector<std::vector<double>> hs(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (const auto& [l, c] : h.terms())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double f = i == j ? l[i] * (l[i] - 1.0) : static_cast<double>(l[i]) * l[j];
        if (f == 0.0) continue;
        hs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += c * f * monomial_value(l, actions, n, i, j);
      }
  return hs;
}

std::pair<double, double> wilson_interval(int k, int n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double p = static_cast<double>(k) / n, z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double ball_volume(int n, double radius) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(radius, n);
}

std::vector<VolumeEstimate> volume_sweep(const ActionPolynomial& h, double rho, const std::vector<double>& eps,
                                         const VolumeOptions& opt) {
  if (!(rho > 0.0)) throw DomainError("bad_parameter_volume: rho must be positive");
  for (double e : eps)
    if (!(e > 0.0)) throw DomainError("bad_parameter_volume: eps must be positive");
  if (opt.samples < 1 || opt.grid < 1) throw DomainError("bad_parameter_volume: samples and grid must be >= 1");
  const int n = h.dof();
  const int g = opt.grid % 2 == 0 ? opt.grid + 1 : opt.grid;
  const double max_sqrt_eps = std::sqrt(*std::max_element(eps.begin(), eps.end()));

  // Grid points of the unit ball with their gradient and σ_min.
  std::vector<std::vector<double>> grads;
  std::vector<double> sigma;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<double> point(static_cast<std::size_t>(n));
    double r2 = 0.0;
    for (int j = 0; j < n; ++j) {
      point[static_cast<std::size_t>(j)] = g == 1 ? 0.0 : -1.0 + 2.0 * idx[static_cast<std::size_t>(j)] / (g - 1);
      r2 += point[static_cast<std::size_t>(j)] * point[static_cast<std::size_t>(j)];
    }
    if (r2 <= 1.0 + 1e-12) {
      const auto hs = action_hessian(h, point);
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = hs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      const double smin = es.eigenvalues().cwiseAbs().minCoeff();
      if (smin <= max_sqrt_eps) {
        grads.push_back(action_gradient(h, point));
        sigma.push_back(smin);
      }
    }
    int j = n - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == g - 1) idx[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
  }

  // For each sample, the smallest ε at which it becomes bad:
  // ε* = min over grid points of max(σ_min², ||∇h − ω||²).
  std::vector<double> threshold(static_cast<std::size_t>(opt.samples));
  parallel_for(threshold.size(), opt.jobs, [&](std::size_t i) {
    SplitMix64 rng = substream(opt.seed, i);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> w(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& v : w) {
        v = gauss(rng);
        norm2 += v * v;
      }
    } while (norm2 == 0.0);
    const double r = rho * std::pow(unif(rng), 1.0 / n) / std::sqrt(norm2);
    for (double& v : w) v *= r;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < grads.size(); ++p) {
      double d2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = grads[p][static_cast<std::size_t>(j)] - w[static_cast<std::size_t>(j)];
        d2 += d * d;
      }
      best = std::min(best, std::max(sigma[p] * sigma[p], d2));
    }
    threshold[i] = best;
  });

  std::vector<VolumeEstimate> rows;
  const double vol = ball_volume(n, rho);
  for (double e : eps) {
    VolumeEstimate v;
    v.eps = e;
    v.rho = rho;
    v.samples = opt.samples;
    // ||·|| ≤ √ε and σ ≤ √ε  ⇔  max(σ², ||·||²) ≤ ε (up to rounding of the square root)
    const double se = std::sqrt(e);
    for (double t : threshold) v.bad += (std::sqrt(t) <= se);
    v.bad_fraction = static_cast<double>(v.bad) / v.samples;
    std::tie(v.ci_low, v.ci_high) = wilson_interval(v.bad, v.samples);
    v.volume = v.bad_fraction * vol;
    v.volume_low = v.ci_low * vol;
    v.volume_high = v.ci_high * vol;
    rows.push_back(v);
  }
  return rows;
}

VolumeEstimate bad_parameter_volume(const ActionPolynomial& h, double rho, double eps, const VolumeOptions& opt) {
  return volume_sweep(h, rho, {eps}, opt).front();
}

PowerLawFit fit_volume_power_law(const std::vector<VolumeEstimate>& rows) {
  double sw = 0, sx = 0, sy = 0;
  std::vector<double> x, y, w;
  for (const auto& r : rows) {
    if (r.bad <= 0 || r.bad >= r.samples) continue;
    const double p = r.bad_fraction;
    x.push_back(std::log(r.eps));
    y.push_back(std::log(r.volume));
    w.push_back(r.samples * p / (1.0 - p));  // 1 / Var(log p̂)
  }
  PowerLawFit fit;
  fit.points = static_cast<int>(x.size());
  if (fit.points < 2) return fit;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.slope_stderr = std::sqrt(1.0 / sxx);
  return fit;
}

}  // namespace bnfkit
