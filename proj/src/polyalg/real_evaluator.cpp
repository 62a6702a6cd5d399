#include "bnfkit/polyalg/real_evaluator.hpp"

#include <algorithm>

#include "bnfkit/polyalg/phase_space.hpp"

namespace bnfkit {

RealEvaluator::RealEvaluator(const GradedPolynomial& h) : n_(h.dof()) {
  const RealForm r = to_real_form(h);
  grad_.resize(static_cast<std::size_t>(2 * n_));
  for (const auto& [e, c] : r.terms) {
    Term t{c.re, {}};
    for (int s = 0; s < 2 * n_; ++s) {
      t.e[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(e[s]);
      max_power_ = std::max(max_power_, e[s]);
    }
    value_.push_back(t);
    for (int s = 0; s < 2 * n_; ++s) {
      if (t.e[static_cast<std::size_t>(s)] == 0) continue;
      Term d = t;
      d.c *= t.e[static_cast<std::size_t>(s)];
      --d.e[static_cast<std::size_t>(s)];
      grad_[static_cast<std::size_t>(s)].push_back(d);
    }
  }
  powers_.resize(static_cast<std::size_t>(2 * n_ * (max_power_ + 1)));
}

void RealEvaluator::fill_powers(std::span<const double> z) const {
  if (static_cast<int>(z.size()) != 2 * n_) throw DimensionError("phase point has wrong dimension");
  const std::size_t stride = static_cast<std::size_t>(max_power_ + 1);
  for (int s = 0; s < 2 * n_; ++s) {
    double* p = powers_.data() + static_cast<std::size_t>(s) * stride;
    p[0] = 1.0;
    for (std::size_t k = 1; k < stride; ++k) p[k] = p[k - 1] * z[static_cast<std::size_t>(s)];
  }
}

double RealEvaluator::sum(const std::vector<Term>& terms) const {
  const std::size_t stride = static_cast<std::size_t>(max_power_ + 1);
  double acc = 0.0;
  for (const Term& t : terms) {
    double v = t.c;
    for (int s = 0; s < 2 * n_; ++s) v *= powers_[static_cast<std::size_t>(s) * stride + t.e[static_cast<std::size_t>(s)]];
    acc += v;
  }
  return acc;
}

double RealEvaluator::value(std::span<const double> z) const {
  fill_powers(z);
  return sum(value_);
}

void RealEvaluator::gradient(std::span<const double> z, std::span<double> grad) const {
  fill_powers(z);
  for (int s = 0; s < 2 * n_; ++s) grad[static_cast<std::size_t>(s)] = sum(grad_[static_cast<std::size_t>(s)]);
}

void RealEvaluator::vector_field(std::span<const double> z, std::span<double> out) const {
  fill_powers(z);
  for (int j = 0; j < n_; ++j) {
    out[static_cast<std::size_t>(j)] = sum(grad_[static_cast<std::size_t>(n_ + j)]);
    out[static_cast<std::size_t>(n_ + j)] = -sum(grad_[static_cast<std::size_t>(j)]);
  }
}

}  // namespace bnfkit
