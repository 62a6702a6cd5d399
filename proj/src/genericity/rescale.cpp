#include "bnfkit/genericity/rescale.hpp"

#include <cmath>

#include "bnfkit/genericity/bnf_map.hpp"

namespace bnfkit {

RescaleContext make_rescale_context(int n, int m, double s_m, double r_m, double domain_radius) {
  if (!(domain_radius > 0.0 && domain_radius < 1.0)) throw DomainError("domain radius s must lie in (0, 1)");
  if (!(s_m > 0.0 && s_m <= domain_radius)) throw DomainError("s_m must lie in (0, s]");
  if (!(r_m > 0.0 && r_m <= 1.0)) throw DomainError("r_m must lie in (0, 1]");
  return {s_m, r_m, m, coefficient_dimension(n, m)};
}

RescaledHamiltonian rescale(const NormalFormResult& nf, double s_m, double domain_radius) {
  if (!(s_m > 0.0)) throw DomainError("rescale: s_m must be positive");
  if (s_m > domain_radius) throw DomainError("rescale: s_m exceeds the normalization radius");
  const int n = nf.dof();
  RescaledHamiltonian out{ActionPolynomial(n), GradedPolynomial(n), GradedPolynomial(n)};
  std::vector<ActionPolynomial::Term> at;
  for (std::size_t k = 0; k < nf.invariants.size(); ++k) {
    const double f = std::pow(s_m, 2.0 * static_cast<double>(k + 1) - 2.0);
    for (const auto& [l, c] : nf.invariants[k].terms()) at.emplace_back(l, c * f);
  }
  out.integrable = ActionPolynomial(n, std::move(at));
  std::vector<GradedPolynomial::Term> rt;
  for (const auto& [e, c] : nf.remainder.terms()) rt.emplace_back(e, c * std::pow(s_m, e.degree() - 2));
  out.remainder = GradedPolynomial(n, std::move(rt));
  out.hamiltonian = out.integrable.lift() + out.remainder;
  return out;
}

int order_schedule(double r, double c, double a) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("order_schedule: r must lie in (0, 1)");
  if (!(c > 0.0 && a > 0.0)) throw DomainError("order_schedule: c and a must be positive");
  const double v = c * std::pow(std::abs(std::log(r)), a);
  // Guard against log rounding pushing an exact integer over the edge.
  const int m = static_cast<int>(std::ceil(v * (1.0 - 1e-12)));
  return std::max(1, m);
}

}  // namespace bnfkit
