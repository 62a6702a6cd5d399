#include "bnfkit/dynamics/families.hpp"

#include <cmath>

#include "bnfkit/polyalg/action_polynomial.hpp"

namespace bnfkit {

namespace {

using P = GradedPolynomial;

P scaled(const P& p, double c) { return p * Complex<double>(c); }

P power(const P& p, int k) {
  P out = P::constant(p.dof(), 1.0);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

double integer_param(double v, const std::string& name, int lo, int hi) {
  if (v != std::floor(v) || v < lo || v > hi)
    throw DomainError("family parameter " + name + " must be an integer in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return v;
}

}  // namespace

std::vector<std::string> builtin_family_names() {
  return {"harmonic", "quartic-1dof", "resonant-coupled", "convex-benchmark", "resonant-order"};
}

FamilyParams family_defaults(const std::string& name) {
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  if (name == "harmonic") return {{"n", 2}, {"w1", 1.0}, {"w2", golden}, {"w3", std::sqrt(2.0) - 1.0}, {"w4", std::sqrt(3.0) - 1.0}};
  if (name == "quartic-1dof") return {{"c", 0.1}};
  if (name == "resonant-coupled") return {{"kappa", 0.05}, {"c", 0.05}};
  if (name == "convex-benchmark") return {{"w1", 1.0}, {"w2", golden}, {"beta", 1.0}, {"c", 0.05}};
  if (name == "resonant-order") return {{"m", 2}, {"eps", 1.0}};
  throw DomainError("unknown builtin family '" + name + "'");
}

GradedPolynomial builtin_family(const std::string& name, const FamilyParams& params) {
  FamilyParams p = family_defaults(name);
  for (const auto& [k, v] : params) {
    if (!p.count(k)) throw DomainError("family '" + name + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw DomainError("family parameter " + k + " must be finite");
    p[k] = v;
  }
  if (name == "harmonic") {
    const int n = static_cast<int>(integer_param(p["n"], "n", 1, kMaxDof));
    std::vector<double> w;
    for (int j = 1; j <= n; ++j) w.push_back(p["w" + std::to_string(j)]);
    return ActionPolynomial::linear(w).lift();
  }
  if (name == "quartic-1dof") return P::action(1, 0) + scaled(power(P::x(1, 0), 4), p["c"]);
  if (name == "resonant-coupled")
    return P::action(2, 0) + P::action(2, 1) + scaled(P::x(2, 0) * P::y(2, 1), p["kappa"]) +
           scaled(power(P::x(2, 0), 3), p["c"]);
  if (name == "convex-benchmark") {
    const P i1 = P::action(2, 0), i2 = P::action(2, 1);
    return scaled(i1, p["w1"]) + scaled(i2, p["w2"]) + scaled(i1 * i1 + i2 * i2, p["beta"]) +
           scaled(power(P::x(2, 0), 3) + P::x(2, 0) * P::x(2, 1) * P::x(2, 1), p["c"]);
  }
  // resonant-order
  const int m = static_cast<int>(integer_param(p["m"], "m", 1, 20));
  const P s = P::action(2, 0) + P::action(2, 1);
  return s + s * s + scaled(power(s, m) * (P::x(2, 0) * P::x(2, 1) + P::y(2, 0) * P::y(2, 1)), p["eps"]);
}

}  // namespace bnfkit
