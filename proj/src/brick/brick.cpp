#include "bnfkit/brick/brick.hpp"

#include <cmath>
#include <random>

#include "bnfkit/brick/rng.hpp"
#include "bnfkit/polyalg/json_io.hpp"

namespace bnfkit {

ActionPolynomial sample_unit_ball(int n, int k, std::uint64_t seed) {
  if (n < 1 || n > kMaxDof) throw DimensionError("sample_unit_ball: n out of range");
  if (k < 1) throw DomainError("sample_unit_ball: degree must be >= 1");
  SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(k));
  const auto basis = homogeneous_exponents(n, k);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Coordinates g in the Bombieri-orthonormal basis {sqrt(C_k^l) I^l}.
  std::vector<double> g(basis.size());
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : g) {
      v = gauss(rng);
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double radius = std::pow(unif(rng), 1.0 / static_cast<double>(basis.size()));
  const double scale = radius / std::sqrt(norm2);
  std::vector<ActionPolynomial::Term> t;
  for (std::size_t i = 0; i < basis.size(); ++i)
    t.emplace_back(basis[i], g[i] * scale * std::sqrt(multinomial(basis[i], n)));
  return ActionPolynomial(n, std::move(t));
}

BrickSample sample_brick(int n, int m, std::uint64_t seed) {
  if (m < 1) throw DomainError("sample_brick: m must be >= 1");
  BrickSample s{n, m, seed, {}};
  for (int k = 1; k <= m; ++k) s.parts.push_back(sample_unit_ball(n, k, seed));
  return s;
}

GradedPolynomial brick_to_hamiltonian(const BrickSample& sample) {
  GradedPolynomial h(sample.n);
  for (const auto& part : sample.parts) h = h + part.lift();
  return h;
}

double brick_sup_bound(int n, int m, double s) {
  double sum = 0.0;
  for (int k = 1; k <= m; ++k) sum += std::pow(static_cast<double>(n), 0.5 * k) * std::pow(s, 2 * k);
  return sum;
}

PerturbedHamiltonian perturb(const GradedPolynomial& h, const BrickSample& sample) {
  if (h.dof() != sample.n) throw DimensionError("perturb: Hamiltonian and sample dimensions differ");
  PerturbedHamiltonian out{h + brick_to_hamiltonian(sample), std::nullopt};
  try {
    out.omega = diagonal_frequency(out.hamiltonian);
  } catch (const PreconditionError&) {
  }
  return out;
}

nlohmann::json brick_to_json(const BrickSample& s) {
  nlohmann::json parts = nlohmann::json::array();
  for (std::size_t k = 0; k < s.parts.size(); ++k)
    parts.push_back({{"k", k + 1},
                     {"bombieri_norm", bombieri_norm(s.parts[k], static_cast<int>(k + 1))},
                     {"terms", action_polynomial_to_json(s.parts[k])}});
  return {{"schema", "bnfkit.brick_sample/1"}, {"n", s.n}, {"m", s.m}, {"seed", s.seed}, {"parts", parts}};
}

BrickSample brick_from_json(const nlohmann::json& j) {
  BrickSample s;
  s.n = j.at("n").get<int>();
  s.m = j.at("m").get<int>();
  s.seed = j.value("seed", std::uint64_t{0});
  const auto& parts = j.at("parts");
  if (static_cast<int>(parts.size()) != s.m) throw ShapeError("brick sample: expected m parts");
  for (int k = 1; k <= s.m; ++k) {
    ActionPolynomial p = action_polynomial_from_json(s.n, parts[static_cast<std::size_t>(k - 1)].at("terms"));
    if (!p.is_homogeneous(k)) throw ShapeError("brick sample: part " + std::to_string(k) + " is not homogeneous");
    if (bombieri_norm(p, k) > 1.0 + 1e-12)
      throw DomainError("brick sample: part " + std::to_string(k) + " lies outside the unit Bombieri ball");
    s.parts.push_back(std::move(p));
  }
  return s;
}

}  // namespace bnfkit
