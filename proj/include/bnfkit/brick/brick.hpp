#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "bnfkit/polyalg/action_polynomial.hpp"
#include "bnfkit/polyalg/phase_space.hpp"

namespace bnfkit {

/// An element of HB^{≤m}: h = Σ_{k=1..m} h_k with ||h_k||_k ≤ 1.
struct BrickSample {
  int n = 1;
  int m = 1;
  std::uint64_t seed = 0;
  /// parts[k-1] = h_k, homogeneous of degree k.
  std::vector<ActionPolynomial> parts;
};

/// Draws h_k independently and uniformly from the unit Bombieri ball of
/// degree-k homogeneous action polynomials. Degree k uses its own substream
/// of `seed`, so the degree-k part does not depend on m.
BrickSample sample_brick(int n, int m, std::uint64_t seed);

/// One uniform draw from the unit Bombieri ball in degree k.
ActionPolynomial sample_unit_ball(int n, int k, std::uint64_t seed);

/// Σ_k h_k(I(x, y)) as a phase-space polynomial (degree 2k per part).
GradedPolynomial brick_to_hamiltonian(const BrickSample& sample);

/// Σ_k n^{k/2} s^{2k}: majorant bound valid for every element of HB^{≤m}.
double brick_sup_bound(int n, int m, double s);

struct PerturbedHamiltonian {
  GradedPolynomial hamiltonian;
  /// Frequency of H + h when its quadratic part is diagonal.
  std::optional<Frequency> omega;
};

/// H + brick_to_hamiltonian(sample); reports the shifted frequency.
PerturbedHamiltonian perturb(const GradedPolynomial& h, const BrickSample& sample);

nlohmann::json brick_to_json(const BrickSample& s);
BrickSample brick_from_json(const nlohmann::json& j);

}  // namespace bnfkit
