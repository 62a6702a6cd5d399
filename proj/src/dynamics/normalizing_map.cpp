#include "bnfkit/dynamics/normalizing_map.hpp"

#include "bnfkit/dynamics/integrator.hpp"

namespace bnfkit {

std::vector<double> apply_normalizing_map(const NormalFormResult& nf, std::vector<double> z, int steps) {
  for (auto it = nf.generators.rbegin(); it != nf.generators.rend(); ++it)
    if (!it->is_zero()) z = hamiltonian_flow(*it, std::move(z), 1.0, steps);
  return z;
}

}  // namespace bnfkit
