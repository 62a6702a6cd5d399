#include "bnfkit/polyalg/action_polynomial.hpp"

namespace bnfkit {

template class BasicActionPolynomial<double>;
template class BasicActionPolynomial<ExtendedReal>;
template double bombieri_norm(const ActionPolynomial&, int);
template ExtendedReal bombieri_norm(const ExtActionPolynomial&, int);

int homogeneous_dimension(int n, int k) {
  if (n < 1 || k < 0) throw DomainError("homogeneous_dimension: need n >= 1 and k >= 0");
  return static_cast<int>(binomial(k + n - 1, n - 1) + 0.5);
}

}  // namespace bnfkit
