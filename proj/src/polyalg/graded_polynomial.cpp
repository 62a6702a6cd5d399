#include "bnfkit/polyalg/graded_polynomial.hpp"

namespace bnfkit {

template class BasicGradedPolynomial<double>;
template class BasicGradedPolynomial<ExtendedReal>;
template GradedPolynomial poisson_bracket(const GradedPolynomial&, const GradedPolynomial&, int);
template ExtGradedPolynomial poisson_bracket(const ExtGradedPolynomial&, const ExtGradedPolynomial&, int);

}  // namespace bnfkit
