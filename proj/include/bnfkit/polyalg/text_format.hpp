#pragma once

#include <iosfwd>
#include <string>

#include "bnfkit/polyalg/graded_polynomial.hpp"

namespace bnfkit {

/// Canonical text form: one term per line,
///
///     a_1 ... a_n | b_1 ... b_n | re im
///
/// in graded-lex order with %.17g coefficients, so that equal polynomials
/// serialize to identical bytes. Lines starting with '#' and blank lines are
/// ignored when parsing.
std::string to_canonical_text(const GradedPolynomial& p);
void write_canonical_text(std::ostream& os, const GradedPolynomial& p);

/// Parses the canonical form. n is taken from the first term; an empty input
/// needs the explicit dof overload. Throws ShapeError on malformed lines.
GradedPolynomial parse_canonical_text(const std::string& text);
GradedPolynomial parse_canonical_text(const std::string& text, int n);

/// %.17g
std::string format_double(double v);

}  // namespace bnfkit
