#pragma once

#include "bnfkit/polyalg/action_polynomial.hpp"
#include "bnfkit/polyalg/graded_polynomial.hpp"

namespace bnfkit {

template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    return to_double(v);
  } else {
    return To(v);
  }
}

/// Coefficient-wise conversion between scalar types (double <-> ExtendedReal).
template <class To, class From>
BasicGradedPolynomial<To> convert_polynomial(const BasicGradedPolynomial<From>& p) {
  std::vector<typename BasicGradedPolynomial<To>::Term> t;
  t.reserve(p.size());
  for (const auto& [e, c] : p.terms())
    t.emplace_back(e, Complex<To>(scalar_cast<To>(c.re), scalar_cast<To>(c.im)));
  return BasicGradedPolynomial<To>(p.dof(), std::move(t));
}

template <class To, class From>
BasicActionPolynomial<To> convert_polynomial(const BasicActionPolynomial<From>& p) {
  std::vector<typename BasicActionPolynomial<To>::Term> t;
  for (const auto& [l, c] : p.terms()) t.emplace_back(l, scalar_cast<To>(c));
  return BasicActionPolynomial<To>(p.dof(), std::move(t));
}

}  // namespace bnfkit
