#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnfkit/errors.hpp"
#include "bnfkit/polyalg/exponent.hpp"
#include "bnfkit/polyalg/graded_polynomial.hpp"
#include "bnfkit/polyalg/scalar.hpp"

namespace bnfkit {

/// Real polynomial in the n action variables, P(I) = Σ p_l I^l. Used for the
/// Birkhoff invariants, the truncated normal form h_m, and brick samples.
template <class R>
class BasicActionPolynomial {
 public:
  using Scalar = R;
  using Term = std::pair<Exponent, R>;

  BasicActionPolynomial() = default;
  explicit BasicActionPolynomial(int n) : n_(check(n)) {}
  /// Duplicates are summed; exact zeros are dropped.
  BasicActionPolynomial(int n, std::vector<Term> terms);

  /// ω·I
  static BasicActionPolynomial linear(std::span<const R> omega);
  static BasicActionPolynomial monomial(int n, Exponent l, R c) {
    return BasicActionPolynomial(n, std::vector<Term>{{l, std::move(c)}});
  }

  int dof() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_degree() const { return terms_.empty() ? 0 : terms_.back().first.degree(); }
  int min_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }
  bool is_homogeneous(int k) const {
    return std::all_of(terms_.begin(), terms_.end(), [k](const Term& t) { return t.first.degree() == k; });
  }

  R coefficient(Exponent l) const;
  BasicActionPolynomial homogeneous_part(int k) const;

  /// Coefficients of every monomial of degree k (zeros included), graded-lex order.
  std::vector<R> coefficient_vector(int k) const;
  static BasicActionPolynomial from_coefficient_vector(int n, int k, std::span<const R> values);

  /// The phase-space Hamiltonian P(I(x,y)), each I^l becoming ζ^l ζ̄^l.
  BasicGradedPolynomial<R> lift() const;

  /// Composition with a linear map of the actions: (P∘A)(I) = P(A I).
  BasicActionPolynomial compose_linear(const std::vector<std::vector<R>>& a) const;

  R evaluate(std::span<const R> actions) const;

  friend BasicActionPolynomial operator+(const BasicActionPolynomial& a, const BasicActionPolynomial& b) {
    return combine(a, b, R(1));
  }
  friend BasicActionPolynomial operator-(const BasicActionPolynomial& a, const BasicActionPolynomial& b) {
    return combine(a, b, R(-1));
  }
  friend BasicActionPolynomial operator*(const BasicActionPolynomial& a, const R& s) {
    std::vector<Term> t;
    for (const auto& [l, c] : a.terms_) t.emplace_back(l, c * s);
    return BasicActionPolynomial(a.n_, std::move(t));
  }
  friend BasicActionPolynomial operator*(const R& s, const BasicActionPolynomial& a) { return a * s; }
  friend bool operator==(const BasicActionPolynomial& a, const BasicActionPolynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  static int check(int n) {
    if (n < 1 || n > kMaxDof) throw DimensionError("action polynomial dimension out of range");
    return n;
  }
  static BasicActionPolynomial combine(const BasicActionPolynomial& a, const BasicActionPolynomial& b, R sign);

  int n_ = 1;
  std::vector<Term> terms_;
};

using ActionPolynomial = BasicActionPolynomial<double>;
using ExtActionPolynomial = BasicActionPolynomial<ExtendedReal>;

/// Bombieri norm sqrt(Σ_{|l|=k} |p_l|² / C_k^l) of a degree-k homogeneous
/// action polynomial. Throws ShapeError on non-homogeneous input.
template <class R>
R bombieri_norm(const BasicActionPolynomial<R>& p, int k);

/// Number of monomials of degree k in n variables: C(k+n-1, n-1).
int homogeneous_dimension(int n, int k);

// ---------------------------------------------------------------------------

template <class R>
BasicActionPolynomial<R>::BasicActionPolynomial(int n, std::vector<Term> terms) : n_(check(n)) {
  std::map<Exponent, R> acc;
  for (auto& [l, c] : terms) {
    for (int s = n_; s < kMaxSlots; ++s)
      if (l[s] != 0) throw DimensionError("action exponent uses slots beyond n");
    auto [it, inserted] = acc.try_emplace(l, c);
    if (!inserted) it->second += c;
  }
  for (auto& [l, c] : acc)
    if (c != R(0)) terms_.emplace_back(l, std::move(c));
}

template <class R>
BasicActionPolynomial<R> BasicActionPolynomial<R>::linear(std::span<const R> omega) {
  const int n = static_cast<int>(omega.size());
  std::vector<Term> t;
  for (int j = 0; j < n; ++j) t.emplace_back(Exponent::unit(j), omega[static_cast<std::size_t>(j)]);
  return BasicActionPolynomial(n, std::move(t));
}

template <class R>
R BasicActionPolynomial<R>::coefficient(Exponent l) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), l,
                             [](const Term& t, Exponent key) { return t.first < key; });
  if (it != terms_.end() && it->first == l) return it->second;
  return R(0);
}

template <class R>
BasicActionPolynomial<R> BasicActionPolynomial<R>::homogeneous_part(int k) const {
  BasicActionPolynomial out(n_);
  for (const auto& t : terms_)
    if (t.first.degree() == k) out.terms_.push_back(t);
  return out;
}

template <class R>
std::vector<R> BasicActionPolynomial<R>::coefficient_vector(int k) const {
  std::vector<R> out;
  for (Exponent l : homogeneous_exponents(n_, k)) out.push_back(coefficient(l));
  return out;
}

template <class R>
BasicActionPolynomial<R> BasicActionPolynomial<R>::from_coefficient_vector(int n, int k, std::span<const R> values) {
  const auto basis = homogeneous_exponents(n, k);
  if (basis.size() != values.size()) throw ShapeError("coefficient vector has wrong length for degree");
  std::vector<Term> t;
  for (std::size_t i = 0; i < basis.size(); ++i) t.emplace_back(basis[i], values[i]);
  return BasicActionPolynomial(n, std::move(t));
}

template <class R>
BasicGradedPolynomial<R> BasicActionPolynomial<R>::lift() const {
  std::vector<typename BasicGradedPolynomial<R>::Term> t;
  t.reserve(terms_.size());
  for (const auto& [l, c] : terms_) t.emplace_back(lift_action_exponent(l, n_), Complex<R>(c));
  return BasicGradedPolynomial<R>(n_, std::move(t));
}

template <class R>
BasicActionPolynomial<R> BasicActionPolynomial<R>::compose_linear(const std::vector<std::vector<R>>& a) const {
  if (static_cast<int>(a.size()) != n_) throw DimensionError("linear map has wrong row count");
  // Expand Π_j (Σ_k a_jk I_k)^{l_j} term by term with dense maps.
  std::map<Exponent, R> acc;
  for (const auto& [l, c] : terms_) {
    std::map<Exponent, R> cur{{Exponent{}, c}};
    for (int j = 0; j < n_; ++j) {
      if (static_cast<int>(a[static_cast<std::size_t>(j)].size()) != n_)
        throw DimensionError("linear map has wrong column count");
      for (int p = 0; p < l[j]; ++p) {
        std::map<Exponent, R> next;
        for (const auto& [e, v] : cur)
          for (int k = 0; k < n_; ++k) {
            const R w = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            if (w == R(0)) continue;
            next[e + Exponent::unit(k)] += v * w;
          }
        cur = std::move(next);
      }
    }
    for (const auto& [e, v] : cur) acc[e] += v;
  }
  std::vector<Term> t(acc.begin(), acc.end());
  return BasicActionPolynomial(n_, std::move(t));
}

template <class R>
R BasicActionPolynomial<R>::evaluate(std::span<const R> actions) const {
  if (static_cast<int>(actions.size()) != n_) throw DimensionError("action point has wrong dimension");
  R sum(0);
  for (const auto& [l, c] : terms_) {
    R v = c;
    for (int j = 0; j < n_; ++j)
      for (int p = 0; p < l[j]; ++p) v *= actions[static_cast<std::size_t>(j)];
    sum += v;
  }
  return sum;
}

template <class R>
BasicActionPolynomial<R> BasicActionPolynomial<R>::combine(const BasicActionPolynomial& a,
                                                           const BasicActionPolynomial& b, R sign) {
  if (a.n_ != b.n_) throw DimensionError("action polynomials have different dimension");
  std::vector<Term> t(a.terms_);
  for (const auto& [l, c] : b.terms_) t.emplace_back(l, c * sign);
  return BasicActionPolynomial(a.n_, std::move(t));
}

template <class R>
R bombieri_norm(const BasicActionPolynomial<R>& p, int k) {
  using std::sqrt;
  if (!p.is_homogeneous(k))
    throw ShapeError("bombieri_norm: polynomial is not homogeneous of degree " + std::to_string(k));
  R sum(0);
  for (const auto& [l, c] : p.terms()) sum += c * c / R(multinomial(l, p.dof()));
  return sqrt(sum);
}

extern template class BasicActionPolynomial<double>;
extern template class BasicActionPolynomial<ExtendedReal>;
extern template double bombieri_norm(const ActionPolynomial&, int);
extern template ExtendedReal bombieri_norm(const ExtActionPolynomial&, int);

}  // namespace bnfkit
