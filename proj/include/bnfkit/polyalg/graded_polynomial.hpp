#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnfkit/errors.hpp"
#include "bnfkit/polyalg/exponent.hpp"
#include "bnfkit/polyalg/scalar.hpp"

namespace bnfkit {

template <class R>
using TermAccumulator = std::unordered_map<Exponent, Complex<R>, ExponentHash>;

/// Sparse polynomial on the 2n-dimensional phase space, stored in the
/// complexified diagonal coordinates
///
///     ζ_j = (x_j - i y_j)/√2,   ζ̄_j = (x_j + i y_j)/√2,
///
/// so that the formal action is I_j = ζ_j ζ̄_j and {ζ_j, ζ̄_j} = i. Terms are
/// kept graded-lex sorted with no stored (pruned) zeros. Values are immutable
/// once built; every operation returns a new polynomial.
template <class R>
class BasicGradedPolynomial {
 public:
  using Scalar = R;
  using Coefficient = Complex<R>;
  using Term = std::pair<Exponent, Coefficient>;

  BasicGradedPolynomial() = default;
  explicit BasicGradedPolynomial(int n) : n_(check_dof(n)) {}
  /// Duplicated exponents are summed; the result is pruned and sorted.
  BasicGradedPolynomial(int n, std::vector<Term> terms);
  BasicGradedPolynomial(int n, TermAccumulator<R>&& acc);

  static BasicGradedPolynomial monomial(int n, Exponent e, Coefficient c) {
    return BasicGradedPolynomial(n, std::vector<Term>{{e, std::move(c)}});
  }
  static BasicGradedPolynomial zeta(int n, int j) { return monomial(n, Exponent::unit(j), R(1)); }
  static BasicGradedPolynomial zeta_bar(int n, int j) { return monomial(n, Exponent::unit(n + j), R(1)); }
  /// x_j = (ζ_j + ζ̄_j)/√2
  static BasicGradedPolynomial x(int n, int j);
  /// y_j = i(ζ_j - ζ̄_j)/√2
  static BasicGradedPolynomial y(int n, int j);
  /// I_j = ζ_j ζ̄_j = (x_j² + y_j²)/2
  static BasicGradedPolynomial action(int n, int j) {
    return monomial(n, Exponent::unit(j) + Exponent::unit(n + j), R(1));
  }
  static BasicGradedPolynomial constant(int n, R c) { return monomial(n, Exponent{}, std::move(c)); }
  /// ω·I
  static BasicGradedPolynomial harmonic(std::span<const R> omega);

  int dof() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Real-valued for real arguments: c(a,b) = conj c(b,a) within tolerance.
  bool reality_flag() const { return real_; }

  int min_degree() const { return terms_.empty() ? -1 : terms_.front().first.degree(); }
  int max_degree() const { return terms_.empty() ? -1 : terms_.back().first.degree(); }

  Coefficient coefficient(Exponent e) const;

  BasicGradedPolynomial homogeneous_part(int d) const { return degree_range(d, d); }
  BasicGradedPolynomial truncated(int max_deg) const { return degree_range(0, max_deg); }
  BasicGradedPolynomial degree_range(int lo, int hi) const;

  BasicGradedPolynomial derivative_zeta(int j) const { return derivative_slot(j); }
  BasicGradedPolynomial derivative_zeta_bar(int j) const { return derivative_slot(n_ + j); }

  /// Value at a real phase point z = (x_1..x_n, y_1..y_n).
  Coefficient evaluate(std::span<const R> z) const;

  friend BasicGradedPolynomial operator+(const BasicGradedPolynomial& a, const BasicGradedPolynomial& b) {
    return combine(a, b, R(1));
  }
  friend BasicGradedPolynomial operator-(const BasicGradedPolynomial& a, const BasicGradedPolynomial& b) {
    return combine(a, b, R(-1));
  }
  friend BasicGradedPolynomial operator-(const BasicGradedPolynomial& a) { return a * Coefficient(R(-1)); }
  friend BasicGradedPolynomial operator*(const BasicGradedPolynomial& a, const Coefficient& s) {
    std::vector<Term> t;
    t.reserve(a.terms_.size());
    for (const auto& [e, c] : a.terms_) t.emplace_back(e, c * s);
    return BasicGradedPolynomial(a.n_, std::move(t));
  }
  friend BasicGradedPolynomial operator*(const Coefficient& s, const BasicGradedPolynomial& a) { return a * s; }
  friend BasicGradedPolynomial operator*(const BasicGradedPolynomial& a, const BasicGradedPolynomial& b) {
    return multiply(a, b, std::numeric_limits<int>::max());
  }
  friend bool operator==(const BasicGradedPolynomial& a, const BasicGradedPolynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Product with every term of degree > max_deg discarded.
  static BasicGradedPolynomial multiply(const BasicGradedPolynomial& a, const BasicGradedPolynomial& b,
                                        int max_deg);

  /// Canonical total order on polynomials (used to fix evaluation order).
  static int compare(const BasicGradedPolynomial& a, const BasicGradedPolynomial& b);

 private:
  static int check_dof(int n) {
    if (n < 1 || n > kMaxDof)
      throw DimensionError("degrees of freedom must be in [1, " + std::to_string(kMaxDof) + "], got " +
                           std::to_string(n));
    return n;
  }
  static BasicGradedPolynomial combine(const BasicGradedPolynomial& a, const BasicGradedPolynomial& b, R sign);
  BasicGradedPolynomial derivative_slot(int slot) const;
  void finalize(TermAccumulator<R>&& acc);
  bool compute_reality() const;

  int n_ = 1;
  std::vector<Term> terms_;
  bool real_ = true;
};

using GradedPolynomial = BasicGradedPolynomial<double>;
using ExtGradedPolynomial = BasicGradedPolynomial<ExtendedReal>;

/// Poisson bracket {P,Q} = Σ_j ∂P/∂x_j ∂Q/∂y_j − ∂P/∂y_j ∂Q/∂x_j, evaluated in
/// the complex coordinates as i Σ_j (∂_ζ P ∂_ζ̄ Q − ∂_ζ̄ P ∂_ζ Q). Terms of
/// degree above max_deg are never formed. Antisymmetry holds bit-for-bit.
template <class R>
BasicGradedPolynomial<R> poisson_bracket(const BasicGradedPolynomial<R>& p, const BasicGradedPolynomial<R>& q,
                                         int max_deg = std::numeric_limits<int>::max());

// ---------------------------------------------------------------------------

template <class R>
BasicGradedPolynomial<R>::BasicGradedPolynomial(int n, std::vector<Term> terms) : n_(check_dof(n)) {
  TermAccumulator<R> acc;
  acc.reserve(terms.size());
  for (auto& [e, c] : terms) {
    for (int s = 2 * n_; s < kMaxSlots; ++s)
      if (e[s] != 0) throw DimensionError("exponent uses slots beyond 2n");
    auto [it, inserted] = acc.try_emplace(e, c);
    if (!inserted) it->second += c;
  }
  finalize(std::move(acc));
}

template <class R>
BasicGradedPolynomial<R>::BasicGradedPolynomial(int n, TermAccumulator<R>&& acc) : n_(check_dof(n)) {
  finalize(std::move(acc));
}

template <class R>
void BasicGradedPolynomial<R>::finalize(TermAccumulator<R>&& acc) {
  terms_.clear();
  terms_.reserve(acc.size());
  for (auto& kv : acc) terms_.emplace_back(kv.first, std::move(kv.second));
  std::sort(terms_.begin(), terms_.end(), [](const Term& l, const Term& r) { return l.first < r.first; });

  // Relative pruning per homogeneous degree.
  const R thr = ScalarTraits<R>::prune_threshold();
  const R thr2 = thr * thr;
  std::vector<Term> kept;
  kept.reserve(terms_.size());
  std::size_t i = 0;
  while (i < terms_.size()) {
    std::size_t j = i;
    const int d = terms_[i].first.degree();
    R max2(0);
    while (j < terms_.size() && terms_[j].first.degree() == d) {
      R m2 = norm(terms_[j].second);
      if (m2 > max2) max2 = m2;
      ++j;
    }
    const R cut = thr2 * max2;
    for (std::size_t k = i; k < j; ++k) {
      R m2 = norm(terms_[k].second);
      if (m2 > cut && m2 != R(0)) kept.push_back(std::move(terms_[k]));
    }
    i = j;
  }
  terms_ = std::move(kept);
  real_ = compute_reality();
}

template <class R>
bool BasicGradedPolynomial<R>::compute_reality() const {
  // Tolerance: a hundred pruning thresholds relative to the degree's largest term.
  const R tol = ScalarTraits<R>::prune_threshold() * 100;
  std::size_t i = 0;
  while (i < terms_.size()) {
    const int d = terms_[i].first.degree();
    std::size_t j = i;
    R max_abs(0);
    while (j < terms_.size() && terms_[j].first.degree() == d) {
      R a = abs(terms_[j].second);
      if (a > max_abs) max_abs = a;
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) {
      const Coefficient mirror = coefficient(mirror_exponent(terms_[k].first, n_));
      if (abs(terms_[k].second - conj(mirror)) > tol * max_abs) return false;
    }
    i = j;
  }
  return true;
}

template <class R>
typename BasicGradedPolynomial<R>::Coefficient BasicGradedPolynomial<R>::coefficient(Exponent e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, Exponent key) { return t.first < key; });
  if (it != terms_.end() && it->first == e) return it->second;
  return Coefficient(R(0));
}

template <class R>
BasicGradedPolynomial<R> BasicGradedPolynomial<R>::x(int n, int j) {
  using std::sqrt;
  const R h = R(1) / sqrt(R(2));
  return BasicGradedPolynomial(n, std::vector<Term>{{Exponent::unit(j), Coefficient(h)},
                                                    {Exponent::unit(n + j), Coefficient(h)}});
}

template <class R>
BasicGradedPolynomial<R> BasicGradedPolynomial<R>::y(int n, int j) {
  using std::sqrt;
  const R h = R(1) / sqrt(R(2));
  return BasicGradedPolynomial(n, std::vector<Term>{{Exponent::unit(j), Coefficient(R(0), h)},
                                                    {Exponent::unit(n + j), Coefficient(R(0), -h)}});
}

template <class R>
BasicGradedPolynomial<R> BasicGradedPolynomial<R>::harmonic(std::span<const R> omega) {
  const int n = static_cast<int>(omega.size());
  std::vector<Term> t;
  for (int j = 0; j < n; ++j)
    t.emplace_back(Exponent::unit(j) + Exponent::unit(n + j), Coefficient(omega[static_cast<std::size_t>(j)]));
  return BasicGradedPolynomial(n, std::move(t));
}

template <class R>
BasicGradedPolynomial<R> BasicGradedPolynomial<R>::degree_range(int lo, int hi) const {
  BasicGradedPolynomial out(n_);
  for (const auto& t : terms_) {
    const int d = t.first.degree();
    if (d >= lo && d <= hi) out.terms_.push_back(t);
  }
  out.real_ = out.compute_reality();
  return out;
}

template <class R>
BasicGradedPolynomial<R> BasicGradedPolynomial<R>::combine(const BasicGradedPolynomial& a,
                                                           const BasicGradedPolynomial& b, R sign) {
  if (a.n_ != b.n_) throw DimensionError("polynomials have different degrees of freedom");
  TermAccumulator<R> acc;
  acc.reserve(a.terms_.size() + b.terms_.size());
  for (const auto& [e, c] : a.terms_) acc.emplace(e, c);
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = acc.try_emplace(e, c * sign);
    if (!inserted) it->second += c * sign;
  }
  return BasicGradedPolynomial(a.n_, std::move(acc));
}

template <class R>
BasicGradedPolynomial<R> BasicGradedPolynomial<R>::multiply(const BasicGradedPolynomial& a,
                                                            const BasicGradedPolynomial& b, int max_deg) {
  if (a.n_ != b.n_) throw DimensionError("polynomials have different degrees of freedom");
  TermAccumulator<R> acc;
  for (const auto& [ea, ca] : a.terms_) {
    const int da = ea.degree();
    for (const auto& [eb, cb] : b.terms_) {
      if (da + eb.degree() > max_deg) break;
      const Exponent e = ea + eb;
      auto [it, inserted] = acc.try_emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return BasicGradedPolynomial(a.n_, std::move(acc));
}

template <class R>
BasicGradedPolynomial<R> BasicGradedPolynomial<R>::derivative_slot(int slot) const {
  TermAccumulator<R> acc;
  const Exponent u = Exponent::unit(slot);
  for (const auto& [e, c] : terms_) {
    const int p = e[slot];
    if (p == 0) continue;
    acc.emplace(e - u, c * R(p));
  }
  return BasicGradedPolynomial(n_, std::move(acc));
}

template <class R>
typename BasicGradedPolynomial<R>::Coefficient BasicGradedPolynomial<R>::evaluate(std::span<const R> z) const {
  using std::sqrt;
  if (static_cast<int>(z.size()) != 2 * n_) throw DimensionError("evaluation point has wrong dimension");
  const R h = R(1) / sqrt(R(2));
  const int maxd = std::max(max_degree(), 0);
  // powers[slot][k]
  std::vector<std::vector<Coefficient>> powers(static_cast<std::size_t>(2 * n_));
  for (int j = 0; j < n_; ++j) {
    const Coefficient zeta((z[static_cast<std::size_t>(j)]) * h, -(z[static_cast<std::size_t>(n_ + j)]) * h);
    const Coefficient zeta_bar = conj(zeta);
    for (int s : {j, n_ + j}) {
      auto& pw = powers[static_cast<std::size_t>(s)];
      pw.assign(static_cast<std::size_t>(maxd + 1), Coefficient(R(1)));
      const Coefficient base = (s == j) ? zeta : zeta_bar;
      for (int k = 1; k <= maxd; ++k) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k - 1)] * base;
    }
  }
  Coefficient sum(R(0));
  for (const auto& [e, c] : terms_) {
    Coefficient v = c;
    for (int s = 0; s < 2 * n_; ++s)
      if (int p = e[s]; p > 0) v *= powers[static_cast<std::size_t>(s)][static_cast<std::size_t>(p)];
    sum += v;
  }
  return sum;
}

template <class R>
int BasicGradedPolynomial<R>::compare(const BasicGradedPolynomial& a, const BasicGradedPolynomial& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& [ea, ca] = a.terms_[i];
    const auto& [eb, cb] = b.terms_[i];
    if (ea != eb) return ea < eb ? -1 : 1;
    if (ca.re != cb.re) return ca.re < cb.re ? -1 : 1;
    if (ca.im != cb.im) return ca.im < cb.im ? -1 : 1;
  }
  return 0;
}

namespace detail {

template <class R>
BasicGradedPolynomial<R> raw_bracket(const BasicGradedPolynomial<R>& p, const BasicGradedPolynomial<R>& q,
                                     int max_deg) {
  const int n = p.dof();
  TermAccumulator<R> acc;
  for (const auto& [e1, c1] : p.terms()) {
    const int d1 = e1.degree();
    for (const auto& [e2, c2] : q.terms()) {
      if (d1 + e2.degree() - 2 > max_deg) break;
      const Exponent sum = e1 + e2;
      for (int j = 0; j < n; ++j) {
        const int f = e1[j] * e2[n + j] - e1[n + j] * e2[j];
        if (f == 0) continue;
        const Exponent e = sum - Exponent::unit(j) - Exponent::unit(n + j);
        const Complex<R> v = (c1 * c2) * R(f);
        auto [it, inserted] = acc.try_emplace(e, v);
        if (!inserted) it->second += v;
      }
    }
  }
  // Multiply by i.
  for (auto& kv : acc) kv.second = Complex<R>(-kv.second.im, kv.second.re);
  return BasicGradedPolynomial<R>(n, std::move(acc));
}

}  // namespace detail

template <class R>
BasicGradedPolynomial<R> poisson_bracket(const BasicGradedPolynomial<R>& p, const BasicGradedPolynomial<R>& q,
                                         int max_deg) {
  if (p.dof() != q.dof()) throw DimensionError("poisson_bracket: operands have different degrees of freedom");
  // Always iterate the canonically smaller operand outermost so that
  // {P,Q} and {Q,P} round identically.
  const int c = BasicGradedPolynomial<R>::compare(p, q);
  if (c == 0) return BasicGradedPolynomial<R>(p.dof());
  if (c < 0) return detail::raw_bracket(p, q, max_deg);
  return -detail::raw_bracket(q, p, max_deg);
}

extern template class BasicGradedPolynomial<double>;
extern template class BasicGradedPolynomial<ExtendedReal>;
extern template GradedPolynomial poisson_bracket(const GradedPolynomial&, const GradedPolynomial&, int);
extern template ExtGradedPolynomial poisson_bracket(const ExtGradedPolynomial&, const ExtGradedPolynomial&, int);

}  // namespace bnfkit
