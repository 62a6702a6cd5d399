#include "bnfkit/bnf/normal_form.hpp"

#include <algorithm>
#include <cmath>

#include "bnfkit/polyalg/conversion.hpp"

namespace bnfkit {

template <class R>
std::vector<R> quadratic_frequency(const BasicGradedPolynomial<R>& h) {
  using std::abs;
  const int n = h.dof();
  std::vector<R> omega(static_cast<std::size_t>(n), R(0));
  const auto quadratic = h.homogeneous_part(2);
  for (const auto& [e, c] : quadratic.terms()) {
    bool matched = false;
    for (int j = 0; j < n && !matched; ++j) {
      if (e != Exponent::unit(j) + Exponent::unit(n + j)) continue;
      if (abs(c.im) > ScalarTraits<R>::prune_threshold() * 100 * std::max(R(1), R(abs(c.re))))
        throw PreconditionError("quadratic part has a non-real action coefficient");
      omega[static_cast<std::size_t>(j)] = c.re;
      matched = true;
    }
    if (!matched) throw PreconditionError("quadratic part is not diagonal (apply diagonalize_quadratic first)");
  }
  return omega;
}

template <class R>
HomologicalSplit<R> homological_solve(const BasicGradedPolynomial<R>& rhs, const std::vector<R>& omega) {
  using std::abs;
  const int n = rhs.dof();
  if (static_cast<int>(omega.size()) != n) throw DimensionError("frequency and polynomial dimensions differ");
  if (rhs.min_degree() != rhs.max_degree()) throw ShapeError("homological_solve: right-hand side is not homogeneous");
  R wmax(0);
  for (const R& w : omega) wmax = std::max(wmax, R(abs(w)));
  const R guard = wmax * R(kSmallDivisorGuard);

  HomologicalSplit<R> out;
  std::vector<typename BasicGradedPolynomial<R>::Term> kernel, chi;
  for (const auto& [e, c] : rhs.terms()) {
    if (is_diagonal(e, n)) {
      kernel.emplace_back(e, c);
      continue;
    }
    std::vector<int> k(static_cast<std::size_t>(n));
    R kw(0);
    for (int j = 0; j < n; ++j) {
      k[static_cast<std::size_t>(j)] = e[j] - e[n + j];
      kw += R(k[static_cast<std::size_t>(j)]) * omega[static_cast<std::size_t>(j)];
    }
    const double akw = to_double(R(abs(kw)));
    if (!(abs(kw) >= guard) || wmax == R(0)) throw SmallDivisorError(k, akw, e.degree());
    if (akw < out.min_divisor) {
      out.min_divisor = akw;
      out.min_divisor_k = k;
    }
    // c / (i kw) = -i c / kw
    chi.emplace_back(e, Complex<R>(c.im / kw, -c.re / kw));
  }
  out.kernel = BasicGradedPolynomial<R>(n, std::move(kernel));
  out.generator = BasicGradedPolynomial<R>(n, std::move(chi));
  return out;
}

template <class R>
BasicGradedPolynomial<R> lie_transform(const BasicGradedPolynomial<R>& f, const BasicGradedPolynomial<R>& chi,
                                       int trunc) {
  BasicGradedPolynomial<R> result = f.truncated(trunc);
  if (chi.is_zero()) return result;
  BasicGradedPolynomial<R> term = result;
  for (int k = 1;; ++k) {
    // Fixed operand order (no canonical swap): the accumulation order of every
    // low-degree coefficient then never depends on higher-degree terms.
    term = detail::raw_bracket(term, chi, trunc) * Complex<R>(R(1) / R(k));
    if (term.is_zero()) break;
    result = result + term;
  }
  return result;
}

template <class R>
BasicActionPolynomial<R> BasicNormalFormResult<R>::integrable_part() const {
  BasicActionPolynomial<R> h(dof());
  for (const auto& b : invariants) h = h + b;
  return h;
}

template <class R>
BasicNormalFormResult<R> normalize(const BasicGradedPolynomial<R>& h, int m, NormalizeOptions options,
                                   const BasicGauge<R>& gauge) {
  const int n = h.dof();
  if (m < 1) throw DomainError("normalize: order m must be >= 1");
  const int trunc = options.trunc == 0 ? 2 * m + 2 : options.trunc;
  if (trunc < 2 * m) throw DomainError("normalize: truncation degree must be >= 2m");
  if (!h.is_zero() && h.min_degree() < 2)
    throw PreconditionError("normalize: Hamiltonian has terms of degree below 2 (shift the equilibrium to the origin)");
  for (const auto& [d, g] : gauge.extra) {
    for (const auto& [e, c] : g.terms())
      if (!is_diagonal(e, n) || e.degree() != d) throw ShapeError("gauge terms must be pure-action of the keyed degree");
  }

  BasicNormalFormResult<R> out;
  out.omega = quadratic_frequency(h);
  out.order_m = m;
  out.trunc = trunc;

  BasicGradedPolynomial<R> cur = h.truncated(trunc);
  for (int d = 3; d <= 2 * m; ++d) {
    HomologicalSplit<R> split = homological_solve(cur.homogeneous_part(d), out.omega);
    if (auto it = gauge.extra.find(d); it != gauge.extra.end()) split.generator = split.generator + it->second;
    out.divisor_log.push_back({d, split.min_divisor, split.min_divisor_k});
    BasicGradedPolynomial<R> next = lie_transform(cur, split.generator, trunc);
    // The degree-d part is the kernel up to rounding; store it exactly.
    cur = next - next.homogeneous_part(d) + split.kernel;
    out.generators.push_back(std::move(split.generator));
  }

  for (int k = 1; k <= m; ++k) {
    std::vector<typename BasicActionPolynomial<R>::Term> t;
    const auto part = cur.homogeneous_part(2 * k);
    for (const auto& [e, c] : part.terms()) {
      std::uint64_t bits = e.bits() & ~((std::uint64_t{1} << (64 - 8 * n)) - 1);
      t.emplace_back(Exponent(bits), c.re);
    }
    out.invariants.emplace_back(n, std::move(t));
  }
  out.remainder = cur.degree_range(2 * m + 1, trunc);
  out.transformed = std::move(cur);
  return out;
}

double invariant_discrepancy(const std::vector<ActionPolynomial>& a, const std::vector<ActionPolynomial>& b) {
  if (a.size() != b.size()) throw ShapeError("invariant lists differ in length");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double scale = 0.0;
    for (const auto& [l, c] : a[k].terms()) scale = std::max(scale, std::abs(c));
    for (const auto& [l, c] : b[k].terms()) scale = std::max(scale, std::abs(c));
    const ActionPolynomial diff = a[k] - b[k];
    for (const auto& [l, c] : diff.terms()) worst = std::max(worst, std::abs(c) / (scale > 0 ? scale : 1.0));
  }
  return worst;
}

bool invariant_uniqueness_check(const GradedPolynomial& h, int m, int trunc1, int trunc2, double rel_tol) {
  if (trunc1 < 2 * m || trunc2 < 2 * m) throw DomainError("invariant_uniqueness_check: truncations must be >= 2m");
  const auto r1 = normalize(h, m, {trunc1});
  const auto r2 = normalize(h, m, {trunc2});
  return invariant_discrepancy(r1.invariants, r2.invariants) <= rel_tol;
}

double remainder_norm(const NormalFormResult& result, double s_m) { return sup_norm_bound(result.remainder, s_m); }

double remainder_norm(const ExtNormalFormResult& result, double s_m) {
  return sup_norm_bound(convert_polynomial<double>(result.remainder), s_m);
}

double radius_schedule(double gamma, double tau, int m, double s) {
  if (!(gamma > 0.0) || !(tau > 0.0) || !(s > 0.0)) throw DomainError("radius_schedule: gamma, tau and s must be positive");
  if (m < 1) throw DomainError("radius_schedule: m must be >= 1");
  return std::min(gamma / std::pow(static_cast<double>(m), 1.0 + tau), s);
}

NormalFormResult to_double_result(const ExtNormalFormResult& r) {
  NormalFormResult out;
  for (const auto& w : r.omega) out.omega.push_back(to_double(w));
  out.order_m = r.order_m;
  out.trunc = r.trunc;
  for (const auto& b : r.invariants) out.invariants.push_back(convert_polynomial<double>(b));
  for (const auto& g : r.generators) out.generators.push_back(convert_polynomial<double>(g));
  out.remainder = convert_polynomial<double>(r.remainder);
  out.transformed = convert_polynomial<double>(r.transformed);
  out.divisor_log = r.divisor_log;
  return out;
}

template HomologicalSplit<double> homological_solve(const GradedPolynomial&, const std::vector<double>&);
template HomologicalSplit<ExtendedReal> homological_solve(const ExtGradedPolynomial&, const std::vector<ExtendedReal>&);
template GradedPolynomial lie_transform(const GradedPolynomial&, const GradedPolynomial&, int);
template ExtGradedPolynomial lie_transform(const ExtGradedPolynomial&, const ExtGradedPolynomial&, int);
template NormalFormResult normalize(const GradedPolynomial&, int, NormalizeOptions, const BasicGauge<double>&);
template ExtNormalFormResult normalize(const ExtGradedPolynomial&, int, NormalizeOptions,
                                       const BasicGauge<ExtendedReal>&);
template std::vector<double> quadratic_frequency(const GradedPolynomial&);
template std::vector<ExtendedReal> quadratic_frequency(const ExtGradedPolynomial&);
template struct BasicNormalFormResult<double>;
template struct BasicNormalFormResult<ExtendedReal>;

}  // namespace bnfkit
