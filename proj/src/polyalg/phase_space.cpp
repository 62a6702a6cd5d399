#include "bnfkit/polyalg/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

namespace bnfkit {

Frequency::Frequency(std::vector<double> omega) : omega_(std::move(omega)) {
  if (omega_.empty() || static_cast<int>(omega_.size()) > kMaxDof)
    throw DimensionError("frequency vector must have 1.." + std::to_string(kMaxDof) + " entries");
  for (double w : omega_)
    if (!std::isfinite(w)) throw DomainError("frequency entries must be finite");
}

double Frequency::max_abs() const {
  double m = 0.0;
  for (double w : omega_) m = std::max(m, std::abs(w));
  return m;
}

bool Frequency::is_zero() const { return max_abs() == 0.0; }

std::vector<double> formal_actions(std::span<const double> z) {
  if (z.size() % 2 != 0) throw DimensionError("phase point must have an even number of entries");
  const std::size_t n = z.size() / 2;
  std::vector<double> actions(n);
  for (std::size_t j = 0; j < n; ++j) actions[j] = 0.5 * (z[j] * z[j] + z[n + j] * z[n + j]);
  return actions;
}

namespace {

using Poly = GradedPolynomial;
using C = Complex<double>;

// Substitutes slot s of every term by images[s] (a polynomial in the target
// slots) and expands. Powers of the images are memoized per slot.
Poly substitute(const Poly& p, const std::vector<Poly>& images) {
  const int n = p.dof();
  std::vector<std::vector<Poly>> powers(static_cast<std::size_t>(2 * n));
  auto power = [&](int s, int k) -> const Poly& {
    auto& cache = powers[static_cast<std::size_t>(s)];
    if (cache.empty()) cache.push_back(Poly::constant(n, 1.0));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[static_cast<std::size_t>(s)]);
    return cache[static_cast<std::size_t>(k)];
  };
  TermAccumulator<double> acc;
  for (const auto& [e, c] : p.terms()) {
    Poly term = Poly::constant(n, 1.0) * c;
    for (int s = 0; s < 2 * n; ++s)
      if (int k = e[s]; k > 0) term = term * power(s, k);
    for (const auto& [e2, c2] : term.terms()) {
      auto [it, inserted] = acc.try_emplace(e2, c2);
      if (!inserted) it->second += c2;
    }
  }
  return Poly(n, std::move(acc));
}

}  // namespace

RealForm to_real_form(const GradedPolynomial& p) {
  const int n = p.dof();
  const double h = 1.0 / std::sqrt(2.0);
  // In the result, slot j stands for x_j and slot n+j for y_j.
  std::vector<Poly> images;
  for (int j = 0; j < n; ++j)  // ζ_j = (x_j - i y_j)/√2
    images.push_back(Poly(n, std::vector<Poly::Term>{{Exponent::unit(j), C(h)}, {Exponent::unit(n + j), C(0.0, -h)}}));
  for (int j = 0; j < n; ++j)  // ζ̄_j = (x_j + i y_j)/√2
    images.push_back(Poly(n, std::vector<Poly::Term>{{Exponent::unit(j), C(h)}, {Exponent::unit(n + j), C(0.0, h)}}));
  const Poly q = substitute(p, images);
  RealForm out;
  out.n = n;
  out.terms.assign(q.terms().begin(), q.terms().end());
  return out;
}

GradedPolynomial from_real_form(const RealForm& r) {
  const int n = r.n;
  std::vector<Poly> images;
  for (int j = 0; j < n; ++j) images.push_back(Poly::x(n, j));
  for (int j = 0; j < n; ++j) images.push_back(Poly::y(n, j));
  std::vector<Poly::Term> terms(r.terms.begin(), r.terms.end());
  return substitute(Poly(n, std::move(terms)), images);
}

double sup_norm_bound(const GradedPolynomial& p, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("sup_norm_bound: radius must be positive");
  const RealForm r = to_real_form(p);
  double sum = 0.0;
  for (const auto& [e, c] : r.terms) sum += abs(c) * std::pow(s, e.degree());
  return sum;
}

GradedPolynomial compose_linear(const GradedPolynomial& p, const Eigen::MatrixXd& t) {
  const int n = p.dof();
  if (t.rows() != 2 * n || t.cols() != 2 * n) throw DimensionError("linear map has wrong shape");
  // Old coordinates as polynomials in the new complex coordinates.
  std::vector<Poly> xn, yn;
  for (int k = 0; k < n; ++k) {
    xn.push_back(Poly::x(n, k));
    yn.push_back(Poly::y(n, k));
  }
  auto old_coordinate = [&](int row) {
    Poly acc(n);
    for (int k = 0; k < n; ++k) {
      if (t(row, k) != 0.0) acc = acc + xn[static_cast<std::size_t>(k)] * C(t(row, k));
      if (t(row, n + k) != 0.0) acc = acc + yn[static_cast<std::size_t>(k)] * C(t(row, n + k));
    }
    return acc;
  };
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Poly> images(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j) {
    const Poly xo = old_coordinate(j);
    const Poly yo = old_coordinate(n + j);
    images[static_cast<std::size_t>(j)] = xo * C(h) + yo * C(0.0, -h);
    images[static_cast<std::size_t>(n + j)] = xo * C(h) + yo * C(0.0, h);
  }
  return substitute(p, images);
}

Eigen::MatrixXd quadratic_hessian(const GradedPolynomial& h2) {
  if (h2.min_degree() != -1 && (h2.min_degree() != 2 || h2.max_degree() != 2))
    throw ShapeError("quadratic part must be homogeneous of degree 2");
  const int n = h2.dof();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const RealForm real = to_real_form(h2);
  for (const auto& [e, c] : real.terms) {
    std::vector<int> slots;
    for (int k = 0; k < 2 * n; ++k)
      for (int p = 0; p < e[k]; ++p) slots.push_back(k);
    if (slots[0] == slots[1]) {
      s(slots[0], slots[0]) += 2.0 * c.re;
    } else {
      s(slots[0], slots[1]) += c.re;
      s(slots[1], slots[0]) += c.re;
    }
  }
  return s;
}

Eigen::MatrixXd symplectic_form(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return j;
}

QuadraticDiagonalization diagonalize_quadratic(const GradedPolynomial& h2) {
  if (!h2.reality_flag()) throw ShapeError("quadratic part must be real-valued");
  const int n = h2.dof();
  const Eigen::MatrixXd s = quadratic_hessian(h2);
  const Eigen::MatrixXd jm = symplectic_form(n);
  const Eigen::MatrixXd a = jm * s;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NotEllipticError("eigen-decomposition of J·S failed");
  const Eigen::VectorXcd lambda = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();

  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (std::abs(lambda(i).real()) > 1e-8 * scale)
      throw NotEllipticError("linearization has eigenvalue with nonzero real part: " +
                             std::to_string(lambda(i).real()));

  struct Mode {
    double freq;
    int dominant;
    Eigen::VectorXd e, f;
  };
  std::vector<Mode> modes;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double lam = lambda(i).imag();
    if (lam <= 1e-12 * scale) continue;
    Eigen::VectorXcd v = vectors.col(i);
    int dom = 0;
    double best = -1.0;
    for (int j = 0; j < n; ++j) {
      const double w = std::norm(v(j)) + std::norm(v(n + j));
      if (w > best * (1.0 + 1e-9)) {
        best = w;
        dom = j;
      }
    }
    std::complex<double> anchor = v(dom);
    if (std::abs(anchor) < 1e-12 * v.norm()) anchor = v(n + dom) / std::complex<double>(0.0, 1.0);
    v *= std::abs(anchor) / anchor;
    Eigen::VectorXd u = v.real(), w = v.imag();
    const double c = u.dot(jm * w);
    if (std::abs(c) < 1e-14) throw DegeneracyError("eigenvector has vanishing symplectic norm");
    Mode m;
    m.dominant = dom;
    if (c > 0) {
      m.freq = lam;
      m.e = u / std::sqrt(c);
      m.f = w / std::sqrt(c);
    } else {
      m.freq = -lam;
      m.e = u / std::sqrt(-c);
      m.f = -w / std::sqrt(-c);
    }
    modes.push_back(std::move(m));
  }
  if (static_cast<int>(modes.size()) != n)
    throw DegeneracyError("expected " + std::to_string(n) + " elliptic modes, found " + std::to_string(modes.size()) +
                          " (zero or repeated frequency)");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double wi = std::abs(modes[static_cast<std::size_t>(i)].freq);
      const double wj = std::abs(modes[static_cast<std::size_t>(j)].freq);
      if (std::abs(wi - wj) <= 1e-8 * std::max(wi, wj))
        throw DegeneracyError("repeated frequency magnitude " + std::to_string(wi));
    }
  std::stable_sort(modes.begin(), modes.end(), [](const Mode& l, const Mode& r) {
    if (l.dominant != r.dominant) return l.dominant < r.dominant;
    return std::abs(l.freq) < std::abs(r.freq);
  });

  QuadraticDiagonalization out;
  out.transform = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  std::vector<double> freqs;
  for (int j = 0; j < n; ++j) {
    out.transform.col(j) = modes[static_cast<std::size_t>(j)].e;
    out.transform.col(n + j) = modes[static_cast<std::size_t>(j)].f;
    freqs.push_back(modes[static_cast<std::size_t>(j)].freq);
  }
  out.omega = Frequency(std::move(freqs));
  return out;
}

Frequency diagonal_frequency(const GradedPolynomial& h) {
  const int n = h.dof();
  std::vector<double> omega(static_cast<std::size_t>(n), 0.0);
  const double tol = 1e-12;
  const GradedPolynomial quadratic = h.homogeneous_part(2);
  for (const auto& [e, c] : quadratic.terms()) {
    bool matched = false;
    for (int j = 0; j < n; ++j)
      if (e == Exponent::unit(j) + Exponent::unit(n + j)) {
        if (std::abs(c.im) > tol * std::max(1.0, std::abs(c.re)))
          throw PreconditionError("quadratic part has a non-real action coefficient");
        omega[static_cast<std::size_t>(j)] = c.re;
        matched = true;
      }
    if (!matched) throw PreconditionError("quadratic part is not diagonal (apply diagonalize_quadratic first)");
  }
  return Frequency(std::move(omega));
}

}  // namespace bnfkit
