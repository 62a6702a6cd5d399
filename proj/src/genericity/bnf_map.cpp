#include "bnfkit/genericity/bnf_map.hpp"

#include <cmath>
#include <optional>

#include "bnfkit/parallel.hpp"
#include "bnfkit/polyalg/conversion.hpp"

namespace bnfkit {

int coefficient_dimension(int n, int m) {
  int d = 0;
  for (int k = 1; k <= m; ++k) d += homogeneous_dimension(n, k);
  return d;
}

template <class R>
std::vector<R> flatten(const ActionList<R>& p, int n) {
  std::vector<R> v;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k].dof() != n) throw DimensionError("flatten: mixed dimensions");
    const auto c = p[k].coefficient_vector(static_cast<int>(k + 1));
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

template <class R>
ActionList<R> unflatten(const std::vector<R>& v, int n, int m) {
  if (static_cast<int>(v.size()) != coefficient_dimension(n, m)) throw ShapeError("unflatten: wrong length");
  ActionList<R> out;
  std::size_t pos = 0;
  for (int k = 1; k <= m; ++k) {
    const std::size_t d = static_cast<std::size_t>(homogeneous_dimension(n, k));
    out.push_back(BasicActionPolynomial<R>::from_coefficient_vector(
        n, k, std::span<const R>(v.data() + pos, d)));
    pos += d;
  }
  return out;
}

template <class R>
ActionList<R> bnf_map(const BasicGradedPolynomial<R>& base_h, int m, const ActionList<R>& p) {
  const int n = base_h.dof();
  if (static_cast<int>(p.size()) != m) throw ShapeError("bnf_map: expected m action polynomials");
  BasicGradedPolynomial<R> h = base_h;
  for (int k = 1; k <= m; ++k) {
    const auto& pk = p[static_cast<std::size_t>(k - 1)];
    if (pk.dof() != n) throw DimensionError("bnf_map: P has wrong dimension");
    if (!pk.is_homogeneous(k)) throw ShapeError("bnf_map: P_" + std::to_string(k) + " is not homogeneous");
    h = h + pk.lift();
  }
  return normalize(h, m, {2 * m}).invariants;
}

template <class R>
JacobianReport jacobian_unit_check(const BasicGradedPolynomial<R>& base_h, int m, const ActionList<R>& p0,
                                   double fd_step, int jobs) {
  if (!(fd_step > 0.0)) throw DomainError("jacobian_unit_check: step must be positive");
  const int n = base_h.dof();
  const int dim = coefficient_dimension(n, m);
  const std::vector<R> x0 = flatten(p0, n);
  const unsigned digits = ExtendedReal::default_precision();

  auto jacobian = [&](double h) {
    // stencil index 2i: +h e_i, 2i+1: -h e_i
    std::vector<std::vector<R>> outputs(static_cast<std::size_t>(2 * dim));
    parallel_for(outputs.size(), jobs, [&](std::size_t s) {
      // Worker threads start at the library default precision.
      std::optional<ScopedPrecision> guard;
      if constexpr (std::is_same_v<R, ExtendedReal>) guard.emplace(digits);
      std::vector<R> x = x0;
      x[s / 2] += (s % 2 == 0) ? R(h) : R(-h);
      outputs[s] = flatten(bnf_map(base_h, m, unflatten(x, n, m)), n);
    });
    Eigen::MatrixXd jm(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int r = 0; r < dim; ++r) {
        const R diff = (outputs[static_cast<std::size_t>(2 * i)][static_cast<std::size_t>(r)] -
                        outputs[static_cast<std::size_t>(2 * i + 1)][static_cast<std::size_t>(r)]) /
                       R(2 * h);
        jm(r, i) = scalar_cast<double>(diff);
      }
    return jm;
  };

  JacobianReport rep;
  rep.n = n;
  rep.m = m;
  rep.step = fd_step;
  rep.jacobian = jacobian(fd_step);
  rep.jacobian_half = jacobian(fd_step / 2);
  rep.determinant = rep.jacobian.determinant();
  rep.determinant_half = rep.jacobian_half.determinant();
  rep.step_halving_change = (rep.jacobian - rep.jacobian_half).cwiseAbs().maxCoeff();

  std::vector<int> block(static_cast<std::size_t>(dim));
  for (int k = 1, pos = 0; k <= m; ++k)
    for (int i = 0; i < homogeneous_dimension(n, k); ++i) block[static_cast<std::size_t>(pos++)] = k;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const double v = rep.jacobian(r, c);
      if (block[static_cast<std::size_t>(c)] > block[static_cast<std::size_t>(r)])
        rep.max_upper_block = std::max(rep.max_upper_block, std::abs(v));
      else if (block[static_cast<std::size_t>(c)] == block[static_cast<std::size_t>(r)])
        rep.max_diagonal_block_deviation = std::max(rep.max_diagonal_block_deviation, std::abs(v - (r == c ? 1.0 : 0.0)));
    }
  return rep;
}

TriangularityReport triangularity_check(const GradedPolynomial& base_h, int m, const ActionList<double>& p, int j,
                                        const ActionPolynomial& replacement) {
  if (j < 1 || j > m) throw DomainError("triangularity_check: j out of range");
  ActionList<double> p2 = p;
  p2[static_cast<std::size_t>(j - 1)] = replacement;
  const auto q1 = bnf_map(base_h, m, p);
  const auto q2 = bnf_map(base_h, m, p2);
  TriangularityReport rep;
  rep.changed_degree = j;
  for (int i = 1; i < j; ++i)
    if (!(q1[static_cast<std::size_t>(i - 1)] == q2[static_cast<std::size_t>(i - 1)])) rep.lower_unchanged = false;
  const ActionPolynomial t1 = q1[0] - p[0], t2 = q2[0] - p2[0];
  double scale = 0.0;
  for (const auto& [l, c] : t1.terms()) scale = std::max(scale, std::abs(c));
  const ActionPolynomial diff = t1 - t2;
  for (const auto& [l, c] : diff.terms())
    rep.translation_deviation = std::max(rep.translation_deviation, std::abs(c) / std::max(scale, 1e-300));
  return rep;
}

nlohmann::json jacobian_to_json(const JacobianReport& r) {
  auto matrix = [](const Eigen::MatrixXd& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      std::vector<double> row(static_cast<std::size_t>(a.cols()));
      for (Eigen::Index c = 0; c < a.cols(); ++c) row[static_cast<std::size_t>(c)] = a(i, c);
      rows.push_back(row);
    }
    return rows;
  };
  return {{"schema", "bnfkit.jacobian/1"},
          {"n", r.n},
          {"m", r.m},
          {"fd_step", r.step},
          {"determinant", r.determinant},
          {"determinant_half_step", r.determinant_half},
          {"max_upper_block", r.max_upper_block},
          {"max_diagonal_block_deviation", r.max_diagonal_block_deviation},
          {"step_halving_change", r.step_halving_change},
          {"jacobian", matrix(r.jacobian)}};
}

template std::vector<double> flatten(const ActionList<double>&, int);
template std::vector<ExtendedReal> flatten(const ActionList<ExtendedReal>&, int);
template ActionList<double> unflatten(const std::vector<double>&, int, int);
template ActionList<ExtendedReal> unflatten(const std::vector<ExtendedReal>&, int, int);
template ActionList<double> bnf_map(const GradedPolynomial&, int, const ActionList<double>&);
template ActionList<ExtendedReal> bnf_map(const ExtGradedPolynomial&, int, const ActionList<ExtendedReal>&);
template JacobianReport jacobian_unit_check(const GradedPolynomial&, int, const ActionList<double>&, double, int);
template JacobianReport jacobian_unit_check(const ExtGradedPolynomial&, int, const ActionList<ExtendedReal>&, double,
                                            int);

}  // namespace bnfkit
