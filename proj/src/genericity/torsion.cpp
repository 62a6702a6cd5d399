#include "bnfkit/genericity/torsion.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace bnfkit {

std::string to_string(TorsionKind k) {
  switch (k) {
    case TorsionKind::Definite: return "definite";
    case TorsionKind::Indefinite: return "indefinite";
    default: return "degenerate";
  }
}

TorsionReport torsion_class(const ActionPolynomial& b2, double tol) {
  if (!b2.is_homogeneous(2)) throw ShapeError("torsion_class: B2 must be homogeneous of degree 2");
  const int n = b2.dof();
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [l, c] : b2.terms()) {
    int i = -1, j = -1;
    for (int s = 0; s < n; ++s)
      for (int p = 0; p < l[s]; ++p) (i < 0 ? i : j) = s;
    if (i == j) {
      hess(i, i) += 2.0 * c;
    } else {
      hess(i, j) += c;
      hess(j, i) += c;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess, Eigen::EigenvaluesOnly);
  TorsionReport rep;
  double maxabs = 0.0;
  rep.margin = std::numeric_limits<double>::infinity();
  bool pos = false, neg = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = es.eigenvalues()(i);
    rep.eigenvalues.push_back(v);
    maxabs = std::max(maxabs, std::abs(v));
    rep.margin = std::min(rep.margin, std::abs(v));
  }
  const double cut = tol * std::max(1.0, maxabs);
  for (double v : rep.eigenvalues) {
    pos = pos || v > cut;
    neg = neg || v < -cut;
  }
  if (rep.margin <= cut)
    rep.kind = TorsionKind::Degenerate;
  else if (pos && neg)
    rep.kind = TorsionKind::Indefinite;
  else
    rep.kind = TorsionKind::Definite;
  return rep;
}

}  // namespace bnfkit
