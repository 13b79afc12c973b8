#include "semikit/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace semikit {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix of
// the three-term recurrence, weights are mu0 times the squared first
// components of the normalized eigenvectors.
QuadratureRule golub_welsch(const Eigen::VectorXd& offdiag, double mu0)
{
  const int m = static_cast<int>(offdiag.size()) + 1;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i + 1 < m; ++i) {
    jacobi(i, i + 1) = offdiag[i];
    jacobi(i + 1, i) = offdiag[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("golub_welsch: eigen decomposition failed");

  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_hermite_normal(int order)
{
  if (order < 1)
    throw std::invalid_argument("gauss_hermite_normal: order must be positive");
  // Probabilists' Hermite: He_{k+1} = s He_k - k He_{k-1}.
  Eigen::VectorXd beta(order - 1);
  for (int k = 1; k < order; ++k)
    beta[k - 1] = std::sqrt(static_cast<double>(k));
  auto rule = golub_welsch(beta, 1.0);
  // Symmetrize: the exact rule is symmetric about zero.
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double s = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -s;
    rule.nodes[j] = s;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (order % 2 == 1)
    rule.nodes[order / 2] = 0.0;
  double total = 0.0;
  for (double w : rule.weights)
    total += w;
  for (double& w : rule.weights)
    w /= total;
  return rule;
}

QuadratureRule gauss_legendre(int order, double lo, double hi)
{
  if (order < 1)
    throw std::invalid_argument("gauss_legendre: order must be positive");
  if (!(hi > lo))
    throw std::invalid_argument("gauss_legendre: empty interval");
  Eigen::VectorXd beta(order - 1);
  for (int k = 1; k < order; ++k)
    beta[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  auto rule = golub_welsch(beta, 2.0);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(double t_max, int panels, int nodes_per_panel)
{
  if (!(t_max > 0.0) || panels < 1 || nodes_per_panel < 1)
    throw std::invalid_argument("composite_gauss_legendre: invalid parameters");
  QuadratureRule rule;
  const double width = t_max / panels;
  for (int p = 0; p < panels; ++p) {
    const auto panel = gauss_legendre(nodes_per_panel, p * width, (p + 1) * width);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return rule;
}

}  // namespace semikit
