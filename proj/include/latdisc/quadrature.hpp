#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "latdisc/errors.hpp"

namespace latdisc {

/// Gauss-Legendre rule on [0, 1].
template <typename Scalar>
struct GaussRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix of the
/// Legendre recurrence, mapped from [-1, 1] to [0, 1].
template <typename Scalar>
GaussRule<Scalar> gauss_legendre(int order) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (order < 1) throw InputError("Gauss-Legendre order must be positive");
  Matrix jacobi = Matrix::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const Scalar b = Scalar(k) / std::sqrt(Scalar(4 * k * k - 1));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(jacobi);
  GaussRule<Scalar> rule;
  rule.nodes = (es.eigenvalues().array() + 1) / 2;
  rule.weights = es.eigenvectors().row(0).transpose().array().square();
  return rule;
}

/// Integral of f over [a, b] with a fixed Gauss rule.
template <typename Scalar, typename F>
auto integrate(const GaussRule<Scalar>& rule, Scalar a, Scalar b, F&& f) {
  using R = decltype(f(a));
  R acc{};
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) acc += rule.weights(q) * f(a + (b - a) * rule.nodes(q));
  return acc * (b - a);
}

}  // namespace latdisc
