#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>

#include "latdisc/errors.hpp"

namespace latdisc {

struct LineFit {
  double slope;
  double intercept;
};

/// Ordinary least squares y ~ slope * x + intercept.
inline LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("line fit needs two or more paired samples");
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  const double xm = xv.mean();
  const double sxx = (xv.array() - xm).square().sum();
  if (!(sxx > 0)) throw InputError("degenerate fit: abscissae have zero variance");
  Eigen::MatrixXd design(n, 2);
  design.col(0) = xv;
  design.col(1).setOnes();
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(yv);
  return {beta(0), beta(1)};
}

/// Fit of log y against log x; every sample must be positive.
inline LineFit loglog_fit(std::span<const double> x, std::span<const double> y) {
  Eigen::VectorXd lx(static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd ly(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(i < y.size() && y[i] > 0)) throw InputError("log-log fit needs positive samples");
    lx(static_cast<Eigen::Index>(i)) = std::log(x[i]);
    ly(static_cast<Eigen::Index>(i)) = std::log(y[i]);
  }
  return least_squares_line({lx.data(), x.size()}, {ly.data(), y.size()});
}

}  // namespace latdisc
