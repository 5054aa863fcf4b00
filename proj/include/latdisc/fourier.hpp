#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "latdisc/errors.hpp"
#include "latdisc/fit.hpp"
#include "latdisc/polygon.hpp"
#include "latdisc/quadrature.hpp"

namespace latdisc {

/// |Theta . tau| below this switches to the series for sin(k c) / c.
inline constexpr double kSingularThreshold = 1e-6;
/// Angular samples per unit of rho * diameter for the trapezoid rule.
inline constexpr double kAngularResolution = 16.0;
/// Quadrature oracle: wavelengths per Gauss cell, and the |f| * diam cap.
inline constexpr double kOracleWavelengthsPerCell = 0.5;
inline constexpr double kOracleFrequencyDiameterCap = 1e4;
inline constexpr int kOracleDefaultOrder = 20;

/// sin(k c) / c, with its removable singularity at c = 0.
template <typename Scalar>
Scalar sin_ratio(Scalar k, Scalar c) {
  using std::abs;
  using std::sin;
  if (abs(c) < Scalar(kSingularThreshold)) {
    const Scalar kc2 = (k * c) * (k * c);
    return k * (1 - kc2 / 6 + kc2 * kc2 / 120);
  }
  return sin(k * c) / c;
}

/// Precomputed side data for repeated evaluation of the transform of one
/// polygon indicator, chi_hat(xi) = integral over P of exp(-2 pi i xi.t) dt.
///
/// Away from the origin the boundary-sum form obtained from the divergence
/// theorem is used, with the midpoint phase exp(-pi i xi.(P_h + P_{h+1})),
/// which is valid for any placement of the polygon. Close to xi = 0 that sum
/// cancels catastrophically, so a Taylor series over a centroid fan takes
/// over when 2 pi |xi| * reach < 1.
template <typename Scalar>
class TransformKernel {
 public:
  using Complex = std::complex<Scalar>;

  explicit TransformKernel(const Polygon<Scalar>& p)
      : area_(latdisc::area(p)), diameter_(latdisc::diameter(p)), centroid_(vertex_centroid(p)) {
    const auto frames = side_frames(p);
    sides_.reserve(frames.size());
    for (Eigen::Index h = 0; h < p.size(); ++h) {
      const auto& f = frames[static_cast<std::size_t>(h)];
      sides_.push_back({f.tau, f.nu, p.vertex(h) + p.vertex(h + 1), f.ell});
    }
    fan_ = p.vertices().colwise() - centroid_;
    reach_ = fan_.colwise().norm().maxCoeff();
  }

  Complex operator()(const Point<Scalar>& xi) const {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar rho = xi.norm();
    if (rho == 0) return Complex(area_, 0);
    if (2 * pi * rho * reach_ < 1) return series(xi);
    const Point<Scalar> dir = xi / rho;
    Complex acc(0, 0);
    for (const auto& s : sides_) {
      const Scalar along = dir.dot(s.tau);
      const Scalar across = dir.dot(s.nu);
      acc += (across * sin_ratio(pi * rho * s.ell, along)) * std::polar(Scalar(1), -pi * rho * dir.dot(s.mid));
    }
    return Complex(0, 1) * acc / (2 * pi * pi * rho * rho);
  }

  Scalar area() const { return area_; }
  Scalar diameter() const { return diameter_; }

 private:
  struct Side {
    Point<Scalar> tau;
    Point<Scalar> nu;
    Point<Scalar> mid;  // P_h + P_{h+1}
    Scalar ell;
  };

  // Fan triangles (c, v_h, v_{h+1}): integral of (xi.t)^m over a triangle is
  // 2|T| m!/(m+2)! times the complete homogeneous polynomial of the vertex
  // projections; the apex projection is zero after recentering.
  Complex series(const Point<Scalar>& xi) const {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    constexpr int kTerms = 40;
    const Eigen::Index s = fan_.cols();
    Complex total(0, 0);
    for (Eigen::Index h = 0; h < s; ++h) {
      const Point<Scalar> a = fan_.col(h);
      const Point<Scalar> b = fan_.col((h + 1) % s);
      const Scalar beta = xi.dot(a);
      const Scalar gamma = xi.dot(b);
      Complex coef(Scalar(0.5), 0);  // (-2 pi i)^m / (m+2)!
      Scalar hm = 1;
      Scalar beta_pow = 1;
      Complex sum = coef;
      for (int m = 1; m < kTerms; ++m) {
        beta_pow *= beta;
        hm = gamma * hm + beta_pow;
        coef *= Complex(0, -2 * pi) / Scalar(m + 2);
        sum += coef * hm;
      }
      total += cross<Scalar>(a, b) * sum;
    }
    return total * std::polar(Scalar(1), -2 * pi * xi.dot(centroid_));
  }

  std::vector<Side> sides_;
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> fan_;
  Scalar area_;
  Scalar diameter_;
  Point<Scalar> centroid_;
  Scalar reach_ = 0;
};

template <typename Scalar>
std::complex<Scalar> chi_hat(const Polygon<Scalar>& p, const Point<Scalar>& xi) {
  return TransformKernel<Scalar>(p)(xi);
}

template <typename Scalar>
Point<Scalar> frequency(Scalar rho, Scalar theta) {
  using std::cos;
  using std::sin;
  return Point<Scalar>(rho * cos(theta), rho * sin(theta));
}

/// Real transform of a family-P polygon centered at the origin, summing over
/// the first half of the sides:
///   (1 / (pi^2 rho^2)) sum_h tan(theta - theta_h) sin(pi rho L_h sin(theta - theta_h))
///                                                  sin(pi rho ell_h cos(theta - theta_h)).
template <typename Scalar>
Scalar chi_hat_symmetric(const Polygon<Scalar>& p, Scalar rho, Scalar theta, Scalar tol = Scalar(kDefaultTol)) {
  using std::cos;
  using std::sin;
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (!in_family_p(p, tol)) throw InputError("symmetric transform needs a polygon in the family P");
  const auto center = *symmetry_center(p, tol);
  const auto circle = *circumscribed_circle(p, tol);
  if (center.norm() > tol * circle.radius) throw InputError("symmetric transform needs the polygon centered at the origin");
  if (!(rho > 0)) throw InputError("rho must be positive");
  const auto frames = side_frames(p);
  const std::size_t n = frames.size() / 2;
  Scalar acc = 0;
  for (std::size_t h = 0; h < n; ++h) {
    const Scalar phi = theta - frames[h].theta;
    const Scalar s = sin(phi);
    acc += s * sin(pi * rho * frames[h].big_l * s) * sin_ratio(pi * rho * frames[h].ell, cos(phi));
  }
  return acc / (pi * pi * rho * rho);
}

/// Independent quadrature of chi_hat: a centroid fan, each fan triangle cut
/// into m^2 congruent cells holding at most kOracleWavelengthsPerCell
/// wavelengths, each cell integrated by a collapsed (Duffy) tensor
/// Gauss-Legendre rule. Congruent cells share their local quadrature sum, so
/// only the cell-anchor phases are summed per cell.
template <typename Scalar>
std::complex<Scalar> chi_hat_oracle(const Polygon<Scalar>& p, const Point<Scalar>& xi, int order = kOracleDefaultOrder) {
  using Complex = std::complex<Scalar>;
  using std::ceil;
  using std::abs;
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (order < 10) throw InputError("oracle quadrature order must be >= 10");
  const Scalar rho = xi.norm();
  if (rho * diameter(p) > Scalar(kOracleFrequencyDiameterCap)) {
    throw CostCapError("oracle quadrature refuses |f| * diameter above the cap");
  }
  const auto rule = gauss_legendre<Scalar>(order);
  const auto cell_sum = [&](const Point<Scalar>& e1, const Point<Scalar>& e2) {
    Complex acc(0, 0);
    for (Eigen::Index a = 0; a < rule.nodes.size(); ++a) {
      const Scalar u = rule.nodes(a);
      for (Eigen::Index b = 0; b < rule.nodes.size(); ++b) {
        const Scalar v = rule.nodes(b);
        const Scalar w = rule.weights(a) * rule.weights(b) * u;
        acc += w * std::polar(Scalar(1), -2 * pi * xi.dot(u * (1 - v) * e1 + u * v * e2));
      }
    }
    return acc;
  };

  const Point<Scalar> c = vertex_centroid(p);
  const Scalar base = xi.dot(c);
  Complex total(0, 0);
  for (Eigen::Index h = 0; h < p.size(); ++h) {
    const Point<Scalar> big1 = p.vertex(h) - c;
    const Point<Scalar> big2 = p.vertex(h + 1) - c;
    const Scalar tri_diam = std::max({big1.norm(), big2.norm(), (big1 - big2).norm()});
    const int m = std::max(1, static_cast<int>(ceil(rho * tri_diam / Scalar(kOracleWavelengthsPerCell))));
    const Point<Scalar> e1 = big1 / Scalar(m);
    const Point<Scalar> e2 = big2 / Scalar(m);
    const Scalar jac = abs(cross<Scalar>(e1, e2));
    const Complex up = cell_sum(e1, e2);
    const Complex down = cell_sum(Point<Scalar>(-e1), Point<Scalar>(-e2));
    const Scalar f1 = xi.dot(e1);
    const Scalar f2 = xi.dot(e2);
    Complex up_phases(0, 0);
    Complex down_phases(0, 0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; i + j < m; ++j) {
        up_phases += std::polar(Scalar(1), -2 * pi * (base + i * f1 + j * f2));
        if (i + j <= m - 2) down_phases += std::polar(Scalar(1), -2 * pi * (base + (i + 1) * f1 + (j + 1) * f2));
      }
    }
    total += jac * (up * up_phases + down * down_phases);
  }
  return total;
}

/// Minimum trapezoid sample count for angular averages at radius rho.
template <typename Scalar>
int required_angles(Scalar rho, Scalar diam) {
  using std::ceil;
  return std::max(1, static_cast<int>(ceil(Scalar(kAngularResolution) * rho * diam)));
}

/// (1 / 2pi) * integral over theta of |chi_hat(radius Theta)|^2 by the
/// trapezoid rule on n uniform angles. |chi_hat(-xi)| = |chi_hat(xi)|, so an
/// even grid only evaluates its first half.
template <typename Scalar>
Scalar mean_square_on_circle(const TransformKernel<Scalar>& kernel, Scalar radius, int n_angles) {
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  const int evaluated = n_angles % 2 == 0 ? n_angles / 2 : n_angles;
  Scalar acc = 0;
  for (int i = 0; i < evaluated; ++i) {
    acc += std::norm(kernel(frequency(radius, two_pi * Scalar(i) / Scalar(n_angles))));
  }
  return acc / Scalar(evaluated);
}

/// L2 norm of chi_hat(rho .) over the unit circle with normalized measure.
template <typename Scalar>
Scalar spherical_average(const Polygon<Scalar>& p, Scalar rho, int n_angles) {
  using std::sqrt;
  if (!(rho > 0)) throw InputError("rho must be positive");
  const TransformKernel<Scalar> kernel(p);
  if (n_angles < required_angles(rho, kernel.diameter())) {
    throw InputError("n_angles below the angular resolution requirement " +
                     std::to_string(required_angles(rho, kernel.diameter())));
  }
  return sqrt(mean_square_on_circle(kernel, rho, n_angles));
}

/// Log-log slope of spherical_average against rho; each sample uses the
/// minimum admissible angular grid.
template <typename Scalar>
LineFit decay_exponent_fit(const Polygon<Scalar>& p, std::span<const double> rho_values) {
  using std::log10;
  if (rho_values.size() < 8) throw InputError("decay fit needs at least 8 rho values");
  const auto [lo, hi] = std::minmax_element(rho_values.begin(), rho_values.end());
  if (!(*lo > 0) || log10(*hi / *lo) < 1.5) throw InputError("decay fit needs rho values spanning 1.5 decades");
  const Scalar diam = diameter(p);
  std::vector<double> values;
  values.reserve(rho_values.size());
  for (const double rho : rho_values) {
    values.push_back(static_cast<double>(spherical_average(p, Scalar(rho), required_angles(Scalar(rho), diam))));
  }
  return loglog_fit(rho_values, values);
}

}  // namespace latdisc
