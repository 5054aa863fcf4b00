#pragma once

// Slow, independent reference implementations used by the tests and by
// `latdisc verify`. Nothing here shares code paths with the library routines
// it checks.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "latdisc/polygon.hpp"

namespace latdisc::oracle {

/// Point-in-closed-polygon test over every lattice point of the bounding box.
std::int64_t brute_force_count(const Polygond& p, double rho, double sigma, const Point<double>& t);

/// Sum of centroid-fan triangle areas.
double fan_area(const Polygond& p);

/// Transform of the axis-aligned rectangle [x0,x1] x [y0,y1] as a product of
/// one-dimensional integrals.
std::complex<double> rectangle_transform(double x0, double x1, double y0, double y1, const Point<double>& xi);

/// Every q in [j, j^{n+1}] with ||r_s q|| < 1/j for all s, ascending.
std::vector<std::int64_t> dirichlet_all(std::span<const double> r, std::int64_t j);

/// Smallest |k|^2 over all of Z^2 \ {0} with |k| <= rho^epsilon and
/// ||scale * rho * |k||| >= alpha; empty when there is none.
std::optional<int> witness_min_norm2(double rho, double epsilon, double alpha, double scale = 1.0);

struct DipRecheck {
  std::size_t pairs = 0;  // (k, side) pairs enumerated
  double max_value = 0;   // largest |sin(pi rho |k| L_j)|
};

/// Rebuilds A_u^j from scratch (L_j measured about the vertex centroid) and
/// evaluates every bound at rho.
DipRecheck recheck_dip(const Polygond& p, int u, std::optional<int> k_cap, std::int64_t rho);

}  // namespace latdisc::oracle
