#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "latdisc/errors.hpp"
#include "latdisc/polygon.hpp"

namespace latdisc {

/// ||x||: distance from x to the nearest integer, in [0, 1/2].
double distance_to_integers(double x);

inline constexpr std::int64_t kDirichletRangeCap = 1'000'000'000;

struct DirichletResult {
  std::int64_t q = 0;
  bool exact = true;  // false: no q met the bound in floating point (INEXACT)
  double max_distance = 0;
};

/// Smallest q in [j, j^{n+1}] with ||r_s q|| < 1/j for every s. If rounding
/// leaves no such q, returns the q minimizing the largest distance, flagged
/// inexact.
DirichletResult dirichlet_simultaneous(std::span<const double> r, std::int64_t j);

inline constexpr std::int64_t kFrequencySetCap = 4'000'000;

/// A_u = union over side pairs j of {k != 0 : L_j |k| <= u^2}, optionally
/// cut to |k| <= k_cap. membership(i, j) says whether points[i] is in A_u^j.
struct FrequencySet {
  int u = 1;
  std::optional<int> k_cap;
  bool truncated = false;  // the cap removed at least one point
  std::vector<Eigen::Vector2i> points;
  Eigen::VectorXd big_l;  // L_j for the first half of the sides, polygon recentered
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> membership;

  std::size_t size() const { return points.size(); }
  std::size_t side_count(Eigen::Index j) const { return static_cast<std::size_t>(membership.col(j).count()); }
};

/// Needs a family-P polygon; L_j is measured about its symmetry center.
FrequencySet frequency_set(const Polygond& p, int u, std::optional<int> k_cap = std::nullopt);

struct CheckedValue {
  Eigen::Vector2i k;
  int side;
  double value;  // |sin(pi rho_u |k| L_j)|
};

struct DipCertificate {
  int u = 1;
  std::int64_t rho_u = 0;
  double bound = 1;  // 1/u
  std::optional<int> k_cap;
  std::int64_t rho_cap = 0;
  bool truncated = false;
  std::vector<CheckedValue> checked;
};

/// construct_dip found no rho <= rho_cap. best_rho minimizes the largest
/// |sin| over the frequency set among the scanned dilations.
class DipNotFound : public SearchExhausted {
 public:
  DipNotFound(std::int64_t best_rho, double best_max_value)
      : SearchExhausted("no dip dilation up to rho_cap"), best_rho_(best_rho), best_max_value_(best_max_value) {}

  std::int64_t best_rho() const { return best_rho_; }
  double best_max_value() const { return best_max_value_; }

 private:
  std::int64_t best_rho_;
  double best_max_value_;
};

/// Smallest integer rho_u in [u, rho_cap] with |sin(pi rho_u |k| L_j)| < 1/u
/// for every k in A_u^j and every side pair j.
DipCertificate construct_dip(const Polygond& p, int u, std::optional<int> k_cap, std::int64_t rho_cap);

inline constexpr double kWitnessRadiusCap = 2000;

/// Smallest-norm k with 0 < |k| <= rho^epsilon and ||scale * rho * |k|||
/// >= alpha. ||rho |k||| depends on k only through |k|, so candidates are
/// the quadrant representatives kx > 0, ky >= 0, ties broken
/// lexicographically.
std::optional<Eigen::Vector2i> ps_witness(double rho, double epsilon, double alpha, double scale = 1.0);

/// (1/kn^4) * integral over [0, 1/(pi R)], R = rho kn, of
///   |sin(pi R ell sin phi) / sin phi|^2 sin^2(pi R L cos phi) cos^2 phi dphi,
/// the side-pair window that bounds the norm from below.
double window_integral(double ell, double big_l, double rho, double k_norm);

struct SideProbe {
  int side;
  Eigen::Vector2i k;
  double alpha;
  double window;
};

struct ProbeResult {
  double value;  // min over side pairs
  std::vector<SideProbe> sides;
};

/// Per side pair j, the witness comes from ps_witness(rho, epsilon/3, alpha,
/// L_j) with alpha lowered from 0.45 in steps of 0.05. Empty when some side
/// pair has no witness.
std::optional<ProbeResult> lower_bound_probe(const Polygond& p, double rho, double epsilon);

}  // namespace latdisc
