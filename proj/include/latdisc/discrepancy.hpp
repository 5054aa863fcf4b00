#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "latdisc/polygon.hpp"

namespace latdisc {

enum class SamplingMode { kGrid, kMonteCarlo };
enum class NormMethod { kDirect, kParseval };

const char* to_string(NormMethod m);

/// Discretization of the average over rotations x translations.
/// GRID uses midpoint rotations and an m x m midpoint translation grid
/// (n_t must equal m^2); MONTE_CARLO draws n_sigma * n_t independent motions.
struct MotionSampleConfig {
  int n_sigma = 200;
  int n_t = 100;
  SamplingMode mode = SamplingMode::kGrid;
  std::uint64_t seed = 0;
};

struct ParsevalConfig {
  int k_max = 64;
  int n_angles = 64;  // floor; each radius is raised to the resolution requirement
};

using NormConfig = std::variant<MotionSampleConfig, ParsevalConfig>;

struct NormEstimate {
  double value = 0;  // estimate of ||D_P^rho||
  NormMethod method = NormMethod::kDirect;
  double rho = 1;
  std::optional<int> truncation_k;
  std::optional<double> tail_estimate;     // Parseval only, in squared units
  std::int64_t samples = 0;                // motions (direct) or angular evaluations (Parseval)
  std::optional<double> std_error;         // of the mean of squares (direct)
  std::optional<double> quadrature_error;  // Parseval only, in squared units
};

inline constexpr std::int64_t kDirectSampleCap = 1'000'000'000;
inline constexpr int kParsevalKMaxCap = 2048;

/// Integer points in the closed polygon rho * R(sigma) p + t, by row scan.
std::int64_t count_lattice_points(const Polygond& p, double rho, double sigma, const Point<double>& t);

/// Same count for an already placed vertex set (no motion applied).
std::int64_t count_lattice_points(const Polygond& placed);

/// card(Z^2 in rho sigma(P) + t) - rho^2 |P|.
double discrepancy_value(const Polygond& p, double rho, double sigma, const Point<double>& t);

NormEstimate l2_norm_direct(const Polygond& p, double rho, const MotionSampleConfig& cfg);

/// Per-radius terms of the Parseval lattice sum. Lattice vectors are grouped
/// by squared norm r2 = |k|^2 with their multiplicity; terms[i] is
/// rho^4 * multiplicity * (1/2pi) * integral |chi_hat(rho |k| Theta)|^2 dtheta.
struct ParsevalSeries {
  double rho = 1;
  int k_max = 0;
  std::vector<int> squared_radii;
  std::vector<int> multiplicity;
  std::vector<double> mean_squares;  // angular mean of |chi_hat|^2 per radius
  std::vector<double> terms;
  std::int64_t evaluations = 0;
};

ParsevalSeries parseval_series(const Polygond& p, double rho, int k_max, int n_angles);

/// Sum of terms with |k| <= k plus the closed-form tail bound calibrated on
/// the dyadic shell k/2 < |k| <= k. Requires k <= series.k_max.
struct TruncatedSum {
  double value_squared;
  double tail;
};
TruncatedSum truncated_sum(const ParsevalSeries& series, int k);

NormEstimate l2_norm_parseval(const Polygond& p, double rho, int k_max, int n_angles);

NormEstimate l2_norm(const Polygond& p, double rho, const NormConfig& cfg);

/// ||D_P^rho|| / rho^{1/2}.
double normalized_norm(const NormEstimate& e);
double normalized_norm(const Polygond& p, double rho, const NormConfig& cfg);

}  // namespace latdisc
