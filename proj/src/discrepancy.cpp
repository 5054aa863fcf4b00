#include "latdisc/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "latdisc/fourier.hpp"
#include "latdisc/generators.hpp"

namespace latdisc {
namespace {

constexpr double kPi = std::numbers::pi;

// Closed-set row scan over the vertex columns of a convex polygon.
std::int64_t count_rows(const Eigen::Matrix2Xd& v) {
  const Eigen::Index s = v.cols();
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  const double eps = 1e-9 * scale;
  const double ymin = v.row(1).minCoeff();
  const double ymax = v.row(1).maxCoeff();
  std::int64_t count = 0;
  for (auto y = static_cast<std::int64_t>(std::ceil(ymin - eps)); y <= static_cast<std::int64_t>(std::floor(ymax + eps));
       ++y) {
    const auto yd = static_cast<double>(y);
    double xlo = std::numeric_limits<double>::infinity();
    double xhi = -xlo;
    for (Eigen::Index h = 0; h < s; ++h) {
      const auto a = v.col(h);
      const auto b = v.col((h + 1) % s);
      const double lo = std::min(a.y(), b.y());
      const double hi = std::max(a.y(), b.y());
      if (yd < lo - eps || yd > hi + eps) continue;
      if (hi - lo <= eps) {
        xlo = std::min({xlo, a.x(), b.x()});
        xhi = std::max({xhi, a.x(), b.x()});
        continue;
      }
      const double u = std::clamp((yd - a.y()) / (b.y() - a.y()), 0.0, 1.0);
      const double x = a.x() + u * (b.x() - a.x());
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
    }
    if (xlo > xhi) continue;
    const auto first = static_cast<std::int64_t>(std::ceil(xlo - eps));
    const auto last = static_cast<std::int64_t>(std::floor(xhi + eps));
    if (last >= first) count += last - first + 1;
  }
  return count;
}

// Running mean and variance (Welford) of the squared discrepancy.
struct SquareAccumulator {
  std::int64_t n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double d) {
    const double x = d * d;
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  double std_error() const {
    if (n < 2) return 0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

Eigen::Matrix2d rotation(double sigma) {
  Eigen::Matrix2d r;
  r << std::cos(sigma), -std::sin(sigma), std::sin(sigma), std::cos(sigma);
  return r;
}

}  // namespace

const char* to_string(NormMethod m) { return m == NormMethod::kDirect ? "direct" : "parseval"; }

std::int64_t count_lattice_points(const Polygond& placed) { return count_rows(placed.vertices()); }

std::int64_t count_lattice_points(const Polygond& p, double rho, double sigma, const Point<double>& t) {
  return count_lattice_points(apply_motion(p, rho, sigma, t));
}

double discrepancy_value(const Polygond& p, double rho, double sigma, const Point<double>& t) {
  return static_cast<double>(count_lattice_points(p, rho, sigma, t)) - rho * rho * area(p);
}

NormEstimate l2_norm_direct(const Polygond& p, double rho, const MotionSampleConfig& cfg) {
  if (!(rho >= 1)) throw InputError("dilation rho must be >= 1");
  if (cfg.n_sigma < 1 || cfg.n_t < 1) throw InputError("motion sampling needs n_sigma >= 1 and n_t >= 1");
  const std::int64_t total = static_cast<std::int64_t>(cfg.n_sigma) * cfg.n_t;
  if (total > kDirectSampleCap) throw CostCapError("direct route sample count exceeds the cap");

  const double volume = rho * rho * area(p);
  const Eigen::Matrix2Xd scaled = rho * p.vertices();
  SquareAccumulator acc;
  Eigen::Matrix2Xd placed(2, scaled.cols());
  const auto sample = [&](const Eigen::Vector2d& t, const Eigen::Matrix2Xd& rotated) {
    placed = rotated.colwise() + t;
    acc.add(static_cast<double>(count_rows(placed)) - volume);
  };

  if (cfg.mode == SamplingMode::kGrid) {
    const auto m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cfg.n_t))));
    if (m * m != cfg.n_t) throw InputError("GRID mode needs n_t to be a perfect square");
    for (int i = 0; i < cfg.n_sigma; ++i) {
      const double sigma = 2 * kPi * (i + 0.5) / cfg.n_sigma;
      const Eigen::Matrix2Xd rotated = rotation(sigma) * scaled;
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          sample(Eigen::Vector2d(-0.5 + (a + 0.5) / m, -0.5 + (b + 0.5) / m), rotated);
        }
      }
    }
  } else {
    UniformSource rng(cfg.seed);
    for (std::int64_t i = 0; i < total; ++i) {
      const double sigma = 2 * kPi * rng();
      const double tx = rng() - 0.5;
      const double ty = rng() - 0.5;
      sample(Eigen::Vector2d(tx, ty), rotation(sigma) * scaled);
    }
  }

  NormEstimate e;
  e.value = std::sqrt(acc.mean);
  e.method = NormMethod::kDirect;
  e.rho = rho;
  e.samples = acc.n;
  e.std_error = acc.std_error();
  return e;
}

ParsevalSeries parseval_series(const Polygond& p, double rho, int k_max, int n_angles) {
  if (!(rho >= 1)) throw InputError("dilation rho must be >= 1");
  if (k_max < 1) throw InputError("k_max must be >= 1");
  if (n_angles < 1) throw InputError("n_angles must be >= 1");
  if (k_max > kParsevalKMaxCap) throw CostCapError("k_max exceeds the Parseval cost cap");

  const int r2_max = k_max * k_max;
  std::vector<int> mult(static_cast<std::size_t>(r2_max) + 1, 0);
  for (int a = -k_max; a <= k_max; ++a) {
    for (int b = -k_max; b <= k_max; ++b) {
      const int r2 = a * a + b * b;
      if (r2 > 0 && r2 <= r2_max) ++mult[static_cast<std::size_t>(r2)];
    }
  }

  const TransformKernel<double> kernel(p);
  const double rho4 = rho * rho * rho * rho;
  ParsevalSeries series;
  series.rho = rho;
  series.k_max = k_max;
  for (int r2 = 1; r2 <= r2_max; ++r2) {
    const int m = mult[static_cast<std::size_t>(r2)];
    if (m == 0) continue;
    const double radius = rho * std::sqrt(static_cast<double>(r2));
    const int n = std::max(n_angles, required_angles(radius, kernel.diameter()));
    const double ms = mean_square_on_circle(kernel, radius, n);
    series.squared_radii.push_back(r2);
    series.multiplicity.push_back(m);
    series.mean_squares.push_back(ms);
    series.terms.push_back(rho4 * m * ms);
    series.evaluations += n;
  }
  return series;
}

TruncatedSum truncated_sum(const ParsevalSeries& series, int k) {
  if (k < 1 || k > series.k_max) throw InputError("truncation radius outside the computed series");
  const double k2 = static_cast<double>(k) * k;
  double sum = 0;
  double c_tail = 0;
  for (std::size_t i = 0; i < series.terms.size(); ++i) {
    const auto r2 = static_cast<double>(series.squared_radii[i]);
    if (r2 > k2) break;
    sum += series.terms[i];
    if (4 * r2 > k2) {
      const double radius = series.rho * std::sqrt(r2);
      c_tail = std::max(c_tail, radius * radius * radius * series.mean_squares[i]);
    }
  }
  // rho^4 * sum_{|k|>K} (rho |k|)^{-3} <= rho * 2 pi / (K - 1/sqrt 2).
  const double tail = c_tail * series.rho * 2 * kPi / (k - std::numbers::sqrt2 / 2);
  return {sum, tail};
}

NormEstimate l2_norm_parseval(const Polygond& p, double rho, int k_max, int n_angles) {
  const ParsevalSeries series = parseval_series(p, rho, k_max, n_angles);
  const TruncatedSum sum = truncated_sum(series, k_max);

  // Quadrature check: redo the smallest and largest radii on doubled grids.
  const TransformKernel<double> kernel(p);
  double rel_change = 0;
  for (const std::size_t i : {std::size_t{0}, series.terms.size() - 1}) {
    const double radius = rho * std::sqrt(static_cast<double>(series.squared_radii[i]));
    const int n = std::max(n_angles, required_angles(radius, kernel.diameter()));
    const double refined = mean_square_on_circle(kernel, radius, 2 * n);
    const double base = series.mean_squares[i];
    if (base > 0) rel_change = std::max(rel_change, std::abs(refined - base) / base);
  }

  NormEstimate e;
  e.value = std::sqrt(sum.value_squared);
  e.method = NormMethod::kParseval;
  e.rho = rho;
  e.truncation_k = k_max;
  e.tail_estimate = sum.tail;
  e.samples = series.evaluations;
  // Roundoff floor covers the summation of many positive terms.
  e.quadrature_error = sum.value_squared * (rel_change + 1e-12);
  return e;
}

NormEstimate l2_norm(const Polygond& p, double rho, const NormConfig& cfg) {
  if (const auto* direct = std::get_if<MotionSampleConfig>(&cfg)) return l2_norm_direct(p, rho, *direct);
  const auto& pc = std::get<ParsevalConfig>(cfg);
  return l2_norm_parseval(p, rho, pc.k_max, pc.n_angles);
}

double normalized_norm(const NormEstimate& e) { return e.value / std::sqrt(e.rho); }

double normalized_norm(const Polygond& p, double rho, const NormConfig& cfg) {
  return normalized_norm(l2_norm(p, rho, cfg));
}

}  // namespace latdisc
