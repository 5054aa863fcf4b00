#include "latdisc/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "latdisc/fourier.hpp"
#include "latdisc/quadrature.hpp"

namespace latdisc {
namespace {

constexpr double kPi = std::numbers::pi;

// |sin(pi y)| evaluated on the reduced argument y - round(y).
double sin_smallness(double y) { return std::abs(std::sin(kPi * (y - std::nearbyint(y)))); }

Polygond recentered_family_p(const Polygond& p) {
  if (!in_family_p(p)) throw InputError("operation needs a polygon in the family P");
  return translated(p, Point<double>(-*symmetry_center(p)));
}

}  // namespace

double distance_to_integers(double x) { return std::abs(x - std::nearbyint(x)); }

DirichletResult dirichlet_simultaneous(std::span<const double> r, std::int64_t j) {
  if (r.empty()) throw InputError("simultaneous approximation needs at least one real");
  if (j < 2) throw InputError("simultaneous approximation needs j >= 2");
  for (const double x : r) {
    if (!std::isfinite(x)) throw InputError("simultaneous approximation needs finite reals");
  }
  std::int64_t upper = j;
  for (std::size_t s = 0; s < r.size(); ++s) {
    if (upper > kDirichletRangeCap / j) throw CostCapError("j^(n+1) exceeds the Dirichlet scan cap");
    upper *= j;
  }
  const double bound = 1.0 / static_cast<double>(j);
  DirichletResult best{j, false, std::numeric_limits<double>::infinity()};
  for (std::int64_t q = j; q <= upper; ++q) {
    double worst = 0;
    for (const double x : r) {
      worst = std::max(worst, distance_to_integers(x * static_cast<double>(q)));
      if (worst >= best.max_distance && worst >= bound) break;
    }
    if (worst < bound) return {q, true, worst};
    if (worst < best.max_distance) best = {q, false, worst};
  }
  return best;
}

FrequencySet frequency_set(const Polygond& p, int u, std::optional<int> k_cap) {
  if (u < 1) throw InputError("u must be a positive integer");
  if (k_cap && *k_cap < 1) throw InputError("k_cap must be positive");
  const Polygond centered = recentered_family_p(p);
  const auto frames = side_frames(centered);
  const auto n = static_cast<Eigen::Index>(frames.size() / 2);

  FrequencySet fs;
  fs.u = u;
  fs.k_cap = k_cap;
  fs.big_l.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) fs.big_l(j) = frames[static_cast<std::size_t>(j)].big_l;

  const double u2 = static_cast<double>(u) * u;
  const double reach = u2 / fs.big_l.minCoeff();
  double radius = reach;
  if (k_cap) {
    radius = std::min(reach, static_cast<double>(*k_cap));
    const double next = static_cast<double>(*k_cap) * *k_cap + 1;  // |(k_cap, 1)|^2
    fs.truncated = next <= reach * reach * (1 + 1e-12);
  }
  const double estimate = kPi * (radius + 1) * (radius + 1);
  if (estimate > static_cast<double>(kFrequencySetCap)) {
    throw CostCapError(k_cap ? "frequency set exceeds the memory cap even with k_cap"
                             : "frequency set exceeds the memory cap; pass k_cap");
  }

  const auto box = static_cast<int>(std::floor(radius * (1 + 1e-12)));
  const double r2_max = radius * radius * (1 + 1e-12);
  for (int a = -box; a <= box; ++a) {
    for (int b = -box; b <= box; ++b) {
      const double r2 = static_cast<double>(a) * a + static_cast<double>(b) * b;
      if (r2 > 0 && r2 <= r2_max) fs.points.emplace_back(a, b);
    }
  }
  fs.membership.resize(static_cast<Eigen::Index>(fs.points.size()), n);
  for (std::size_t i = 0; i < fs.points.size(); ++i) {
    const double norm = fs.points[i].cast<double>().norm();
    for (Eigen::Index j = 0; j < n; ++j) {
      fs.membership(static_cast<Eigen::Index>(i), j) = fs.big_l(j) * norm <= u2 * (1 + 1e-12);
    }
  }
  // Points inside the box radius but outside every A_u^j are dropped.
  std::vector<Eigen::Vector2i> kept;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> kept_membership(fs.membership.rows(), n);
  for (std::size_t i = 0; i < fs.points.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    if (!fs.membership.row(row).any()) continue;
    kept_membership.row(static_cast<Eigen::Index>(kept.size())) = fs.membership.row(row);
    kept.push_back(fs.points[i]);
  }
  fs.membership = kept_membership.topRows(static_cast<Eigen::Index>(kept.size()));
  fs.points = std::move(kept);
  return fs;
}

DipCertificate construct_dip(const Polygond& p, int u, std::optional<int> k_cap, std::int64_t rho_cap) {
  if (rho_cap < u) throw InputError("rho_cap must be at least u");
  const FrequencySet fs = frequency_set(p, u, k_cap);
  const double bound = 1.0 / u;

  std::vector<double> products;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double norm = fs.points[i].cast<double>().norm();
    for (Eigen::Index j = 0; j < fs.big_l.size(); ++j) {
      if (fs.membership(static_cast<Eigen::Index>(i), j)) products.push_back(norm * fs.big_l(j));
    }
  }
  std::sort(products.begin(), products.end());
  products.erase(std::unique(products.begin(), products.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }),
                 products.end());

  const auto certify = [&](std::int64_t rho) {
    DipCertificate cert;
    cert.u = u;
    cert.rho_u = rho;
    cert.bound = bound;
    cert.k_cap = k_cap;
    cert.rho_cap = rho_cap;
    cert.truncated = fs.truncated;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const double norm = fs.points[i].cast<double>().norm();
      for (Eigen::Index j = 0; j < fs.big_l.size(); ++j) {
        if (!fs.membership(static_cast<Eigen::Index>(i), j)) continue;
        const double value = sin_smallness(static_cast<double>(rho) * norm * fs.big_l(j));
        cert.checked.push_back({fs.points[i], static_cast<int>(j), value});
      }
    }
    return cert;
  };

  // Prefilter: |sin(pi y)| >= 2 ||y||, so ||y|| >= 1/(2u) already fails.
  const double prefilter = 0.5 * bound;
  std::int64_t best_rho = u;
  double best_max = std::numeric_limits<double>::infinity();
  for (std::int64_t rho = u; rho <= rho_cap; ++rho) {
    double worst = 0;
    bool pruned = false;
    for (const double x : products) {
      const double y = static_cast<double>(rho) * x;
      const double d = distance_to_integers(y);
      const double value = d >= prefilter ? std::max(2 * d, sin_smallness(y)) : sin_smallness(y);
      worst = std::max(worst, value);
      if (worst >= best_max) {
        pruned = true;
        break;
      }
    }
    if (pruned) continue;
    if (worst < bound) {
      DipCertificate cert = certify(rho);
      const bool valid = std::all_of(cert.checked.begin(), cert.checked.end(),
                                     [&](const CheckedValue& c) { return c.value < bound; });
      if (valid) return cert;
    }
    if (worst < best_max) {
      best_max = worst;
      best_rho = rho;
    }
  }
  throw DipNotFound(best_rho, best_max);
}

std::optional<Eigen::Vector2i> ps_witness(double rho, double epsilon, double alpha, double scale) {
  if (!(rho >= 1) || !(epsilon > 0)) throw InputError("witness search needs rho >= 1 and epsilon > 0");
  if (!(alpha > 0 && alpha < 0.5)) throw InputError("alpha must lie in (0, 1/2)");
  const double reach = std::pow(rho, epsilon);
  if (reach > kWitnessRadiusCap) throw CostCapError("rho^epsilon exceeds the witness search cap");
  const auto box = static_cast<int>(std::floor(reach * (1 + 1e-12)));
  const double r2_max = reach * reach * (1 + 1e-12);
  std::vector<std::tuple<int, int, int>> candidates;  // (|k|^2, kx, ky)
  for (int kx = 1; kx <= box; ++kx) {
    for (int ky = 0; ky <= box; ++ky) {
      const int r2 = kx * kx + ky * ky;
      if (r2 <= r2_max) candidates.emplace_back(r2, kx, ky);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  int last_r2 = -1;
  for (const auto& [r2, kx, ky] : candidates) {
    if (r2 == last_r2) continue;  // same |k|, already rejected or accepted
    last_r2 = r2;
    if (distance_to_integers(scale * rho * std::sqrt(static_cast<double>(r2))) >= alpha) {
      return Eigen::Vector2i(kx, ky);
    }
  }
  return std::nullopt;
}

double window_integral(double ell, double big_l, double rho, double k_norm) {
  if (!(rho > 0) || !(k_norm > 0)) throw InputError("window integral needs rho > 0 and |k| > 0");
  static const GaussRule<double> rule = gauss_legendre<double>(kOracleDefaultOrder);
  const double radius = rho * k_norm;
  const double integral = integrate(rule, 0.0, 1.0 / (kPi * radius), [&](double phi) {
    const double lead = sin_ratio(kPi * radius * ell, std::sin(phi));
    const double trail = std::sin(kPi * radius * big_l * std::cos(phi));
    const double c = std::cos(phi);
    return lead * lead * trail * trail * c * c;
  });
  return integral / std::pow(k_norm, 4);
}

std::optional<ProbeResult> lower_bound_probe(const Polygond& p, double rho, double epsilon) {
  const Polygond centered = recentered_family_p(p);
  const auto frames = side_frames(centered);
  ProbeResult result{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t j = 0; j < frames.size() / 2; ++j) {
    std::optional<Eigen::Vector2i> k;
    double alpha = 0.45;
    for (int step = 0; step < 9 && !k; ++step) {
      alpha = 0.45 - 0.05 * step;
      k = ps_witness(rho, epsilon / 3, alpha, frames[j].big_l);
    }
    if (!k) return std::nullopt;
    const double w = window_integral(frames[j].ell, frames[j].big_l, rho, k->cast<double>().norm());
    result.sides.push_back({static_cast<int>(j), *k, alpha, w});
    result.value = std::min(result.value, w);
  }
  return result;
}

}  // namespace latdisc
