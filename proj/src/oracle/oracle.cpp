#include "oracle.hpp"

#include <cmath>
#include <numbers>

namespace latdisc::oracle {

std::int64_t brute_force_count(const Polygond& p, double rho, double sigma, const Point<double>& t) {
  const Eigen::Index s = p.size();
  std::vector<Point<double>> v;
  for (Eigen::Index h = 0; h < s; ++h) {
    const Point<double> q = p.vertex(h);
    v.emplace_back(rho * (std::cos(sigma) * q.x() - std::sin(sigma) * q.y()) + t.x(),
                   rho * (std::sin(sigma) * q.x() + std::cos(sigma) * q.y()) + t.y());
  }
  double xmin = v[0].x(), xmax = v[0].x(), ymin = v[0].y(), ymax = v[0].y();
  for (const auto& q : v) {
    xmin = std::min(xmin, q.x());
    xmax = std::max(xmax, q.x());
    ymin = std::min(ymin, q.y());
    ymax = std::max(ymax, q.y());
  }
  const double scale = std::max({1.0, std::abs(xmin), std::abs(xmax), std::abs(ymin), std::abs(ymax)});
  std::int64_t count = 0;
  for (auto x = static_cast<std::int64_t>(std::floor(xmin)) - 1; x <= static_cast<std::int64_t>(std::ceil(xmax)) + 1; ++x) {
    for (auto y = static_cast<std::int64_t>(std::floor(ymin)) - 1; y <= static_cast<std::int64_t>(std::ceil(ymax)) + 1;
         ++y) {
      bool inside = true;
      for (std::size_t h = 0; h < v.size() && inside; ++h) {
        const Point<double>& a = v[h];
        const Point<double>& b = v[(h + 1) % v.size()];
        const Point<double> e = b - a;
        const double side = e.x() * (static_cast<double>(y) - a.y()) - e.y() * (static_cast<double>(x) - a.x());
        inside = side >= -1e-9 * scale * e.norm();
      }
      if (inside) ++count;
    }
  }
  return count;
}

double fan_area(const Polygond& p) {
  Point<double> c = Point<double>::Zero();
  for (Eigen::Index h = 0; h < p.size(); ++h) c += p.vertex(h);
  c /= static_cast<double>(p.size());
  double total = 0;
  for (Eigen::Index h = 0; h < p.size(); ++h) {
    const Point<double> a = p.vertex(h) - c;
    const Point<double> b = p.vertex(h + 1) - c;
    total += 0.5 * std::abs(a.x() * b.y() - a.y() * b.x());
  }
  return total;
}

namespace {

// integral_a^b exp(-2 pi i f x) dx
std::complex<double> segment_transform(double a, double b, double f) {
  if (std::abs(f) * (b - a) < 1e-12) return {b - a, 0.0};
  const double w = 2 * std::numbers::pi * f;
  const std::complex<double> i(0, 1);
  return (std::exp(-i * w * b) - std::exp(-i * w * a)) / (-i * w);
}

}  // namespace

std::complex<double> rectangle_transform(double x0, double x1, double y0, double y1, const Point<double>& xi) {
  return segment_transform(x0, x1, xi.x()) * segment_transform(y0, y1, xi.y());
}

std::vector<std::int64_t> dirichlet_all(std::span<const double> r, std::int64_t j) {
  std::int64_t upper = j;
  for (std::size_t s = 0; s < r.size(); ++s) upper *= j;
  std::vector<std::int64_t> hits;
  for (std::int64_t q = j; q <= upper; ++q) {
    bool ok = true;
    for (const double x : r) {
      const double y = x * static_cast<double>(q);
      ok = ok && std::abs(y - std::round(y)) < 1.0 / static_cast<double>(j);
    }
    if (ok) hits.push_back(q);
  }
  return hits;
}

std::optional<int> witness_min_norm2(double rho, double epsilon, double alpha, double scale) {
  const double reach = std::pow(rho, epsilon);
  const int box = static_cast<int>(reach) + 1;
  std::optional<int> best;
  for (int a = -box; a <= box; ++a) {
    for (int b = -box; b <= box; ++b) {
      const int r2 = a * a + b * b;
      if (r2 == 0 || std::sqrt(static_cast<double>(r2)) > reach * (1 + 1e-12)) continue;
      const double y = scale * rho * std::sqrt(static_cast<double>(r2));
      if (std::abs(y - std::round(y)) >= alpha && (!best || r2 < *best)) best = r2;
    }
  }
  return best;
}

DipRecheck recheck_dip(const Polygond& p, int u, std::optional<int> k_cap, std::int64_t rho) {
  Point<double> c = Point<double>::Zero();
  for (Eigen::Index h = 0; h < p.size(); ++h) c += p.vertex(h);
  c /= static_cast<double>(p.size());
  const double u2 = static_cast<double>(u) * u;
  DipRecheck out;
  for (Eigen::Index j = 0; j < p.size() / 2; ++j) {
    const double big_l = (p.vertex(j) - c + p.vertex(j + 1) - c).norm();
    double reach = u2 / big_l;
    if (k_cap) reach = std::min(reach, static_cast<double>(*k_cap));
    const int box = static_cast<int>(reach) + 1;
    for (int a = -box; a <= box; ++a) {
      for (int b = -box; b <= box; ++b) {
        if (a == 0 && b == 0) continue;
        const double norm = std::hypot(a, b);
        if (big_l * norm > u2 * (1 + 1e-12) || (k_cap && norm > *k_cap * (1 + 1e-12))) continue;
        ++out.pairs;
        const double value = std::abs(std::sin(std::numbers::pi * static_cast<double>(rho) * norm * big_l));
        out.max_value = std::max(out.max_value, value);
      }
    }
  }
  return out;
}

}  // namespace latdisc::oracle
