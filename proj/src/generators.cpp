#include "latdisc/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace latdisc {
namespace {

constexpr int kMaxRetries = 1000;
constexpr double kPi = std::numbers::pi;

double min_side(const Polygond& p) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : side_frames(p)) m = std::min(m, f.ell);
  return m;
}

double min_big_l(const Polygond& p) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : side_frames(p)) m = std::min(m, f.big_l);
  return m;
}

// Scales about the origin until `measure(p) >= 1`; never shrinks.
template <typename Measure>
Polygond grow_until_unit(Polygond p, Measure measure) {
  for (int i = 0; i < 8 && measure(p) < 1.0; ++i) {
    const double factor = (1.0 / measure(p)) * (1.0 + 4 * std::numeric_limits<double>::epsilon());
    p = transformed(p, factor, 0.0, Point<double>::Zero().eval());
  }
  return p;
}

Polygond family_from_angles(const std::vector<double>& phi, double radius) {
  const auto n = static_cast<Eigen::Index>(phi.size());
  Polygond::Vertices v(2, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v.col(i) = radius * Point<double>(std::cos(phi[i]), std::sin(phi[i]));
    v.col(i + n) = -v.col(i);
  }
  Polygond p(std::move(v));
  return grow_until_unit(std::move(p), [](const Polygond& q) { return std::min(min_side(q), min_big_l(q)); });
}

// Valtr's construction: random x and y increments split into two monotone
// chains each sum to zero; sorting the paired edge vectors by angle closes a
// convex polygon.
std::vector<double> chain_increments(UniformSource& rng, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = rng();
  std::sort(xs.begin(), xs.end());
  const double lo = xs.front();
  const double hi = xs.back();
  std::vector<double> inc;
  inc.reserve(xs.size());
  double last_a = lo;
  double last_b = lo;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (rng.coin()) {
      inc.push_back(xs[i] - last_a);
      last_a = xs[i];
    } else {
      inc.push_back(last_b - xs[i]);
      last_b = xs[i];
    }
  }
  inc.push_back(hi - last_a);
  inc.push_back(last_b - hi);
  return inc;
}

std::optional<Polygond> try_convex(UniformSource& rng, int n) {
  auto dx = chain_increments(rng, n);
  auto dy = chain_increments(rng, n);
  std::shuffle(dy.begin(), dy.end(), rng.engine());
  std::vector<Point<double>> edges(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = Point<double>(dx[i], dy[i]);
  std::sort(edges.begin(), edges.end(),
            [](const Point<double>& a, const Point<double>& b) { return polar_angle(a) < polar_angle(b); });
  // Reject near-parallel consecutive edges and sides much shorter than the
  // longest one (they would blow up the rescaled polygon).
  double longest = 0;
  for (const auto& e : edges) longest = std::max(longest, e.norm());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& a = edges[i];
    const auto& b = edges[(i + 1) % edges.size()];
    if (a.norm() < 0.05 * longest) return std::nullopt;
    const double turn = std::atan2(cross<double>(a, b), a.dot(b));
    if (turn < 1e-3) return std::nullopt;
  }
  std::vector<Point<double>> pts;
  pts.reserve(edges.size());
  Point<double> cur = Point<double>::Zero();
  for (const auto& e : edges) {
    pts.push_back(cur);
    cur += e;
  }
  try {
    Polygond p = Polygond::from_points(pts);
    p = translated(p, Point<double>(-vertex_centroid(p)));
    return grow_until_unit(std::move(p), [](const Polygond& q) { return std::min(min_side(q), min_big_l(q)); });
  } catch (const PolygonError&) {
    return std::nullopt;
  }
}

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

Polygond generate_family_p(int n_half_sides, double radius, std::uint64_t seed) {
  if (n_half_sides < 2) throw InputError("family P generator needs n_half_sides >= 2");
  if (!(radius > 0)) throw InputError("radius must be positive");
  UniformSource rng(seed);
  const double min_gap = 0.05 * kPi / n_half_sides;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<double> phi(static_cast<std::size_t>(n_half_sides));
    for (auto& a : phi) a = rng(0.0, kPi);
    std::sort(phi.begin(), phi.end());
    bool ok = phi.front() + kPi - phi.back() >= min_gap;
    for (std::size_t i = 1; ok && i < phi.size(); ++i) ok = phi[i] - phi[i - 1] >= min_gap;
    if (ok) return family_from_angles(phi, radius);
  }
  throw InputError("family P generator: no non-degenerate angle draw after retries");
}

Polygond equally_spaced_family_p(int n_half_sides, double radius) {
  if (n_half_sides < 2) throw InputError("family P generator needs n_half_sides >= 2");
  std::vector<double> phi(static_cast<std::size_t>(n_half_sides));
  for (int i = 0; i < n_half_sides; ++i) phi[static_cast<std::size_t>(i)] = kPi / (2 * n_half_sides) + i * kPi / n_half_sides;
  return family_from_angles(phi, radius);
}

Polygond generate_convex(int n_sides, std::uint64_t seed) {
  if (n_sides < 3) throw InputError("convex generator needs n_sides >= 3");
  UniformSource rng(seed);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    if (auto p = try_convex(rng, n_sides)) return *std::move(p);
  }
  throw InputError("convex generator: no non-degenerate polygon after retries");
}

Polygond preset(std::string_view name) {
  auto poly = [](std::initializer_list<std::pair<double, double>> xy) {
    std::vector<Point<double>> pts;
    for (const auto& [x, y] : xy) pts.emplace_back(x, y);
    return Polygond::from_points(pts);
  };
  if (name == "square") return poly({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  if (name == "unit-square") return poly({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
  if (name == "triangle") return poly({{0, 0}, {1, 0}, {0, 1}});
  if (name == "rect-2x1") return poly({{-1, -0.5}, {1, -0.5}, {1, 0.5}, {-1, 0.5}});
  if (name == "trapezoid") return poly({{-1, -0.5}, {1, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
  if (name == "hex-sym-noncyclic") return poly({{2, 0}, {1, 1}, {-1, 1}, {-2, 0}, {-1, -1}, {1, -1}});
  if (name == "octagon-p") return generate_family_p(4, 1.0, 7);

  const auto first = name.find(':');
  const auto second = first == std::string_view::npos ? first : name.find(':', first + 1);
  if (second != std::string_view::npos) {
    const auto kind = name.substr(0, first);
    const int n = parse_int(name.substr(first + 1, second - first - 1), "side count");
    const int seed = parse_int(name.substr(second + 1), "seed");
    if (seed < 0) throw InputError("preset seed must be nonnegative");
    if (kind == "pgon-family-p") {
      if (n % 2 != 0) throw InputError("family P polygons have an even side count");
      return generate_family_p(n / 2, 1.0, static_cast<std::uint64_t>(seed));
    }
    if (kind == "pgon-convex") return generate_convex(n, static_cast<std::uint64_t>(seed));
  }
  throw InputError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"square", "unit-square", "triangle", "rect-2x1", "trapezoid", "hex-sym-noncyclic", "octagon-p",
          "pgon-family-p:N:SEED", "pgon-convex:N:SEED"};
}

}  // namespace latdisc
