#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "latdisc/errors.hpp"

namespace latdisc {

/// Default relative tolerance for the geometric predicates.
inline constexpr double kDefaultTol = 1e-9;

template <typename Scalar>
using Point = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
Scalar cross(const Point<Scalar>& a, const Point<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Angle of a planar vector, normalized to [0, 2pi).
template <typename Scalar>
Scalar polar_angle(const Point<Scalar>& v) {
  using std::atan2;
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  Scalar a = atan2(v.y(), v.x());
  if (a < 0) a += two_pi;
  if (a >= two_pi) a = 0;
  return a;
}

/// Strictly convex polygon with counterclockwise vertices stored as columns.
/// Vertex indices are periodic: vertex(h + size()) == vertex(h).
template <typename Scalar>
class Polygon {
 public:
  using Vertices = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

  explicit Polygon(Vertices vertices) : v_(std::move(vertices)) { validate(v_); }

  static Polygon from_points(const std::vector<Point<Scalar>>& pts) {
    Vertices v(2, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = pts[i];
    return Polygon(std::move(v));
  }

  Eigen::Index size() const { return v_.cols(); }

  Point<Scalar> vertex(Eigen::Index h) const {
    const Eigen::Index s = size();
    return v_.col(((h % s) + s) % s);
  }

  const Vertices& vertices() const { return v_; }

  template <typename Other>
  Polygon<Other> cast() const {
    return Polygon<Other>(v_.template cast<Other>());
  }

  /// Throws PolygonError naming the first violated invariant.
  static void validate(const Vertices& v) {
    using std::abs;
    using std::atan2;
    const Eigen::Index s = v.cols();
    if (s < 3) throw PolygonError("polygon needs at least 3 vertices, got " + std::to_string(s));
    for (Eigen::Index h = 0; h < s; ++h) {
      if (!v.col(h).allFinite()) throw PolygonError("non-finite coordinate", static_cast<std::size_t>(h));
    }
    for (Eigen::Index a = 0; a < s; ++a) {
      for (Eigen::Index b = a + 1; b < s; ++b) {
        if (v.col(a) == v.col(b)) throw PolygonError("repeated vertex", static_cast<std::size_t>(b));
      }
    }
    Scalar turning = 0;
    for (Eigen::Index h = 0; h < s; ++h) {
      const Point<Scalar> e0 = v.col((h + 1) % s) - v.col(h);
      const Point<Scalar> e1 = v.col((h + 2) % s) - v.col((h + 1) % s);
      const Scalar c = cross<Scalar>(e0, e1);
      if (!(c > 0)) {
        throw PolygonError("vertices are not strictly counterclockwise convex",
                           static_cast<std::size_t>((h + 1) % s));
      }
      turning += atan2(c, e0.dot(e1));
    }
    // A star polygon has only left turns but winds more than once.
    if (abs(turning - 2 * std::numbers::pi_v<Scalar>) > Scalar(1e-6)) {
      throw PolygonError("boundary winds more than once around the interior");
    }
  }

 private:
  Vertices v_;
};

using Polygond = Polygon<double>;

/// Per-side frame. tau = (cos theta, sin theta), nu = (sin theta, -cos theta)
/// is the outward normal, big_l = |P_h + P_{h+1}|.
template <typename Scalar>
struct SideFrame {
  Point<Scalar> tau;
  Point<Scalar> nu;
  Scalar ell;
  Scalar big_l;
  Scalar theta;
};

template <typename Scalar>
struct Circle {
  Point<Scalar> center;
  Scalar radius;
};

template <typename Scalar>
Scalar area(const Polygon<Scalar>& p) {
  Scalar twice = 0;
  for (Eigen::Index h = 0; h < p.size(); ++h) twice += cross<Scalar>(p.vertex(h), p.vertex(h + 1));
  return twice / 2;
}

template <typename Scalar>
Point<Scalar> vertex_centroid(const Polygon<Scalar>& p) {
  return p.vertices().rowwise().mean();
}

/// Centroid of the region (not of the vertex set).
template <typename Scalar>
Point<Scalar> area_centroid(const Polygon<Scalar>& p) {
  Point<Scalar> acc = Point<Scalar>::Zero();
  Scalar twice = 0;
  for (Eigen::Index h = 0; h < p.size(); ++h) {
    const Scalar c = cross<Scalar>(p.vertex(h), p.vertex(h + 1));
    acc += c * (p.vertex(h) + p.vertex(h + 1));
    twice += c;
  }
  return acc / (3 * twice);
}

template <typename Scalar>
Scalar diameter(const Polygon<Scalar>& p) {
  Scalar d = 0;
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    for (Eigen::Index b = a + 1; b < p.size(); ++b) {
      const Scalar n = (p.vertex(a) - p.vertex(b)).norm();
      if (n > d) d = n;
    }
  }
  return d;
}

template <typename Scalar>
std::vector<SideFrame<Scalar>> side_frames(const Polygon<Scalar>& p) {
  std::vector<SideFrame<Scalar>> frames;
  frames.reserve(static_cast<std::size_t>(p.size()));
  for (Eigen::Index h = 0; h < p.size(); ++h) {
    const Point<Scalar> a = p.vertex(h);
    const Point<Scalar> b = p.vertex(h + 1);
    const Point<Scalar> edge = b - a;
    SideFrame<Scalar> f;
    f.ell = edge.norm();
    f.tau = edge / f.ell;
    f.nu = Point<Scalar>(f.tau.y(), -f.tau.x());
    f.big_l = (a + b).norm();
    f.theta = polar_angle<Scalar>(f.tau);
    frames.push_back(f);
  }
  return frames;
}

/// Circle through the first three vertices, provided every vertex lies on it
/// within tol * radius.
template <typename Scalar>
std::optional<Circle<Scalar>> circumscribed_circle(const Polygon<Scalar>& p, Scalar tol = Scalar(kDefaultTol)) {
  using std::abs;
  const Point<Scalar> a = p.vertex(0);
  const Point<Scalar> b = p.vertex(1) - a;
  const Point<Scalar> c = p.vertex(2) - a;
  const Scalar d = 2 * cross<Scalar>(b, c);
  const Scalar b2 = b.squaredNorm();
  const Scalar c2 = c.squaredNorm();
  const Point<Scalar> center = a + Point<Scalar>(c.y() * b2 - b.y() * c2, b.x() * c2 - c.x() * b2) / d;
  const Scalar radius = (a - center).norm();
  for (Eigen::Index h = 3; h < p.size(); ++h) {
    if (abs((p.vertex(h) - center).norm() - radius) > tol * radius) return std::nullopt;
  }
  return Circle<Scalar>{center, radius};
}

/// Vertex centroid c when vertex h + s/2 == 2c - vertex h for every h.
template <typename Scalar>
std::optional<Point<Scalar>> symmetry_center(const Polygon<Scalar>& p, Scalar tol = Scalar(kDefaultTol)) {
  const Eigen::Index s = p.size();
  if (s % 2 != 0) return std::nullopt;
  const Point<Scalar> c = vertex_centroid(p);
  const Scalar scale = (p.vertices().colwise() - c).colwise().norm().maxCoeff();
  for (Eigen::Index h = 0; h < s / 2; ++h) {
    if ((p.vertex(h) + p.vertex(h + s / 2) - 2 * c).norm() > tol * scale) return std::nullopt;
  }
  return c;
}

template <typename Scalar>
bool in_family_p(const Polygon<Scalar>& p, Scalar tol = Scalar(kDefaultTol)) {
  const auto circle = circumscribed_circle(p, tol);
  if (!circle) return false;
  const auto center = symmetry_center(p, tol);
  if (!center) return false;
  return (circle->center - *center).norm() <= tol * circle->radius;
}

enum class RegularityTag {
  kIrregularFamilyP,
  kRegularUnpairedSide,
  kRegularUnequalParallel,
  kRegularNotInscribed,
};

inline const char* to_string(RegularityTag t) {
  switch (t) {
    case RegularityTag::kIrregularFamilyP: return "IRREGULAR_FAMILY_P";
    case RegularityTag::kRegularUnpairedSide: return "REGULAR_UNPAIRED_SIDE";
    case RegularityTag::kRegularUnequalParallel: return "REGULAR_UNEQUAL_PARALLEL";
    case RegularityTag::kRegularNotInscribed: return "REGULAR_NOT_INSCRIBED";
  }
  return "UNKNOWN";
}

template <typename Scalar>
struct RegularityClass {
  RegularityTag tag;
  std::optional<std::size_t> side;     // unpaired side, longer side of an unequal pair, or non-rectangular pair
  std::optional<std::size_t> partner;  // antiparallel partner of `side`
  std::optional<Circle<Scalar>> circle;

  bool regular() const { return tag != RegularityTag::kIrregularFamilyP; }
};

/// Classification in priority order: family P, then unpaired side, then an
/// unequal antiparallel pair, else not inscribed.
template <typename Scalar>
RegularityClass<Scalar> regularity_class(const Polygon<Scalar>& p, Scalar tol = Scalar(kDefaultTol)) {
  using std::abs;
  using std::max;
  if (in_family_p(p, tol)) {
    return {RegularityTag::kIrregularFamilyP, std::nullopt, std::nullopt, circumscribed_circle(p, tol)};
  }
  const auto frames = side_frames(p);
  const std::size_t s = frames.size();
  std::vector<std::size_t> partner(s, s);
  for (std::size_t h = 0; h < s; ++h) {
    for (std::size_t k = 0; k < s; ++k) {
      if (k != h && (frames[h].tau + frames[k].tau).norm() <= tol) {
        partner[h] = k;
        break;
      }
    }
    if (partner[h] == s) return {RegularityTag::kRegularUnpairedSide, h, std::nullopt, std::nullopt};
  }
  for (std::size_t h = 0; h < s; ++h) {
    const std::size_t k = partner[h];
    const Scalar lh = frames[h].ell;
    const Scalar lk = frames[k].ell;
    if (abs(lh - lk) > tol * max(lh, lk)) {
      return {RegularityTag::kRegularUnequalParallel, lh >= lk ? h : k, lh >= lk ? k : h, std::nullopt};
    }
  }
  // Every side has an equal antiparallel partner, so the polygon is centrally
  // symmetric; report the pair whose chord midpoint leans most off the normal.
  const Point<Scalar> c = vertex_centroid(p);
  std::size_t worst = 0;
  Scalar worst_lean = -1;
  for (std::size_t h = 0; h < s; ++h) {
    const auto hh = static_cast<Eigen::Index>(h);
    const Scalar lean = abs((p.vertex(hh) + p.vertex(hh + 1) - 2 * c).dot(frames[h].tau));
    if (lean > worst_lean) {
      worst_lean = lean;
      worst = h;
    }
  }
  return {RegularityTag::kRegularNotInscribed, worst, partner[worst], std::nullopt};
}

/// v -> scale * R(sigma) * v + t for an arbitrary positive scale.
template <typename Scalar>
Polygon<Scalar> transformed(const Polygon<Scalar>& p, Scalar scale, Scalar sigma, const Point<Scalar>& t) {
  using std::cos;
  using std::sin;
  if (!(scale > 0)) throw InputError("scale must be positive");
  Eigen::Matrix<Scalar, 2, 2> r;
  r << cos(sigma), -sin(sigma), sin(sigma), cos(sigma);
  typename Polygon<Scalar>::Vertices v = (scale * r * p.vertices()).colwise() + t;
  return Polygon<Scalar>(std::move(v));
}

/// The copy rho * sigma(P) + t.
template <typename Scalar>
Polygon<Scalar> apply_motion(const Polygon<Scalar>& p, Scalar rho, Scalar sigma, const Point<Scalar>& t) {
  if (!(rho >= 1)) throw InputError("dilation rho must be >= 1");
  return transformed(p, rho, sigma, t);
}

template <typename Scalar>
Polygon<Scalar> translated(const Polygon<Scalar>& p, const Point<Scalar>& t) {
  return transformed(p, Scalar(1), Scalar(0), t);
}

/// Standing normalization min ell_h >= 1 and min big_l_h >= 1.
template <typename Scalar>
bool satisfies_normalization(const Polygon<Scalar>& p, Scalar slack = Scalar(1e-12)) {
  for (const auto& f : side_frames(p)) {
    if (f.ell < 1 - slack || f.big_l < 1 - slack) return false;
  }
  return true;
}

}  // namespace latdisc
