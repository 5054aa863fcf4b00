#include <doctest.h>

#include <cmath>
#include <numbers>

#include "latdisc/generators.hpp"
#include "latdisc/polygon.hpp"
#include "oracle.hpp"

using namespace latdisc;

namespace {

constexpr double kPi = std::numbers::pi;

Polygond poly(std::initializer_list<std::pair<double, double>> pts) {
  std::vector<Point<double>> v;
  for (const auto& [x, y] : pts) v.emplace_back(x, y);
  return Polygond::from_points(v);
}

const Polygond kUnitSquare = poly({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
const Polygond kTriangle = poly({{0, 0}, {1, 0}, {0, 1}});
const Polygond kHexagon = poly({{2, 0}, {1, 1}, {-1, 1}, {-2, 0}, {-1, -1}, {1, -1}});
// every side has an antiparallel partner; the horizontal pair has lengths 3 and 2
const Polygond kUnequalHexagon = poly({{0, 0}, {3, 0}, {4, 1}, {4, 3}, {2, 3}, {0, 1}});

Polygond equilateral() {
  return poly({{1, 0}, {std::cos(2 * kPi / 3), std::sin(2 * kPi / 3)}, {std::cos(4 * kPi / 3), std::sin(4 * kPi / 3)}});
}

Polygond roll(const Polygond& p, Eigen::Index by) {
  Polygond::Vertices v(2, p.size());
  for (Eigen::Index h = 0; h < p.size(); ++h) v.col(h) = p.vertex(h + by);
  return Polygond(v);
}

}  // namespace

TEST_CASE("area") {
  CHECK(area(kUnitSquare) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(area(kTriangle) == doctest::Approx(0.5).epsilon(1e-15));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Polygond p = generate_convex(7, seed);
    CHECK(std::abs(area(p) - oracle::fan_area(p)) <= 1e-12 * area(p));
  }
}

TEST_CASE("side frames of the unit square") {
  const auto frames = side_frames(kUnitSquare);
  REQUIRE(frames.size() == 4);
  // side from (1/2,-1/2) to (1/2,1/2)
  const auto& f = frames[1];
  CHECK((f.tau - Point<double>(0, 1)).norm() < 1e-15);
  CHECK((f.nu - Point<double>(1, 0)).norm() < 1e-15);
  CHECK(f.ell == doctest::Approx(1.0));
  CHECK(f.big_l == doctest::Approx(1.0));
  CHECK(f.theta == doctest::Approx(kPi / 2));
  for (const auto& g : frames) {
    CHECK(g.ell == doctest::Approx(1.0));
    CHECK(g.big_l == doctest::Approx(1.0));
  }
}

TEST_CASE("side frame invariants on generated polygons") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (const Polygond& p : {generate_convex(3 + static_cast<int>(seed % 6), seed), generate_family_p(2 + static_cast<int>(seed % 4), 1.0, seed)}) {
      const auto frames = side_frames(p);
      const Point<double> c = vertex_centroid(p);
      for (std::size_t h = 0; h < frames.size(); ++h) {
        const auto hh = static_cast<Eigen::Index>(h);
        const auto& f = frames[h];
        const Point<double> a = p.vertex(hh);
        const Point<double> b = p.vertex(hh + 1);
        CHECK((f.tau - (b - a) / f.ell).norm() < 1e-12);
        CHECK((f.tau - Point<double>(std::cos(f.theta), std::sin(f.theta))).norm() < 1e-12);
        CHECK((f.nu - Point<double>(std::sin(f.theta), -std::cos(f.theta))).norm() < 1e-12);
        CHECK(f.theta >= 0);
        CHECK(f.theta < 2 * kPi);
        CHECK(f.nu.dot(c - 0.5 * (a + b)) < 0);
        CHECK(f.big_l == doctest::Approx((a + b).norm()));
      }
    }
  }
}

TEST_CASE("chord sum equals L nu for equidistant endpoints") {
  const Polygond raw = generate_family_p(5, 1.0, 11);
  const Polygond p = translated(raw, Point<double>(-*symmetry_center(raw)));
  const auto frames = side_frames(p);
  for (std::size_t h = 0; h < frames.size(); ++h) {
    const auto hh = static_cast<Eigen::Index>(h);
    CHECK((p.vertex(hh) + p.vertex(hh + 1) - frames[h].big_l * frames[h].nu).norm() < 1e-9);
  }
}

TEST_CASE("circumscribed circle") {
  const auto sq = circumscribed_circle(kUnitSquare);
  REQUIRE(sq);
  CHECK(sq->center.norm() < 1e-15);
  CHECK(sq->radius == doctest::Approx(std::sqrt(2.0) / 2));
  const auto rect = circumscribed_circle(preset("rect-2x1"));
  REQUIRE(rect);
  CHECK(rect->center.norm() < 1e-15);
  CHECK(rect->radius == doctest::Approx(std::sqrt(5.0) / 2));
  CHECK_FALSE(circumscribed_circle(kHexagon));
}

TEST_CASE("symmetry center") {
  const auto c = symmetry_center(kUnitSquare);
  REQUIRE(c);
  CHECK(c->norm() < 1e-15);
  CHECK_FALSE(symmetry_center(equilateral()));
  const auto moved = symmetry_center(translated(kUnitSquare, Point<double>(3, 7)));
  REQUIRE(moved);
  CHECK((*moved - Point<double>(3, 7)).norm() < 1e-12);
}

TEST_CASE("family P membership") {
  CHECK(in_family_p(kUnitSquare));
  CHECK_FALSE(in_family_p(equilateral()));
  CHECK_FALSE(in_family_p(kHexagon));
  CHECK(in_family_p(preset("rect-2x1")));
  CHECK_FALSE(in_family_p(preset("trapezoid")));
}

TEST_CASE("regularity classification") {
  const auto tri = regularity_class(kTriangle);
  CHECK(tri.tag == RegularityTag::kRegularUnpairedSide);
  CHECK(tri.side.has_value());
  // the legs of a trapezoid are unpaired, which takes priority over its unequal bases
  CHECK(regularity_class(preset("trapezoid")).tag == RegularityTag::kRegularUnpairedSide);
  const auto unequal = regularity_class(kUnequalHexagon);
  CHECK(unequal.tag == RegularityTag::kRegularUnequalParallel);
  REQUIRE(unequal.side);
  REQUIRE(unequal.partner);
  const auto frames = side_frames(kUnequalHexagon);
  CHECK(frames[*unequal.side].ell == doctest::Approx(3.0));
  CHECK(frames[*unequal.partner].ell == doctest::Approx(2.0));
  const auto hex = regularity_class(kHexagon);
  CHECK(hex.tag == RegularityTag::kRegularNotInscribed);
  CHECK(hex.side.has_value());
  const auto sq = regularity_class(kUnitSquare);
  CHECK(sq.tag == RegularityTag::kIrregularFamilyP);
  CHECK_FALSE(sq.regular());
  CHECK(std::string(to_string(hex.tag)) == "REGULAR_NOT_INSCRIBED");
}

TEST_CASE("membership is invariant under relabeling, rotation and dilation about the center") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Polygond fam = generate_family_p(2 + static_cast<int>(seed % 5), 1.0, seed);
    const Polygond gen = generate_convex(4 + static_cast<int>(seed % 5), seed);
    for (const Polygond& p : {fam, gen}) {
      const bool base = in_family_p(p);
      const Point<double> c = vertex_centroid(p);
      const Point<double> zero = Point<double>::Zero();
      for (Eigen::Index k = 1; k < p.size(); ++k) CHECK(in_family_p(roll(p, k)) == base);
      for (const double sigma : {0.3, 1.9, 4.4}) {
        CHECK(in_family_p(translated(transformed(translated(p, Point<double>(-c)), 1.0, sigma, zero), c)) == base);
      }
      for (const double scale : {0.25, 7.0}) {
        const Polygond d = translated(transformed(translated(p, Point<double>(-c)), scale, 0.0, zero), c);
        CHECK(in_family_p(d) == base);
        CHECK(circumscribed_circle(d).has_value() == circumscribed_circle(p).has_value());
        CHECK(symmetry_center(d).has_value() == symmetry_center(p).has_value());
      }
    }
    CHECK(in_family_p(fam));
  }
}

TEST_CASE("apply_motion") {
  const Polygond p = generate_convex(5, 3);
  const Polygond same = apply_motion(p, 1.0, 0.0, Point<double>(Point<double>::Zero()));
  CHECK((same.vertices() - p.vertices()).norm() < 1e-15);
  const Polygond big = apply_motion(kUnitSquare, 2.0, 0.0, Point<double>(Point<double>::Zero()));
  CHECK((big.vertices() - preset("square").vertices()).norm() < 1e-15);
  const Polygond moved = apply_motion(p, 3.7, 1.1, Point<double>(0.2, -0.4));
  CHECK(area(moved) == doctest::Approx(3.7 * 3.7 * area(p)).epsilon(1e-12));
  CHECK_THROWS_AS(apply_motion(p, 0.5, 0.0, Point<double>(Point<double>::Zero())), InputError);
}

TEST_CASE("construction rejects invalid vertex lists") {
  CHECK_THROWS_AS(poly({{0, 0}, {1, 0}}), PolygonError);
  CHECK_THROWS_AS(poly({{0, 0}, {0, 1}, {1, 0}}), PolygonError);  // clockwise
  CHECK_THROWS_AS(poly({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), PolygonError);  // collinear
  CHECK_THROWS_AS(poly({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), PolygonError);
  CHECK_THROWS_AS(poly({{0, 0}, {1, 0}, {0, std::nan("")}}), PolygonError);
  // pentagram: every turn is left but the boundary winds twice
  std::vector<Point<double>> star;
  for (int i = 0; i < 5; ++i) star.emplace_back(std::cos(4 * kPi * i / 5), std::sin(4 * kPi * i / 5));
  CHECK_THROWS_AS(Polygond::from_points(star), PolygonError);
  try {
    poly({{0, 0}, {1, 0}, {1, 0}, {0, 1}});
  } catch (const PolygonError& e) {
    CHECK(e.vertex() == 2u);
  }
}

TEST_CASE("scalar-templated polygon") {
  const Polygon<long double> q = kUnitSquare.cast<long double>();
  CHECK(static_cast<double>(area(q)) == doctest::Approx(1.0));
  CHECK(in_family_p(q));
}
