#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "latdisc/polygon.hpp"

namespace latdisc {

/// Seeded source of uniform doubles built only from mt19937_64 output bits,
/// so draws are identical across standard library implementations.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }
  bool coin() { return (engine_() >> 63) != 0; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Random member of the family P with 2n sides: vertices on a circle at
/// angles {phi_i} and {phi_i + pi}. The radius is enlarged when needed so
/// that every side length and every |P_h + P_{h+1}| is at least 1.
Polygond generate_family_p(int n_half_sides, double radius, std::uint64_t seed);

/// Regular 2n-gon in the family P (n = 2 gives an axis-aligned square).
Polygond equally_spaced_family_p(int n_half_sides, double radius);

/// Random convex n-gon centered at its vertex centroid, enlarged so every
/// side length and every |P_h + P_{h+1}| is at least 1.
Polygond generate_convex(int n_sides, std::uint64_t seed);

/// Named polygons used by the CLI and the test suites:
///   square             [-1,1]^2
///   unit-square        [-1/2,1/2]^2
///   triangle           (0,0) (1,0) (0,1)
///   rect-2x1           [-1,1] x [-1/2,1/2]
///   trapezoid          isosceles trapezoid, parallel sides 2 and 1
///   hex-sym-noncyclic  (+-2,0) (+-1,+-1)
///   octagon-p          generate_family_p(4, 1, 7)
///   pgon-family-p:N:SEED   random family-P N-gon (N even), radius 1
///   pgon-convex:N:SEED     random convex N-gon
Polygond preset(std::string_view name);

std::vector<std::string> preset_names();

}  // namespace latdisc
