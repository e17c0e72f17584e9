#pragma once

#include <cstdint>

namespace funklab {

/// Numerical thresholds shared by every module.
struct Tolerances {
  double sphere = 1e-12;            // unit-norm slack for sphere points and planes
  double degeneracy = 1e-14;        // vanishing denominators
  double verdict = 1e-9;            // classification bands (parabolic, <a,b> = 1)
  double center_on_sphere = 1e-9;   // | |a| - 1 | below this is rejected
  double plane_membership = 1e-9;   // dist(a, E) for E in Gr_a, dir in span(E)
  double period_residual = 1e-8;    // numeric confirmation of T^q = id
  double exact_theta = 1e-12;       // snapping Theta onto {0, +-1/2}
  double mirror_match = 1e-9;       // normal dedup in the reflection closure
};

/// Continued-fraction search window for rotation numbers.
struct RationalSearch {
  int max_denominator = 64;
  double eps = 1e-9;
};

/// Default quadrature orders.
struct QuadratureDefaults {
  int circle_order = 64;
  int longitudes = 48;
  int colatitudes = 24;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

}  // namespace funklab
