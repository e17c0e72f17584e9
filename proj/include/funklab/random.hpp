#pragma once

#include <cmath>
#include <random>

#include "funklab/geometry.hpp"

namespace funklab {

using Rng = std::mt19937_64;

inline Vec random_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

inline SpherePoint random_sphere_point(int n, Rng& rng) {
  Vec v = random_gaussian(n, rng);
  while (v.norm() < 1e-12) v = random_gaussian(n, rng);
  return SpherePoint(std::move(v));
}

/// Uniform point of the ball of the given radius.
inline Vec random_ball_point(int n, double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::pow(unit(rng), 1.0 / n);
  return r * random_sphere_point(n, rng).vec();
}

/// n x k matrix with orthonormal columns, Haar-distributed span.
inline Mat random_orthonormal(int n, int k, Rng& rng) {
  Mat g(n, k);
  for (int j = 0; j < k; ++j) g.col(j) = random_gaussian(n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ() * Mat::Identity(n, k);
}

/// Random orthogonal n x n matrix as a product of Householder reflections.
inline Mat random_rotation(int n, Rng& rng) {
  Mat r = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec u = random_sphere_point(n, rng).vec();
    r = (Mat::Identity(n, n) - 2.0 * u * u.transpose()) * r;
  }
  return r;
}

}  // namespace funklab
