#pragma once

// Shifted Funk transforms, parallel slice transforms, the Jacobian of phi_a on
// subspheres and the intertwiners reducing F_a to F_0 and F_b to Pi_b.

#include <cmath>
#include <string>

#include "funklab/config.hpp"
#include "funklab/error.hpp"
#include "funklab/geometry.hpp"
#include "funklab/quadrature.hpp"
#include "funklab/spherical_function.hpp"

namespace funklab {

/// Integral of f over E ∩ S^{n-1} for a plane E through the finite center a.
inline double funk(const Center& a, const SphericalFunction& f, const AffinePlane& plane, int order,
                   const Tolerances& tol = {}) {
  require_same_dim(a.point(), plane.offset(), "funk");
  if (plane.distance(a.point()) > tol.plane_membership) {
    throw Error(ErrorCode::CenterNotOnPlane, "the plane does not contain the center");
  }
  return section_rule(plane, order, tol).integrate(f);
}

inline double funk(const Vec& a, const SphericalFunction& f, const AffinePlane& plane, int order,
                   const Tolerances& tol = {}) {
  require_same_dim(a, plane.offset(), "funk");
  if (plane.distance(a) > tol.plane_membership) {
    throw Error(ErrorCode::CenterNotOnPlane, "the plane does not contain the center");
  }
  return section_rule(plane, order, tol).integrate(f);
}

/// Integral of f over E ∩ S^{n-1} for a plane E parallel to `dir`.
inline double slice_transform(const Vec& dir, const SphericalFunction& f, const AffinePlane& plane, int order,
                              const Tolerances& tol = {}) {
  require_same_dim(dir, plane.offset(), "slice_transform");
  const double len = dir.norm();
  if (len == 0.0) throw Error(ErrorCode::ZeroVector, "slice direction");
  if (plane.direction_residual(dir / len) > tol.plane_membership) {
    throw Error(ErrorCode::NotParallel, "the plane is not parallel to the direction");
  }
  return section_rule(plane, order, tol).integrate(f);
}

/// F_a for finite centers, Pi_dir for centers at infinity.
inline double transform_value(const Center& c, const SphericalFunction& f, const AffinePlane& plane, int order,
                              const Tolerances& tol = {}) {
  return c.is_finite() ? funk(c, f, plane, order, tol) : slice_transform(c.direction(), f, plane, order, tol);
}

/// (sqrt(1 - |a|^2) / (1 - <y, a>))^(k-1), the area factor of phi_a on (k-1)-subspheres.
inline double jacobian(const Vec& a, const Vec& y, int k, const Tolerances& tol = {}) {
  require_same_dim(a, y, "jacobian");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "plane dimension k must be >= 1");
  const double a2 = a.squaredNorm();
  if (a2 >= 1.0) throw Error(ErrorCode::InvalidArgument, "jacobian requires |a| < 1");
  const double denom = 1.0 - y.dot(a);
  if (std::abs(denom) < tol.degeneracy) throw Error(ErrorCode::DegenerateDenominator, "jacobian: <y,a> = 1");
  if (k == 1) return 1.0;
  return std::pow(std::sqrt(1.0 - a2) / denom, k - 1);
}

inline double jacobian(const Vec& a, const SpherePoint& y, int k, const Tolerances& tol = {}) {
  return jacobian(a, y.vec(), k, tol);
}

/// x -> f(phi_a x) J_a(x); satisfies F_a f(E) = F_0(M_a f)(phi_a E).
inline SphericalFunction intertwine_Ma(const Vec& a, SphericalFunction f, int k, const Tolerances& tol = {}) {
  if (a.squaredNorm() >= 1.0) throw Error(ErrorCode::InvalidArgument, "M_a requires |a| < 1");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "plane dimension k must be >= 1");
  return pullback(
      std::move(f), [a, tol](const Vec& x) { return phi(a, x, tol); },
      [a, k, tol](const Vec& x) { return jacobian(a, x, k, tol); }, "M" + detail::format_vec(a));
}

/// M_{b*} for an exterior center b; satisfies F_b f(E) = Pi_b(M_{b*} f)(phi_{b*} E).
inline SphericalFunction intertwine_Mbstar(const Vec& b, SphericalFunction f, int k, const Tolerances& tol = {}) {
  if (b.squaredNorm() <= 1.0) throw Error(ErrorCode::InvalidArgument, "M_{b*} requires |b| > 1");
  return intertwine_Ma(inversion_point(b), std::move(f), k, tol);
}

}  // namespace funklab
