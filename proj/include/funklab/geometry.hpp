#pragma once

// Points, centers, affine k-planes and the involutive ball automorphisms
// phi_a together with their action on cross-sections of the unit sphere.

#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "funklab/config.hpp"
#include "funklab/error.hpp"

namespace funklab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec vec(std::initializer_list<double> coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

inline void require_same_dim(const Vec& u, const Vec& v, const char* where) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(where) + ": " + std::to_string(u.size()) + " vs " +
                    std::to_string(v.size()));
  }
}

inline void require_finite(const Vec& v, const char* where) {
  if (!v.allFinite()) throw Error(ErrorCode::InvalidArgument, std::string(where) + ": non-finite entry");
}

/// A point of the unit sphere; renormalized on construction.
class SpherePoint {
 public:
  explicit SpherePoint(Vec v) : v_(std::move(v)) {
    require_finite(v_, "SpherePoint");
    if (v_.size() < 2) throw Error(ErrorCode::DimensionMismatch, "SpherePoint needs n >= 2");
    const double norm = v_.norm();
    if (norm == 0.0) throw Error(ErrorCode::ZeroVector, "SpherePoint from zero vector");
    v_ /= norm;
  }

  const Vec& vec() const noexcept { return v_; }
  int dim() const noexcept { return static_cast<int>(v_.size()); }
  double operator[](Eigen::Index i) const { return v_[i]; }

 private:
  Vec v_;
};

/// Center of a family of planes: a finite point off the sphere, or a
/// direction standing for the center at infinity.
class Center {
 public:
  enum class Kind { Finite, Infinite };

  static Center finite(Vec v, const Tolerances& tol = {}) {
    require_finite(v, "Center");
    if (v.size() < 2) throw Error(ErrorCode::DimensionMismatch, "Center needs n >= 2");
    if (std::abs(v.norm() - 1.0) <= tol.center_on_sphere) {
      throw Error(ErrorCode::OnSphere, "center lies on the unit sphere");
    }
    return Center(Kind::Finite, std::move(v));
  }

  static Center infinite(Vec dir) {
    require_finite(dir, "Center");
    if (dir.size() < 2) throw Error(ErrorCode::DimensionMismatch, "Center needs n >= 2");
    const double norm = dir.norm();
    if (norm == 0.0) throw Error(ErrorCode::ZeroVector, "direction of infinite center is zero");
    return Center(Kind::Infinite, dir / norm);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_interior() const noexcept { return is_finite() && v_.norm() < 1.0; }
  int dim() const noexcept { return static_cast<int>(v_.size()); }

  /// The point for finite centers, the unit direction for infinite ones.
  const Vec& vec() const noexcept { return v_; }

  const Vec& point() const {
    if (!is_finite()) throw Error(ErrorCode::InvalidArgument, "infinite center has no point");
    return v_;
  }

  const Vec& direction() const {
    if (is_finite()) throw Error(ErrorCode::InvalidArgument, "finite center has no direction");
    return v_;
  }

 private:
  Center(Kind kind, Vec v) : kind_(kind), v_(std::move(v)) {}

  Kind kind_;
  Vec v_;
};

inline Center make_center(const Vec& v, const Tolerances& tol = {}) { return Center::finite(v, tol); }

/// The involutive automorphism of the unit ball with phi_a(0) = a, |a| < 1.
inline Vec phi(const Vec& a, const Vec& x, const Tolerances& tol = {}) {
  require_same_dim(a, x, "phi");
  const double a2 = a.squaredNorm();
  if (a2 >= 1.0) throw Error(ErrorCode::InvalidArgument, "phi requires |a| < 1");
  if (a2 == 0.0) return -x;
  const double xa = x.dot(a);
  const double denom = 1.0 - xa;
  if (std::abs(denom) < tol.degeneracy) {
    throw Error(ErrorCode::DegenerateDenominator, "phi: <x,a> = 1");
  }
  const Vec pa = (xa / a2) * a;
  const Vec qa = x - pa;
  return (a - pa - std::sqrt(1.0 - a2) * qa) / denom;
}

/// Inversion b* = b / |b|^2 in the unit sphere.
inline Vec inversion_point(const Vec& b) {
  const double b2 = b.squaredNorm();
  if (b2 == 0.0) throw Error(ErrorCode::ZeroVector, "inversion of the origin");
  return b / b2;
}

/// Affine k-plane in canonical form: orthonormal basis columns and an offset
/// equal to the foot of the perpendicular from the origin.
class AffinePlane {
 public:
  /// Plane through `point` spanned by the columns of `directions`.
  static AffinePlane from_span(const Mat& directions, const Vec& point) {
    require_finite(point, "AffinePlane");
    if (directions.rows() != point.size()) {
      throw Error(ErrorCode::DimensionMismatch, "plane directions and point differ in dimension");
    }
    if (directions.cols() < 1) throw Error(ErrorCode::InvalidArgument, "plane needs k >= 1");
    if (directions.cols() > directions.rows()) {
      throw Error(ErrorCode::RankDeficient, "more directions than ambient dimension");
    }
    Eigen::JacobiSVD<Mat> svd(directions, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv[0]);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv[i] <= 1e-10 * scale) throw Error(ErrorCode::RankDeficient, "plane directions are dependent");
    }
    Mat basis = svd.matrixU().leftCols(directions.cols());
    Vec offset = point - basis * (basis.transpose() * point);
    return AffinePlane(std::move(basis), std::move(offset));
  }

  /// Linear subspace spanned by `directions`.
  static AffinePlane linear(const Mat& directions) {
    return from_span(directions, Vec::Zero(directions.rows()));
  }

  const Mat& basis() const noexcept { return basis_; }
  const Vec& offset() const noexcept { return offset_; }
  int dim() const noexcept { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const noexcept { return static_cast<int>(basis_.rows()); }

  Mat projector() const { return basis_ * basis_.transpose(); }

  /// Orthogonal projection of x onto the plane.
  Vec project(const Vec& x) const {
    require_same_dim(x, offset_, "AffinePlane::project");
    return offset_ + basis_ * (basis_.transpose() * (x - offset_));
  }

  double distance(const Vec& x) const { return (x - project(x)).norm(); }

  /// Residual of a direction after projection onto the span.
  double direction_residual(const Vec& d) const {
    require_same_dim(d, offset_, "AffinePlane::direction_residual");
    return (d - basis_ * (basis_.transpose() * d)).norm();
  }

  bool is_linear(double tol = 1e-12) const { return offset_.norm() <= tol; }
  bool meets_ball() const { return offset_.norm() < 1.0; }

  /// The plane -E.
  AffinePlane reflected() const { return AffinePlane(basis_, -offset_); }

  /// Same point set: equal projectors and offsets.
  bool same_as(const AffinePlane& other, double tol) const {
    if (other.ambient_dim() != ambient_dim() || other.dim() != dim()) return false;
    return (projector() - other.projector()).cwiseAbs().maxCoeff() <= tol &&
           (offset_ - other.offset_).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  AffinePlane(Mat basis, Vec offset) : basis_(std::move(basis)), offset_(std::move(offset)) {}

  Mat basis_;
  Vec offset_;
};

/// Canonical plane through k+1 affinely independent points.
inline AffinePlane plane_from_points(std::span<const Vec> points) {
  if (points.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two points");
  const auto n = points.front().size();
  Mat dirs(n, static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t i = 1; i < points.size(); ++i) {
    require_same_dim(points[i], points[0], "plane_from_points");
    dirs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points[0];
  }
  return AffinePlane::from_span(dirs, points[0]);
}

inline AffinePlane plane_from_points(std::initializer_list<Vec> points) {
  const std::vector<Vec> pts(points);
  return plane_from_points(std::span<const Vec>(pts));
}

/// The (k-1)-sphere E ∩ S^{n-1}: its center and radius.
struct CrossSection {
  Vec center;
  double radius = 0.0;
};

inline CrossSection cross_section(const AffinePlane& plane, const Tolerances& tol = {}) {
  const double d = plane.offset().norm();
  if (d >= 1.0 - tol.sphere) throw Error(ErrorCode::Disjoint, "plane misses the open unit ball");
  return {plane.offset(), std::sqrt(1.0 - d * d)};
}

struct Subsphere {
  Vec center;
  double radius = 0.0;
};

/// Center and radius of phi_a(E0 ∩ S^{n-1}) for a linear plane E0.
inline Subsphere image_subsphere(const AffinePlane& linear_plane, const Vec& a, const Tolerances& tol = {}) {
  if (!linear_plane.is_linear(1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "image_subsphere expects a plane through the origin");
  }
  require_same_dim(a, linear_plane.offset(), "image_subsphere");
  const double a2 = a.squaredNorm();
  if (a2 >= 1.0) throw Error(ErrorCode::InvalidArgument, "image_subsphere requires |a| < 1");
  const Vec a_proj = linear_plane.project(a);
  return {phi(a, a_proj, tol), std::sqrt((1.0 - a2) / (1.0 - a_proj.squaredNorm()))};
}

/// The plane E' with phi_a(E ∩ B^n) = E' ∩ B^n, found by mapping k+1 interior
/// points of the section ball and refitting.
inline AffinePlane plane_image_under_phi(const Vec& a, const AffinePlane& plane, const Tolerances& tol = {}) {
  require_same_dim(a, plane.offset(), "plane_image_under_phi");
  const CrossSection cs = cross_section(plane, tol);
  std::vector<Vec> images;
  images.reserve(static_cast<std::size_t>(plane.dim()) + 1);
  images.push_back(phi(a, cs.center, tol));
  for (int j = 0; j < plane.dim(); ++j) {
    images.push_back(phi(a, Vec(cs.center + 0.5 * cs.radius * plane.basis().col(j)), tol));
  }
  return plane_from_points(std::span<const Vec>(images));
}

}  // namespace funklab
