#pragma once

// Point symmetries, weights, the V-map T = tau_b o tau_a and its reduction to
// Mobius transformations of the unit circle on two-dimensional sections.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "funklab/config.hpp"
#include "funklab/error.hpp"
#include "funklab/geometry.hpp"
#include "funklab/random.hpp"

namespace funklab {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Symmetries and weights

/// Second intersection of the line through x and a with the unit sphere.
/// Valid for interior and exterior a alike.
inline SpherePoint tau(const Vec& a, const SpherePoint& x, const Tolerances& tol = {}) {
  require_same_dim(a, x.vec(), "tau");
  const Vec d = a - x.vec();
  const double d2 = d.squaredNorm();
  if (std::sqrt(d2) < tol.degeneracy) throw Error(ErrorCode::CoincidentPoint, "tau: x coincides with a");
  const double t = 2.0 * (1.0 - x.vec().dot(a)) / d2;
  return SpherePoint(x.vec() + t * d);
}

/// Weight (|1 - |a|^2| / |x - a|^2)^(k-1) attached to tau_a.
inline double rho(const Vec& a, const SpherePoint& x, int k, const Tolerances& tol = {}) {
  require_same_dim(a, x.vec(), "rho");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "plane dimension k must be >= 1");
  if (k == 1) return 1.0;
  const double d2 = (x.vec() - a).squaredNorm();
  if (std::sqrt(d2) < tol.degeneracy) throw Error(ErrorCode::CoincidentPoint, "rho: x coincides with a");
  return std::pow(std::abs(1.0 - a.squaredNorm()) / d2, k - 1);
}

/// Reflection across the hyperplane b^perp.
inline Vec sigma(const Vec& b, const Vec& x) {
  require_same_dim(b, x, "sigma");
  const double b2 = b.squaredNorm();
  if (b2 == 0.0) throw Error(ErrorCode::ZeroVector, "sigma: zero normal");
  return x - (2.0 * x.dot(b) / b2) * b;
}

inline SpherePoint sigma(const Vec& b, const SpherePoint& x) { return SpherePoint(sigma(b, x.vec())); }

/// tau for finite centers, sigma for centers at infinity.
inline SpherePoint reflect(const Center& c, const SpherePoint& x, const Tolerances& tol = {}) {
  return c.is_finite() ? tau(c.point(), x, tol) : sigma(c.direction(), x);
}

/// rho for finite centers, identically 1 at infinity.
inline double weight(const Center& c, const SpherePoint& x, int k, const Tolerances& tol = {}) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "plane dimension k must be >= 1");
  return c.is_finite() ? rho(c.point(), x, k, tol) : 1.0;
}

/// The V-map T = tau_b o tau_a. Its inverse is v_map(b, a, .).
inline SpherePoint v_map(const Center& a, const Center& b, const SpherePoint& x, const Tolerances& tol = {}) {
  return reflect(b, reflect(a, x, tol), tol);
}

inline SpherePoint v_map(const Vec& a, const Vec& b, const SpherePoint& x, const Tolerances& tol = {}) {
  return tau(b, tau(a, x, tol), tol);
}

inline SpherePoint v_map_power(const Center& a, const Center& b, SpherePoint x, int times,
                               const Tolerances& tol = {}) {
  for (int i = 0; i < times; ++i) x = v_map(a, b, x, tol);
  return x;
}

// ---------------------------------------------------------------------------
// Fixed points

/// Z_{a,b}: sphere points whose tangent plane contains both a and b. Stored as
/// the subsphere center + radius * (unit vector of `span`).
struct TangencySet {
  bool empty = true;
  Vec center;
  double radius = 0.0;
  Mat span;  // orthonormal columns spanning the complement of {a, b}

  /// A few deterministic points of the set (all of them when it is finite).
  std::vector<Vec> sample() const {
    std::vector<Vec> out;
    if (empty) return out;
    if (radius == 0.0 || span.cols() == 0) {
      out.push_back(center);
      return out;
    }
    for (Eigen::Index j = 0; j < span.cols(); ++j) {
      out.push_back(center + radius * span.col(j));
      out.push_back(center - radius * span.col(j));
    }
    return out;
  }
};

struct FixedPointSet {
  TangencySet tangency;
  std::vector<SpherePoint> line_points;  // L_{a,b} ∩ S^{n-1}
};

inline FixedPointSet fixed_points(const Vec& a, const Vec& b, const Tolerances& tol = {}) {
  require_same_dim(a, b, "fixed_points");
  const Vec d = b - a;
  if (d.norm() <= 1e-12 * std::max(1.0, a.norm())) {
    throw Error(ErrorCode::CoincidentCenters, "fixed_points: a = b");
  }
  const auto n = a.size();
  FixedPointSet out;

  // <x,a> = <x,b> = 1 on the sphere.
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  const double ab = a.dot(b);
  const double gram_det = aa * bb - ab * ab;
  if (gram_det > 1e-12 * aa * bb) {
    const double alpha = (bb - ab) / gram_det;
    const double beta = (aa - ab) / gram_det;
    const Vec xp = alpha * a + beta * b;
    const double r2 = 1.0 - xp.squaredNorm();
    Mat ab_cols(n, 2);
    ab_cols << a, b;
    Eigen::HouseholderQR<Mat> qr(ab_cols);
    const Mat q = qr.householderQ();
    Mat span = q.rightCols(n - 2);
    if (std::abs(r2) <= tol.verdict) {
      out.tangency = {false, xp / xp.norm(), 0.0, span};
    } else if (r2 > 0.0 && n > 2) {
      out.tangency = {false, xp, std::sqrt(r2), span};
    }
  }

  // |a + t (b - a)|^2 = 1.
  const double dd = d.squaredNorm();
  const double ad = a.dot(d);
  const double disc = ad * ad - dd * (aa - 1.0);
  const double scale = ad * ad + dd * std::abs(aa - 1.0);
  if (std::abs(disc) <= tol.verdict * scale) {
    out.line_points.emplace_back(Vec(a - (ad / dd) * d));
  } else if (disc > 0.0) {
    const double s = std::sqrt(disc);
    out.line_points.emplace_back(Vec(a + ((-ad + s) / dd) * d));
    out.line_points.emplace_back(Vec(a + ((-ad - s) / dd) * d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariants and classification

/// Theta(a, b) on the principal branch of the square root: real, or purely
/// imaginary, in which case `value` holds the imaginary part.
struct ThetaValue {
  bool imaginary = false;
  double value = 0.0;
  double squared = 0.0;  // Theta^2, negative when imaginary

  Complex as_complex() const { return imaginary ? Complex(0.0, value) : Complex(value, 0.0); }
  double magnitude() const { return std::abs(value); }

  static ThetaValue real(double v) { return {false, v, v * v}; }
  /// numerator / sqrt(product) with product < 0.
  static ThetaValue from_negative_product(double numerator, double product) {
    const double im = -numerator / std::sqrt(-product);
    return {true, im, -im * im};
  }
};

inline ThetaValue theta(const Vec& a, const Vec& b, const Tolerances& tol = {}) {
  require_same_dim(a, b, "theta");
  const double num = a.dot(b) - 1.0;
  if (std::abs(num) <= tol.exact_theta) return ThetaValue::real(0.0);
  const double prod = (1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm());
  if (prod > 0.0) return ThetaValue::real(num / std::sqrt(prod));
  return ThetaValue::from_negative_product(num, prod);
}

/// Theta extended to centers at infinity by letting the center run to
/// infinity along its direction.
inline ThetaValue theta(const Center& a, const Center& b, const Tolerances& tol = {}) {
  require_same_dim(a.vec(), b.vec(), "theta");
  if (a.is_finite() && b.is_finite()) return theta(a.point(), b.point(), tol);
  if (!a.is_finite() && !b.is_finite()) return ThetaValue::real(a.direction().dot(b.direction()));
  const Center& fin = a.is_finite() ? a : b;
  const Center& inf = a.is_finite() ? b : a;
  const double ad = fin.point().dot(inf.direction());
  const double excess = fin.point().squaredNorm() - 1.0;
  if (excess > 0.0) return ThetaValue::real(ad / std::sqrt(excess));
  // Interior center against a center at infinity: always separated by the sphere.
  return ThetaValue::from_negative_product(ad, excess);
}

enum class DynamicsType { Hyperbolic, Parabolic, Elliptic, Loxodromic };

constexpr std::string_view to_string(DynamicsType t) {
  switch (t) {
    case DynamicsType::Hyperbolic: return "hyperbolic";
    case DynamicsType::Parabolic: return "parabolic";
    case DynamicsType::Elliptic: return "elliptic";
    case DynamicsType::Loxodromic: return "loxodromic";
  }
  return "unknown";
}

struct Rational {
  long long p = 0;
  long long q = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Smallest-denominator continued-fraction convergent p/q of kappa with
/// 0 < p < q <= max_denominator and |kappa - p/q| <= eps.
inline std::optional<Rational> detect_rational(double kappa, int max_denominator, double eps) {
  if (!(kappa > 0.0 && kappa < 1.0)) return std::nullopt;
  long double x = kappa;
  long long h_prev = 1, h_prev2 = 0;
  long long k_prev = 0, k_prev2 = 1;
  for (int iter = 0; iter < 64; ++iter) {
    const long double term_ld = std::floor(x);
    if (term_ld > 1e15L) break;
    const auto term = static_cast<long long>(term_ld);
    const long long h = term * h_prev + h_prev2;
    const long long k = term * k_prev + k_prev2;
    if (k > max_denominator) break;
    if (h > 0 && h < k &&
        std::abs(static_cast<long double>(kappa) - static_cast<long double>(h) / k) <= eps) {
      return Rational{h, k};
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const long double frac = x - term_ld;
    if (frac < 1e-18L) break;
    x = 1.0L / frac;
  }
  return std::nullopt;
}

struct MobiusClass {
  DynamicsType type = DynamicsType::Hyperbolic;
  ThetaValue theta;
  double kappa = std::numeric_limits<double>::quiet_NaN();  // elliptic only
  std::optional<Rational> rational;                          // elliptic only
  bool near_boundary = false;  // |Theta| within the parabolic band
  bool exact_kappa = false;    // kappa snapped from Theta in {0, +-1/2}
};

/// Classification by tr M(T) = 2 Theta.
inline MobiusClass classify_theta(const ThetaValue& th, const Tolerances& tol = {}, const RationalSearch& search = {}) {
  MobiusClass out;
  out.theta = th;
  if (th.imaginary) {
    out.type = DynamicsType::Loxodromic;
    return out;
  }
  const double mag = std::abs(th.value);
  if (std::abs(mag - 1.0) <= tol.verdict) {
    out.type = DynamicsType::Parabolic;
    out.near_boundary = true;
    return out;
  }
  if (mag > 1.0) {
    out.type = DynamicsType::Hyperbolic;
    return out;
  }
  out.type = DynamicsType::Elliptic;
  struct Snap {
    double theta;
    Rational kappa;
  };
  for (const Snap s : {Snap{0.0, {1, 2}}, Snap{0.5, {1, 3}}, Snap{-0.5, {2, 3}}}) {
    if (std::abs(th.value - s.theta) <= tol.exact_theta) {
      out.kappa = static_cast<double>(s.kappa.p) / static_cast<double>(s.kappa.q);
      out.rational = s.kappa;
      out.exact_kappa = true;
      return out;
    }
  }
  out.kappa = std::acos(th.value) / std::numbers::pi;
  out.rational = detect_rational(out.kappa, search.max_denominator, search.eps);
  return out;
}

inline MobiusClass classify(const Vec& a, const Vec& b, const Tolerances& tol = {}, const RationalSearch& search = {}) {
  return classify_theta(theta(a, b, tol), tol, search);
}

inline MobiusClass classify(const Center& a, const Center& b, const Tolerances& tol = {},
                            const RationalSearch& search = {}) {
  return classify_theta(theta(a, b, tol), tol, search);
}

// ---------------------------------------------------------------------------
// Period detection

enum class PeriodStatus { Aperiodic, Periodic, Conflict };

struct PeriodOptions {
  Tolerances tol;
  RationalSearch search;
  int samples = 32;
  std::uint64_t seed = kDefaultSeed;
};

struct PeriodDetection {
  PeriodStatus status = PeriodStatus::Aperiodic;
  MobiusClass cls;
  int period = 0;                 // confirmed q when Periodic
  int analytic_period = 0;        // q from the rotation number, 0 if none
  int numeric_period = 0;         // q found by iteration, 0 if none
  double residual = std::numeric_limits<double>::quiet_NaN();  // max |T^q x - x|
};

/// max over random sphere points of |T^q x - x|.
inline double period_residual(const Center& a, const Center& b, int q, int samples, Rng& rng,
                              const Tolerances& tol = {}) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const SpherePoint x = random_sphere_point(a.dim(), rng);
    worst = std::max(worst, (v_map_power(a, b, x, q, tol).vec() - x.vec()).norm());
  }
  return worst;
}

/// Smallest j <= max_q with max |T^j x - x| <= tol over the samples, or 0.
inline int scan_period(const Center& a, const Center& b, int max_q, int samples, Rng& rng,
                       const Tolerances& tol = {}) {
  std::vector<double> worst(static_cast<std::size_t>(max_q) + 1, 0.0);
  for (int s = 0; s < samples; ++s) {
    const SpherePoint x = random_sphere_point(a.dim(), rng);
    SpherePoint y = x;
    for (int j = 1; j <= max_q; ++j) {
      y = v_map(a, b, y, tol);
      worst[j] = std::max(worst[j], (y.vec() - x.vec()).norm());
    }
  }
  for (int j = 1; j <= max_q; ++j) {
    if (worst[j] <= tol.period_residual) return j;
  }
  return 0;
}

/// Two-stage period detection: the rotation number proposes q, iteration
/// confirms it. Disagreement between the stages is reported as Conflict.
inline PeriodDetection detect_period(const Center& a, const Center& b, const PeriodOptions& opts = {}) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "detect_period");
  PeriodDetection out;
  out.cls = classify(a, b, opts.tol, opts.search);
  if (out.cls.type != DynamicsType::Elliptic) return out;
  Rng rng(opts.seed);
  if (out.cls.rational) {
    const int q = static_cast<int>(out.cls.rational->q);
    out.analytic_period = q;
    out.residual = period_residual(a, b, q, opts.samples, rng, opts.tol);
    out.status = out.residual <= opts.tol.period_residual ? PeriodStatus::Periodic : PeriodStatus::Conflict;
    if (out.status == PeriodStatus::Periodic) {
      out.period = q;
      out.numeric_period = q;
    }
    return out;
  }
  out.numeric_period = scan_period(a, b, opts.search.max_denominator, opts.samples, rng, opts.tol);
  if (out.numeric_period != 0) {
    out.status = PeriodStatus::Conflict;
    Rng again(opts.seed);
    out.residual = period_residual(a, b, out.numeric_period, opts.samples, again, opts.tol);
  }
  return out;
}

inline PeriodDetection detect_period(const Vec& a, const Vec& b, const PeriodOptions& opts = {}) {
  return detect_period(Center::finite(a, opts.tol), Center::finite(b, opts.tol), opts);
}

// ---------------------------------------------------------------------------
// Two-dimensional sections and induced Mobius maps

/// Coordinates on the plane through x0, a, b: zeta(x) = ((x-c).e1 + i (x-c).e2) / scale
/// sends the section circle onto the unit circle.
struct CrossSectionFrame {
  Vec c;
  Vec e1;
  Vec e2;
  double scale = 1.0;  // sqrt(1 - |c|^2), the section radius
  Complex za;
  Complex zb;

  Complex zeta(const Vec& x) const {
    const Vec d = x - c;
    return {d.dot(e1) / scale, d.dot(e2) / scale};
  }

  Vec zeta_inverse(Complex z) const { return c + scale * (z.real() * e1 + z.imag() * e2); }

  double distance_to_plane(const Vec& x) const {
    const Vec d = x - c;
    return (d - d.dot(e1) * e1 - d.dot(e2) * e2).norm();
  }
};

inline CrossSectionFrame cross_section_frame(const Vec& a, const Vec& b, const SpherePoint& x0,
                                             const Tolerances& tol = {}) {
  require_same_dim(a, b, "cross_section_frame");
  require_same_dim(a, x0.vec(), "cross_section_frame");
  const Vec& x = x0.vec();
  if (std::abs(x.dot(a) - 1.0) <= tol.verdict && std::abs(x.dot(b) - 1.0) <= tol.verdict) {
    throw Error(ErrorCode::SingularPoint, "x0 lies on Z_{a,b}");
  }
  const auto n = x.size();
  Vec e1, e2;
  if (n == 2) {
    e1 = vec({1.0, 0.0});
    e2 = vec({0.0, 1.0});
  } else {
    Vec u = a - x;
    if (u.norm() < tol.degeneracy) throw Error(ErrorCode::CoincidentPoint, "a coincides with x0");
    e1 = u / u.norm();
    Vec v = b - x;
    Vec w = v - v.dot(e1) * e1;
    if (w.norm() <= 1e-10 * std::max(1.0, v.norm())) {
      // x0, a, b collinear: complete with the first coordinate axis off the line.
      for (Eigen::Index i = 0; i < n; ++i) {
        Vec cand = Vec::Unit(n, i);
        w = cand - cand.dot(e1) * e1;
        if (w.norm() > 1e-6) break;
      }
    }
    e2 = w / w.norm();
  }
  CrossSectionFrame f;
  f.c = x - x.dot(e1) * e1 - x.dot(e2) * e2;
  const double c2 = f.c.squaredNorm();
  if (c2 >= 1.0 - tol.sphere) throw Error(ErrorCode::SingularPoint, "section plane is tangent to the sphere");
  f.e1 = std::move(e1);
  f.e2 = std::move(e2);
  f.scale = std::sqrt(1.0 - c2);
  f.za = f.zeta(a);
  f.zb = f.zeta(b);
  return f;
}

/// Unimodular 2x2 complex matrix acting by z -> (a z + b) / (c z + d).
struct MobiusMatrix {
  Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

  Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }
  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
};

inline MobiusMatrix induced_mobius(const CrossSectionFrame& frame, const Tolerances& tol = {}) {
  const Complex za = frame.za;
  const Complex zb = frame.zb;
  const double det = (1.0 - std::norm(za)) * (1.0 - std::norm(zb));
  if (std::abs(det) < tol.degeneracy) throw Error(ErrorCode::DegenerateSection, "D = 0");
  const Complex root = std::sqrt(Complex(det, 0.0));
  return {(std::conj(za) * zb - 1.0) / root, (za - zb) / root, (std::conj(za) - std::conj(zb)) / root,
          (za * std::conj(zb) - 1.0) / root};
}

/// [x0, T x0, T^2 x0, ...] until max_iter points or a return to x0.
inline std::vector<SpherePoint> orbit(const Center& a, const Center& b, const SpherePoint& x0, int max_iter,
                                      const Tolerances& tol = {}) {
  std::vector<SpherePoint> out;
  if (max_iter <= 0) return out;
  out.push_back(x0);
  SpherePoint y = x0;
  while (static_cast<int>(out.size()) < max_iter) {
    y = v_map(a, b, y, tol);
    if ((y.vec() - x0.vec()).norm() <= 1e-10) break;
    out.push_back(y);
  }
  return out;
}

}  // namespace funklab
