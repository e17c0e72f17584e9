#pragma once

// Injectivity verdicts for paired and multiple transforms, and the reflection
// group closure deciding families of parallel slice transforms.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "funklab/config.hpp"
#include "funklab/dynamics.hpp"
#include "funklab/error.hpp"
#include "funklab/geometry.hpp"
#include "funklab/spherical_function.hpp"

namespace funklab {

enum class Verdict { Injective, NonInjective, Indeterminate };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Injective: return "injective";
    case Verdict::NonInjective: return "non-injective";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

struct PairReport {
  std::size_t i = 0;
  std::size_t j = 0;
  Verdict verdict = Verdict::Indeterminate;
  int period = 0;
};

struct InjectivityVerdict {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<MobiusClass> cls;
  std::optional<double> discriminant;
  int period = 0;                     // q >= 2 when NonInjective
  std::optional<Rational> rotation;   // p/q when NonInjective
  std::string reason;
  std::vector<std::string> notes;
  std::vector<Vec> mirrors;           // slice families: complete mirror normals
  std::optional<SphericalFunction> witness;
  std::vector<PairReport> pairs;      // multi-center scans
};

struct AnalyzerOptions {
  Tolerances tol;
  RationalSearch search;
  int samples = 32;
  std::uint64_t seed = kDefaultSeed;
  int mirror_cap = 10000;

  PeriodOptions period_options() const { return {tol, search, samples, seed}; }
};

/// (<a,b> - 1)^2 - (1 - |a|^2)(1 - |b|^2): nonnegative iff the line through a
/// and b meets the sphere.
inline double discriminant(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "discriminant");
  const double num = a.dot(b) - 1.0;
  return num * num - (1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm());
}

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline InjectivityVerdict from_detection(const PeriodDetection& det) {
  InjectivityVerdict v;
  v.cls = det.cls;
  switch (det.cls.type) {
    case DynamicsType::Hyperbolic:
      v.verdict = Verdict::Injective;
      v.reason = "hyperbolic dynamics: T has attracting and repelling fixed points";
      return v;
    case DynamicsType::Parabolic:
      v.verdict = Verdict::Injective;
      v.reason = "parabolic dynamics: |Theta| = 1";
      v.notes.push_back("Theta lies in the parabolic tolerance band");
      return v;
    case DynamicsType::Loxodromic:
      v.verdict = Verdict::Injective;
      v.reason = "loxodromic dynamics: the centers are separated by the sphere";
      return v;
    case DynamicsType::Elliptic: break;
  }
  switch (det.status) {
    case PeriodStatus::Periodic:
      v.verdict = Verdict::NonInjective;
      v.period = det.period;
      v.rotation = det.cls.rational;
      v.reason = "elliptic dynamics with rational rotation number";
      v.notes.push_back("period confirmed by iteration, residual " + sci(det.residual));
      return v;
    case PeriodStatus::Aperiodic:
      v.verdict = Verdict::Injective;
      v.reason = "no rational rotation q <= Qmax";
      return v;
    case PeriodStatus::Conflict:
      v.verdict = Verdict::Indeterminate;
      v.reason = "rotation number and iteration disagree";
      v.notes.push_back("analytic period " + std::to_string(det.analytic_period) + ", numeric period " +
                        std::to_string(det.numeric_period) + ", residual " + sci(det.residual));
      return v;
  }
  return v;
}

}  // namespace detail

/// Verdict for (F_a, F_b) with finite centers.
inline InjectivityVerdict decide_pair(const Vec& a, const Vec& b, const AnalyzerOptions& opts = {}) {
  require_same_dim(a, b, "decide_pair");
  if ((a - b).norm() <= 1e-12 * std::max(1.0, a.norm())) {
    throw Error(ErrorCode::CoincidentCenters, "decide_pair: a = b");
  }
  const Center ca = Center::finite(a, opts.tol);
  const Center cb = Center::finite(b, opts.tol);
  const PeriodDetection det = detect_period(ca, cb, opts.period_options());
  InjectivityVerdict v;
  if (std::abs(a.dot(b) - 1.0) <= opts.tol.verdict) {
    v.verdict = Verdict::NonInjective;
    v.cls = det.cls;
    v.period = 2;
    v.rotation = Rational{1, 2};
    v.reason = "<a,b> = 1";
    if (det.status != PeriodStatus::Periodic || det.period != 2) {
      v.notes.push_back("iteration did not confirm period 2 at the configured tolerance");
    }
  } else {
    v = detail::from_detection(det);
  }
  v.discriminant = discriminant(a, b);
  return v;
}

/// Verdict for (F_a, Pi_dir).
inline InjectivityVerdict decide_finite_infinite(const Vec& a, const Vec& dir, const AnalyzerOptions& opts = {}) {
  require_same_dim(a, dir, "decide_finite_infinite");
  const Center ca = Center::finite(a, opts.tol);
  const Center cd = Center::infinite(dir);
  if (a.squaredNorm() < 1.0) {
    InjectivityVerdict v;
    v.verdict = Verdict::Injective;
    v.cls = classify(ca, cd, opts.tol, opts.search);
    v.reason = "interior center: <a,d>^2 <= |a|^2 - 1 cannot hold";
    return v;
  }
  const double ad = a.dot(cd.direction());
  const double excess = a.squaredNorm() - 1.0;
  InjectivityVerdict v = detail::from_detection(detect_period(ca, cd, opts.period_options()));
  v.discriminant = ad * ad - excess;
  return v;
}

/// Verdict for (Pi_d1, Pi_d2).
inline InjectivityVerdict decide_infinite_pair(const Vec& d1, const Vec& d2, const AnalyzerOptions& opts = {}) {
  require_same_dim(d1, d2, "decide_infinite_pair");
  const Center c1 = Center::infinite(d1);
  const Center c2 = Center::infinite(d2);
  if (1.0 - std::abs(c1.direction().dot(c2.direction())) <= opts.tol.verdict) {
    throw Error(ErrorCode::CoincidentDirections, "decide_infinite_pair: d1 = +-d2");
  }
  return detail::from_detection(detect_period(c1, c2, opts.period_options()));
}

/// Dispatch on the kinds of the two centers.
inline InjectivityVerdict decide_centers(const Center& a, const Center& b, const AnalyzerOptions& opts = {}) {
  if (a.is_finite() && b.is_finite()) return decide_pair(a.point(), b.point(), opts);
  if (a.is_finite()) return decide_finite_infinite(a.point(), b.direction(), opts);
  if (b.is_finite()) return decide_finite_infinite(b.point(), a.direction(), opts);
  return decide_infinite_pair(a.direction(), b.direction(), opts);
}

// ---------------------------------------------------------------------------
// Reflection groups

struct ReflectionClosure {
  bool finite = false;
  std::vector<Vec> mirrors;  // unit normals, one per mirror, when finite
  int count = 0;             // mirrors found before stopping
};

namespace detail {

inline bool same_mirror(const Vec& u, const Vec& v, double tol) {
  return (u - v).cwiseAbs().maxCoeff() <= tol || (u + v).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace detail

/// Orbit closure of the mirror normals under the generating reflections.
/// Finite when the set stabilizes with at most `cap` mirrors.
inline ReflectionClosure reflection_group_finite(const std::vector<Vec>& normals, int cap = 10000,
                                                 const Tolerances& tol = {}) {
  if (normals.empty()) throw Error(ErrorCode::InvalidArgument, "empty reflection family");
  std::vector<Vec> gens;
  for (const Vec& b : normals) {
    require_same_dim(b, normals.front(), "reflection_group_finite");
    if (b.norm() == 0.0) throw Error(ErrorCode::ZeroVector, "mirror normal");
    const Vec u = b / b.norm();
    if (std::none_of(gens.begin(), gens.end(), [&](const Vec& g) { return detail::same_mirror(g, u, tol.mirror_match); })) {
      gens.push_back(u);
    }
  }
  ReflectionClosure out;
  out.mirrors = gens;
  for (std::size_t next = 0; next < out.mirrors.size(); ++next) {
    for (const Vec& g : gens) {
      Vec v = sigma(g, out.mirrors[next]);
      v /= v.norm();
      const bool known = std::any_of(out.mirrors.begin(), out.mirrors.end(),
                                     [&](const Vec& m) { return detail::same_mirror(m, v, tol.mirror_match); });
      if (known) continue;
      if (static_cast<int>(out.mirrors.size()) >= cap) {
        out.count = static_cast<int>(out.mirrors.size()) + 1;
        out.mirrors.clear();
        return out;
      }
      out.mirrors.push_back(std::move(v));
    }
  }
  out.finite = true;
  out.count = static_cast<int>(out.mirrors.size());
  return out;
}

/// Verdict for the family (Pi_{b_1}, ..., Pi_{b_s}).
inline InjectivityVerdict decide_slice_family(const std::vector<Vec>& normals, const AnalyzerOptions& opts = {}) {
  const ReflectionClosure closure = reflection_group_finite(normals, opts.mirror_cap, opts.tol);
  InjectivityVerdict v;
  if (!closure.finite) {
    v.verdict = Verdict::Injective;
    v.reason = "the reflection group is infinite";
    v.notes.push_back("more than " + std::to_string(opts.mirror_cap) + " mirrors generated");
    return v;
  }
  v.verdict = Verdict::NonInjective;
  v.reason = "the reflection group is finite";
  v.mirrors = closure.mirrors;
  v.witness = product_of_linear_forms(closure.mirrors);
  // T = sigma_i sigma_j has order q where the mirror angle is p pi / q; report the largest.
  v.period = 2;
  v.rotation = Rational{1, 2};
  const auto& gens = normals;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const double c = gens[i].dot(gens[j]) / (gens[i].norm() * gens[j].norm());
      const double kappa = std::acos(std::clamp(c, -1.0, 1.0)) / std::numbers::pi;
      if (auto r = detect_rational(kappa, opts.search.max_denominator, opts.search.eps); r && r->q > v.period) {
        v.period = static_cast<int>(r->q);
        v.rotation = r;
      }
    }
  }
  v.notes.push_back(std::to_string(closure.count) + " mirrors");
  return v;
}

// ---------------------------------------------------------------------------
// Several centers

/// Sufficient condition only: one injective pair makes the family injective.
/// All-pairs-periodic families with s > 2 finite centers stay Indeterminate.
inline InjectivityVerdict decide_multi(const std::vector<Center>& centers, const AnalyzerOptions& opts = {}) {
  if (centers.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two centers");
  if (centers.size() == 2) return decide_centers(centers[0], centers[1], opts);
  if (std::all_of(centers.begin(), centers.end(), [](const Center& c) { return !c.is_finite(); })) {
    std::vector<Vec> normals;
    for (const auto& c : centers) normals.push_back(c.direction());
    return decide_slice_family(normals, opts);
  }
  InjectivityVerdict v;
  bool any_indeterminate = false;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const InjectivityVerdict p = decide_centers(centers[i], centers[j], opts);
      v.pairs.push_back({i, j, p.verdict, p.period});
      if (p.verdict == Verdict::Injective && v.verdict != Verdict::Injective) {
        v.verdict = Verdict::Injective;
        v.cls = p.cls;
        v.reason = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") is injective: " + p.reason;
      }
      any_indeterminate = any_indeterminate || p.verdict == Verdict::Indeterminate;
    }
  }
  if (v.verdict == Verdict::Injective) return v;
  v.verdict = Verdict::Indeterminate;
  if (any_indeterminate) {
    v.reason = "some pair verdicts are indeterminate and none is injective";
  } else {
    v.reason =
        "every pair is non-injective; whether the common kernel of more than two transforms is nontrivial is open";
  }
  return v;
}

}  // namespace funklab
