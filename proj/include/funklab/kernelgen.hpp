#pragma once

// The weighted symmetry operators W_a, W_b, W = W_a W_b and the construction
// of nonzero functions in ker F_a ∩ ker F_b when T = tau_b tau_a is periodic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "funklab/config.hpp"
#include "funklab/dynamics.hpp"
#include "funklab/error.hpp"
#include "funklab/geometry.hpp"
#include "funklab/random.hpp"
#include "funklab/spherical_function.hpp"
#include "funklab/transform.hpp"

namespace funklab {

/// f -> weight(c, .) f(reflect(c, .)) for one center and plane dimension k.
struct WOperator {
  Center center;
  int k = 2;
  Tolerances tol;

  double weight_at(const Vec& x) const { return weight(center, SpherePoint(x), k, tol); }
  Vec map(const Vec& x) const { return reflect(center, SpherePoint(x), tol).vec(); }

  SphericalFunction operator()(SphericalFunction f) const {
    const WOperator self = *this;
    return pullback(
        std::move(f), [self](const Vec& x) { return self.map(x); },
        [self](const Vec& x) { return self.weight_at(x); }, "W" + detail::format_vec(center.vec()));
  }
};

inline SphericalFunction apply_Wa(const Center& a, SphericalFunction f, int k, const Tolerances& tol = {}) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "plane dimension k must be >= 1");
  return WOperator{a, k, tol}(std::move(f));
}

/// rho(x) f(T x) with rho(x) = rho_b(tau_a x) rho_a(x).
inline SphericalFunction apply_W(const Center& a, const Center& b, SphericalFunction f, int k,
                                 const Tolerances& tol = {}) {
  return apply_Wa(a, apply_Wa(b, std::move(f), k, tol), k, tol);
}

/// (f - W_a f) / 2: the part annihilated by F_a.
inline SphericalFunction odd_part(const Center& a, const SphericalFunction& f, int k, const Tolerances& tol = {}) {
  return 0.5 * (f - apply_Wa(a, f, k, tol));
}

inline SphericalFunction even_part(const Center& a, const SphericalFunction& f, int k, const Tolerances& tol = {}) {
  return 0.5 * (f + apply_Wa(a, f, k, tol));
}

/// W^j f evaluated in one pass: prod_{i<j} rho(T^i x) * f(T^j x).
inline SphericalFunction apply_W_power(const Center& a, const Center& b, SphericalFunction f, int j, int k,
                                       const Tolerances& tol = {}) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "negative power of W");
  if (j == 0) return f;
  struct Walk {
    Center a, b;
    int j, k;
    Tolerances tol;
    // returns T^j x and accumulates the weight product
    Vec run(const Vec& x, double* w) const {
      SpherePoint y(x);
      double prod = 1.0;
      for (int i = 0; i < j; ++i) {
        prod *= weight(a, y, k, tol);
        y = reflect(a, y, tol);
        prod *= weight(b, y, k, tol);
        y = reflect(b, y, tol);
      }
      if (w) *w = prod;
      return y.vec();
    }
  };
  const Walk walk{a, b, j, k, tol};
  return pullback(
      std::move(f), [walk](const Vec& x) { return walk.run(x, nullptr); },
      [walk](const Vec& x) {
        double w = 1.0;
        walk.run(x, &w);
        return w;
      },
      "W^" + std::to_string(j));
}

// ---------------------------------------------------------------------------
// Basepoint search

struct BasepointOptions {
  double delta = 0.05;          // minimal geodesic separation
  int candidates = 512;         // admissible candidates compared before choosing
  int max_trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

struct Basepoint {
  SpherePoint e;
  double margin = 0.0;  // min geodesic distance from e to O_e \ {e} and to tau_a(O_e)
  int trials = 0;
};

inline double geodesic(const Vec& x, const Vec& y) { return std::acos(std::clamp(x.dot(y), -1.0, 1.0)); }

/// Separation of e from the rest of its T-orbit and from tau_a of the orbit.
/// Also requires the orbit points to be pairwise separated by at least the
/// returned value.
inline double basepoint_margin(const Center& a, const Center& b, int q, const SpherePoint& e,
                               const Tolerances& tol = {}) {
  std::vector<Vec> orb;
  orb.reserve(static_cast<std::size_t>(q));
  SpherePoint y = e;
  for (int j = 0; j < q; ++j) {
    orb.push_back(y.vec());
    y = v_map(a, b, y, tol);
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < orb.size(); ++i) {
    for (std::size_t j = i + 1; j < orb.size(); ++j) margin = std::min(margin, geodesic(orb[i], orb[j]));
    margin = std::min(margin, geodesic(e.vec(), reflect(a, SpherePoint(orb[i]), tol).vec()));
  }
  return margin;
}

/// Random search for e with e ∉ tau_a(O_e). Among the first `candidates`
/// admissible points the one with the widest margin is returned.
inline Basepoint find_basepoint(const Center& a, const Center& b, int q, const BasepointOptions& opts = {}) {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "find_basepoint");
  Rng rng(opts.seed);
  std::optional<Basepoint> best;
  int admissible = 0;
  for (int t = 1; t <= opts.max_trials; ++t) {
    const SpherePoint e = random_sphere_point(a.dim(), rng);
    double m;
    try {
      m = basepoint_margin(a, b, q, e, opts.tol);
    } catch (const Error&) {
      continue;
    }
    if (m <= opts.delta) continue;
    if (!best || m > best->margin) best = Basepoint{e, m, t};
    if (++admissible >= opts.candidates) break;
  }
  if (!best) {
    throw Error(ErrorCode::SearchFailed,
                "no basepoint separated from tau_a of its orbit in " + std::to_string(opts.max_trials) + " trials");
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Kernel elements

enum class BumpProfile { Compact, Analytic };

constexpr std::string_view to_string(BumpProfile p) { return p == BumpProfile::Compact ? "compact" : "analytic"; }

struct KernelOptions {
  BumpProfile profile = BumpProfile::Analytic;
  /// Analytic profile: the peak decays to this value at the cap radius.
  double edge_value = 1e-2;
  BasepointOptions basepoint;
};

/// Enough to rebuild the witness: centers, period, basepoint and bump.
struct KernelWitness {
  Center a;
  Center b;
  int q = 0;
  int k = 0;
  Basepoint base;
  double radius = 0.0;  // cap radius (compact) or geodesic scale (analytic)
  BumpProfile profile = BumpProfile::Compact;
  double concentration = 0.0;  // analytic profile only
  SphericalFunction h;
  SphericalFunction f;
};

/// f = g - W_a g with g = sum_{j<q} W^j h and h a bump at a basepoint e.
/// Then W_a f = W_b f = -f and f(e) = h(e).
inline KernelWitness build_kernel_element(const Center& a, const Center& b, int q, int k,
                                          const KernelOptions& opts = {}) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "kernel construction needs a period q >= 2");
  if (k < 1 || k > a.dim()) throw Error(ErrorCode::InvalidArgument, "plane dimension out of range");
  const Tolerances& tol = opts.basepoint.tol;
  KernelWitness w{a, b, q, k, find_basepoint(a, b, q, opts.basepoint), 0.0, opts.profile, 0.0, {}, {}};
  w.radius = 0.5 * w.base.margin;
  if (opts.profile == BumpProfile::Compact) {
    w.h = cap_bump(w.base.e.vec(), w.radius);
  } else {
    // exp(c (cos d - 1)) equals edge_value at d = radius
    w.concentration = -std::log(opts.edge_value) / (1.0 - std::cos(w.radius));
    w.h = peak(w.base.e.vec(), w.concentration);
  }
  std::vector<SphericalFunction> terms;
  terms.reserve(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) terms.push_back(apply_W_power(a, b, w.h, j, k, tol));
  const SphericalFunction g = sum(std::move(terms));
  w.f = g - apply_Wa(a, g, k, tol);
  return w;
}

// ---------------------------------------------------------------------------
// Verification

struct AnnihilationReport {
  double max_abs = 0.0;
  std::optional<AffinePlane> plane_of_max;
  int planes = 0;
};

/// Random k-plane of the family attached to `c` that meets the open ball
/// with |offset| <= max_offset.
inline AffinePlane random_family_plane(const Center& c, int k, Rng& rng, double max_offset = 0.95) {
  const int n = c.dim();
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "plane dimension out of range");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Mat dirs(n, k);
    Vec through;
    if (c.is_interior()) {
      dirs = random_orthonormal(n, k, rng);
      through = c.point();
    } else {
      // through the center (or along its direction) and a random ball point
      const Vec p = random_ball_point(n, max_offset, rng);
      dirs.col(0) = c.is_finite() ? Vec(c.point() - p) : c.direction();
      for (int j = 1; j < k; ++j) dirs.col(j) = random_gaussian(n, rng);
      through = p;
    }
    try {
      AffinePlane plane = AffinePlane::from_span(dirs, through);
      if (c.is_interior() || plane.offset().norm() <= max_offset) return plane;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::SearchFailed, "no random plane met the ball");
}

/// max |F_c f(E)| over random planes E of the family of c.
inline AnnihilationReport verify_annihilation(const SphericalFunction& f, const Center& c, int num_planes, int order,
                                              int k, std::uint64_t seed = kDefaultSeed, const Tolerances& tol = {}) {
  Rng rng(seed);
  AnnihilationReport rep;
  for (int i = 0; i < num_planes; ++i) {
    const AffinePlane plane = random_family_plane(c, k, rng);
    const double v = std::abs(transform_value(c, f, plane, order, tol));
    if (!rep.plane_of_max || v > rep.max_abs) {
      rep.max_abs = v;
      rep.plane_of_max = plane;
    }
    ++rep.planes;
  }
  return rep;
}

/// max |f| over random sphere points plus the supplied extra points.
inline double sup_norm_estimate(const SphericalFunction& f, int n, int samples, std::uint64_t seed,
                                const std::vector<Vec>& extra = {}) {
  Rng rng(seed);
  double m = 0.0;
  for (const Vec& x : extra) m = std::max(m, std::abs(f(x)));
  for (int i = 0; i < samples; ++i) m = std::max(m, std::abs(f(random_sphere_point(n, rng).vec())));
  return m;
}

}  // namespace funklab
