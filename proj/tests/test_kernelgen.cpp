#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "funklab/dynamics.hpp"
#include "funklab/kernelgen.hpp"
#include "funklab/random.hpp"
#include "funklab/transform.hpp"

using namespace funklab;

namespace {

Center fin(std::initializer_list<double> v) { return Center::finite(vec(v)); }

const SphericalFunction& probe3() {
  static const SphericalFunction f =
      monomial({1, 2, 0}) + peak(vec({0.6, 0, 0.8}), 2.5) - 0.7 * monomial({0, 0, 3}) + constant(0.25);
  return f;
}

// Weight of one step of T = tau_b tau_a, written out from rho and tau.
double step_weight(const Vec& a, const Vec& b, const SpherePoint& x, int k) {
  return rho(a, x, k) * rho(b, tau(a, x), k);
}

}  // namespace

TEST(WOperatorTest, SquareIsIdentity) {
  Rng rng(41);
  const std::vector<Center> centers{fin({0.3, -0.2, 0.5}), fin({1.7, 0.4, 0}), Center::infinite(vec({0, 1, 1}))};
  for (const Center& c : centers) {
    const SphericalFunction twice = apply_Wa(c, apply_Wa(c, probe3(), 2), 2);
    for (int i = 0; i < 500; ++i) {
      const Vec x = random_sphere_point(3, rng).vec();
      EXPECT_NEAR(twice(x), probe3()(x), 1e-10 * std::max(1.0, std::abs(probe3()(x))));
    }
  }
}

TEST(WOperatorTest, TrivialCenters) {
  Rng rng(42);
  const Center z = fin({0, 0, 0});
  const SphericalFunction w = apply_W(z, z, probe3(), 2);
  for (int i = 0; i < 50; ++i) {
    const Vec x = random_sphere_point(3, rng).vec();
    EXPECT_NEAR(w(x), probe3()(x), 1e-14);
  }
}

TEST(WOperatorTest, CompositionMatchesDirectFormula) {
  Rng rng(43);
  const Vec a = vec({0.4, 0.1, 0}), b = vec({0.2, 2.1, 0.3});
  const Center ca = Center::finite(a), cb = Center::finite(b);
  const SphericalFunction w = apply_W(ca, cb, probe3(), 2);
  const SphericalFunction w1 = apply_W_power(ca, cb, probe3(), 1, 2);
  for (int i = 0; i < 200; ++i) {
    const SpherePoint x = random_sphere_point(3, rng);
    const double direct = step_weight(a, b, x, 2) * probe3()(tau(b, tau(a, x)));
    EXPECT_NEAR(w(x), direct, 1e-12 * std::max(1.0, std::abs(direct)));
    EXPECT_NEAR(w1(x), direct, 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST(WOperatorTest, PowerMatchesRepeatedComposition) {
  Rng rng(44);
  const Center a = fin({0.4, 0.1, 0}), b = fin({0.2, 2.1, 0.3});
  SphericalFunction repeated = probe3();
  for (int j = 0; j < 4; ++j) repeated = apply_W(a, b, repeated, 2);
  const SphericalFunction power = apply_W_power(a, b, probe3(), 4, 2);
  for (int i = 0; i < 100; ++i) {
    const Vec x = random_sphere_point(3, rng).vec();
    EXPECT_NEAR(power(x), repeated(x), 1e-10 * std::max(1.0, std::abs(repeated(x))));
  }
}

TEST(WOperatorTest, PeriodicPairPowerIsIdentity) {
  Rng rng(45);
  struct Case {
    Center a, b;
    int q;
  };
  const std::vector<Case> cases{{fin({0.5, 0, 0}), fin({2, 0, 0}), 2},
                                {fin({2, 0, 0}), fin({0, std::sqrt(7.0 / 3.0), 0}), 3},
                                {fin({2, 0, 0}), fin({0, std::sqrt(5.0 / 3.0), 0}), 4}};
  for (const Case& c : cases) {
    const int q = c.q;
    ASSERT_EQ(detect_period(c.a, c.b).period, q);
    const SphericalFunction wq = apply_W_power(c.a, c.b, probe3(), q, 2);
    for (int i = 0; i < 200; ++i) {
      const SpherePoint x = random_sphere_point(3, rng);
      double scale = 1.0;
      SpherePoint y = x;
      for (int j = 0; j < q; ++j) {
        scale = std::max(scale, step_weight(c.a.point(), c.b.point(), y, 2));
        y = v_map(c.a, c.b, y);
      }
      EXPECT_NEAR(wq(x), probe3()(x), 1e-9 * scale * std::max(1.0, std::abs(probe3()(x))));
    }
  }
}

TEST(OddPart, Examples) {
  Rng rng(46);
  const Center zero = fin({0, 0, 0});
  const SphericalFunction x1 = monomial({1, 0, 0});
  const SphericalFunction odd = odd_part(zero, x1, 2);
  for (int i = 0; i < 50; ++i) {
    const Vec x = random_sphere_point(3, rng).vec();
    EXPECT_NEAR(odd(x), x[0], 1e-15);
  }
  const Center a = fin({0.3, 0.2, -0.4});
  const SphericalFunction g = odd_part(a, probe3(), 2);
  const SphericalFunction gg = odd_part(a, g, 2);
  const SphericalFunction e = even_part(a, probe3(), 2);
  for (int i = 0; i < 200; ++i) {
    const Vec x = random_sphere_point(3, rng).vec();
    EXPECT_NEAR(gg(x), g(x), 1e-10);
    EXPECT_NEAR(apply_Wa(a, g, 2)(x), -g(x), 1e-10);
    EXPECT_NEAR(g(x) + e(x), probe3()(x), 1e-12);
  }
}

TEST(OddPart, AnnihilatedByTransform) {
  Rng rng(47);
  for (int i = 0; i < 10; ++i) {
    const Center a = Center::finite(random_ball_point(3, 0.6, rng));
    const SphericalFunction g = odd_part(a, probe3(), 2);
    EXPECT_LE(verify_annihilation(g, a, 20, 64, 2, 100 + i).max_abs, 1e-8);
  }
  const Center b = fin({1.8, 0.3, 0});
  EXPECT_LE(verify_annihilation(odd_part(b, probe3(), 2), b, 20, 64, 2).max_abs, 1e-8);
}

TEST(FindBasepoint, PeriodTwoPair) {
  const Center a = fin({0.5, 0, 0}), b = fin({2, 0, 0});
  const Basepoint bp = find_basepoint(a, b, 2);
  EXPECT_GT(bp.margin, 0.05);
  const Vec e = bp.e.vec();
  EXPECT_GT(std::hypot(e[1], e[2]), 1e-3);
  // post-condition re-check against the orbit and its tau_a image
  const Vec te = v_map(a, b, bp.e).vec();
  EXPECT_GE(geodesic(e, te), 0.05);
  EXPECT_GE(geodesic(e, tau(a.point(), bp.e).vec()), 0.05);
  EXPECT_GE(geodesic(e, tau(a.point(), SpherePoint(te)).vec()), 0.05);
}

TEST(FindBasepoint, PeriodTwoAdmissibleSet) {
  // off the axis, only the circle <e, b> = 1 (the plane x1 = 1/2 holds a) fails:
  // tau_b fixes it and tau_a preserves it, so tau_a(T e) = e there
  const Center a = fin({0.5, 0, 0}), b = fin({2, 0, 0});
  Rng rng(48);
  for (int i = 0; i < 200; ++i) {
    const SpherePoint e = random_sphere_point(3, rng);
    if (std::hypot(e[1], e[2]) < 0.2 || std::abs(e[0] - 0.5) < 0.1) continue;
    EXPECT_GT(basepoint_margin(a, b, 2, e), 0.05);
  }
  for (int i = 0; i < 12; ++i) {
    const double t = 0.5 * i;
    const SpherePoint e(vec({0.5, std::sqrt(0.75) * std::cos(t), std::sqrt(0.75) * std::sin(t)}));
    EXPECT_LE(basepoint_margin(a, b, 2, e), 1e-7);
  }
}

TEST(FindBasepoint, SucceedsForPeriodicPairs) {
  for (int q = 3; q <= 8; ++q) {
    // Theta = cos(pi p/q) with a = (2,0,0): b = (0, t, 0) has Theta = -1/(sqrt 3 sqrt(t^2-1))
    const double th = std::cos(std::numbers::pi * (q - 1) / q);
    const double t = std::sqrt(1.0 + 1.0 / (3.0 * th * th));
    const Center a = fin({2, 0, 0}), b = fin({0, t, 0});
    const PeriodDetection d = detect_period(a, b);
    ASSERT_EQ(d.status, PeriodStatus::Periodic) << q;
    const Basepoint bp = find_basepoint(a, b, d.period);
    EXPECT_GT(bp.margin, 0.05);
  }
}

TEST(FindBasepoint, FailsWhenNothingIsAdmissible) {
  BasepointOptions opts;
  opts.delta = 10.0;
  opts.max_trials = 200;
  try {
    find_basepoint(fin({0.5, 0, 0}), fin({2, 0, 0}), 2, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SearchFailed);
  }
}

TEST(KernelElement, PeriodTwoRelations) {
  const Center a = fin({0.5, 0, 0}), b = fin({2, 0, 0});
  const KernelWitness w = build_kernel_element(a, b, 2, 2);
  const Vec e = w.base.e.vec();
  EXPECT_NEAR(w.f(e), w.h(e), 1e-6);
  EXPECT_GE(sup_norm_estimate(w.f, 3, 1000, 7, {e}), w.h(e));
  const SphericalFunction wa = apply_Wa(a, w.f, 2), wb = apply_Wa(b, w.f, 2);
  Rng rng(49);
  for (int i = 0; i < 500; ++i) {
    const SpherePoint x = random_sphere_point(3, rng);
    const double fx = w.f(x);
    EXPECT_NEAR(wa(x), -fx, 1e-9);
    EXPECT_NEAR(wb(x), -fx, 1e-9);
    const double auto_val = step_weight(a.point(), b.point(), x, 2) * w.f(v_map(a, b, x));
    EXPECT_NEAR(auto_val, fx, 1e-9);
    const double ft = w.f(tau(a.point(), x));
    if (std::abs(fx) > 1e-12 && std::abs(ft) > 1e-12) {
      EXPECT_LE(fx * ft, 0.0);
    }
  }
}

TEST(KernelElement, PeriodThreeRelations) {
  const Center a = fin({2, 0, 0}), b = fin({0, std::sqrt(7.0 / 3.0), 0});
  const KernelWitness w = build_kernel_element(a, b, 3, 2);
  const SphericalFunction wa = apply_Wa(a, w.f, 2), wb = apply_Wa(b, w.f, 2);
  Rng rng(50);
  for (int i = 0; i < 500; ++i) {
    const SpherePoint x = random_sphere_point(3, rng);
    const double fx = w.f(x);
    const double tol = 1e-9 * std::max(1.0, std::abs(fx));
    EXPECT_NEAR(wa(x), -fx, tol);
    EXPECT_NEAR(wb(x), -fx, tol);
    EXPECT_NEAR(step_weight(a.point(), b.point(), x, 2) * w.f(v_map(a, b, x)), fx, tol);
  }
}

TEST(KernelElement, CompactProfileRelations) {
  const Center a = fin({0.5, 0, 0}), b = fin({2, 0, 0});
  KernelOptions opts;
  opts.profile = BumpProfile::Compact;
  const KernelWitness w = build_kernel_element(a, b, 2, 2, opts);
  const Vec e = w.base.e.vec();
  EXPECT_DOUBLE_EQ(w.h(e), 1.0);
  EXPECT_NEAR(w.f(e), 1.0, 1e-12);
  const SphericalFunction wa = apply_Wa(a, w.f, 2), wb = apply_Wa(b, w.f, 2);
  Rng rng(51);
  int support = 0;
  for (int i = 0; i < 500; ++i) {
    const SpherePoint x = random_sphere_point(3, rng);
    const double fx = w.f(x);
    if (fx != 0.0) ++support;
    EXPECT_NEAR(wa(x), -fx, 1e-9);
    EXPECT_NEAR(wb(x), -fx, 1e-9);
    const double ft = w.f(tau(a.point(), x));
    if (std::abs(fx) > 1e-12 && std::abs(ft) > 1e-12) {
      EXPECT_LE(fx * ft, 0.0);
    }
  }
  EXPECT_GT(support, 0);
}

TEST(KernelElement, PlanarPeriodThreeCountingMeasure) {
  const Center a = fin({2, 0}), b = fin({0, std::sqrt(7.0 / 3.0)});
  const KernelWitness w = build_kernel_element(a, b, 3, 1);
  EXPECT_GT(std::abs(w.f(w.base.e.vec())), 0.5);
  EXPECT_LE(verify_annihilation(w.f, a, 200, 64, 1).max_abs, 1e-6);
  EXPECT_LE(verify_annihilation(w.f, b, 200, 64, 1).max_abs, 1e-6);
}

TEST(KernelElement, RejectsBadArguments) {
  const Center a = fin({0.5, 0, 0}), b = fin({2, 0, 0});
  EXPECT_THROW(build_kernel_element(a, b, 1, 2), Error);
  EXPECT_THROW(build_kernel_element(a, b, 2, 4), Error);
}

TEST(KernelElement, Reproducible) {
  const Center a = fin({0.5, 0, 0}), b = fin({2, 0, 0});
  const KernelWitness w1 = build_kernel_element(a, b, 2, 2), w2 = build_kernel_element(a, b, 2, 2);
  EXPECT_EQ(w1.base.e.vec(), w2.base.e.vec());
  EXPECT_EQ(w1.radius, w2.radius);
  const Vec x = vec({0.1, 0.7, 0.7}).normalized();
  EXPECT_EQ(w1.f(x), w2.f(x));
}

TEST(VerifyAnnihilation, ConstantIsNotAnnihilated) {
  const AnnihilationReport r = verify_annihilation(constant(1.0), fin({0, 0, 0}), 20, 64, 2);
  EXPECT_NEAR(r.max_abs, 2 * std::numbers::pi, 1e-12);
  EXPECT_EQ(r.planes, 20);
  ASSERT_TRUE(r.plane_of_max.has_value());
}

TEST(VerifyAnnihilation, OddHarmonicVanishes) {
  EXPECT_LE(verify_annihilation(harmonic(1, 0), fin({0, 0, 0}), 100, 64, 2).max_abs, 1e-10);
  EXPECT_LE(verify_annihilation(harmonic(1, 1), fin({0, 0, 0}), 100, 64, 2).max_abs, 1e-10);
}

TEST(VerifyAnnihilation, FamilyPlanesContainCenter) {
  Rng rng(52);
  const std::vector<Center> cs{fin({0.3, 0.2, 0}), fin({2, 1, 0}), Center::infinite(vec({0, 0, 1}))};
  for (const Center& c : cs) {
    for (int i = 0; i < 50; ++i) {
      const AffinePlane p = random_family_plane(c, 2, rng);
      EXPECT_TRUE(p.meets_ball());
      if (c.is_finite()) {
        EXPECT_LE(p.distance(c.point()), 1e-9);
      } else {
        EXPECT_LE(p.direction_residual(c.direction()), 1e-9);
      }
    }
  }
}

TEST(Dynamics, HyperbolicIterationDecays) {
  const Center a = fin({1.5, 0, 0}), b = fin({3, 0, 0});
  // attracting fixed point by iteration
  SpherePoint p(vec({0.2, 0.9, 0.3}));
  for (int i = 0; i < 200; ++i) p = v_map(a, b, p);
  const SphericalFunction h = peak(p.vec(), 4.0);
  Rng rng(53);
  std::vector<Vec> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(random_sphere_point(3, rng).vec());
  auto sup = [&](int n) {
    const SphericalFunction wn = apply_W_power(a, b, h, n, 2);
    double m = 0.0;
    for (const Vec& x : pts) m = std::max(m, std::abs(wn(x)));
    return m;
  };
  const double s0 = sup(0);
  double prev = sup(50);
  for (int n = 60; n <= 200; n += 10) {
    const double s = sup(n);
    EXPECT_LE(s, prev) << n;
    prev = s;
  }
  EXPECT_LE(prev, 1e-3 * s0);
}
