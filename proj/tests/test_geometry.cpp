#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "funklab/geometry.hpp"
#include "funklab/random.hpp"

using namespace funklab;

namespace {

// phi_a written out coordinate-free from its defining formula, with the
// projections built from outer products instead of dot-product scaling.
Vec phi_oracle(const Vec& a, const Vec& x) {
  const auto n = a.size();
  if (a.squaredNorm() == 0.0) return -x;
  const Mat pa = a * a.transpose() / a.squaredNorm();
  const Mat qa = Mat::Identity(n, n) - pa;
  return (a - pa * x - std::sqrt(1.0 - a.squaredNorm()) * (qa * x)) / (1.0 - x.dot(a));
}

}  // namespace

TEST(MakeCenter, ClassifiesByNorm) {
  EXPECT_TRUE(make_center(vec({0.5, 0, 0})).is_interior());
  EXPECT_TRUE(make_center(vec({2, 0, 0})).is_finite());
  EXPECT_FALSE(make_center(vec({2, 0, 0})).is_interior());
  try {
    make_center(vec({1, 0, 0}));
    FAIL() << "center on the sphere accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OnSphere);
  }
}

TEST(MakeCenter, InfiniteIsNormalized) {
  const Center c = Center::infinite(vec({0, 3, 4}));
  EXPECT_NEAR(c.direction().norm(), 1.0, 1e-15);
  EXPECT_THROW(Center::infinite(vec({0, 0})), Error);
}

TEST(SpherePointTest, Renormalizes) {
  const SpherePoint p(vec({3, 4}));
  EXPECT_NEAR(p.vec().norm(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(p[0], 0.6);
}

TEST(Phi, BasePointsSwap) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Vec a = random_ball_point(3, 0.95, rng);
    EXPECT_LE((phi(a, Vec(Vec::Zero(3))) - a).norm(), 1e-15);
    EXPECT_LE(phi(a, a).norm(), 1e-12);
  }
}

TEST(Phi, ZeroCenterIsAntipodal) {
  const Vec x = vec({0.1, -0.2, 0.3});
  EXPECT_EQ(phi(Vec(Vec::Zero(3)), x), -x);
}

TEST(Phi, MatchesOracle) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const Vec a = random_ball_point(4, 0.9, rng);
    const Vec x = random_ball_point(4, 1.0, rng);
    EXPECT_LE((phi(a, x) - phi_oracle(a, x)).norm(), 1e-12);
  }
}

TEST(Phi, Involution) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Vec a = random_ball_point(3, 0.95, rng);
    const Vec x = random_ball_point(3, 1.0, rng);
    EXPECT_LE((phi(a, phi(a, x)) - x).norm(), 1e-10);
  }
}

TEST(Phi, NormIdentity) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Vec a = random_ball_point(3, 0.9, rng);
    const Vec x = random_ball_point(3, 1.0, rng);
    const Vec y = phi(a, x);
    const double rhs = (1 - a.squaredNorm()) * (1 - x.squaredNorm()) / std::pow(1 - x.dot(a), 2);
    EXPECT_NEAR(1 - y.squaredNorm(), rhs, 1e-12);
  }
}

TEST(Phi, InnerProductIdentity) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Vec a = random_ball_point(3, 0.9, rng);
    const Vec x = random_ball_point(3, 1.0, rng);
    const Vec y = random_ball_point(3, 1.0, rng);
    const double lhs = 1 - phi(a, x).dot(phi(a, y));
    const double rhs = (1 - a.squaredNorm()) * (1 - x.dot(y)) / ((1 - x.dot(a)) * (1 - y.dot(a)));
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Phi, PreservesSphere) {
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const Vec a = random_ball_point(3, 0.9, rng);
    const Vec x = random_sphere_point(3, rng).vec();
    EXPECT_NEAR(phi(a, x).norm(), 1.0, 1e-12);
  }
}

TEST(Phi, RejectsExteriorAndDegenerate) {
  EXPECT_THROW(phi(vec({1.5, 0}), vec({0, 0})), Error);
  try {
    phi(vec({0.5, 0}), vec({2, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateDenominator);
  }
}

TEST(InversionPoint, Examples) {
  EXPECT_EQ(inversion_point(vec({2, 0, 0})), vec({0.5, 0, 0}));
  EXPECT_EQ(inversion_point(vec({0, 4})), vec({0, 0.25}));
  const Vec u = vec({0.6, 0.8});
  EXPECT_LE((inversion_point(u) - u).norm(), 1e-15);
  EXPECT_THROW(inversion_point(vec({0, 0})), Error);
}

TEST(PlaneFromPoints, CoordinatePlanes) {
  const AffinePlane p0 = plane_from_points({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 0})});
  EXPECT_EQ(p0.dim(), 2);
  EXPECT_LE(p0.offset().norm(), 1e-15);
  EXPECT_NEAR(p0.direction_residual(vec({0, 0, 1})), 1.0, 1e-12);

  const AffinePlane p1 = plane_from_points({vec({1, 0, 0.5}), vec({0, 1, 0.5}), vec({0, 0, 0.5})});
  EXPECT_LE((p1.offset() - vec({0, 0, 0.5})).norm(), 1e-15);
}

TEST(PlaneFromPoints, CanonicalForm) {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    std::vector<Vec> pts;
    for (int j = 0; j < 3; ++j) pts.push_back(random_gaussian(4, rng));
    const AffinePlane p = plane_from_points(std::span<const Vec>(pts));
    EXPECT_LE((p.basis().transpose() * p.basis() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((p.basis().transpose() * p.offset()).cwiseAbs().maxCoeff(), 1e-12);
    for (const Vec& x : pts) EXPECT_LE(p.distance(x), 1e-12);
  }
}

TEST(PlaneFromPoints, CollinearIsRankDeficient) {
  try {
    plane_from_points({vec({0, 0, 0}), vec({1, 1, 1}), vec({2, 2, 2})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(AffinePlaneTest, SameAsIgnoresBasisChoice) {
  Mat b1(3, 2), b2(3, 2);
  b1 << 1, 0, 0, 1, 0, 0;
  b2 << 1, 1, 1, -1, 0, 0;
  const AffinePlane p = AffinePlane::from_span(b1, vec({3, 4, 0.25}));
  const AffinePlane q = AffinePlane::from_span(b2, vec({0, 0, 0.25}));
  EXPECT_TRUE(p.same_as(q, 1e-12));
  EXPECT_FALSE(p.same_as(p.reflected(), 1e-12));
}

TEST(CrossSectionTest, Examples) {
  Mat b(3, 2);
  b << 1, 0, 0, 1, 0, 0;
  const CrossSection half = cross_section(AffinePlane::from_span(b, vec({0, 0, 0.5})));
  EXPECT_LE((half.center - vec({0, 0, 0.5})).norm(), 1e-15);
  EXPECT_NEAR(half.radius, std::sqrt(0.75), 1e-15);
  EXPECT_DOUBLE_EQ(cross_section(AffinePlane::linear(b)).radius, 1.0);
  try {
    cross_section(AffinePlane::from_span(b, vec({0, 0, 1.2})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Disjoint);
  }
}

TEST(CrossSectionTest, PointsLieOnSphere) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const Mat dirs = random_orthonormal(4, 2, rng);
    const AffinePlane p = AffinePlane::from_span(dirs, random_ball_point(4, 0.9, rng));
    const CrossSection cs = cross_section(p);
    for (int j = 0; j < 16; ++j) {
      const double t = 2 * std::numbers::pi * j / 16;
      const Vec x = cs.center + cs.radius * (p.basis() * vec({std::cos(t), std::sin(t)}));
      EXPECT_NEAR(x.norm(), 1.0, 1e-12);
    }
  }
}

TEST(ImageSubsphere, Trivial) {
  Mat b(3, 2);
  b << 1, 0, 0, 1, 0, 0;
  const AffinePlane e0 = AffinePlane::linear(b);
  const Subsphere s1 = image_subsphere(e0, vec({0.3, -0.2, 0}));
  EXPECT_LE(s1.center.norm(), 1e-12);
  EXPECT_NEAR(s1.radius, 1.0, 1e-12);
  const Subsphere s0 = image_subsphere(e0, Vec(Vec::Zero(3)));
  EXPECT_LE(s0.center.norm(), 1e-15);
  EXPECT_DOUBLE_EQ(s0.radius, 1.0);
}

TEST(ImageSubsphere, EquatorUnderVerticalShift) {
  Mat b(3, 2);
  b << 1, 0, 0, 1, 0, 0;
  const Vec a = vec({0, 0, 0.5});
  const Subsphere s = image_subsphere(AffinePlane::linear(b), a);
  EXPECT_LE((s.center - a).norm(), 1e-15);
  EXPECT_NEAR(s.radius, std::sqrt(0.75), 1e-15);
  for (int j = 0; j < 64; ++j) {
    const double t = 2 * std::numbers::pi * j / 64;
    const Vec y = phi(a, vec({std::cos(t), std::sin(t), 0}));
    EXPECT_NEAR((y - a).norm(), std::sqrt(0.75), 1e-12);
  }
}

TEST(PlaneImage, ZeroCenterReflects) {
  Rng rng(9);
  const Mat dirs = random_orthonormal(3, 2, rng);
  const AffinePlane p = AffinePlane::from_span(dirs, vec({0.1, 0.2, 0.3}));
  EXPECT_TRUE(plane_image_under_phi(Vec(Vec::Zero(3)), p).same_as(p.reflected(), 1e-12));
}

TEST(PlaneImage, PlaneThroughCenterBecomesLinear) {
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const Vec a = random_ball_point(3, 0.9, rng);
    const AffinePlane p = AffinePlane::from_span(random_orthonormal(3, 2, rng), a);
    EXPECT_LE(plane_image_under_phi(a, p).offset().norm(), 1e-10);
  }
}

TEST(PlaneImage, SectionPointsLandOnImage) {
  Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    const Vec a = random_ball_point(3, 0.9, rng);
    const AffinePlane p = AffinePlane::from_span(random_orthonormal(3, 2, rng), random_ball_point(3, 0.8, rng));
    const AffinePlane img = plane_image_under_phi(a, p);
    const CrossSection cs = cross_section(p);
    for (int j = 0; j < 32; ++j) {
      const double t = 2 * std::numbers::pi * j / 32;
      const Vec x = cs.center + cs.radius * (p.basis() * vec({std::cos(t), std::sin(t)}));
      EXPECT_LE(img.distance(phi(a, x)), 1e-10);
    }
  }
}

TEST(ImageSubsphere, AgreesWithPlaneImage) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const Vec a = random_ball_point(3, 0.9, rng);
    const AffinePlane e0 = AffinePlane::linear(random_orthonormal(3, 2, rng));
    const Subsphere s = image_subsphere(e0, a);
    const CrossSection cs = cross_section(plane_image_under_phi(a, e0));
    EXPECT_LE((s.center - cs.center).norm(), 1e-10);
    EXPECT_NEAR(s.radius, cs.radius, 1e-10);
  }
}

TEST(DimensionChecks, MismatchThrows) {
  try {
    phi(vec({0.1, 0.2}), vec({0.1, 0.2, 0.3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}
