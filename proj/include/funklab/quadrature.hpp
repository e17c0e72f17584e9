#pragma once

// Quadrature on unit spheres and on the subspheres E ∩ S^{n-1}.

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "funklab/config.hpp"
#include "funklab/error.hpp"
#include "funklab/geometry.hpp"

namespace funklab {

/// Compensated (Neumaier) running sum; order-independent up to roundoff and
/// deterministic for a fixed node order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadratureRule {
  std::vector<Vec> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  double total_weight() const {
    CompensatedSum s;
    for (double w : weights) s.add(w);
    return s.value();
  }

  template <class F>
  double integrate(F&& f) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * f(nodes[i]));
    return s.value();
  }
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order must be >= 1");
  // P_m(z) and P_m'(z) by the three-term recurrence
  auto legendre = [m](double z) {
    double p0 = 1.0, p1 = z;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, m * (z * p1 - p0) / (z * z - 1.0)};
  };
  std::vector<double> x(static_cast<std::size_t>(m)), w(static_cast<std::size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(z);
      const double step = p / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double dp = legendre(z).second;
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(m - 1 - i);
    x[lo] = -z;
    x[hi] = z;
    w[lo] = w[hi] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {std::move(x), std::move(w)};
}

/// Surface area of the unit m-sphere S^m in R^{m+1}.
inline double sphere_area(int m) {
  return 2.0 * std::pow(std::numbers::pi, (m + 1) / 2.0) / std::tgamma((m + 1) / 2.0);
}

/// Product sizes for rules on S^m, m >= 2.
struct ProductOrder {
  int longitudes = QuadratureDefaults{}.longitudes;
  int colatitudes = QuadratureDefaults{}.colatitudes;
};

/// Rule on the unit sphere S^m ⊂ R^{m+1}. S^0 gets counting measure,
/// S^1 the uniform trapezoid with `longitudes` nodes, higher spheres a
/// product of Gauss-Legendre colatitudes with the rule one dimension down.
inline QuadratureRule unit_sphere_rule(int m, const ProductOrder& order) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "sphere dimension must be >= 0");
  QuadratureRule rule;
  if (m == 0) {
    rule.nodes = {vec({1.0}), vec({-1.0})};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (m == 1) {
    const int n = order.longitudes;
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "circle order must be >= 1");
    const double w = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) {
      const double t = 2.0 * std::numbers::pi * i / n;
      rule.nodes.push_back(vec({std::cos(t), std::sin(t)}));
      rule.weights.push_back(w);
    }
    return rule;
  }
  const QuadratureRule lower = unit_sphere_rule(m - 1, order);
  const auto [gx, gw] = gauss_legendre(order.colatitudes);
  for (std::size_t i = 0; i < gx.size(); ++i) {
    double c, s, w;
    if (m == 2) {
      // measure ds on s = cos(theta)
      c = gx[i];
      s = std::sqrt(std::max(0.0, 1.0 - c * c));
      w = gw[i];
    } else {
      const double t = 0.5 * std::numbers::pi * (gx[i] + 1.0);
      c = std::cos(t);
      s = std::sin(t);
      w = 0.5 * std::numbers::pi * gw[i] * std::pow(s, m - 1);
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
      Vec p(m + 1);
      p[0] = c;
      p.tail(m) = s * lower.nodes[j];
      rule.nodes.push_back(std::move(p));
      rule.weights.push_back(w * lower.weights[j]);
    }
  }
  return rule;
}

/// Rule on the (k-1)-sphere E ∩ S^{n-1}, weights summing to its area
/// sigma_{k-1} r^{k-1}.
inline QuadratureRule section_rule(const AffinePlane& plane, const ProductOrder& order,
                                   const Tolerances& tol = {}) {
  const CrossSection cs = cross_section(plane, tol);
  const int k = plane.dim();
  const QuadratureRule ref = unit_sphere_rule(k - 1, order);
  const double scale = std::pow(cs.radius, k - 1);
  QuadratureRule rule;
  rule.nodes.reserve(ref.size());
  rule.weights.reserve(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    Vec x = cs.center + cs.radius * (plane.basis() * ref.nodes[i]);
    x /= x.norm();
    rule.nodes.push_back(std::move(x));
    rule.weights.push_back(scale * ref.weights[i]);
  }
  return rule;
}

/// `order` nodes on circles; order longitudes x order/2 colatitudes beyond.
inline QuadratureRule section_rule(const AffinePlane& plane, int order, const Tolerances& tol = {}) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "quadrature order must be >= 1");
  return section_rule(plane, ProductOrder{order, std::max(1, order / 2)}, tol);
}

}  // namespace funklab
