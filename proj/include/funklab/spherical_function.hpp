#pragma once

// Immutable expression trees of continuous functions on S^{n-1}. Nodes hold
// only values, so evaluation is re-entrant and trees can be shared freely.

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "funklab/error.hpp"
#include "funklab/geometry.hpp"

namespace funklab {

class SphericalFunction {
 public:
  struct Node {
    virtual ~Node() = default;
    virtual double eval(const Vec& x) const = 0;
    virtual std::string describe() const = 0;
  };

  SphericalFunction();  // the zero function
  explicit SphericalFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  double operator()(const Vec& x) const { return node_->eval(x); }
  double operator()(const SpherePoint& x) const { return node_->eval(x.vec()); }
  std::string describe() const { return node_->describe(); }

 private:
  std::shared_ptr<const Node> node_;
};

/// Maps of the sphere into itself and weight factors used by pullback nodes.
using PointMap = std::function<Vec(const Vec&)>;
using WeightFn = std::function<double(const Vec&)>;

namespace detail {

inline std::string format_vec(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

struct ConstantNode final : SphericalFunction::Node {
  double value;
  explicit ConstantNode(double v) : value(v) {}
  double eval(const Vec&) const override { return value; }
  std::string describe() const override {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
  }
};

struct MonomialNode final : SphericalFunction::Node {
  std::vector<int> exponents;
  explicit MonomialNode(std::vector<int> e) : exponents(std::move(e)) {}
  double eval(const Vec& x) const override {
    if (static_cast<Eigen::Index>(exponents.size()) != x.size()) {
      throw Error(ErrorCode::DimensionMismatch, "monomial exponent count differs from n");
    }
    double out = 1.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      for (int p = 0; p < exponents[i]; ++p) out *= x[static_cast<Eigen::Index>(i)];
    }
    return out;
  }
  std::string describe() const override {
    std::string s = "mono(";
    for (std::size_t i = 0; i < exponents.size(); ++i) s += (i ? "," : "") + std::to_string(exponents[i]);
    return s + ")";
  }
};

struct LinearNode final : SphericalFunction::Node {
  Vec v;
  explicit LinearNode(Vec w) : v(std::move(w)) {}
  double eval(const Vec& x) const override {
    require_same_dim(v, x, "linear form");
    return x.dot(v);
  }
  std::string describe() const override { return "lin" + format_vec(v); }
};

/// Real orthonormal spherical harmonic on S^2 (Condon-Shortley phase omitted).
struct HarmonicNode final : SphericalFunction::Node {
  int degree;
  int order;
  double norm;
  HarmonicNode(int l, int m) : degree(l), order(m) {
    const int am = std::abs(m);
    double ratio = 1.0;  // (l-|m|)! / (l+|m|)!
    for (int i = l - am + 1; i <= l + am; ++i) ratio /= i;
    norm = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) * ratio) * (m == 0 ? 1.0 : std::numbers::sqrt2);
  }
  double eval(const Vec& x) const override {
    if (x.size() != 3) throw Error(ErrorCode::DimensionMismatch, "spherical harmonics are defined for n = 3");
    const double r = x.norm();
    const double z = std::clamp(x[2] / r, -1.0, 1.0);
    const double phi = std::atan2(x[1], x[0]);
    const int am = std::abs(order);
    const double p = std::assoc_legendre(static_cast<unsigned>(degree), static_cast<unsigned>(am), z);
    if (order > 0) return norm * p * std::cos(am * phi);
    if (order < 0) return norm * p * std::sin(am * phi);
    return norm * p;
  }
  std::string describe() const override {
    return "harm(" + std::to_string(degree) + "," + std::to_string(order) + ")";
  }
};

/// exp(1 - 1/(1 - (d/r)^2)) for geodesic distance d < r from `center`, else 0.
struct CapBumpNode final : SphericalFunction::Node {
  Vec center;
  double radius;
  CapBumpNode(Vec c, double r) : center(std::move(c)), radius(r) {}
  double eval(const Vec& x) const override {
    require_same_dim(center, x, "cap bump");
    const double d = std::acos(std::clamp(x.dot(center) / x.norm(), -1.0, 1.0));
    if (d >= radius) return 0.0;
    const double s = d / radius;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
  }
  std::string describe() const override {
    std::ostringstream os;
    os.precision(17);
    os << "bump(" << format_vec(center) << ";" << radius << ")";
    return os.str();
  }
};

/// exp(concentration * (<x, center> - 1)): equals 1 at the center, analytic everywhere.
struct PeakNode final : SphericalFunction::Node {
  Vec center;
  double concentration;
  PeakNode(Vec c, double k) : center(std::move(c)), concentration(k) {}
  double eval(const Vec& x) const override {
    require_same_dim(center, x, "peak");
    return std::exp(concentration * (x.dot(center) - 1.0));
  }
  std::string describe() const override {
    std::ostringstream os;
    os.precision(17);
    os << "peak(" << format_vec(center) << ";" << concentration << ")";
    return os.str();
  }
};

struct SumNode final : SphericalFunction::Node {
  std::vector<SphericalFunction> terms;
  explicit SumNode(std::vector<SphericalFunction> t) : terms(std::move(t)) {}
  double eval(const Vec& x) const override {
    double s = 0.0;
    for (const auto& t : terms) s += t(x);
    return s;
  }
  std::string describe() const override {
    std::string s = "(";
    for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + terms[i].describe();
    return s + ")";
  }
};

struct ProductNode final : SphericalFunction::Node {
  std::vector<SphericalFunction> factors;
  explicit ProductNode(std::vector<SphericalFunction> f) : factors(std::move(f)) {}
  double eval(const Vec& x) const override {
    double p = 1.0;
    for (const auto& f : factors) p *= f(x);
    return p;
  }
  std::string describe() const override {
    std::string s = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? " * " : "") + factors[i].describe();
    return s + ")";
  }
};

struct ScaleNode final : SphericalFunction::Node {
  double factor;
  SphericalFunction inner;
  ScaleNode(double c, SphericalFunction f) : factor(c), inner(std::move(f)) {}
  double eval(const Vec& x) const override { return factor * inner(x); }
  std::string describe() const override {
    std::ostringstream os;
    os.precision(17);
    os << factor << "*" << inner.describe();
    return os.str();
  }
};

/// x -> weight(x) * inner(map(x)).
struct PullbackNode final : SphericalFunction::Node {
  SphericalFunction inner;
  PointMap map;
  WeightFn weight;  // empty means 1
  std::string label;
  PullbackNode(SphericalFunction f, PointMap m, WeightFn w, std::string l)
      : inner(std::move(f)), map(std::move(m)), weight(std::move(w)), label(std::move(l)) {}
  double eval(const Vec& x) const override {
    const double w = weight ? weight(x) : 1.0;
    return w * inner(map(x));
  }
  std::string describe() const override { return label + "[" + inner.describe() + "]"; }
};

/// Leaf evaluating an arbitrary pure callable.
struct CallableNode final : SphericalFunction::Node {
  WeightFn fn;
  std::string label;
  CallableNode(WeightFn f, std::string l) : fn(std::move(f)), label(std::move(l)) {}
  double eval(const Vec& x) const override { return fn(x); }
  std::string describe() const override { return label; }
};

}  // namespace detail

inline SphericalFunction::SphericalFunction() : node_(std::make_shared<detail::ConstantNode>(0.0)) {}

// Primitives

inline SphericalFunction constant(double value) {
  return SphericalFunction(std::make_shared<detail::ConstantNode>(value));
}

/// x_1^e_1 ... x_n^e_n restricted to the sphere.
inline SphericalFunction monomial(std::vector<int> exponents) {
  for (int e : exponents) {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative monomial exponent");
  }
  return SphericalFunction(std::make_shared<detail::MonomialNode>(std::move(exponents)));
}

/// x -> <x, v>.
inline SphericalFunction linear_form(Vec v) {
  return SphericalFunction(std::make_shared<detail::LinearNode>(std::move(v)));
}

/// Real spherical harmonic Y_l^m on S^2, |m| <= l.
inline SphericalFunction harmonic(int l, int m) {
  if (l < 0 || std::abs(m) > l) throw Error(ErrorCode::InvalidArgument, "harmonic requires 0 <= |m| <= l");
  return SphericalFunction(std::make_shared<detail::HarmonicNode>(l, m));
}

inline SphericalFunction cap_bump(const Vec& center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "bump radius must be positive");
  if (center.norm() == 0.0) throw Error(ErrorCode::ZeroVector, "bump center");
  return SphericalFunction(std::make_shared<detail::CapBumpNode>(center / center.norm(), radius));
}

inline SphericalFunction peak(const Vec& center, double concentration) {
  if (!(concentration > 0.0)) throw Error(ErrorCode::InvalidArgument, "peak concentration must be positive");
  if (center.norm() == 0.0) throw Error(ErrorCode::ZeroVector, "peak center");
  return SphericalFunction(std::make_shared<detail::PeakNode>(center / center.norm(), concentration));
}

inline SphericalFunction product_of_linear_forms(const std::vector<Vec>& normals) {
  std::vector<SphericalFunction> factors;
  factors.reserve(normals.size());
  for (const auto& b : normals) factors.push_back(linear_form(b));
  return SphericalFunction(std::make_shared<detail::ProductNode>(std::move(factors)));
}

inline SphericalFunction from_callable(WeightFn fn, std::string label) {
  return SphericalFunction(std::make_shared<detail::CallableNode>(std::move(fn), std::move(label)));
}

// Operators

inline SphericalFunction pullback(SphericalFunction f, PointMap map, WeightFn weight, std::string label) {
  return SphericalFunction(
      std::make_shared<detail::PullbackNode>(std::move(f), std::move(map), std::move(weight), std::move(label)));
}

inline SphericalFunction operator+(SphericalFunction f, SphericalFunction g) {
  return SphericalFunction(std::make_shared<detail::SumNode>(std::vector<SphericalFunction>{std::move(f), std::move(g)}));
}

inline SphericalFunction sum(std::vector<SphericalFunction> terms) {
  return SphericalFunction(std::make_shared<detail::SumNode>(std::move(terms)));
}

inline SphericalFunction operator*(double c, SphericalFunction f) {
  return SphericalFunction(std::make_shared<detail::ScaleNode>(c, std::move(f)));
}

inline SphericalFunction operator-(SphericalFunction f, SphericalFunction g) { return std::move(f) + (-1.0) * std::move(g); }

inline SphericalFunction operator*(SphericalFunction f, SphericalFunction g) {
  return SphericalFunction(
      std::make_shared<detail::ProductNode>(std::vector<SphericalFunction>{std::move(f), std::move(g)}));
}

}  // namespace funklab
