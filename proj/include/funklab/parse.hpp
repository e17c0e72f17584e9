#pragma once

// Text forms of vectors, centers, planes and functions.
//
//   scalar    := sum of products of numbers, pi, sqrt(.), parentheses
//   vector    := scalar {"," scalar}
//   center    := vector | "inf:" vector
//   function  := term {("+" | "-") term}
//   term      := factor {"*" factor}
//   factor    := number | "-" factor | "(" function ")" | primitive
//   primitive := harm(l,m) | mono(i,j,...) | lin(v...) | bump(v...;r) | peak(v...;c) | const(c)

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "funklab/error.hpp"
#include "funklab/geometry.hpp"
#include "funklab/spherical_function.hpp"

namespace funklab {

namespace detail {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : s_(text) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  bool at_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }
  double number() {
    skip_ws();
    const std::string rest(s_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("expected a number");
    }
    pos_ += used;
    return v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::InvalidArgument,
                what + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline double scalar_sum(Scanner& sc);

inline double scalar_atom(Scanner& sc) {
  if (sc.accept('-')) return -scalar_atom(sc);
  if (sc.accept('+')) return scalar_atom(sc);
  if (sc.accept('(')) {
    const double v = scalar_sum(sc);
    sc.expect(')');
    return v;
  }
  if (sc.at_number()) return sc.number();
  const std::string id = sc.identifier();
  if (id == "pi") return std::numbers::pi;
  if (id == "sqrt") {
    sc.expect('(');
    const double v = scalar_sum(sc);
    sc.expect(')');
    if (v < 0.0) sc.fail("sqrt of a negative number");
    return std::sqrt(v);
  }
  if (id == "cos" || id == "sin") {
    sc.expect('(');
    const double v = scalar_sum(sc);
    sc.expect(')');
    return id == "cos" ? std::cos(v) : std::sin(v);
  }
  sc.fail(id.empty() ? "expected a scalar" : "unknown name '" + id + "'");
}

inline double scalar_product(Scanner& sc) {
  double v = scalar_atom(sc);
  for (;;) {
    if (sc.accept('*')) {
      v *= scalar_atom(sc);
    } else if (sc.accept('/')) {
      v /= scalar_atom(sc);
    } else {
      return v;
    }
  }
}

inline double scalar_sum(Scanner& sc) {
  double v = scalar_product(sc);
  for (;;) {
    if (sc.accept('+')) {
      v += scalar_product(sc);
    } else if (sc.accept('-')) {
      v -= scalar_product(sc);
    } else {
      return v;
    }
  }
}

inline std::vector<double> scalar_list(Scanner& sc, char stop1, char stop2) {
  std::vector<double> out;
  if (sc.peek() == stop1 || sc.peek() == stop2) return out;
  out.push_back(scalar_sum(sc));
  while (sc.accept(',')) out.push_back(scalar_sum(sc));
  return out;
}

inline Vec to_vec(const std::vector<double>& xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
  return v;
}

inline SphericalFunction function_sum(Scanner& sc);

inline SphericalFunction function_factor(Scanner& sc) {
  if (sc.accept('-')) return -1.0 * function_factor(sc);
  if (sc.accept('(')) {
    SphericalFunction f = function_sum(sc);
    sc.expect(')');
    return f;
  }
  if (sc.at_number()) return constant(sc.number());
  const std::string id = sc.identifier();
  if (id == "pi") return constant(std::numbers::pi);
  if (id == "harm" || id == "mono" || id == "lin" || id == "bump" || id == "peak" || id == "const") {
    sc.expect('(');
    const std::vector<double> args = scalar_list(sc, ')', ';');
    double extra = 0.0;
    const bool has_extra = sc.accept(';');
    if (has_extra) extra = scalar_sum(sc);
    sc.expect(')');
    auto as_int = [&](double v) {
      if (v != std::floor(v)) sc.fail("expected an integer argument");
      return static_cast<int>(v);
    };
    if (id == "harm") {
      if (args.size() != 2 || has_extra) sc.fail("harm takes (l,m)");
      return harmonic(as_int(args[0]), as_int(args[1]));
    }
    if (id == "mono") {
      if (args.empty() || has_extra) sc.fail("mono takes exponents");
      std::vector<int> e;
      for (double v : args) e.push_back(as_int(v));
      return monomial(std::move(e));
    }
    if (id == "lin") {
      if (args.empty() || has_extra) sc.fail("lin takes a vector");
      return linear_form(to_vec(args));
    }
    if (id == "const") {
      if (args.size() != 1 || has_extra) sc.fail("const takes one value");
      return constant(args[0]);
    }
    if (!has_extra || args.empty()) sc.fail(id + " takes (center;parameter)");
    return id == "bump" ? cap_bump(to_vec(args), extra) : peak(to_vec(args), extra);
  }
  sc.fail(id.empty() ? "expected a function" : "unknown function '" + id + "'");
}

inline SphericalFunction function_term(Scanner& sc) {
  SphericalFunction f = function_factor(sc);
  while (sc.accept('*')) f = f * function_factor(sc);
  return f;
}

inline SphericalFunction function_sum(Scanner& sc) {
  SphericalFunction f = function_term(sc);
  for (;;) {
    if (sc.accept('+')) {
      f = f + function_term(sc);
    } else if (sc.accept('-')) {
      f = f - function_term(sc);
    } else {
      return f;
    }
  }
}

}  // namespace detail

inline double parse_scalar(std::string_view text) {
  detail::Scanner sc(text);
  const double v = detail::scalar_sum(sc);
  if (!sc.done()) sc.fail("trailing input");
  return v;
}

inline Vec parse_vec(std::string_view text) {
  detail::Scanner sc(text);
  const std::vector<double> xs = detail::scalar_list(sc, '\0', '\0');
  if (!sc.done()) sc.fail("trailing input");
  if (xs.size() < 2) throw Error(ErrorCode::DimensionMismatch, "vectors need at least two coordinates");
  Vec v = detail::to_vec(xs);
  require_finite(v, "vector");
  return v;
}

/// Vectors separated by ';'.
inline std::vector<Vec> parse_vec_list(std::string_view text) {
  std::vector<Vec> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(';', start);
    const std::string_view piece = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    out.push_back(parse_vec(piece));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

/// "x,y,z" for a finite center, "inf:x,y,z" for the center at infinity in that direction.
inline Center parse_center(std::string_view text, const Tolerances& tol = {}) {
  constexpr std::string_view prefix = "inf:";
  if (text.substr(0, prefix.size()) == prefix) return Center::infinite(parse_vec(text.substr(prefix.size())));
  return Center::finite(parse_vec(text), tol);
}

inline SphericalFunction parse_function(std::string_view text) {
  detail::Scanner sc(text);
  SphericalFunction f = detail::function_sum(sc);
  if (!sc.done()) sc.fail("trailing input");
  return f;
}

}  // namespace funklab
