#pragma once

// JSON forms of verdicts, classifications and run settings ("funk-lab/1").

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "funklab/analyzer.hpp"
#include "funklab/config.hpp"
#include "funklab/dynamics.hpp"
#include "funklab/geometry.hpp"
#include "funklab/kernelgen.hpp"

namespace funklab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "funk-lab/1";

inline Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

/// A real Theta is a number; an imaginary one is {"imag": value}.
inline Json to_json(const ThetaValue& th) {
  if (!th.imaginary) return th.value;
  return Json{{"imag", th.value}};
}

inline Json to_json(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return Json::array({r->p, r->q});
}

inline Json to_json(const MobiusClass& c) {
  Json out;
  out["class"] = std::string(to_string(c.type));
  out["theta"] = to_json(c.theta);
  out["kappa"] = c.type == DynamicsType::Elliptic ? Json(c.kappa) : Json(nullptr);
  out["rational"] = to_json(c.rational);
  out["near_boundary"] = c.near_boundary;
  out["exact_kappa"] = c.exact_kappa;
  return out;
}

inline Json to_json(const Center& c) {
  Json out;
  out["kind"] = c.is_finite() ? "finite" : "infinite";
  out[c.is_finite() ? "point" : "direction"] = to_json(c.vec());
  return out;
}

inline Json to_json(const AffinePlane& p) {
  Json basis = Json::array();
  for (Eigen::Index j = 0; j < p.basis().cols(); ++j) basis.push_back(to_json(Vec(p.basis().col(j))));
  return Json{{"basis", basis}, {"offset", to_json(p.offset())}};
}

/// {verdict, class, theta, kappa, rational, period, discriminant, notes[]} plus details.
inline Json to_json(const InjectivityVerdict& v) {
  Json out;
  out["verdict"] = std::string(to_string(v.verdict));
  if (v.cls) {
    out["class"] = std::string(to_string(v.cls->type));
    out["theta"] = to_json(v.cls->theta);
    out["kappa"] = v.cls->type == DynamicsType::Elliptic ? Json(v.cls->kappa) : Json(nullptr);
    out["rational"] = to_json(v.cls->rational);
  } else {
    out["class"] = nullptr;
    out["theta"] = nullptr;
    out["kappa"] = nullptr;
    out["rational"] = nullptr;
  }
  out["period"] = v.verdict == Verdict::NonInjective ? Json(v.period) : Json(nullptr);
  out["rotation"] = v.verdict == Verdict::NonInjective ? to_json(v.rotation) : Json(nullptr);
  out["discriminant"] = v.discriminant ? Json(*v.discriminant) : Json(nullptr);
  out["reason"] = v.reason;
  out["notes"] = v.notes;
  if (!v.mirrors.empty()) {
    Json m = Json::array();
    for (const Vec& n : v.mirrors) m.push_back(to_json(n));
    out["mirrors"] = m;
  }
  if (v.witness) out["witness"] = v.witness->describe();
  if (!v.pairs.empty()) {
    Json pairs = Json::array();
    for (const auto& p : v.pairs) {
      pairs.push_back({{"i", p.i}, {"j", p.j}, {"verdict", std::string(to_string(p.verdict))},
                       {"period", p.verdict == Verdict::NonInjective ? Json(p.period) : Json(nullptr)}});
    }
    out["pairs"] = pairs;
  }
  return out;
}

/// Recipe rebuilding a kernel witness bit-identically.
inline Json to_json(const KernelWitness& w, std::uint64_t seed) {
  Json out;
  out["a"] = to_json(w.a);
  out["b"] = to_json(w.b);
  out["period"] = w.q;
  out["k"] = w.k;
  out["basepoint"] = to_json(w.base.e.vec());
  out["margin"] = w.base.margin;
  out["profile"] = std::string(to_string(w.profile));
  out["radius"] = w.radius;
  if (w.profile == BumpProfile::Analytic) out["concentration"] = w.concentration;
  out["seed"] = seed;
  return out;
}

inline Json to_json(const Tolerances& t) {
  return Json{{"sphere", t.sphere},
              {"degeneracy", t.degeneracy},
              {"verdict", t.verdict},
              {"center_on_sphere", t.center_on_sphere},
              {"plane_membership", t.plane_membership},
              {"period_residual", t.period_residual},
              {"exact_theta", t.exact_theta},
              {"mirror_match", t.mirror_match}};
}

inline Json error_document(ErrorCode code, const std::string& message) {
  Json out;
  out["schema"] = kSchema;
  out["error"] = {{"code", std::string(to_string(code))}, {"message", message}};
  return out;
}

}  // namespace funklab
