#pragma once

// Command-line front end: analyze, classify, orbit, transform, kernel, coxeter.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "funklab/analyzer.hpp"
#include "funklab/config.hpp"
#include "funklab/dynamics.hpp"
#include "funklab/json_io.hpp"
#include "funklab/kernelgen.hpp"
#include "funklab/parse.hpp"
#include "funklab/quadrature.hpp"
#include "funklab/transform.hpp"

namespace funklab::cli {

struct RunConfig {
  Tolerances tol;
  RationalSearch search;
  int samples = 32;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string output;

  AnalyzerOptions analyzer() const {
    AnalyzerOptions o;
    o.tol = tol;
    o.search = search;
    o.samples = samples;
    o.seed = seed;
    return o;
  }
};

namespace detail {

inline Json reproducibility(const RunConfig& cfg, std::optional<int> order = std::nullopt) {
  Json r;
  r["seed"] = cfg.seed;
  r["qmax"] = cfg.search.max_denominator;
  r["eps"] = cfg.search.eps;
  r["samples"] = cfg.samples;
  if (order) r["order"] = *order;
  r["tolerances"] = to_json(cfg.tol);
  return r;
}

inline Json document(const std::string& command) {
  Json d;
  d["schema"] = kSchema;
  d["command"] = command;
  return d;
}

inline void merge(Json& into, const Json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

inline AffinePlane plane_from_options(const std::string& points, const std::string& basis, const std::string& offset) {
  if (!points.empty()) {
    if (!basis.empty() || !offset.empty()) {
      throw Error(ErrorCode::InvalidArgument, "give either --plane-points or --plane-basis/--plane-offset");
    }
    const std::vector<Vec> pts = parse_vec_list(points);
    return plane_from_points(std::span<const Vec>(pts));
  }
  if (basis.empty()) throw Error(ErrorCode::InvalidArgument, "a plane is required");
  const std::vector<Vec> cols = parse_vec_list(basis);
  Mat dirs(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require_same_dim(cols[j], cols.front(), "plane basis");
    dirs.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  const Vec off = offset.empty() ? Vec(Vec::Zero(dirs.rows())) : parse_vec(offset);
  return AffinePlane::from_span(dirs, off);
}

}  // namespace detail

/// Runs one command. Returns 0 on success, 2 on invalid input.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("FUNKLAB_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      out << error_document(ErrorCode::InvalidArgument, "FUNKLAB_SEED is not an unsigned integer").dump(2) << '\n';
      return 2;
    }
  }

  CLI::App app{"funk-lab: shifted Funk transforms, their dynamics and common kernels", "funklab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "random seed (overrides FUNKLAB_SEED)");
  app.add_option("--qmax", cfg.search.max_denominator, "largest denominator of rational rotation numbers")
      ->check(CLI::PositiveNumber);
  app.add_option("--eps", cfg.search.eps, "rational detection tolerance")->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "sample points for period confirmation")->check(CLI::PositiveNumber);
  app.add_option("--verdict-tol", cfg.tol.verdict, "classification band");
  app.add_option("--period-tol", cfg.tol.period_residual, "residual accepted as T^q = id");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", cfg.output, "write the result to this file");

  std::string a_text, b_text, dir_text, d1_text, d2_text, centers_text;
  auto* analyze = app.add_subcommand("analyze", "injectivity verdict for two or more centers");
  analyze->add_option("--a", a_text, "finite center a");
  analyze->add_option("--b", b_text, "finite center b");
  analyze->add_option("--dir", dir_text, "direction of a center at infinity paired with --a");
  analyze->add_option("--d1", d1_text, "first direction at infinity");
  analyze->add_option("--d2", d2_text, "second direction at infinity");
  analyze->add_option("--centers", centers_text, "centers separated by ';', 'inf:' marks directions");

  auto* classify_cmd = app.add_subcommand("classify", "Mobius class of the V-map");
  classify_cmd->add_option("--a", a_text, "center a (prefix inf: for a direction)")->required();
  classify_cmd->add_option("--b", b_text, "center b (prefix inf: for a direction)")->required();

  std::string x0_text;
  int max_iter = 1000;
  auto* orbit_cmd = app.add_subcommand("orbit", "iterate T from a starting point");
  orbit_cmd->add_option("--a", a_text, "center a")->required();
  orbit_cmd->add_option("--b", b_text, "center b")->required();
  orbit_cmd->add_option("--x0", x0_text, "starting point (normalized)")->required();
  orbit_cmd->add_option("--max-iter", max_iter, "largest number of points")->check(CLI::PositiveNumber);

  std::string center_text, function_text, plane_points, plane_basis, plane_offset;
  int order = QuadratureDefaults{}.circle_order;
  auto* transform_cmd = app.add_subcommand("transform", "evaluate F_a f(E) or Pi_b f(E)");
  transform_cmd->add_option("--center", center_text, "center (prefix inf: for a direction)")->required();
  transform_cmd->add_option("--function", function_text, "function expression")->required();
  transform_cmd->add_option("--plane-points", plane_points, "k+1 points separated by ';'");
  transform_cmd->add_option("--plane-basis", plane_basis, "spanning vectors separated by ';'");
  transform_cmd->add_option("--plane-offset", plane_offset, "a point of the plane");
  transform_cmd->add_option("--order", order, "quadrature order")->check(CLI::PositiveNumber);

  int verify_planes = 200;
  int kdim = 0;
  std::string profile = "analytic";
  auto* kernel_cmd = app.add_subcommand("kernel", "build and verify a common-kernel function");
  kernel_cmd->add_option("--a", a_text, "center a (prefix inf: for a direction)")->required();
  kernel_cmd->add_option("--b", b_text, "center b (prefix inf: for a direction)")->required();
  kernel_cmd->add_option("--k", kdim, "plane dimension (default n-1)");
  kernel_cmd->add_option("--verify-planes", verify_planes, "random planes per center")->check(CLI::NonNegativeNumber);
  kernel_cmd->add_option("--order", order, "quadrature order")->check(CLI::PositiveNumber);
  kernel_cmd->add_option("--profile", profile, "bump profile")->check(CLI::IsMember({"analytic", "compact"}));

  std::string normals_text;
  int cap = 10000;
  auto* coxeter_cmd = app.add_subcommand("coxeter", "slice-transform family by its reflection group");
  coxeter_cmd->add_option("--normals", normals_text, "unit normals separated by ';'")->required();
  coxeter_cmd->add_option("--cap", cap, "largest mirror count explored")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"funklab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_document(ErrorCode::InvalidArgument, e.what()).dump(2) << '\n';
    err << e.what() << '\n';
    return 2;
  }
  if (seed_flag) cfg.seed = *seed_flag;

  std::ostringstream body;
  try {
    if (analyze->parsed()) {
      Json d = detail::document("analyze");
      InjectivityVerdict v;
      Json input;
      const AnalyzerOptions opts = cfg.analyzer();
      if (!centers_text.empty()) {
        std::vector<Center> centers;
        std::string_view rest = centers_text;
        Json list = Json::array();
        for (;;) {
          const auto cut = rest.find(';');
          centers.push_back(parse_center(rest.substr(0, cut), cfg.tol));
          list.push_back(to_json(centers.back()));
          if (cut == std::string_view::npos) break;
          rest = rest.substr(cut + 1);
        }
        input["centers"] = list;
        v = decide_multi(centers, opts);
      } else if (!a_text.empty() && !b_text.empty()) {
        const Vec a = parse_vec(a_text), b = parse_vec(b_text);
        input = {{"a", to_json(a)}, {"b", to_json(b)}};
        v = decide_pair(a, b, opts);
      } else if (!a_text.empty() && !dir_text.empty()) {
        const Vec a = parse_vec(a_text), dir = parse_vec(dir_text);
        input = {{"a", to_json(a)}, {"dir", to_json(dir)}};
        v = decide_finite_infinite(a, dir, opts);
      } else if (!d1_text.empty() && !d2_text.empty()) {
        const Vec d1 = parse_vec(d1_text), d2 = parse_vec(d2_text);
        input = {{"d1", to_json(d1)}, {"d2", to_json(d2)}};
        v = decide_infinite_pair(d1, d2, opts);
      } else {
        throw Error(ErrorCode::InvalidArgument, "analyze needs --a/--b, --a/--dir, --d1/--d2 or --centers");
      }
      d["input"] = input;
      detail::merge(d, to_json(v));
      d["reproducibility"] = detail::reproducibility(cfg);
      body << d.dump(2) << '\n';
    } else if (classify_cmd->parsed()) {
      const Center a = parse_center(a_text, cfg.tol), b = parse_center(b_text, cfg.tol);
      Json d = detail::document("classify");
      d["input"] = {{"a", to_json(a)}, {"b", to_json(b)}};
      detail::merge(d, to_json(classify(a, b, cfg.tol, cfg.search)));
      if (a.is_finite() && b.is_finite()) d["discriminant"] = discriminant(a.point(), b.point());
      d["reproducibility"] = detail::reproducibility(cfg);
      body << d.dump(2) << '\n';
    } else if (orbit_cmd->parsed()) {
      const Center a = parse_center(a_text, cfg.tol), b = parse_center(b_text, cfg.tol);
      const SpherePoint x0(parse_vec(x0_text));
      require_same_dim(a.vec(), x0.vec(), "orbit");
      require_same_dim(a.vec(), b.vec(), "orbit");
      const std::vector<SpherePoint> pts = orbit(a, b, x0, max_iter, cfg.tol);
      if (cfg.format == "csv") {
        body << "iteration";
        for (int i = 1; i <= x0.dim(); ++i) body << ",x" << i;
        body << ",distance_to_start\n";
        body << std::setprecision(17);
        for (std::size_t j = 0; j < pts.size(); ++j) {
          body << j;
          for (int i = 0; i < x0.dim(); ++i) body << ',' << pts[j][i];
          body << ',' << (pts[j].vec() - x0.vec()).norm() << '\n';
        }
      } else {
        Json d = detail::document("orbit");
        d["input"] = {{"a", to_json(a)}, {"b", to_json(b)}, {"x0", to_json(x0.vec())}, {"max_iter", max_iter}};
        Json rows = Json::array();
        for (const auto& p : pts) rows.push_back(to_json(p.vec()));
        d["points"] = rows;
        d["returned"] = static_cast<int>(pts.size()) < max_iter;
        d["reproducibility"] = detail::reproducibility(cfg);
        body << d.dump(2) << '\n';
      }
    } else if (transform_cmd->parsed()) {
      const Center c = parse_center(center_text, cfg.tol);
      const SphericalFunction f = parse_function(function_text);
      const AffinePlane plane = detail::plane_from_options(plane_points, plane_basis, plane_offset);
      require_same_dim(c.vec(), plane.offset(), "transform");
      const double value = transform_value(c, f, plane, order, cfg.tol);
      const CrossSection cs = cross_section(plane, cfg.tol);
      Json d = detail::document("transform");
      d["input"] = {{"center", to_json(c)}, {"function", f.describe()}, {"plane", to_json(plane)}};
      d["value"] = value;
      d["section"] = {{"center", to_json(cs.center)}, {"radius", cs.radius}, {"dimension", plane.dim() - 1}};
      d["nodes"] = section_rule(plane, order, cfg.tol).size();
      d["reproducibility"] = detail::reproducibility(cfg, order);
      body << d.dump(2) << '\n';
    } else if (kernel_cmd->parsed()) {
      const Center a = parse_center(a_text, cfg.tol), b = parse_center(b_text, cfg.tol);
      require_same_dim(a.vec(), b.vec(), "kernel");
      const int k = kdim == 0 ? a.dim() - 1 : kdim;
      Json d = detail::document("kernel");
      d["input"] = {{"a", to_json(a)}, {"b", to_json(b)}, {"k", k}, {"verify_planes", verify_planes}};
      const InjectivityVerdict v = decide_centers(a, b, cfg.analyzer());
      detail::merge(d, to_json(v));
      if (v.verdict == Verdict::NonInjective) {
        KernelOptions ko;
        ko.profile = profile == "compact" ? BumpProfile::Compact : BumpProfile::Analytic;
        ko.basepoint.seed = cfg.seed;
        ko.basepoint.tol = cfg.tol;
        const KernelWitness w = build_kernel_element(a, b, v.period, k, ko);
        d["witness"] = to_json(w, cfg.seed);
        d["f_at_basepoint"] = w.f(w.base.e);
        d["sup_norm_estimate"] = sup_norm_estimate(w.f, a.dim(), 2000, cfg.seed, {w.base.e.vec()});
        const AnnihilationReport ra = verify_annihilation(w.f, a, verify_planes, order, k, cfg.seed + 1, cfg.tol);
        const AnnihilationReport rb = verify_annihilation(w.f, b, verify_planes, order, k, cfg.seed + 2, cfg.tol);
        d["max_abs_transform_a"] = ra.max_abs;
        d["max_abs_transform_b"] = rb.max_abs;
      } else {
        d["witness"] = nullptr;
      }
      d["reproducibility"] = detail::reproducibility(cfg, order);
      body << d.dump(2) << '\n';
    } else if (coxeter_cmd->parsed()) {
      const std::vector<Vec> normals = parse_vec_list(normals_text);
      AnalyzerOptions opts = cfg.analyzer();
      opts.mirror_cap = cap;
      Json d = detail::document("coxeter");
      Json in = Json::array();
      for (const Vec& n : normals) in.push_back(to_json(n));
      d["input"] = {{"normals", in}, {"cap", cap}};
      detail::merge(d, to_json(decide_slice_family(normals, opts)));
      d["reproducibility"] = detail::reproducibility(cfg);
      body << d.dump(2) << '\n';
    }
  } catch (const Error& e) {
    out << error_document(e.code(), e.what()).dump(2) << '\n';
    err << e.what() << '\n';
    return 2;
  }

  if (cfg.output.empty()) {
    out << body.str();
  } else {
    std::ofstream file(cfg.output);
    if (!file) {
      out << error_document(ErrorCode::InvalidArgument, "cannot open " + cfg.output).dump(2) << '\n';
      return 2;
    }
    file << body.str();
  }
  return 0;
}

}  // namespace funklab::cli
