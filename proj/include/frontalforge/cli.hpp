#pragma once

// Command-line front end. run() parses arguments with CLI11, dispatches to
// the subcommand and maps failures to exit codes:
//   0 success, 1 verification failure, 2 usage or configuration error,
//   3 numerical degeneracy (pole on a silhouette, degenerate Gauss map, ...).
// Errors are reported on `err` as one JSON line.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "analysis.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "frontal.hpp"
#include "io.hpp"
#include "silhouette.hpp"
#include "suites.hpp"
#include "transforms.hpp"

namespace frontalforge::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumerical = 3 };

struct RunConfig {
  std::string subcommand;

  // Frontal
  std::string catalog;
  std::vector<std::string> param_kv;  // key=value
  std::string params_json;
  std::string input_csv;  // sampled curve, plotting only
  std::optional<double> fd_step;

  // Transform and poles
  std::string kind;
  std::string pole;
  std::string poles;  // "auto:k" or "x,y;x,y"

  // Grid
  int samples = 0;  // 0: subcommand default
  std::vector<std::string> ranges;  // "lo,hi" per axis
  bool half_open = false;
  std::string at;  // single parameter point

  // Outputs
  std::string out, svg, pgm, csv, report, source_csv;
  bool with_source = false;

  // Raster
  std::string bbox;
  int res = 128;

  // Verification
  std::string suite;
  std::string jacobians = "chain";
  Tolerances tol;
  std::optional<double> tol_ns;
};

namespace detail {

inline Error usage(const std::string& msg) { return Error(ErrorCode::InvalidArgument, msg); }

inline Frontal make_frontal(const RunConfig& cfg) {
  if (cfg.catalog.empty()) throw usage("--catalog is required");
  CatalogParams params;
  if (!cfg.params_json.empty()) params = parse_catalog_params(cfg.params_json);
  for (const auto& kv : cfg.param_kv) {
    const auto [k, v] = parse_key_value(kv);
    params[k] = v;
  }
  Frontal F = catalog(cfg.catalog, params);
  if (cfg.fd_step) F = F.with_fd_step(*cfg.fd_step);
  return F;
}

inline AmbientVec make_pole(const RunConfig& cfg, const Frontal& F) {
  if (cfg.pole.empty()) throw usage("--pole is required");
  const Vector P = parse_vector(cfg.pole);
  if (P.size() != F.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pole has dimension " + std::to_string(P.size()) + ", frontal '" +
                                                  F.name() + "' lives in R^" + std::to_string(F.ambient_dim()));
  }
  return AmbientVec(P);
}

inline std::vector<AxisSampling> grid_axes(const RunConfig& cfg, const Frontal& F, int default_samples) {
  const int count = cfg.samples ? cfg.samples : default_samples;
  if (count < 2) throw usage("--samples must be at least 2");
  if (cfg.ranges.size() > static_cast<std::size_t>(F.param_dim())) throw usage("more --range options than axes");
  std::vector<AxisSampling> axes;
  for (int i = 0; i < F.param_dim(); ++i) {
    const Axis& a = F.domain().axis(i);
    AxisSampling s{a.lo, a.hi, count, !a.periodic};
    if (static_cast<std::size_t>(i) < cfg.ranges.size()) {
      const Vector r = parse_vector(cfg.ranges[static_cast<std::size_t>(i)]);
      if (r.size() != 2 || !(r[0] < r[1])) throw usage("--range expects lo,hi with lo < hi");
      s.lo = r[0];
      s.hi = r[1];
      s.include_end = true;
    }
    if (cfg.half_open) s.include_end = false;
    axes.push_back(s);
  }
  return axes;
}

inline SampleGrid make_grid(const RunConfig& cfg, const Frontal& F, int default_samples) {
  if (!cfg.at.empty()) {
    const Vector x = parse_vector(cfg.at);
    if (x.size() != F.param_dim()) throw Error(ErrorCode::DimensionMismatch, "--at has the wrong dimension");
    return SampleGrid({F.domain().canonical(x)});
  }
  return SampleGrid::from_axes(grid_axes(cfg, F, default_samples));
}

/// The sampled curve closes up: one periodic axis covered half-open.
inline bool closed_curve(const RunConfig& cfg, const Frontal& F) {
  return F.param_dim() == 1 && F.domain().axis(0).periodic && cfg.ranges.empty() &&
         !grid_axes(cfg, F, 2).front().include_end;
}

inline JacobianMode jacobian_mode(const RunConfig& cfg) {
  if (cfg.jacobians == "chain") return JacobianMode::ChainRule;
  if (cfg.jacobians == "fd") return JacobianMode::FiniteDifference;
  throw usage("--jacobians must be 'chain' or 'fd'");
}

inline TransformOptions transform_options(const RunConfig& cfg) {
  return {cfg.tol.degeneracy, jacobian_mode(cfg)};
}

inline void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  write_file(path, [&](std::ostream& os) { os << text; });
}

template <class Fn>
std::string to_text(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

inline BBox parse_bbox(const std::string& s) {
  const Vector v = parse_vector(s);
  if (v.size() != 4) throw usage("--bbox expects xmin,xmax,ymin,ymax");
  BBox b{v[0], v[1], v[2], v[3]};
  if (!(b.xmin < b.xmax && b.ymin < b.ymax)) throw usage("degenerate --bbox: need xmin < xmax and ymin < ymax");
  return b;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_catalog(const RunConfig&, std::ostream& out) {
  for (const auto& e : catalog_entries()) {
    const Frontal F = catalog(e.name);
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["param_dim"] = F.param_dim();
    j["ambient_dim"] = F.ambient_dim();
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e.defaults) j["params"][k] = v;
    j["description"] = e.description;
    out << j.dump() << '\n';
  }
  return kOk;
}

inline int cmd_transform(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.input_csv.empty()) {
    // Plot a previously written curve.
    if (!cfg.kind.empty()) throw detail::usage("--input cannot be combined with --kind");
    if (cfg.svg.empty()) throw detail::usage("--input needs --svg");
    std::ifstream is(cfg.input_csv, std::ios::binary);
    if (!is) throw detail::usage("cannot read '" + cfg.input_csv + "'");
    const SampledMap s = read_csv(is);
    detail::emit(cfg.svg, out, detail::to_text([&](std::ostream& os) { write_svg(os, {{&s, "black", false}}); }));
    return kOk;
  }
  if (cfg.kind.empty()) throw detail::usage("--kind is required");
  const TransformKind kind = parse_transform_kind(cfg.kind);
  const Frontal F = detail::make_frontal(cfg);
  const AmbientVec pole = detail::make_pole(cfg, F);
  const SampleGrid grid = detail::make_grid(cfg, F, 512);
  const TransformResult r = transform(kind, F, pole, detail::transform_options(cfg));
  const SampledMap result = sample(r.result, grid);
  const bool source_wanted = cfg.with_source || !cfg.source_csv.empty();
  const SampledMap source = source_wanted ? sample(F, grid) : SampledMap{};

  detail::emit(cfg.out, out, detail::to_text([&](std::ostream& os) { write_csv(os, result); }));
  if (!cfg.source_csv.empty()) {
    detail::emit(cfg.source_csv, out, detail::to_text([&](std::ostream& os) { write_csv(os, source); }));
  }
  if (!cfg.svg.empty()) {
    if (F.ambient_dim() != 2) throw Error(ErrorCode::DimensionMismatch, "--svg needs a plane curve");
    const bool closed = detail::closed_curve(cfg, F);
    std::vector<SvgLayer> layers;
    if (cfg.with_source) layers.push_back({&source, "gray", closed});
    layers.push_back({&result, "black", closed});
    detail::emit(cfg.svg, out, detail::to_text([&](std::ostream& os) { write_svg(os, layers); }));
  }
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.suite.empty()) throw detail::usage("--suite is required");
  if (std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end()) {
    throw Error(ErrorCode::UnknownName, "unknown suite '" + cfg.suite + "'");
  }
  SuiteConfig sc;
  if (!cfg.catalog.empty()) sc.frontals.push_back(detail::make_frontal(cfg));
  if (!cfg.pole.empty() && !cfg.poles.empty()) throw detail::usage("use either --pole or --poles");
  if (!cfg.pole.empty()) {
    sc.poles.poles.push_back(parse_vector(cfg.pole));
    sc.poles_given = true;
  } else if (!cfg.poles.empty()) {
    sc.poles_given = true;
    if (cfg.poles.rfind("auto:", 0) == 0) {
      const double k = parse_number(cfg.poles.substr(5));
      if (!(k >= 1 && k == std::floor(k))) throw detail::usage("--poles auto:k needs a positive integer k");
      sc.poles.auto_count = static_cast<int>(k);
    } else {
      std::stringstream ss(cfg.poles);
      std::string item;
      while (std::getline(ss, item, ';')) sc.poles.poles.push_back(parse_vector(item));
    }
  }
  if (cfg.samples) {
    if (cfg.samples < 2) throw detail::usage("--samples must be at least 2");
    sc.samples = cfg.samples;
  }
  sc.tol = cfg.tol;
  sc.tol.ns = cfg.tol_ns;
  sc.jacobians = detail::jacobian_mode(cfg);

  const SuiteReport rep = run_suite(cfg.suite, sc);
  const std::string line = rep.to_json().dump() + "\n";
  if (!cfg.report.empty()) detail::emit(cfg.report, out, line);
  out << line;
  return rep.passed() ? kOk : kVerificationFailed;
}

inline int cmd_ns(const RunConfig& cfg, std::ostream& out) {
  const Frontal F = detail::make_frontal(cfg);
  const SampleGrid grid = detail::make_grid(cfg, F, F.param_dim() == 1 ? 4096 : 128);
  if (!cfg.pole.empty()) {
    // Membership query for one pole.
    const AmbientVec P = detail::make_pole(cfg, F);
    const NSReport r = ns_membership(F, P, grid, NSOptions{cfg.tol_ns});
    nlohmann::ordered_json j;
    j["pole"] = to_json(P.coords());
    j["member"] = r.member;
    j["margin"] = r.margin;
    j["sign_change"] = r.sign_change;
    j["argmin"] = to_json(r.argmin);
    j["tol"] = r.tol;
    detail::emit(cfg.out, out, j.dump() + "\n");
    return kOk;
  }
  if (F.ambient_dim() != 2) throw Error(ErrorCode::DimensionMismatch, "ns raster needs a plane frontal");
  BBox box;
  if (!cfg.bbox.empty()) {
    box = detail::parse_bbox(cfg.bbox);
  } else {
    // Image bounding box grown by half its size on each side.
    const SampledMap s = sample(F, grid, false);
    Vector lo = s.values.front(), hi = s.values.front();
    for (const auto& p : s.values) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const Vector pad = (0.5 * (hi - lo)).cwiseMax(0.5);
    box = {lo[0] - pad[0], hi[0] + pad[0], lo[1] - pad[1], hi[1] + pad[1]};
  }
  if (cfg.res < 2) throw detail::usage("--res must be at least 2");
  const RasterGrid r = ns_raster(F, box, cfg.res, cfg.res, grid, cfg.tol_ns);
  if (!cfg.pgm.empty()) detail::emit(cfg.pgm, out, detail::to_text([&](std::ostream& os) { write_pgm(os, r); }));
  if (!cfg.csv.empty() || cfg.pgm.empty()) {
    detail::emit(cfg.csv, out, detail::to_text([&](std::ostream& os) { write_raster_csv(os, r); }));
  }
  return kOk;
}

inline int cmd_cahn_hoffman(const RunConfig& cfg, std::ostream& out) {
  const Frontal G = detail::make_frontal(cfg);
  const AmbientVec pole = detail::make_pole(cfg, G);
  const SampleGrid grid = detail::make_grid(cfg, G, G.param_dim() == 1 ? 64 : 16);
  AnalysisOptions opt;
  opt.transform = detail::transform_options(cfg);
  opt.jnu_tol = cfg.tol.jnu;
  const bool single = !cfg.at.empty();
  std::string text;
  for (const Param& x : grid.points()) {
    nlohmann::ordered_json j;
    j["x"] = to_json(x);
    try {
      const CahnHoffmanReport r = cahn_hoffman(G, pole, x, opt);
      j["direct"] = to_json(r.direct);
      j["formula"] = to_json(r.formula);
      j["residual"] = r.residual;
      j["det_jnu"] = r.det_jnu;
      j["inverse_norm"] = r.inverse_norm;
      j["gamma"] = r.gamma;
      j["grad_gamma"] = to_json(r.grad_gamma);
    } catch (const Error& e) {
      if (single || !is_numerical(e.code())) throw;
      j["error"] = std::string(to_string(e.code()));
    }
    text += j.dump() + "\n";
  }
  detail::emit(cfg.out, out, text);
  return kOk;
}

inline int cmd_front_check(const RunConfig& cfg, std::ostream& out) {
  const Frontal F = detail::make_frontal(cfg);
  const AmbientVec pole = detail::make_pole(cfg, F);
  const SampleGrid grid = detail::make_grid(cfg, F, F.param_dim() == 1 ? 65 : 17);
  FrontOptions opt;
  opt.rank_tol = cfg.tol.rank;
  opt.transform = detail::transform_options(cfg);
  std::string text;
  for (const Param& x : grid.points()) {
    const FrontReport r = front_equivalence(F, pole, x, opt);
    nlohmann::ordered_json j;
    j["x"] = to_json(x);
    j["rank_f_nu"] = r.rank_f_nu;
    j["rank_ftilde_nutilde"] = r.rank_ftilde_nutilde;
    j["rank_f_ftilde"] = r.rank_f_ftilde;
    j["criteria"] = r.criteria;
    j["is_front"] = r.is_front;
    j["consistent"] = r.consistent;
    j["ambiguous"] = r.ambiguous;
    text += j.dump() + "\n";
  }
  detail::emit(cfg.out, out, text);
  return kOk;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.subcommand == "catalog") return cmd_catalog(cfg, out);
  if (cfg.subcommand == "transform") return cmd_transform(cfg, out);
  if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
  if (cfg.subcommand == "ns") return cmd_ns(cfg, out);
  if (cfg.subcommand == "cahn-hoffman") return cmd_cahn_hoffman(cfg, out);
  if (cfg.subcommand == "front-check") return cmd_front_check(cfg, out);
  throw detail::usage("missing subcommand");
}

inline void report_error(std::ostream& err, const std::string& code, const std::string& message,
                         const std::optional<Vector>& param = std::nullopt) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  if (param) j["param"] = to_json(*param);
  err << j.dump() << '\n';
}

/// Parses `args` (without the program name) and runs the subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Frontal transforms, no-silhouette sets and verification suites", "frontalforge"};
  app.require_subcommand(1);

  auto add_frontal = [&](CLI::App* sc) {
    sc->add_option("--catalog", cfg.catalog, "catalog frontal name");
    sc->add_option("--param", cfg.param_kv, "catalog parameter key=value (repeatable)");
    sc->add_option("--params", cfg.params_json, "catalog parameters as a JSON object");
    sc->add_option("--fd-step", cfg.fd_step, "finite-difference step");
  };
  auto add_grid = [&](CLI::App* sc) {
    sc->add_option("--samples", cfg.samples, "samples per parameter axis");
    sc->add_option("--range", cfg.ranges, "lo,hi for the next parameter axis (repeatable)");
    sc->add_flag("--half-open", cfg.half_open, "leave out the upper end of every axis");
  };
  auto add_tols = [&](CLI::App* sc) {
    sc->add_option("--tol-frontal", cfg.tol.frontal, "frontal residual tolerance");
    sc->add_option("--tol-degeneracy", cfg.tol.degeneracy, "relative silhouette threshold");
    sc->add_option("--tol-ns", cfg.tol_ns, "no-silhouette membership threshold");
    sc->add_option("--tol-rank", cfg.tol.rank, "relative rank tolerance");
    sc->add_option("--tol-jnu", cfg.tol.jnu, "singular Gauss map threshold on |det|");
    sc->add_option("--tol-identity", cfg.tol.identity, "pointwise identity tolerance");
    sc->add_option("--tol-distance", cfg.tol.distance, "equidistance tolerance");
    sc->add_option("--tol-opening", cfg.tol.opening, "opening residual tolerance");
    sc->add_option("--tol-cahn-hoffman", cfg.tol.cahn_hoffman, "Cahn-Hoffman residual tolerance");
    sc->add_option("--tol-square", cfg.tol.square, "square reconstruction tolerance");
    sc->add_option("--jacobians", cfg.jacobians, "derived Jacobians: chain or fd");
  };

  app.add_subcommand("catalog", "list catalog frontals as JSON lines");

  auto* tr = app.add_subcommand("transform", "sample a transform of a catalog frontal");
  add_frontal(tr);
  add_grid(tr);
  add_tols(tr);
  tr->add_option("--kind", cfg.kind, "orthotomic, pedal, anti-orthotomic or negative-pedal");
  tr->add_option("--pole", cfg.pole, "pole P as comma-separated coordinates");
  tr->add_option("--out", cfg.out, "CSV output (default stdout)");
  tr->add_option("--svg", cfg.svg, "SVG output (plane curves)");
  tr->add_option("--source-csv", cfg.source_csv, "CSV of the source samples");
  tr->add_flag("--with-source", cfg.with_source, "draw the source curve in the SVG");
  tr->add_option("--input", cfg.input_csv, "plot a CSV written earlier instead of transforming");

  auto* ve = app.add_subcommand("verify", "run a verification suite");
  add_frontal(ve);
  add_tols(ve);
  ve->add_option("--suite", cfg.suite, "suite name")->check(CLI::IsMember(suite_names()));
  ve->add_option("--pole", cfg.pole, "single pole");
  ve->add_option("--poles", cfg.poles, "auto:k or x,y;x,y");
  ve->add_option("--samples", cfg.samples, "sample budget per frontal");
  ve->add_option("--report", cfg.report, "also write the JSON report here");

  auto* ns = app.add_subcommand("ns", "no-silhouette raster or membership query");
  add_frontal(ns);
  add_grid(ns);
  ns->add_option("--tol-ns", cfg.tol_ns, "membership threshold");
  ns->add_option("--pole", cfg.pole, "query a single pole instead of rasterizing");
  ns->add_option("--bbox", cfg.bbox, "xmin,xmax,ymin,ymax");
  ns->add_option("--res", cfg.res, "raster cells per side");
  ns->add_option("--pgm", cfg.pgm, "PGM output");
  ns->add_option("--csv", cfg.csv, "CSV output (default stdout when no PGM)");
  ns->add_option("--out", cfg.out, "output for a membership query");

  auto* ch = app.add_subcommand("cahn-hoffman", "Cahn-Hoffman formula against the negative pedal");
  add_frontal(ch);
  add_grid(ch);
  add_tols(ch);
  ch->add_option("--pole", cfg.pole, "pole P");
  ch->add_option("--at", cfg.at, "single parameter point");
  ch->add_option("--out", cfg.out, "JSON lines output (default stdout)");

  auto* fc = app.add_subcommand("front-check", "front criteria of the anti-orthotomic pair");
  add_frontal(fc);
  add_grid(fc);
  add_tols(fc);
  fc->add_option("--pole", cfg.pole, "pole P");
  fc->add_option("--at", cfg.at, "single parameter point");
  fc->add_option("--out", cfg.out, "JSON lines output (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    return dispatch(cfg, out);
  } catch (const Error& e) {
    report_error(err, std::string(to_string(e.code())), e.what(), e.param());
    return is_numerical(e.code()) ? kNumerical : kUsage;
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return kUsage;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace frontalforge::cli
