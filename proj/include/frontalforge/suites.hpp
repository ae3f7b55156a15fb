#pragma once

// Verification suites. Each suite evaluates named checks per frontal and
// pole over a parameter grid and reports the worst value against its
// tolerance; a check passes when value <= tol.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "frontal.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "silhouette.hpp"
#include "transforms.hpp"

namespace frontalforge {

struct Tolerances {
  double frontal = 1e-6;       // |Jf^T nu|
  double degeneracy = 1e-9;    // silhouette guard, relative to |f - P|
  std::optional<double> ns;    // membership threshold (default: scale based)
  double rank = 1e-6;          // relative singular-value cutoff
  double jnu = 1e-8;           // |det J nut| singular threshold
  double identity = 1e-8;      // pointwise identities and round trips
  double distance = 1e-9;      // |ft - P| = |ft - f|
  double opening = 1e-6;       // opening residual / (1 + gamma)
  double cahn_hoffman = 1e-5;  // formula residual / (1 + |direct|)
  double square = 1e-6;        // square reconstruction geometry
};

struct PoleSpec {
  std::vector<Vector> poles;  // explicit poles win when non-empty
  int auto_count = 5;
};

struct SuiteConfig {
  std::vector<Frontal> frontals;  // empty: the suite's default catalog set
  PoleSpec poles;
  bool poles_given = false;
  std::optional<int> samples;  // point budget per frontal
  Tolerances tol;
  JacobianMode jacobians = JacobianMode::ChainRule;
};

struct CheckResult {
  std::string name;
  std::string frontal;
  std::optional<Vector> pole;
  double value = 0.0;
  double tol = 0.0;
  std::size_t points = 0;
  bool passed = true;
  nlohmann::ordered_json extra;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  /// Worst value of a named check over all rows; NaN when absent.
  double max_value(std::string_view name) const {
    double best = NAN;
    for (const auto& c : checks) {
      if (c.name != name) continue;
      if (std::isnan(best) || !(c.value <= best)) best = c.value;
    }
    return best;
  }

  void add(std::string name, const Frontal& F, const std::optional<AmbientVec>& pole, double value, double tol,
           std::size_t points, nlohmann::ordered_json extra = nullptr) {
    CheckResult c;
    c.name = std::move(name);
    c.frontal = F.name();
    if (pole) c.pole = pole->coords();
    c.value = value;
    c.tol = tol;
    c.points = points;
    c.passed = value <= tol;
    c.extra = std::move(extra);
    checks.push_back(std::move(c));
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["passed"] = passed();
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& c : checks) {
      if (!summary.contains(c.name)) {
        summary[c.name] = {{"max", max_value(c.name)}, {"tol", c.tol}, {"passed", true}};
      }
      if (!c.passed) summary[c.name]["passed"] = false;
    }
    j["summary"] = summary;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json r;
      r["check"] = c.name;
      r["frontal"] = c.frontal;
      r["pole"] = c.pole ? frontalforge::to_json(*c.pole) : nlohmann::ordered_json(nullptr);
      r["value"] = c.value;
      r["tol"] = c.tol;
      r["points"] = c.points;
      r["passed"] = c.passed;
      if (!c.extra.is_null()) r["extra"] = c.extra;
      rows.push_back(std::move(r));
    }
    j["checks"] = rows;
    return j;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"frontal-condition", "thm1", "prop1", "thm2",
                                                 "thm3", "thm4", "square-reconstruction"};
  return names;
}

namespace detail {

/// Grid with about `budget` points: budget^(1/n) per axis. With `odd`,
/// non-periodic axes get an odd count so symmetric domains include their
/// midpoint.
inline SampleGrid suite_grid(const ParamDomain& domain, int budget, bool odd = false) {
  if (budget < 2) throw Error(ErrorCode::InvalidArgument, "sample count must be at least 2");
  const int n = domain.dim();
  const int per = std::max(2, static_cast<int>(std::ceil(std::pow(static_cast<double>(budget), 1.0 / n) - 1e-9)));
  std::vector<AxisSampling> axes;
  for (const auto& a : domain.axes()) {
    if (a.periodic) {
      axes.push_back({a.lo, a.hi, per, false});
    } else {
      axes.push_back({a.lo, a.hi, odd ? (per | 1) : per, true});
    }
  }
  return SampleGrid::from_axes(axes);
}

inline std::vector<AmbientVec> suite_poles(const Frontal& F, const SampleGrid& grid, const PoleSpec& spec) {
  if (spec.poles.empty()) return sample_poles(F, grid, spec.auto_count);
  std::vector<AmbientVec> out;
  for (const auto& p : spec.poles) {
    if (p.size() != F.ambient_dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "pole dimension " + std::to_string(p.size()) + " does not match frontal '" + F.name() + "'");
    }
    out.emplace_back(p);
  }
  return out;
}

inline double worst(const std::vector<double>& v) {
  double best = 0.0;
  for (double x : v) {
    if (!(x <= best)) best = x;
  }
  return best;
}

inline std::vector<Frontal> frontals_or(const SuiteConfig& cfg, const std::vector<std::string>& names) {
  if (!cfg.frontals.empty()) return cfg.frontals;
  std::vector<Frontal> out;
  for (const auto& n : names) out.push_back(catalog(n));
  return out;
}

inline TransformOptions transform_options(const SuiteConfig& cfg) {
  return {cfg.tol.degeneracy, cfg.jacobians};
}

}  // namespace detail

/// check_frontal plus unit length of nu.
inline SuiteReport suite_frontal_condition(const SuiteConfig& cfg) {
  SuiteReport rep{"frontal-condition", {}};
  for (const Frontal& F : detail::frontals_or(cfg, catalog_names())) {
    const SampleGrid grid = detail::suite_grid(F.domain(), cfg.samples.value_or(2048));
    const FrontalCheck fc = check_frontal(F, grid, cfg.tol.frontal);
    rep.add("frontal residual", F, std::nullopt, fc.max_residual, cfg.tol.frontal, grid.size());
    std::vector<double> unit(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { unit[i] = std::abs(F.nu(grid[i]).norm() - 1.0); });
    rep.add("unit normal", F, std::nullopt, detail::worst(unit), 1e-9, grid.size());
  }
  return rep;
}

/// Anti-orthotomic properties: induced Gauss map, distance identities and
/// round trips with the orthotomic.
inline SuiteReport suite_thm1(const SuiteConfig& cfg) {
  SuiteReport rep{"thm1", {}};
  const TransformOptions topt = detail::transform_options(cfg);
  for (const Frontal& F : detail::frontals_or(cfg, catalog_names())) {
    const SampleGrid grid = detail::suite_grid(F.domain(), cfg.samples.value_or(1024));
    for (const AmbientVec& pole : detail::suite_poles(F, grid, cfg.poles)) {
      const Vector& P = pole.coords();
      const TransformResult ao = anti_orthotomic(F, pole, topt);
      const Frontal& A = ao.result;
      const TransformResult back = orthotomic(A, pole, topt);
      const TransformResult fwd = orthotomic(F, pole, topt);
      const TransformResult fwd_back = anti_orthotomic(fwd.result, pole, topt);

      const std::size_t N = grid.size();
      std::vector<double> ortho(N), half(N), dist(N), rt1(N), rt2(N);
      parallel_for(N, [&](std::size_t i) {
        const Param& x = grid[i];
        const Vector f = F.f(x);
        const Vector ft = A.f(x), nut = A.nu(x);
        ortho[i] = (A.jacobian_f(x).transpose() * nut).cwiseAbs().maxCoeff();
        half[i] = std::abs((ft - P).dot(nut) - 0.5 * (f - P).norm());
        dist[i] = std::abs((ft - P).norm() - (ft - f).norm());
        rt1[i] = (back.result.f(x) - f).norm();
        rt2[i] = (fwd_back.result.f(x) - f).norm();
      });
      rep.add("T1-1 orthogonality", F, pole, detail::worst(ortho), cfg.tol.frontal, N);
      rep.add("T1-3 half distance", F, pole, detail::worst(half), cfg.tol.identity, N);
      rep.add("T1-4 equidistance", F, pole, detail::worst(dist), cfg.tol.distance, N);
      rep.add("T1-2 orthotomic of anti-orthotomic", F, pole, detail::worst(rt1), cfg.tol.identity, N);
      rep.add("T1-2 anti-orthotomic of orthotomic", F, pole, detail::worst(rt2), cfg.tol.identity, N);
      const NSReport ns = ns_membership(A, pole, grid, NSOptions{cfg.tol.ns});
      rep.add("T1-3 pole in NS of anti-orthotomic", F, pole, ns.member ? 0.0 : 1.0, 0.0, N,
              {{"margin", ns.margin}});
    }
  }
  return rep;
}

/// Orthotomic identity |f - ft| ((f - P).nu) = 2((ft - P).nut)^2, f != ft
/// off the silhouette, frontality of orthotomic and pedal, pedal midpoint.
inline SuiteReport suite_prop1(const SuiteConfig& cfg) {
  SuiteReport rep{"prop1", {}};
  const TransformOptions topt = detail::transform_options(cfg);
  for (const Frontal& F : detail::frontals_or(cfg, catalog_names())) {
    const SampleGrid grid = detail::suite_grid(F.domain(), cfg.samples.value_or(1024));
    for (const AmbientVec& pole : detail::suite_poles(F, grid, cfg.poles)) {
      const Vector& P = pole.coords();
      const TransformResult O = orthotomic(F, pole, topt);
      const TransformResult G = pedal(F, pole, topt);
      const std::size_t N = grid.size();
      std::vector<double> ident(N), coincide(N, 0.0), pedal_mid(N);
      parallel_for(N, [&](std::size_t i) {
        const Param& x = grid[i];
        const Vector ft = F.f(x), nut = F.nu(x);
        const Vector f = O.result.f(x), nu = O.result.nu(x);
        const double h = (ft - P).dot(nut);
        ident[i] = std::abs((f - ft).norm() * (f - P).dot(nu) - 2.0 * h * h);
        if (std::abs(h) > 1e-3 && (f - ft).norm() == 0.0) coincide[i] = 1.0;
        pedal_mid[i] = (G.result.f(x) - 0.5 * (f + P)).norm();
      });
      double coincident = 0.0;
      for (double c : coincide) coincident += c;
      rep.add("P1 identity", F, pole, detail::worst(ident), cfg.tol.identity, N);
      rep.add("L1 image differs from source", F, pole, coincident, 0.0, N);
      rep.add("P1 orthotomic frontal", F, pole, check_frontal(O.result, grid).max_residual, cfg.tol.frontal, N);
      rep.add("C1 pedal frontal", F, pole, check_frontal(G.result, grid).max_residual, cfg.tol.frontal, N);
      rep.add("pedal midpoint", F, pole, detail::worst(pedal_mid), 1e-12, N);
    }
  }
  return rep;
}

/// Cahn-Hoffman formula for the negative pedal against the direct
/// construction, at points where the Gauss map is well conditioned.
inline SuiteReport suite_thm2(const SuiteConfig& cfg) {
  SuiteReport rep{"thm2", {}};
  AnalysisOptions aopt;
  aopt.transform = detail::transform_options(cfg);
  aopt.jnu_tol = cfg.tol.jnu;
  for (const Frontal& G : detail::frontals_or(cfg, {"sphere", "circle"})) {
    const SampleGrid grid = detail::suite_grid(G.domain(), cfg.samples.value_or(1024));
    std::vector<AmbientVec> poles;
    if (!cfg.poles_given && G.name() == "sphere") {
      poles.emplace_back(make_vector({0.0, 0.0, 0.3}));
    } else if (!cfg.poles_given && G.name() == "circle") {
      poles.emplace_back(make_vector({0.5, 0.0}));
    } else {
      poles = detail::suite_poles(G, grid, cfg.poles);
    }
    for (const AmbientVec& pole : poles) {
      const std::size_t N = grid.size();
      std::vector<double> resid(N, 0.0), perp(N, 0.0), grad_to_direct(N, 0.0), direct_to_grad(N, 0.0),
          routes(N, 0.0);
      std::vector<char> used(N, 0);
      parallel_for(N, [&](std::size_t i) {
        const Param& x = grid[i];
        CahnHoffmanReport r;
        try {
          r = cahn_hoffman(G, pole, x, aopt);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::SingularGaussMap) return;
          throw;
        }
        if (!(std::abs(r.det_jnu) > 1e-3 && r.inverse_norm <= 1e3)) return;
        used[i] = 1;
        const double dn = r.direct.norm(), gn = r.grad_gamma.norm();
        resid[i] = r.residual / (1.0 + dn);
        perp[i] = std::abs(r.formula.dot(r.nut));
        if (gn <= 1e-7) grad_to_direct[i] = dn;
        if (dn <= 1e-7) direct_to_grad[i] = gn;
        const GammaGradient fd = gamma_gradient(G, pole, x, GradientRoute::FiniteDifference);
        routes[i] = (fd.grad - r.grad_gamma).cwiseAbs().maxCoeff();
      });
      std::size_t count = 0;
      for (char u : used) count += static_cast<std::size_t>(u);
      rep.add("T2 formula residual", G, pole, detail::worst(resid), cfg.tol.cahn_hoffman, count,
              {{"grid_points", N}});
      rep.add("T2 formula tangent to nut", G, pole, detail::worst(perp), 1e-9, count);
      rep.add("T2 zero gradient gives zero vector", G, pole, detail::worst(grad_to_direct), 1e-4, count);
      rep.add("T2 zero vector gives zero gradient", G, pole, detail::worst(direct_to_grad), 1e-4, count);
      rep.add("gamma gradient routes agree", G, pole, detail::worst(routes), 1e-7, count);
    }
  }
  return rep;
}

/// Opening identity for the Gauss map of the anti-orthotomic.
inline SuiteReport suite_thm3(const SuiteConfig& cfg) {
  SuiteReport rep{"thm3", {}};
  AnalysisOptions aopt;
  aopt.transform = detail::transform_options(cfg);
  aopt.jnu_tol = cfg.tol.jnu;
  for (const Frontal& F : detail::frontals_or(cfg, catalog_names())) {
    const SampleGrid grid = detail::suite_grid(F.domain(), cfg.samples.value_or(1024), true);
    for (const AmbientVec& pole : detail::suite_poles(F, grid, cfg.poles)) {
      const Vector& P = pole.coords();
      const std::size_t N = grid.size();
      std::vector<double> resid(N, 0.0);
      std::vector<char> used(N, 0);
      parallel_for(N, [&](std::size_t i) {
        const Param& x = grid[i];
        const Vector d = F.f(x) - P;
        if (std::abs(F.nu(x).dot(d / d.norm())) <= 1e-3) return;
        used[i] = 1;
        resid[i] = opening_residual(F, pole, x, aopt) / (1.0 + 0.5 * d.norm());
      });
      std::size_t count = 0;
      for (char u : used) count += static_cast<std::size_t>(u);
      rep.add("T3 opening residual", F, pole, detail::worst(resid), cfg.tol.opening, count,
              {{"grid_points", N}});
    }
  }
  return rep;
}

/// Agreement of the three front criteria outside the rank-ambiguous band.
inline SuiteReport suite_thm4(const SuiteConfig& cfg) {
  SuiteReport rep{"thm4", {}};
  FrontOptions fopt;
  fopt.rank_tol = cfg.tol.rank;
  fopt.transform = detail::transform_options(cfg);
  for (const Frontal& F : detail::frontals_or(cfg, {"cusp", "nonfront", "circle", "square"})) {
    const SampleGrid grid = detail::suite_grid(F.domain(), cfg.samples.value_or(1024), true);
    for (const AmbientVec& pole : detail::suite_poles(F, grid, cfg.poles)) {
      const std::size_t N = grid.size();
      std::vector<FrontReport> reports(N);
      parallel_for(N, [&](std::size_t i) { reports[i] = front_equivalence(F, pole, grid[i], fopt); });
      double inconsistent = 0.0;
      std::size_t ambiguous = 0, decided = 0;
      nlohmann::ordered_json non_front = nlohmann::ordered_json::array();
      for (const auto& r : reports) {
        if (r.ambiguous) {
          ++ambiguous;
          continue;
        }
        ++decided;
        if (!r.consistent) inconsistent += 1.0;
        if (!r.is_front) non_front.push_back(to_json(r.x));
      }
      rep.add("T4 criteria agree", F, pole, inconsistent, 0.0, decided,
              {{"ambiguous", ambiguous}, {"non_front", non_front}});
    }
  }
  return rep;
}

/// Orthotomic of the square frontal: mirror points on the edge intervals,
/// circular arcs about the corners on the P-avoiding side of their chords,
/// and the pedal as the midpoint of P and the orthotomic.
inline SuiteReport suite_square_reconstruction(const SuiteConfig& cfg) {
  SuiteReport rep{"square-reconstruction", {}};
  const Frontal F = cfg.frontals.empty() ? catalog("square") : cfg.frontals.front();
  if (F.name() != "square") {
    throw Error(ErrorCode::InvalidArgument, "square-reconstruction runs on the square catalog frontal only");
  }
  const Vector P = cfg.poles.poles.empty() ? make_vector({0.3, -0.2}) : cfg.poles.poles.front();
  if (P.size() != 2) throw Error(ErrorCode::DimensionMismatch, "square-reconstruction: pole must be planar");
  if (!(std::abs(P[0]) < 1.0 && std::abs(P[1]) < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "square-reconstruction: pole must lie in the open square (-1,1)^2");
  }
  const AmbientVec pole(P);
  const TransformOptions topt = detail::transform_options(cfg);
  const TransformResult O = orthotomic(F, pole, topt);
  const TransformResult G = pedal(F, pole, topt);
  const SampleGrid grid = SampleGrid::from_axes({{0.0, 8.0, cfg.samples.value_or(4096), false}});

  // Edge interval k (odd) mirrors P in the side line; corner interval k
  // (even) stays on the circle about the corner through P.
  const Vector mirrors[4] = {make_vector({2.0 - P[0], P[1]}), make_vector({P[0], 2.0 - P[1]}),
                             make_vector({-2.0 - P[0], P[1]}), make_vector({P[0], -2.0 - P[1]})};
  const Vector corners[4] = {make_vector({1.0, -1.0}), make_vector({1.0, 1.0}), make_vector({-1.0, 1.0}),
                             make_vector({-1.0, -1.0})};

  double mirror_err[4] = {0, 0, 0, 0}, radius_err[4] = {0, 0, 0, 0}, side_err[4] = {0, 0, 0, 0};
  std::size_t mirror_n[4] = {0, 0, 0, 0}, arc_n[4] = {0, 0, 0, 0};
  double pedal_err = 0.0;
  for (const Param& x : grid.points()) {
    const double t = x[0];
    const Vector o = O.result.f(x);
    pedal_err = std::max(pedal_err, (G.result.f(x) - 0.5 * (o + P)).norm());
    for (int j = 0; j < 4; ++j) {
      const double e0 = 2.0 * j + 1.0;
      if (t >= e0 && t <= e0 + 1.0) {
        mirror_err[j] = std::max(mirror_err[j], (o - mirrors[j]).norm());
        ++mirror_n[j];
      }
      const double c0 = 2.0 * j;
      if (t >= c0 && t <= c0 + 1.0) {
        const Vector& c = corners[j];
        radius_err[j] = std::max(radius_err[j], std::abs((o - c).norm() - (P - c).norm()));
        const Vector& a = mirrors[(j + 3) % 4];
        const Vector& b = mirrors[j];
        const Vector chord = b - a;
        auto side = [&](const Vector& q) { return chord[0] * (q[1] - a[1]) - chord[1] * (q[0] - a[0]); };
        const double sp = side(P) > 0.0 ? 1.0 : -1.0;
        side_err[j] = std::max(side_err[j], sp * side(o) / chord.norm());
        ++arc_n[j];
      }
    }
  }
  static const char* edge_names[4] = {"right", "top", "left", "bottom"};
  static const char* corner_names[4] = {"(1,-1)", "(1,1)", "(-1,1)", "(-1,-1)"};
  for (int j = 0; j < 4; ++j) {
    rep.add(std::string("mirror point ") + edge_names[j], F, pole, mirror_err[j], cfg.tol.square, mirror_n[j],
            {{"expected", to_json(mirrors[j])}});
  }
  for (int j = 0; j < 4; ++j) {
    rep.add(std::string("arc radius ") + corner_names[j], F, pole, radius_err[j], cfg.tol.square, arc_n[j],
            {{"center", to_json(corners[j])}, {"radius", (P - corners[j]).norm()}});
  }
  for (int j = 0; j < 4; ++j) {
    rep.add(std::string("arc side ") + corner_names[j], F, pole, side_err[j], cfg.tol.square, arc_n[j]);
  }
  rep.add("pedal midpoint", F, pole, pedal_err, 1e-10, grid.size());
  const NSReport ns = ns_membership(F, pole, grid, NSOptions{cfg.tol.ns});
  rep.add("pole in NS", F, pole, ns.member ? 0.0 : 1.0, 0.0, grid.size(), {{"margin", ns.margin}});
  return rep;
}

inline SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg) {
  if (name == "frontal-condition") return suite_frontal_condition(cfg);
  if (name == "thm1") return suite_thm1(cfg);
  if (name == "prop1") return suite_prop1(cfg);
  if (name == "thm2") return suite_thm2(cfg);
  if (name == "thm3") return suite_thm3(cfg);
  if (name == "thm4") return suite_thm4(cfg);
  if (name == "square-reconstruction") return suite_square_reconstruction(cfg);
  throw Error(ErrorCode::UnknownName, "unknown suite '" + std::string(name) + "'");
}

}  // namespace frontalforge
