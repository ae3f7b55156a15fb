#pragma once

// Analytic test frontals.

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "frontal.hpp"

namespace frontalforge {

using CatalogParams = std::map<std::string, double>;

struct CatalogEntry {
  std::string name;
  std::string description;
  CatalogParams defaults;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"circle", "f(t) = R (cos t, sin t), nu(t) = (cos t, sin t), t in [0, 2pi) periodic", {{"R", 1.0}}},
      {"circle-cubic", "f(t) = nu(t) = (cos t^3, sin t^3), t in [-c, c]; singular at t = 0", {{"c", 1.5}}},
      {"square", "period-8 frontal whose image is the square with vertices (+-1, +-1)", {}},
      {"cusp", "f(t) = (t^2, t^3), nu(t) = (3t, -2)/sqrt(9t^2 + 4), t in [-1, 1]; a front with a cusp", {}},
      {"nonfront", "f(t) = (t^3, t^6), nu(t) = (-2t^3, 1)/sqrt(4t^6 + 1), t in [-1, 1]; not a front at 0", {}},
      {"sphere", "f = nu = unit sphere over (azimuth, polar), polar in [m, pi - m]", {{"polar_margin", 0.2}}},
      {"constant", "f(t) = (0, -1), nu(t) = (-1, 0), t in [-1, 1]", {}},
  };
  return entries;
}

namespace detail {

inline Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

inline Matrix col2(double a, double b) {
  Matrix m(2, 1);
  m << a, b;
  return m;
}

inline CatalogParams resolve_params(const CatalogEntry& entry, const CatalogParams& given) {
  CatalogParams out = entry.defaults;
  for (const auto& [key, value] : given) {
    if (!entry.defaults.count(key)) {
      throw Error(ErrorCode::InvalidArgument, "catalog '" + entry.name + "': unknown parameter '" + key + "'");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::InvalidArgument, "catalog '" + entry.name + "': parameter '" + key + "' not finite");
    }
    out[key] = value;
  }
  return out;
}

// C-infinity step, 0 for u <= 0 and 1 for u >= 1, flat at both ends.
inline double step_sigma(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
inline double step_sigma_d(double u) { return u > 0.0 ? std::exp(-1.0 / u) / (u * u) : 0.0; }

inline double smooth_step(double u) {
  const double a = step_sigma(u);
  const double b = step_sigma(1.0 - u);
  return a / (a + b);
}

inline double smooth_step_d(double u) {
  const double a = step_sigma(u);
  const double b = step_sigma(1.0 - u);
  const double da = step_sigma_d(u);
  const double db = step_sigma_d(1.0 - u);
  const double s = a + b;
  return (da * b + a * db) / (s * s);
}

// Piecewise data of the square frontal on one unit interval [k, k + 1] of
// the period [0, 8): image (x, y) and unnormalized normal (n1, n2), each as
// alpha + beta * s(u) with u = t - k.
struct SquarePiece {
  double x0, x1, y0, y1, n10, n11, n20, n21;
};

inline const SquarePiece& square_piece(int k) {
  // Vertex intervals (even k) hold the image at a corner while the normal
  // turns by a quarter; edge intervals (odd k) slide along a side with a
  // fixed normal.
  static const SquarePiece pieces[8] = {
      {1, 0, -1, 0, 0, 1, -1, 1},   // [0,1] corner (1,-1), n: (0,-1) -> (1,0)
      {1, 0, -1, 2, 1, 0, 0, 0},    // [1,2] right side, n = (1,0)
      {1, 0, 1, 0, 1, -1, 0, 1},    // [2,3] corner (1,1), n: (1,0) -> (0,1)
      {1, -2, 1, 0, 0, 0, 1, 0},    // [3,4] top side, n = (0,1)
      {-1, 0, 1, 0, 0, -1, 1, -1},  // [4,5] corner (-1,1), n: (0,1) -> (-1,0)
      {-1, 0, 1, -2, -1, 0, 0, 0},  // [5,6] left side, n = (-1,0)
      {-1, 0, -1, 0, -1, 1, 0, -1}, // [6,7] corner (-1,-1), n: (-1,0) -> (0,-1)
      {-1, 2, -1, 0, 0, 0, -1, 0},  // [7,8] bottom side, n = (0,-1)
  };
  return pieces[k];
}

inline void square_locate(double t, int& k, double& u) {
  double w = std::fmod(t, 8.0);
  if (w < 0.0) w += 8.0;
  if (w >= 8.0) w = 0.0;
  k = std::min(7, static_cast<int>(std::floor(w)));
  u = w - k;
}

inline Vector square_f(double t) {
  int k;
  double u;
  square_locate(t, k, u);
  const auto& p = square_piece(k);
  const double s = smooth_step(u);
  return v2(p.x0 + p.x1 * s, p.y0 + p.y1 * s);
}

inline Vector square_normal(double t) {
  int k;
  double u;
  square_locate(t, k, u);
  const auto& p = square_piece(k);
  const double s = smooth_step(u);
  return v2(p.n10 + p.n11 * s, p.n20 + p.n21 * s);
}

inline Matrix square_jac_f(double t) {
  int k;
  double u;
  square_locate(t, k, u);
  const auto& p = square_piece(k);
  const double ds = smooth_step_d(u);
  return col2(p.x1 * ds, p.y1 * ds);
}

inline Matrix square_jac_nu(double t) {
  int k;
  double u;
  square_locate(t, k, u);
  const auto& p = square_piece(k);
  const double s = smooth_step(u);
  const double ds = smooth_step_d(u);
  const Vector n = v2(p.n10 + p.n11 * s, p.n20 + p.n21 * s);
  const Vector dn = v2(p.n11 * ds, p.n21 * ds);
  const double r = n.norm();
  const Vector nu = n / r;
  const Vector d = (dn - nu * nu.dot(dn)) / r;
  return col2(d[0], d[1]);
}

}  // namespace detail

/// The example frontals by name; `params` overrides the entry's defaults.
inline Frontal catalog(const std::string& name, const CatalogParams& params = {}) {
  using detail::col2;
  using detail::v2;
  constexpr double pi = std::numbers::pi;
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog_entries()) {
    if (e.name == name) entry = &e;
  }
  if (!entry) throw Error(ErrorCode::UnknownName, "unknown catalog frontal '" + name + "'");
  const CatalogParams p = detail::resolve_params(*entry, params);

  if (name == "circle") {
    const double R = p.at("R");
    if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "circle: R must be positive");
    return Frontal(
        name, ParamDomain({{0.0, 2.0 * pi, true}}), 2,
        [R](const Param& x) { return v2(R * std::cos(x[0]), R * std::sin(x[0])); },
        [](const Param& x) { return v2(std::cos(x[0]), std::sin(x[0])); },
        [R](const Param& x) { return col2(-R * std::sin(x[0]), R * std::cos(x[0])); },
        [](const Param& x) { return col2(-std::sin(x[0]), std::cos(x[0])); });
  }
  if (name == "circle-cubic") {
    const double c = p.at("c");
    if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "circle-cubic: c must be positive");
    auto g = [](const Param& x) {
      const double a = x[0] * x[0] * x[0];
      return v2(std::cos(a), std::sin(a));
    };
    auto dg = [](const Param& x) {
      const double a = x[0] * x[0] * x[0];
      const double da = 3.0 * x[0] * x[0];
      return col2(-da * std::sin(a), da * std::cos(a));
    };
    return Frontal(name, ParamDomain({{-c, c, false}}), 2, g, g, dg, dg);
  }
  if (name == "square") {
    return Frontal(
        name, ParamDomain({{0.0, 8.0, true}}), 2, [](const Param& x) { return detail::square_f(x[0]); },
        [](const Param& x) {
          const Vector n = detail::square_normal(x[0]);
          return Vector(n / n.norm());
        },
        [](const Param& x) { return detail::square_jac_f(x[0]); },
        [](const Param& x) { return detail::square_jac_nu(x[0]); });
  }
  if (name == "cusp") {
    return Frontal(
        name, ParamDomain({{-1.0, 1.0, false}}), 2,
        [](const Param& x) { return v2(x[0] * x[0], x[0] * x[0] * x[0]); },
        [](const Param& x) {
          const double r = std::sqrt(9.0 * x[0] * x[0] + 4.0);
          return v2(3.0 * x[0] / r, -2.0 / r);
        },
        [](const Param& x) { return col2(2.0 * x[0], 3.0 * x[0] * x[0]); },
        [](const Param& x) {
          const double r = std::sqrt(9.0 * x[0] * x[0] + 4.0);
          const double r3 = r * r * r;
          return col2(12.0 / r3, 18.0 * x[0] / r3);
        });
  }
  if (name == "nonfront") {
    return Frontal(
        name, ParamDomain({{-1.0, 1.0, false}}), 2,
        [](const Param& x) {
          const double t3 = x[0] * x[0] * x[0];
          return v2(t3, t3 * t3);
        },
        [](const Param& x) {
          const double t3 = x[0] * x[0] * x[0];
          const double r = std::sqrt(4.0 * t3 * t3 + 1.0);
          return v2(-2.0 * t3 / r, 1.0 / r);
        },
        [](const Param& x) {
          const double t = x[0];
          return col2(3.0 * t * t, 6.0 * t * t * t * t * t);
        },
        [](const Param& x) {
          const double t = x[0];
          const double t3 = t * t * t;
          const double r = std::sqrt(4.0 * t3 * t3 + 1.0);
          const double r3 = r * r * r;
          return col2(-6.0 * t * t / r3, -12.0 * t3 * t * t / r3);
        });
  }
  if (name == "sphere") {
    const double m = p.at("polar_margin");
    if (!(m > 0.0 && m < pi / 2.0)) {
      throw Error(ErrorCode::InvalidArgument, "sphere: polar_margin must lie in (0, pi/2)");
    }
    auto s = [](const Param& x) {
      Vector v(3);
      v << std::sin(x[1]) * std::cos(x[0]), std::sin(x[1]) * std::sin(x[0]), std::cos(x[1]);
      return v;
    };
    auto ds = [](const Param& x) {
      Matrix j(3, 2);
      const double ca = std::cos(x[0]), sa = std::sin(x[0]);
      const double cp = std::cos(x[1]), sp = std::sin(x[1]);
      j << -sp * sa, cp * ca,  //
          sp * ca, cp * sa,    //
          0.0, -sp;
      return j;
    };
    return Frontal(name, ParamDomain({{0.0, 2.0 * pi, true}, {m, pi - m, false}}), 3, s, s, ds, ds);
  }
  // constant
  return Frontal(
      name, ParamDomain({{-1.0, 1.0, false}}), 2, [](const Param&) { return v2(0.0, -1.0); },
      [](const Param&) { return v2(-1.0, 0.0); }, [](const Param&) { return col2(0.0, 0.0); },
      [](const Param&) { return col2(0.0, 0.0); });
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog_entries()) names.push_back(e.name);
  return names;
}

}  // namespace frontalforge
