#pragma once

// Text formats: CSV samples, SVG polylines, PGM/CSV rasters and small
// parsers for command-line values. Output is byte-deterministic: numbers use
// the shortest round-trip decimal form, rows keep sample order, lines end in
// '\n'.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "errors.hpp"
#include "frontal.hpp"
#include "linalg.hpp"
#include "silhouette.hpp"

namespace frontalforge {

/// Shortest decimal string that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

/// "x,y,..." -> vector.
inline Vector parse_vector(std::string_view s) {
  std::vector<double> vals;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    vals.push_back(parse_number(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  Vector v(static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Index>(i)] = vals[i];
  return v;
}

/// Catalog parameters from a JSON object of numbers, e.g. {"R": 2.0}.
inline CatalogParams parse_catalog_params(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("catalog parameters: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "catalog parameters must be a JSON object");
  CatalogParams out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number()) {
      throw Error(ErrorCode::InvalidArgument, "catalog parameter '" + it.key() + "' must be a number");
    }
    out[it.key()] = it.value().get<double>();
  }
  return out;
}

/// "key=value" -> (key, value).
inline std::pair<std::string, double> parse_key_value(std::string_view s) {
  const std::size_t eq = s.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error(ErrorCode::InvalidArgument, "expected key=value, got '" + std::string(s) + "'");
  }
  return {std::string(s.substr(0, eq)), parse_number(s.substr(eq + 1))};
}

inline std::string json_vector(const Vector& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out + "]";
}

inline nlohmann::ordered_json to_json(const Vector& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// ---------------------------------------------------------------------------
// CSV: header t1..tn,f1..fm,nu1..num; nu columns only when sampled.

inline void write_csv(std::ostream& os, const SampledMap& s) {
  if (s.size() == 0) throw Error(ErrorCode::EmptyGrid, "write_csv: nothing to write");
  const Index n = s.params.front().size();
  const Index m = s.values.front().size();
  std::string line;
  for (Index i = 0; i < n; ++i) line += (i ? ",t" : "t") + std::to_string(i + 1);
  for (Index i = 0; i < m; ++i) line += ",f" + std::to_string(i + 1);
  if (s.has_gauss()) {
    for (Index i = 0; i < m; ++i) line += ",nu" + std::to_string(i + 1);
  }
  os << line << '\n';
  for (std::size_t k = 0; k < s.size(); ++k) {
    line.clear();
    for (Index i = 0; i < n; ++i) {
      if (i) line += ',';
      line += format_number(s.params[k][i]);
    }
    for (Index i = 0; i < m; ++i) line += ',' + format_number(s.values[k][i]);
    if (s.has_gauss()) {
      for (Index i = 0; i < m; ++i) line += ',' + format_number(s.gauss[k][i]);
    }
    os << line << '\n';
  }
}

/// Reads a CSV written by write_csv. Column counts come from the header.
inline SampledMap read_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorCode::InvalidArgument, "read_csv: empty input");
  Index n = 0, m = 0, g = 0;
  {
    std::stringstream hs(header);
    std::string col;
    while (std::getline(hs, col, ',')) {
      if (col.rfind("nu", 0) == 0) ++g;
      else if (col.rfind("t", 0) == 0) ++n;
      else if (col.rfind("f", 0) == 0) ++m;
      else throw Error(ErrorCode::InvalidArgument, "read_csv: unexpected column '" + col + "'");
    }
  }
  if (n == 0 || m == 0 || (g != 0 && g != m)) throw Error(ErrorCode::InvalidArgument, "read_csv: bad header");
  SampledMap s;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const Vector row = parse_vector(line);
    if (row.size() != n + m + g) throw Error(ErrorCode::InvalidArgument, "read_csv: wrong column count");
    s.params.push_back(row.segment(0, n));
    s.values.push_back(row.segment(n, m));
    if (g) s.gauss.push_back(row.segment(n + m, g));
  }
  return s;
}

// ---------------------------------------------------------------------------
// SVG

/// Splits a sampled plane curve into connected arcs: a new arc starts where
/// the step to the next sample exceeds 10x the median non-zero step.
/// Returns index ranges [begin, end).
inline std::vector<std::pair<std::size_t, std::size_t>> split_arcs(const std::vector<Vector>& pts) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  if (pts.empty()) return arcs;
  std::vector<double> steps;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) steps.push_back((pts[i + 1] - pts[i]).norm());
  std::vector<double> nonzero;
  for (double d : steps) {
    if (d > 0.0) nonzero.push_back(d);
  }
  double median = 0.0;
  if (!nonzero.empty()) {
    std::sort(nonzero.begin(), nonzero.end());
    median = nonzero[nonzero.size() / 2];
  }
  std::size_t begin = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (median > 0.0 && steps[i] > 10.0 * median) {
      arcs.emplace_back(begin, i + 1);
      begin = i + 1;
    }
  }
  arcs.emplace_back(begin, pts.size());
  return arcs;
}

struct SvgLayer {
  const SampledMap* samples = nullptr;
  std::string stroke = "black";
  /// Join the last sample back to the first (periodic curves) unless that
  /// step is itself a jump.
  bool closed = false;
};

/// Plane curves as polylines. Data y is flipped so that +y points up; the
/// viewBox is the data bounding box padded by 5% of its larger side, and
/// the stroke is 0.5% of the data diagonal.
inline void write_svg(std::ostream& os, const std::vector<SvgLayer>& layers) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& layer : layers) {
    for (const auto& p : layer.samples->values) {
      if (p.size() != 2) throw Error(ErrorCode::DimensionMismatch, "write_svg: plane curves only");
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, -p[1]);
      ymax = std::max(ymax, -p[1]);
    }
  }
  if (!std::isfinite(xmin)) throw Error(ErrorCode::EmptyGrid, "write_svg: nothing to draw");
  const double w = xmax - xmin, h = ymax - ymin;
  const double diag = std::hypot(w, h);
  const double pad = std::max(w, h) > 0.0 ? 0.05 * std::max(w, h) : 1.0;
  const double stroke = diag > 0.0 ? 0.005 * diag : 0.01;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(xmin - pad) << ' '
     << format_number(ymin - pad) << ' ' << format_number(w + 2 * pad) << ' ' << format_number(h + 2 * pad)
     << "\">\n";
  for (const auto& layer : layers) {
    const auto& pts = layer.samples->values;
    auto arcs = split_arcs(pts);
    bool wrap = false;
    if (layer.closed && pts.size() > 2 && arcs.size() == 1) {
      std::vector<Vector> probe = {pts.back(), pts.front()};
      const double wrap_step = (pts.front() - pts.back()).norm();
      std::vector<double> steps;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) steps.push_back((pts[i + 1] - pts[i]).norm());
      std::sort(steps.begin(), steps.end());
      wrap = wrap_step <= 10.0 * steps[steps.size() / 2];
    }
    for (const auto& [b, e] : arcs) {
      os << "<polyline fill=\"none\" stroke=\"" << layer.stroke << "\" stroke-width=\"" << format_number(stroke)
         << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\" points=\"";
      for (std::size_t i = b; i < e; ++i) {
        os << (i > b ? " " : "") << format_number(pts[i][0]) << ',' << format_number(-pts[i][1]);
      }
      if (wrap) os << ' ' << format_number(pts[0][0]) << ',' << format_number(-pts[0][1]);
      os << "\"/>\n";
    }
  }
  os << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Rasters

/// Plain PGM (P2): 0 = outside NS, 255 = inside; top image row is the
/// largest y.
inline void write_pgm(std::ostream& os, const RasterGrid& r) {
  os << "P2\n" << r.nx << ' ' << r.ny << "\n255\n";
  for (int j = r.ny - 1; j >= 0; --j) {
    for (int i = 0; i < r.nx; ++i) os << (i ? " " : "") << (r.at(i, j) ? 255 : 0);
    os << '\n';
  }
}

/// CSV x,y,member per cell center, bottom row first.
inline void write_raster_csv(std::ostream& os, const RasterGrid& r) {
  os << "x,y,member\n";
  for (int j = 0; j < r.ny; ++j) {
    for (int i = 0; i < r.nx; ++i) {
      const Vector c = r.center(i, j);
      os << format_number(c[0]) << ',' << format_number(c[1]) << ',' << (r.at(i, j) ? 1 : 0) << '\n';
    }
  }
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  writer(os);
  if (!os) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

}  // namespace frontalforge
