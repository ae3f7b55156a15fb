#pragma once

// No-silhouette set NS_F = { P : (f(x) - P).nu(x) != 0 for every x }.
//
// Membership is certified on a parameter grid only. Besides the smallest
// |(f - P).nu| over the grid, the sign of (f - P).nu is tracked: the domain
// is connected, so two samples of opposite sign prove a zero in between and
// the margin is reported as 0 even when no sample lands on it.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "frontal.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace frontalforge {

struct NSReport {
  bool member = false;
  /// min over the grid of |(f(x) - P).nu(x)|, or 0 after a sign change.
  double margin = 0.0;
  /// Parameter of the smallest |(f - P).nu|.
  Param argmin;
  bool sign_change = false;
  double tol = 0.0;
};

struct NSOptions {
  /// Absolute membership threshold; when unset, 1e-9 times the larger of 1
  /// and the diagonal of the sampled image's bounding box.
  std::optional<double> tol;
};

inline double bbox_diagonal(const std::vector<Vector>& pts) {
  if (pts.empty()) return 0.0;
  Vector lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

inline double default_ns_tol(const SampledMap& s) { return 1e-9 * std::max(1.0, bbox_diagonal(s.values)); }

/// Membership from precomputed samples (values and Gauss map).
inline NSReport ns_membership(const SampledMap& s, const Vector& P, double tol) {
  if (s.size() == 0) throw Error(ErrorCode::EmptyGrid, "ns_membership: empty grid");
  if (!s.has_gauss()) throw Error(ErrorCode::InvalidArgument, "ns_membership: samples lack the Gauss map");
  if (P.size() != s.values.front().size()) {
    throw Error(ErrorCode::DimensionMismatch, "ns_membership: pole dimension mismatch");
  }
  bool pos = false, neg = false;
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = (s.values[i] - P).dot(s.gauss[i]);
    if (v > 0.0) pos = true;
    if (v < 0.0) neg = true;
    if (std::abs(v) < best) {
      best = std::abs(v);
      arg = i;
    }
  }
  NSReport r;
  r.sign_change = pos && neg;
  r.margin = r.sign_change ? 0.0 : best;
  r.argmin = s.params[arg];
  r.tol = tol;
  r.member = r.margin > tol;
  return r;
}

inline NSReport ns_membership(const Frontal& F, const AmbientVec& P, const SampleGrid& grid,
                              const NSOptions& opt = {}) {
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "ns_membership: empty grid");
  if (P.dim() != F.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "ns_membership: pole dimension mismatch");
  const SampledMap s = sample(F, grid);
  return ns_membership(s, P.coords(), opt.tol.value_or(default_ns_tol(s)));
}

struct BBox {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;

  double diagonal() const { return std::hypot(xmax - xmin, ymax - ymin); }
};

/// Boolean membership per cell center of a planar box. Cell (i, j) has
/// center (xmin + (i + 0.5) dx, ymin + (j + 0.5) dy); storage is row-major
/// with j = 0 the bottom row.
struct RasterGrid {
  BBox bbox;
  int nx = 0, ny = 0;
  std::vector<std::uint8_t> cells;

  double dx() const { return (bbox.xmax - bbox.xmin) / nx; }
  double dy() const { return (bbox.ymax - bbox.ymin) / ny; }
  double cell_diagonal() const { return std::hypot(dx(), dy()); }
  Vector center(int i, int j) const {
    Vector c(2);
    c << bbox.xmin + (i + 0.5) * dx(), bbox.ymin + (j + 0.5) * dy();
    return c;
  }
  bool at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nx + i] != 0; }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto c : cells) n += c;
    return n;
  }
};

/// Rasterizes NS_F for a plane frontal. The threshold defaults to 1e-9 times
/// the raster box diagonal.
inline RasterGrid ns_raster(const Frontal& F, const BBox& box, int nx, int ny, const SampleGrid& grid,
                            std::optional<double> tol = std::nullopt) {
  if (F.ambient_dim() != 2) throw Error(ErrorCode::DimensionMismatch, "ns_raster: needs a plane frontal");
  if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "ns_raster: resolution must be >= 2");
  if (!(box.xmin < box.xmax && box.ymin < box.ymax) || !std::isfinite(box.diagonal())) {
    throw Error(ErrorCode::InvalidArgument, "ns_raster: degenerate bounding box");
  }
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "ns_raster: empty grid");
  const SampledMap s = sample(F, grid);
  const double threshold = tol.value_or(1e-9 * box.diagonal());
  RasterGrid r{box, nx, ny, std::vector<std::uint8_t>(static_cast<std::size_t>(nx) * ny, 0)};
  parallel_for(r.cells.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k % static_cast<std::size_t>(nx));
    const int j = static_cast<int>(k / static_cast<std::size_t>(nx));
    r.cells[k] = ns_membership(s, r.center(i, j), threshold).member ? 1 : 0;
  });
  return r;
}

/// Deterministic 64-bit generator for pole sampling (splitmix64), so sampled
/// poles do not depend on the standard library's distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kPoleSeed = 0xF20F7A1;

struct PoleSampling {
  std::uint64_t seed = kPoleSeed;
  /// Acceptance margin relative to the image scale.
  double margin_fraction = 1e-3;
  int max_attempts = 200000;
};

/// Rejection-samples `count` poles in the image bounding box (padded by a
/// quarter of max(1, diagonal) on each side), keeping those with a margin
/// above margin_fraction * max(1, diagonal) and no sign change on `grid`.
inline std::vector<AmbientVec> sample_poles(const Frontal& F, const SampleGrid& grid, int count,
                                            const PoleSampling& opt = {}) {
  const SampledMap s = sample(F, grid);
  Vector lo = s.values.front(), hi = s.values.front();
  for (const auto& p : s.values) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double scale = std::max(1.0, (hi - lo).norm());
  const double pad = 0.25 * scale;
  lo.array() -= pad;
  hi.array() += pad;
  SplitMix64 rng(opt.seed);
  std::vector<AmbientVec> poles;
  for (int attempt = 0; attempt < opt.max_attempts && static_cast<int>(poles.size()) < count; ++attempt) {
    Vector P(lo.size());
    for (Index i = 0; i < P.size(); ++i) P[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
    const NSReport r = ns_membership(s, P, opt.margin_fraction * scale);
    if (r.member) poles.emplace_back(P);
  }
  if (static_cast<int>(poles.size()) < count) {
    throw Error(ErrorCode::InvalidArgument, "sample_poles: could not find enough no-silhouette poles");
  }
  return poles;
}

}  // namespace frontalforge
