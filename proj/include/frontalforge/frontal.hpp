#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace frontalforge {

using Param = Vector;

/// One axis of a parameter box. A periodic axis has period hi - lo.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;

  double length() const noexcept { return hi - lo; }
};

class ParamDomain {
 public:
  ParamDomain() = default;
  explicit ParamDomain(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw Error(ErrorCode::InvalidArgument, "ParamDomain: need at least one axis");
    for (const auto& a : axes_) {
      if (!(std::isfinite(a.lo) && std::isfinite(a.hi) && a.lo < a.hi)) {
        throw Error(ErrorCode::InvalidArgument, "ParamDomain: every axis needs lo < hi");
      }
    }
  }

  int dim() const noexcept { return static_cast<int>(axes_.size()); }
  const Axis& axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }
  const std::vector<Axis>& axes() const noexcept { return axes_; }

  /// Wraps periodic coordinates into [lo, hi) and rejects points outside the
  /// closed box on non-periodic axes.
  Param canonical(const Param& x) const {
    if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "parameter dimension mismatch");
    Param y = x;
    for (int i = 0; i < dim(); ++i) {
      const Axis& a = axes_[static_cast<std::size_t>(i)];
      if (!std::isfinite(y[i])) throw Error(ErrorCode::DomainViolation, "non-finite parameter", x);
      if (a.periodic) {
        const double L = a.length();
        double r = std::fmod(y[i] - a.lo, L);
        if (r < 0.0) r += L;
        if (r >= L) r = 0.0;
        y[i] = a.lo + r;
      } else {
        const double slack = 1e-12 * a.length();
        if (y[i] < a.lo - slack || y[i] > a.hi + slack) {
          std::ostringstream os;
          os << "parameter " << y[i] << " outside [" << a.lo << ", " << a.hi << "] on axis " << i;
          throw Error(ErrorCode::DomainViolation, os.str(), x);
        }
        y[i] = std::clamp(y[i], a.lo, a.hi);
      }
    }
    return y;
  }

 private:
  std::vector<Axis> axes_;
};

using MapFn = std::function<Vector(const Param&)>;
using JacFn = std::function<Matrix(const Param&)>;

/// Second-order finite-difference Jacobian of `map` at x with step h: central
/// where both neighbours are in the domain (always on periodic axes),
/// one-sided within one step of a non-periodic boundary.
inline Matrix finite_difference_jacobian(const ParamDomain& domain, const MapFn& map, const Param& x_in,
                                         double h) {
  const Param x = domain.canonical(x_in);
  const Vector center = map(x);
  Matrix jac(center.size(), domain.dim());
  auto eval = [&](int axis, double offset) {
    Param y = x;
    y[axis] += offset;
    return map(domain.canonical(y));
  };
  for (int i = 0; i < domain.dim(); ++i) {
    const Axis& a = domain.axis(i);
    if (a.periodic || (x[i] - h >= a.lo && x[i] + h <= a.hi)) {
      jac.col(i) = (eval(i, h) - eval(i, -h)) / (2.0 * h);
    } else if (x[i] - h < a.lo) {
      jac.col(i) = (-3.0 * center + 4.0 * eval(i, h) - eval(i, 2.0 * h)) / (2.0 * h);
    } else {
      jac.col(i) = (3.0 * center - 4.0 * eval(i, -h) + eval(i, -2.0 * h)) / (2.0 * h);
    }
  }
  return jac;
}

/// A frontal (f, nu) over a parameter box. Evaluators must be pure; a Frontal
/// is immutable after construction and safe to evaluate concurrently.
class Frontal {
 public:
  static constexpr double kDefaultFdStep = 1e-5;

  Frontal(std::string name, ParamDomain domain, int ambient_dim, MapFn f, MapFn nu,
          JacFn jac_f = {}, JacFn jac_nu = {}, double fd_step = kDefaultFdStep)
      : name_(std::move(name)),
        domain_(std::move(domain)),
        ambient_dim_(ambient_dim),
        f_(std::move(f)),
        nu_(std::move(nu)),
        jac_f_(std::move(jac_f)),
        jac_nu_(std::move(jac_nu)),
        fd_step_(fd_step) {
    if (ambient_dim_ != domain_.dim() + 1) {
      throw Error(ErrorCode::DimensionMismatch, "Frontal: ambient dimension must be n + 1");
    }
    if (!f_ || !nu_) throw Error(ErrorCode::InvalidArgument, "Frontal: missing evaluator");
    if (!(fd_step_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "Frontal: fd_step must be positive");
    for (const auto& a : domain_.axes()) {
      if (!a.periodic && a.length() < 2.0 * fd_step_) {
        throw Error(ErrorCode::InvalidArgument, "Frontal: axis shorter than two finite-difference steps");
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  const ParamDomain& domain() const noexcept { return domain_; }
  int param_dim() const noexcept { return domain_.dim(); }
  int ambient_dim() const noexcept { return ambient_dim_; }
  double fd_step() const noexcept { return fd_step_; }
  bool has_analytic_jacobian_f() const noexcept { return static_cast<bool>(jac_f_); }
  bool has_analytic_jacobian_nu() const noexcept { return static_cast<bool>(jac_nu_); }

  Vector f(const Param& x) const { return f_(domain_.canonical(x)); }
  Vector nu(const Param& x) const { return nu_(domain_.canonical(x)); }

  /// m x n Jacobian of f: analytic when supplied, else finite differences.
  Matrix jacobian_f(const Param& x) const {
    return jac_f_ ? jac_f_(domain_.canonical(x)) : fd_jacobian(f_, x);
  }
  Matrix jacobian_nu(const Param& x) const {
    return jac_nu_ ? jac_nu_(domain_.canonical(x)) : fd_jacobian(nu_, x);
  }
  Matrix fd_jacobian_f(const Param& x) const { return fd_jacobian(f_, x); }
  Matrix fd_jacobian_nu(const Param& x) const { return fd_jacobian(nu_, x); }

  /// Same maps with a different finite-difference step.
  Frontal with_fd_step(double h) const {
    return Frontal(name_, domain_, ambient_dim_, f_, nu_, jac_f_, jac_nu_, h);
  }
  /// Same frontal without analytic Jacobians.
  Frontal without_analytic_jacobians() const {
    return Frontal(name_, domain_, ambient_dim_, f_, nu_, {}, {}, fd_step_);
  }
  /// (f + c, nu).
  Frontal translated(const Vector& c) const {
    if (c.size() != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "translated: dimension mismatch");
    auto f = f_;
    return Frontal(name_ + "+c", domain_, ambient_dim_,
                   [f, c](const Param& x) -> Vector { return f(x) + c; }, nu_, jac_f_, jac_nu_,
                   fd_step_);
  }

 private:
  Matrix fd_jacobian(const MapFn& map, const Param& x) const {
    return finite_difference_jacobian(domain_, map, x, fd_step_);
  }

  std::string name_;
  ParamDomain domain_;
  int ambient_dim_;
  MapFn f_;
  MapFn nu_;
  JacFn jac_f_;
  JacFn jac_nu_;
  double fd_step_;
};

inline Matrix jacobian_f(const Frontal& F, const Param& x) { return F.jacobian_f(x); }
inline Matrix jacobian_nu(const Frontal& F, const Param& x) { return F.jacobian_nu(x); }

/// Sampling of one parameter axis: `count` equispaced points from lo, ending
/// at hi when include_end is set, else one step short of hi.
struct AxisSampling {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;
  bool include_end = true;
};

/// Tensor-product list of parameter points; the first axis varies slowest.
///
/// Point k of an axis is lo + (hi - lo) * (k / d) with d = count - 1 or count.
/// Doubling a half-open count (or taking 2c - 1 for an inclusive one) yields a
/// grid that contains the original points bit for bit.
class SampleGrid {
 public:
  SampleGrid() = default;
  explicit SampleGrid(std::vector<Param> points) : points_(std::move(points)) {}

  static SampleGrid from_axes(const std::vector<AxisSampling>& axes) {
    if (axes.empty()) throw Error(ErrorCode::InvalidArgument, "SampleGrid: no axes");
    std::vector<std::vector<double>> ticks;
    for (const auto& a : axes) {
      if (a.count < 1 || (a.include_end && a.count < 2)) {
        throw Error(ErrorCode::InvalidArgument, "SampleGrid: sample count too small");
      }
      if (!(a.lo <= a.hi)) throw Error(ErrorCode::InvalidArgument, "SampleGrid: lo > hi");
      std::vector<double> t(static_cast<std::size_t>(a.count));
      const double d = a.include_end ? a.count - 1 : a.count;
      for (int k = 0; k < a.count; ++k) {
        t[static_cast<std::size_t>(k)] = a.lo + (a.hi - a.lo) * (static_cast<double>(k) / d);
      }
      if (a.include_end) t.back() = a.hi;
      ticks.push_back(std::move(t));
    }
    std::vector<Param> pts;
    std::vector<std::size_t> idx(ticks.size(), 0);
    const auto dims = static_cast<Index>(ticks.size());
    for (;;) {
      Param p(dims);
      for (Index i = 0; i < dims; ++i) p[i] = ticks[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      pts.push_back(std::move(p));
      std::size_t i = ticks.size();
      while (i > 0) {
        --i;
        if (++idx[i] < ticks[i].size()) break;
        idx[i] = 0;
        if (i == 0) return SampleGrid(std::move(pts));
      }
    }
  }

  /// `count` points per axis covering the domain: half-open on periodic axes,
  /// inclusive otherwise.
  static SampleGrid uniform(const ParamDomain& domain, int count) {
    std::vector<AxisSampling> axes;
    for (const auto& a : domain.axes()) axes.push_back({a.lo, a.hi, count, !a.periodic});
    return from_axes(axes);
  }

  /// Like uniform() but keeps `margin` away from non-periodic boundaries.
  static SampleGrid interior(const ParamDomain& domain, int count, double margin) {
    std::vector<AxisSampling> axes;
    for (const auto& a : domain.axes()) {
      if (a.periodic) {
        axes.push_back({a.lo, a.hi, count, false});
      } else {
        axes.push_back({a.lo + margin, a.hi - margin, count, true});
      }
    }
    return from_axes(axes);
  }

  const std::vector<Param>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Param& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

 private:
  std::vector<Param> points_;
};

/// Parameter points with their images and (optionally) Gauss map values.
struct SampledMap {
  std::vector<Param> params;
  std::vector<Vector> values;
  std::vector<Vector> gauss;  // empty when not sampled

  std::size_t size() const noexcept { return params.size(); }
  bool has_gauss() const noexcept { return !gauss.empty(); }
};

/// Evaluates F on every grid point. Gauss map values are checked to be unit
/// within 1e-9.
inline SampledMap sample(const Frontal& F, const SampleGrid& grid, bool with_gauss = true) {
  SampledMap out;
  out.params = grid.points();
  out.values.resize(grid.size());
  if (with_gauss) out.gauss.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    out.values[i] = F.f(grid[i]);
    if (!out.values[i].allFinite()) {
      throw Error(ErrorCode::InvalidArgument, "sample: non-finite image", grid[i]);
    }
    if (with_gauss) {
      out.gauss[i] = F.nu(grid[i]);
      if (!out.gauss[i].allFinite() || std::abs(out.gauss[i].norm() - 1.0) > 1e-9) {
        throw Error(ErrorCode::NotUnit, "sample: Gauss map value is not a unit vector", grid[i]);
      }
    }
  });
  return out;
}

struct FrontalCheck {
  double max_residual = 0.0;
  Param worst;
  double tol = 1e-6;
  bool passed = true;
};

/// max over grid points and Jacobian columns of |column . nu(x)|.
inline FrontalCheck check_frontal(const Frontal& F, const SampleGrid& grid, double tol = 1e-6) {
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "check_frontal: empty grid");
  std::vector<double> residual(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Matrix J = F.jacobian_f(grid[i]);
    const Vector nu = F.nu(grid[i]);
    residual[i] = (J.transpose() * nu).cwiseAbs().maxCoeff();
  });
  FrontalCheck report;
  report.tol = tol;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (!(residual[i] <= residual[worst])) worst = i;
  }
  report.max_residual = residual[worst];
  report.worst = grid[worst];
  report.passed = report.max_residual <= tol;
  return report;
}

}  // namespace frontalforge
