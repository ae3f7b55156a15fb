#pragma once

// Small dense linear algebra in ambient dimension m = n + 1.

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace frontalforge {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

/// A point of R^m. Coordinates are always finite.
class AmbientVec {
 public:
  AmbientVec() = default;
  explicit AmbientVec(Vector coords) : coords_(std::move(coords)) {
    if (!coords_.allFinite()) {
      throw Error(ErrorCode::InvalidArgument, "AmbientVec: non-finite coordinate");
    }
  }
  AmbientVec(std::initializer_list<double> values) : AmbientVec(make_vector(values)) {}

  const Vector& coords() const noexcept { return coords_; }
  Index dim() const noexcept { return coords_.size(); }
  double operator[](Index i) const { return coords_[i]; }

 private:
  Vector coords_;
};

/// A point of S^{m-1}.
class UnitVec {
 public:
  static constexpr double kConstructionTol = 1e-12;

  UnitVec() = default;
  explicit UnitVec(Vector coords) : coords_(std::move(coords)) {
    if (!coords_.allFinite() || std::abs(coords_.norm() - 1.0) > kConstructionTol) {
      throw Error(ErrorCode::NotUnit, "UnitVec: norm deviates from 1");
    }
  }
  UnitVec(std::initializer_list<double> values) : UnitVec(make_vector(values)) {}

  static UnitVec normalized(const Vector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw Error(ErrorCode::NotUnit, "UnitVec: cannot normalize a zero or non-finite vector");
    }
    return UnitVec(Vector(v / n));
  }

  const Vector& coords() const noexcept { return coords_; }
  Index dim() const noexcept { return coords_.size(); }
  double operator[](Index i) const { return coords_[i]; }

 private:
  Vector coords_;
};

/// Orthonormal basis of the tangent space of S^{m-1} at `base`. The basis
/// vectors are the columns of `basis` (m x (m-1)).
struct TangentFrame {
  Vector base;
  Matrix basis;

  Index dim() const noexcept { return basis.cols(); }
  /// Coordinates of an ambient vector along the basis.
  Vector project(const Vector& v) const { return basis.transpose() * v; }
  /// Tangent vector with the given basis coordinates.
  Vector lift(const Vector& coeffs) const { return basis * coeffs; }
};

/// Deterministic orthonormal frame of u^perp.
///
/// Let k be the axis with the largest |u_k| (lowest index on ties) and H the
/// Householder reflection with H e_k = u. The frame is H e_j for j != k in
/// increasing j. Since H is an orthogonal involution, H e_j is orthogonal to
/// H e_k = u.
inline TangentFrame tangent_frame(const Vector& u) {
  const Index m = u.size();
  if (m < 2) throw Error(ErrorCode::DimensionMismatch, "tangent_frame: need dimension >= 2");
  if (!u.allFinite() || std::abs(u.norm() - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotUnit, "tangent_frame: input is not a unit vector");
  }
  Index k = 0;
  for (Index i = 1; i < m; ++i) {
    if (std::abs(u[i]) > std::abs(u[k])) k = i;
  }

  // w = e_k - u. For u_k > 0 the k-th entry 1 - u_k cancels; use the
  // equivalent (sum_{i != k} u_i^2) / (1 + u_k).
  double off = 0.0;
  for (Index i = 0; i < m; ++i) {
    if (i != k) off += u[i] * u[i];
  }
  Vector w = -u;
  w[k] = u[k] > 0.0 ? off / (1.0 + u[k]) : 1.0 - u[k];
  const double ww = w.squaredNorm();

  TangentFrame frame{u, Matrix(m, m - 1)};
  Index col = 0;
  for (Index j = 0; j < m; ++j) {
    if (j == k) continue;
    Vector e = Vector::Unit(m, j);
    if (ww > 0.0) e -= (2.0 * w[j] / ww) * w;
    frame.basis.col(col++) = e;
  }
  return frame;
}

inline TangentFrame tangent_frame(const UnitVec& u) { return tangent_frame(u.coords()); }

inline double determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant: matrix not square");
  if (m.rows() == 0) return 1.0;
  return m.determinant();
}

/// Cofactor matrix: C(i,j) = (-1)^{i+j} det(minor(i,j)).
///
/// Convention: M * C^T = det(M) * I, so C^T is the classical adjugate and,
/// for invertible M, C / det(M) = (M^{-1})^T. Defined for singular M too.
inline Matrix cofactor(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "cofactor: matrix not square");
  const Index n = m.rows();
  Matrix c(n, n);
  if (n == 1) {
    c(0, 0) = 1.0;
    return c;
  }
  Matrix minor(n - 1, n - 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Index s = 0, ss = 0; s < n; ++s) {
          if (s == j) continue;
          minor(rr, ss++) = m(r, s);
        }
        ++rr;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      c(i, j) = sign * minor.determinant();
    }
  }
  return c;
}

/// Adjugate, adj(M) = cofactor(M)^T, so that adj(M) * M = det(M) * I.
inline Matrix adjugate(const Matrix& m) { return cofactor(m).transpose(); }

inline Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

/// Number of singular values above tol * max(sigma_max, scale_floor).
///
/// With scale_floor = 0 this is the plain relative rank. A positive floor
/// makes matrices that are small in absolute terms (e.g. a finite-difference
/// Jacobian of order 1e-10 where the exact one vanishes) count as rank
/// deficient.
inline int numeric_rank(const Matrix& m, double tol, double scale_floor = 0.0) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "numeric_rank: tol must be positive");
  const Vector sv = singular_values(m);
  if (sv.size() == 0) return 0;
  const double ref = std::max(sv.maxCoeff(), scale_floor);
  if (ref == 0.0) return 0;
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol * ref) ++rank;
  }
  return rank;
}

/// True when some singular value lies in [lo, hi] * max(sigma_max, scale_floor),
/// i.e. the rank decision depends on where inside that band the threshold sits.
inline bool rank_ambiguous(const Matrix& m, double lo, double hi, double scale_floor = 0.0) {
  const Vector sv = singular_values(m);
  if (sv.size() == 0) return false;
  const double ref = std::max(sv.maxCoeff(), scale_floor);
  if (ref == 0.0) return false;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv[i] >= lo * ref && sv[i] <= hi * ref) return true;
  }
  return false;
}

/// Stacks matrices with equal column counts vertically.
inline Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(ErrorCode::DimensionMismatch, "vstack: column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace frontalforge
