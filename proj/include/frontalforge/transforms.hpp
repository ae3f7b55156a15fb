#pragma once

// Orthotomic, pedal, anti-orthotomic and negative pedal of a frontal relative
// to a pole P, each with its induced Gauss map.
//
//   orthotomic       f  = 2((ft - P).nut) nut + P,   nu  = (f - ft)/|f - ft|
//   pedal            g  =  ((ft - P).nut) nut + P,   nu  = (2g - P - ft)/|.|
//   anti-orthotomic  ft = f - |f - P|^2 / (2 (f - P).nu) nu,  nut = (f - P)/|f - P|
//   negative pedal   ft = 2g - P - |g - P|^2 / ((g - P).nu) nu, nut = (g - P)/|g - P|
//
// Results are lazy: they wrap the source evaluators.

#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "frontal.hpp"
#include "linalg.hpp"

namespace frontalforge {

enum class TransformKind { Orthotomic, Pedal, AntiOrthotomic, NegativePedal };

constexpr std::string_view to_string(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::Orthotomic: return "orthotomic";
    case TransformKind::Pedal: return "pedal";
    case TransformKind::AntiOrthotomic: return "anti-orthotomic";
    case TransformKind::NegativePedal: return "negative-pedal";
  }
  return "?";
}

inline TransformKind parse_transform_kind(std::string_view s) {
  if (s == "orthotomic") return TransformKind::Orthotomic;
  if (s == "pedal") return TransformKind::Pedal;
  if (s == "anti-orthotomic") return TransformKind::AntiOrthotomic;
  if (s == "negative-pedal") return TransformKind::NegativePedal;
  throw Error(ErrorCode::UnknownName, "unknown transform kind '" + std::string(s) + "'");
}

/// How result frontals differentiate: finite differences of the composed map,
/// or the chain rule through the source Jacobians.
enum class JacobianMode { FiniteDifference, ChainRule };

struct TransformOptions {
  /// Relative threshold on |(f - P).nu| / |f - P| below which P counts as
  /// lying on the silhouette at that parameter.
  double degeneracy_tol = 1e-9;
  JacobianMode jacobians = JacobianMode::FiniteDifference;
};

struct TransformResult {
  Frontal result;
  std::shared_ptr<const Frontal> source;
  AmbientVec pole;
  TransformKind kind;
};

namespace detail {

inline std::string at_param(const Param& x) {
  std::ostringstream os;
  os.precision(17);
  os << "at t = (";
  for (Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

inline void check_pole(const Frontal& F, const AmbientVec& P) {
  if (P.dim() != F.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pole dimension does not match the ambient dimension");
  }
}

// Jacobian of v/|v| given v and its Jacobian.
inline Matrix normalized_jacobian(const Vector& v, const Matrix& dv) {
  const double r = v.norm();
  const Vector u = v / r;
  return (dv - u * (u.transpose() * dv)) / r;
}

inline bool on_silhouette(const Vector& d, const Vector& nu, double tol) {
  return std::abs(d.dot(nu)) <= tol * d.norm();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pointwise formulas.

/// 2((ft - P).nut) nut + P.
inline Vector orthotomic_point(const Vector& ft, const Vector& nut, const Vector& P) {
  return 2.0 * (ft - P).dot(nut) * nut + P;
}

/// ((ft - P).nut) nut + P.
inline Vector pedal_point(const Vector& ft, const Vector& nut, const Vector& P) {
  return (ft - P).dot(nut) * nut + P;
}

/// f - |f - P|^2 / (2 (f - P).nu) nu. The caller guarantees (f - P).nu != 0.
inline Vector anti_orthotomic_point(const Vector& f, const Vector& nu, const Vector& P) {
  const Vector d = f - P;
  return f - (d.squaredNorm() / (2.0 * d.dot(nu))) * nu;
}

/// 2g - P - |g - P|^2 / ((g - P).nu) nu. The caller guarantees (g - P).nu != 0.
inline Vector negative_pedal_point(const Vector& g, const Vector& nu, const Vector& P) {
  const Vector d = g - P;
  return 2.0 * g - P - (d.squaredNorm() / d.dot(nu)) * nu;
}

// ---------------------------------------------------------------------------

/// Orthotomic of (ft, nut) relative to P. The image always evaluates; the
/// induced Gauss map throws GaussDegenerate where (ft - P).nut vanishes,
/// since there f = ft.
inline TransformResult orthotomic(const Frontal& src, const AmbientVec& pole, const TransformOptions& opt = {}) {
  detail::check_pole(src, pole);
  auto S = std::make_shared<const Frontal>(src);
  const Vector P = pole.coords();
  const double tol = opt.degeneracy_tol;

  auto f = [S, P](const Param& x) -> Vector { return orthotomic_point(S->f(x), S->nu(x), P); };
  auto nu = [S, P, tol](const Param& x) -> Vector {
    const Vector ft = S->f(x);
    const Vector nut = S->nu(x);
    if (detail::on_silhouette(ft - P, nut, tol)) {
      throw Error(ErrorCode::GaussDegenerate,
                  "orthotomic Gauss map undefined: (ft - P).nut = 0 " + detail::at_param(x), x);
    }
    const Vector w = orthotomic_point(ft, nut, P) - ft;
    return w / w.norm();
  };
  JacFn jf, jnu;
  if (opt.jacobians == JacobianMode::ChainRule) {
    jf = [S, P](const Param& x) -> Matrix {
      const Vector ft = S->f(x), nut = S->nu(x);
      const Matrix Jft = S->jacobian_f(x), Jnut = S->jacobian_nu(x);
      const Vector d = ft - P;
      const double a = d.dot(nut);
      const Eigen::RowVectorXd da = nut.transpose() * Jft + d.transpose() * Jnut;
      return 2.0 * nut * da + 2.0 * a * Jnut;
    };
    jnu = [S, P, f, jf](const Param& x) -> Matrix {
      const Vector w = f(x) - S->f(x);
      return detail::normalized_jacobian(w, jf(x) - S->jacobian_f(x));
    };
  }
  Frontal out(src.name() + ":orthotomic", src.domain(), src.ambient_dim(), f, nu, jf, jnu, src.fd_step());
  return {std::move(out), S, pole, TransformKind::Orthotomic};
}

/// Pedal of (ft, nut) relative to P; its orthotomic is 2g - P.
inline TransformResult pedal(const Frontal& src, const AmbientVec& pole, const TransformOptions& opt = {}) {
  detail::check_pole(src, pole);
  auto S = std::make_shared<const Frontal>(src);
  const Vector P = pole.coords();
  const double tol = opt.degeneracy_tol;

  auto g = [S, P](const Param& x) -> Vector { return pedal_point(S->f(x), S->nu(x), P); };
  auto nu = [S, P, tol](const Param& x) -> Vector {
    const Vector ft = S->f(x);
    const Vector nut = S->nu(x);
    if (detail::on_silhouette(ft - P, nut, tol)) {
      throw Error(ErrorCode::GaussDegenerate,
                  "pedal Gauss map undefined: (ft - P).nut = 0 " + detail::at_param(x), x);
    }
    const Vector w = 2.0 * pedal_point(ft, nut, P) - P - ft;
    return w / w.norm();
  };
  JacFn jg, jnu;
  if (opt.jacobians == JacobianMode::ChainRule) {
    jg = [S, P](const Param& x) -> Matrix {
      const Vector ft = S->f(x), nut = S->nu(x);
      const Matrix Jft = S->jacobian_f(x), Jnut = S->jacobian_nu(x);
      const Vector d = ft - P;
      const Eigen::RowVectorXd da = nut.transpose() * Jft + d.transpose() * Jnut;
      return nut * da + d.dot(nut) * Jnut;
    };
    jnu = [S, P, g, jg](const Param& x) -> Matrix {
      const Vector w = 2.0 * g(x) - P - S->f(x);
      return detail::normalized_jacobian(w, 2.0 * jg(x) - S->jacobian_f(x));
    };
  }
  Frontal out(src.name() + ":pedal", src.domain(), src.ambient_dim(), g, nu, jg, jnu, src.fd_step());
  return {std::move(out), S, pole, TransformKind::Pedal};
}

/// The unique anti-orthotomic of (f, nu) relative to P. Both the image and
/// the Gauss map throw PoleOnSilhouette where (f - P).nu vanishes.
inline TransformResult anti_orthotomic(const Frontal& src, const AmbientVec& pole, const TransformOptions& opt = {}) {
  detail::check_pole(src, pole);
  auto S = std::make_shared<const Frontal>(src);
  const Vector P = pole.coords();
  const double tol = opt.degeneracy_tol;

  auto guard = [tol](const Vector& d, const Vector& nu, const Param& x) {
    if (detail::on_silhouette(d, nu, tol)) {
      throw Error(ErrorCode::PoleOnSilhouette,
                  "pole on the silhouette: (f - P).nu = 0 " + detail::at_param(x), x);
    }
  };
  auto ft = [S, P, guard](const Param& x) -> Vector {
    const Vector f = S->f(x), nu = S->nu(x);
    guard(f - P, nu, x);
    return anti_orthotomic_point(f, nu, P);
  };
  auto nut = [S, P, guard](const Param& x) -> Vector {
    const Vector d = S->f(x) - P;
    guard(d, S->nu(x), x);
    return d / d.norm();
  };
  JacFn jft, jnut;
  if (opt.jacobians == JacobianMode::ChainRule) {
    jft = [S, P, guard](const Param& x) -> Matrix {
      const Vector f = S->f(x), nu = S->nu(x);
      const Vector d = f - P;
      guard(d, nu, x);
      const Matrix Jf = S->jacobian_f(x), Jnu = S->jacobian_nu(x);
      const double b = d.dot(nu);
      const double alpha = d.squaredNorm() / (2.0 * b);
      const Eigen::RowVectorXd db = nu.transpose() * Jf + d.transpose() * Jnu;
      const Eigen::RowVectorXd dalpha = (d.transpose() * Jf) / b - (alpha / b) * db;
      return Jf - nu * dalpha - alpha * Jnu;
    };
    jnut = [S, P, guard](const Param& x) -> Matrix {
      const Vector d = S->f(x) - P;
      guard(d, S->nu(x), x);
      return detail::normalized_jacobian(d, S->jacobian_f(x));
    };
  }
  Frontal out(src.name() + ":anti-orthotomic", src.domain(), src.ambient_dim(), ft, nut, jft, jnut,
              src.fd_step());
  return {std::move(out), S, pole, TransformKind::AntiOrthotomic};
}

/// The unique negative pedal of (g, nu) relative to P; equals the
/// anti-orthotomic of (2g - P, nu).
inline TransformResult negative_pedal(const Frontal& src, const AmbientVec& pole, const TransformOptions& opt = {}) {
  detail::check_pole(src, pole);
  auto S = std::make_shared<const Frontal>(src);
  const Vector P = pole.coords();
  const double tol = opt.degeneracy_tol;

  auto guard = [tol](const Vector& d, const Vector& nu, const Param& x) {
    if (detail::on_silhouette(d, nu, tol)) {
      throw Error(ErrorCode::PoleOnSilhouette,
                  "pole on the silhouette: (g - P).nu = 0 " + detail::at_param(x), x);
    }
  };
  auto ft = [S, P, guard](const Param& x) -> Vector {
    const Vector g = S->f(x), nu = S->nu(x);
    guard(g - P, nu, x);
    return negative_pedal_point(g, nu, P);
  };
  auto nut = [S, P, guard](const Param& x) -> Vector {
    const Vector d = S->f(x) - P;
    guard(d, S->nu(x), x);
    return d / d.norm();
  };
  JacFn jft, jnut;
  if (opt.jacobians == JacobianMode::ChainRule) {
    jft = [S, P, guard](const Param& x) -> Matrix {
      const Vector g = S->f(x), nu = S->nu(x);
      const Vector d = g - P;
      guard(d, nu, x);
      const Matrix Jg = S->jacobian_f(x), Jnu = S->jacobian_nu(x);
      const double b = d.dot(nu);
      const double beta = d.squaredNorm() / b;
      const Eigen::RowVectorXd db = nu.transpose() * Jg + d.transpose() * Jnu;
      const Eigen::RowVectorXd dbeta = (2.0 / b) * (d.transpose() * Jg) - (beta / b) * db;
      return 2.0 * Jg - nu * dbeta - beta * Jnu;
    };
    jnut = [S, P, guard](const Param& x) -> Matrix {
      const Vector d = S->f(x) - P;
      guard(d, S->nu(x), x);
      return detail::normalized_jacobian(d, S->jacobian_f(x));
    };
  }
  Frontal out(src.name() + ":negative-pedal", src.domain(), src.ambient_dim(), ft, nut, jft, jnut,
              src.fd_step());
  return {std::move(out), S, pole, TransformKind::NegativePedal};
}

inline TransformResult transform(TransformKind kind, const Frontal& src, const AmbientVec& pole,
                                 const TransformOptions& opt = {}) {
  switch (kind) {
    case TransformKind::Orthotomic: return orthotomic(src, pole, opt);
    case TransformKind::Pedal: return pedal(src, pole, opt);
    case TransformKind::AntiOrthotomic: return anti_orthotomic(src, pole, opt);
    case TransformKind::NegativePedal: return negative_pedal(src, pole, opt);
  }
  throw Error(ErrorCode::InvalidArgument, "bad transform kind");
}

}  // namespace frontalforge
