#pragma once

// Cahn-Hoffman formula for negative pedals, the opening identity for the
// Gauss map of an anti-orthotomic, and the front criterion.
//
// Charts on S^n are the first-order ones given by tangent_frame() at the
// evaluation point: for a map u into S^n, its Jacobian in that chart is
// E^T Ju where the columns of E are the frame vectors.

#include <array>
#include <cmath>

#include "errors.hpp"
#include "frontal.hpp"
#include "linalg.hpp"
#include "transforms.hpp"

namespace frontalforge {

enum class GradientRoute { ChainRule, FiniteDifference };

struct GammaGradient {
  double gamma = 0.0;
  Vector grad;  // parameter coordinates
};

/// gamma(x) = |g(x) - P| and its parameter gradient, either through the
/// Jacobian of g (J^T (g - P) / gamma) or by differencing gamma directly.
inline GammaGradient gamma_gradient(const Frontal& G, const AmbientVec& pole, const Param& x,
                                    GradientRoute route = GradientRoute::ChainRule) {
  if (pole.dim() != G.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "gamma_gradient: pole dimension");
  const Vector& P = pole.coords();
  const Vector d = G.f(x) - P;
  GammaGradient out;
  out.gamma = d.norm();
  if (out.gamma <= 1e-12) throw Error(ErrorCode::PoleAtImage, "gamma_gradient: g(x) = P", x);
  if (route == GradientRoute::ChainRule) {
    out.grad = G.jacobian_f(x).transpose() * d / out.gamma;
    return out;
  }
  const MapFn gamma_map = [&G, &P](const Param& y) {
    Vector v(1);
    v[0] = (G.f(y) - P).norm();
    return v;
  };
  out.grad = finite_difference_jacobian(G.domain(), gamma_map, x, G.fd_step()).row(0).transpose();
  return out;
}

/// nu = frame * nu1 + nu2 * nut, with the frame from tangent_frame(nut).
struct NuSplit {
  Vector nu1;
  double nu2 = 0.0;
  TangentFrame frame;

  Vector reassemble() const { return frame.lift(nu1) + nu2 * frame.base; }
};

inline NuSplit nu_split(const Vector& nu, const UnitVec& nut) {
  if (nu.size() != nut.dim()) throw Error(ErrorCode::DimensionMismatch, "nu_split: dimension mismatch");
  NuSplit s;
  s.frame = tangent_frame(nut);
  s.nu1 = s.frame.project(nu);
  s.nu2 = nu.dot(nut.coords());
  return s;
}

inline NuSplit nu_split(const Frontal& F, const Param& x, const UnitVec& nut) { return nu_split(F.nu(x), nut); }

struct AnalysisOptions {
  TransformOptions transform;
  /// |det J nut| at or below this counts as a singular Gauss map.
  double jnu_tol = 1e-8;
};

struct CahnHoffmanReport {
  Param x;
  Vector direct;   // ft(x) - g(x) from the negative pedal
  Vector formula;  // E ((J nut)^{-1})^T grad gamma
  double residual = 0.0;
  double det_jnu = 0.0;
  /// Spectral norm of (J nut)^{-1}.
  double inverse_norm = 0.0;
  double gamma = 0.0;
  Vector grad_gamma;
  Vector nut;
};

/// Compares ft - g of the negative pedal with the Cahn-Hoffman expression
/// built from gamma = |g - P| and the Jacobian of nut = (g - P)/|g - P|.
inline CahnHoffmanReport cahn_hoffman(const Frontal& G, const AmbientVec& pole, const Param& x,
                                      const AnalysisOptions& opt = {}) {
  const TransformResult np = negative_pedal(G, pole, opt.transform);
  CahnHoffmanReport r;
  r.x = x;
  const Vector g = G.f(x);
  r.direct = np.result.f(x) - g;
  r.nut = np.result.nu(x);

  const TangentFrame frame = tangent_frame(r.nut);
  const Matrix J = frame.basis.transpose() * np.result.jacobian_nu(x);
  r.det_jnu = determinant(J);
  if (std::abs(r.det_jnu) <= opt.jnu_tol) {
    throw Error(ErrorCode::SingularGaussMap, "cahn_hoffman: Gauss map of the negative pedal is singular", x);
  }
  const GammaGradient gg = gamma_gradient(G, pole, x);
  r.gamma = gg.gamma;
  r.grad_gamma = gg.grad;
  // ((J)^{-1})^T = cofactor(J) / det(J).
  r.formula = frame.basis * (cofactor(J) * gg.grad / r.det_jnu);
  r.residual = (r.direct - r.formula).norm();
  const Vector sv = singular_values(J);
  r.inverse_norm = 1.0 / sv.minCoeff();
  return r;
}

/// Residual of sum_i nu1_i gamma d(nut_i) + |nu2| d(gamma) = 0 in parameter
/// coordinates (max norm), with nut = (f - P)/|f - P| and gamma = |f - P|/2.
/// nu is flipped where needed so that nu2 >= 0.
inline double opening_residual(const Frontal& F, const AmbientVec& pole, const Param& x,
                               const AnalysisOptions& opt = {}) {
  const TransformResult ao = anti_orthotomic(F, pole, opt.transform);
  const Vector d = F.f(x) - pole.coords();
  const double gamma = 0.5 * d.norm();
  const UnitVec nut = UnitVec::normalized(d);
  const NuSplit split = nu_split(F, x, nut);
  if (std::abs(split.nu2) <= 1e-9) throw Error(ErrorCode::DegenerateNu2, "opening_residual: nu2 vanishes", x);
  const double sign = split.nu2 > 0.0 ? 1.0 : -1.0;

  const Matrix dnut = split.frame.basis.transpose() * ao.result.jacobian_nu(x);
  const Vector dgamma = 0.5 * F.jacobian_f(x).transpose() * d / d.norm();
  const Vector residual = gamma * dnut.transpose() * (sign * split.nu1) + std::abs(split.nu2) * dgamma;
  return residual.cwiseAbs().maxCoeff();
}

struct FrontOptions {
  /// Relative rank tolerance.
  double rank_tol = 1e-6;
  /// Floor for the singular-value scale used in rank decisions. Catalog
  /// frontals have O(1) Jacobians where they are fronts.
  double scale_floor = 1.0;
  /// A stacked Jacobian with a singular value in [lo, hi] * scale is
  /// rank-ambiguous.
  double ambiguous_lo = 1e-8;
  double ambiguous_hi = 1e-4;
  TransformOptions transform;
};

/// (f, nu) is non-singular at x: the stacked 2m x n Jacobian has rank n.
inline bool is_front_at(const Frontal& F, const Param& x, const FrontOptions& opt = {}) {
  const Matrix J = vstack(F.jacobian_f(x), F.jacobian_nu(x));
  return numeric_rank(J, opt.rank_tol, opt.scale_floor) == F.param_dim();
}

struct FrontReport {
  Param x;
  int rank_f_nu = 0;
  int rank_f_ftilde = 0;
  int rank_ftilde_nutilde = 0;
  /// Front verdicts from (f, nu), (ft, nut) and (f, ft).
  std::array<bool, 3> criteria{};
  /// Verdict of the (f, ft) criterion.
  bool is_front = false;
  bool consistent = false;
  /// Some stacked Jacobian has a singular value in the ambiguous band.
  bool ambiguous = false;
};

/// Evaluates the three equivalent front criteria at x for the anti-orthotomic
/// (ft, nut) of F relative to P.
inline FrontReport front_equivalence(const Frontal& F, const AmbientVec& pole, const Param& x,
                                     const FrontOptions& opt = {}) {
  const TransformResult ao = anti_orthotomic(F, pole, opt.transform);
  const Frontal& T = ao.result;
  const Matrix Jf = F.jacobian_f(x);
  const Matrix Jnu = F.jacobian_nu(x);
  const Matrix Jft = T.jacobian_f(x);
  const Matrix Jnut = T.jacobian_nu(x);

  const Matrix s1 = vstack(Jf, Jnu);
  const Matrix s2 = vstack(Jft, Jnut);
  const Matrix s3 = vstack(Jf, Jft);
  const int n = F.param_dim();

  FrontReport r;
  r.x = x;
  r.rank_f_nu = numeric_rank(s1, opt.rank_tol, opt.scale_floor);
  r.rank_ftilde_nutilde = numeric_rank(s2, opt.rank_tol, opt.scale_floor);
  r.rank_f_ftilde = numeric_rank(s3, opt.rank_tol, opt.scale_floor);
  r.criteria = {r.rank_f_nu == n, r.rank_ftilde_nutilde == n, r.rank_f_ftilde == n};
  r.is_front = r.criteria[2];
  r.consistent = r.criteria[0] == r.criteria[1] && r.criteria[1] == r.criteria[2];
  for (const Matrix* m : {&s1, &s2, &s3}) {
    if (rank_ambiguous(*m, opt.ambiguous_lo, opt.ambiguous_hi, opt.scale_floor)) r.ambiguous = true;
  }
  return r;
}

}  // namespace frontalforge
