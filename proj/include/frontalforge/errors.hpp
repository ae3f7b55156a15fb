#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace frontalforge {

enum class ErrorCode {
  InvalidArgument,
  DomainViolation,
  DimensionMismatch,
  UnknownName,
  EmptyGrid,
  NotUnit,
  GaussDegenerate,
  PoleOnSilhouette,
  PoleAtImage,
  SingularGaussMap,
  DegenerateNu2,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::GaussDegenerate: return "GaussDegenerate";
    case ErrorCode::PoleOnSilhouette: return "PoleOnSilhouette";
    case ErrorCode::PoleAtImage: return "PoleAtImage";
    case ErrorCode::SingularGaussMap: return "SingularGaussMap";
    case ErrorCode::DegenerateNu2: return "DegenerateNu2";
  }
  return "Unknown";
}

/// True for failures caused by the geometry at a parameter value (the pole
/// sits on a silhouette, a Gauss map degenerates, ...), as opposed to bad
/// input or configuration.
constexpr bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::GaussDegenerate:
    case ErrorCode::PoleOnSilhouette:
    case ErrorCode::PoleAtImage:
    case ErrorCode::SingularGaussMap:
    case ErrorCode::DegenerateNu2:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Error(ErrorCode code, const std::string& what, Eigen::VectorXd param)
      : std::runtime_error(what), code_(code), param_(std::move(param)) {}

  ErrorCode code() const noexcept { return code_; }
  /// Offending parameter value, when the failure is tied to one.
  const std::optional<Eigen::VectorXd>& param() const noexcept { return param_; }

 private:
  ErrorCode code_;
  std::optional<Eigen::VectorXd> param_;
};

}  // namespace frontalforge
