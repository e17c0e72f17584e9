#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace funklab {

enum class ErrorCode {
  OnSphere,
  DegenerateDenominator,
  ZeroVector,
  RankDeficient,
  Disjoint,
  CoincidentPoint,
  CoincidentCenters,
  CoincidentDirections,
  SingularPoint,
  DegenerateSection,
  CenterNotOnPlane,
  NotParallel,
  SearchFailed,
  DimensionMismatch,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OnSphere: return "OnSphere";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Disjoint: return "Disjoint";
    case ErrorCode::CoincidentPoint: return "CoincidentPoint";
    case ErrorCode::CoincidentCenters: return "CoincidentCenters";
    case ErrorCode::CoincidentDirections: return "CoincidentDirections";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::DegenerateSection: return "DegenerateSection";
    case ErrorCode::CenterNotOnPlane: return "CenterNotOnPlane";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace funklab
