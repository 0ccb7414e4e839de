#include "lambert/error.hpp"

namespace lambert {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::SameRay: return "SameRay";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TooCloseToEscape: return "TooCloseToEscape";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NonElliptic: return "NonElliptic";
    case ErrorCode::CollisionWithinInterval: return "CollisionWithinInterval";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::RectilinearState: return "RectilinearState";
    case ErrorCode::DegenerateDirect: return "DegenerateDirect";
    case ErrorCode::SamplingInconclusive: return "SamplingInconclusive";
    case ErrorCode::NonpositiveLatus: return "NonpositiveLatus";
    case ErrorCode::InconsistentSolution: return "InconsistentSolution";
    case ErrorCode::RectilinearDegenerate: return "RectilinearDegenerate";
  }
  return "Unknown";
}

}  // namespace lambert
