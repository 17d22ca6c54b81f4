#include "tangentplan/error.hpp"

namespace tangentplan {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::PointInsideObstacle: return "PointInsideObstacle";
    case ErrorCode::DegenerateTangency: return "DegenerateTangency";
    case ErrorCode::PlanningFailed: return "PlanningFailed";
    case ErrorCode::DeadEnd: return "DeadEnd";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::TooFewWaypoints: return "TooFewWaypoints";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace tangentplan
