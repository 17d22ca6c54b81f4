#pragma once

#include <stdexcept>
#include <string>

namespace tangentplan {

enum class ErrorCode {
  InvalidArgument,
  InvalidScenario,
  PointInsideObstacle,
  DegenerateTangency,
  PlanningFailed,
  DeadEnd,
  GenerationFailed,
  TooFewWaypoints,
  TooFewSamples,
  Io,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tangentplan
