#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptm {

enum class ErrorKind {
  // input / structure
  Parse,
  InvalidArgument,
  TooFewStates,
  OutOfRangeState,
  DuplicateEdge,
  NotStronglyConnected,
  // domain membership
  NonpositiveScale,
  GraphMismatch,
  NotTransitionProbability,
  NotInMtilde,
  UnobservedEdge,
  UnvisitedState,
  BoundaryEstimate,
  InvalidGenerator,
  // numerics
  NoConvergence,
  ProjectionNoConvergence,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ptm
