#include "ptm/errors.hpp"

namespace ptm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TooFewStates: return "TooFewStates";
    case ErrorKind::OutOfRangeState: return "OutOfRangeState";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::NotTransitionProbability: return "NotTransitionProbability";
    case ErrorKind::NotInMtilde: return "NotInMtilde";
    case ErrorKind::UnobservedEdge: return "UnobservedEdge";
    case ErrorKind::UnvisitedState: return "UnvisitedState";
    case ErrorKind::BoundaryEstimate: return "BoundaryEstimate";
    case ErrorKind::InvalidGenerator: return "InvalidGenerator";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ProjectionNoConvergence: return "ProjectionNoConvergence";
  }
  return "Unknown";
}

}  // namespace ptm
