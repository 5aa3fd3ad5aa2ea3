#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ptm/coordinates.hpp"
#include "ptm/divergence.hpp"

namespace ptm {

/// Portable uniform source: std::mt19937_64 (fully specified by the C++
/// standard) mapped to [0, 1) as (next() >> 11) * 2^-53. Standard library
/// distributions are avoided because their output is implementation-defined.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed for replication i of a batch: base_seed + i.
inline std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t i) {
  return base_seed + i;
}

/// A sample path whose consecutive pairs are edges of the graph.
class Trajectory {
 public:
  /// Throws Error{InvalidArgument} if shorter than 2 or a step is not an
  /// edge, Error{OutOfRangeState} for an unknown state.
  Trajectory(GraphPtr graph, std::vector<State> states);

  const ChainGraph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const std::vector<State>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }

  /// Number of times each edge is traversed, canonical order.
  std::vector<std::size_t> edge_counts() const;

 private:
  GraphPtr graph_;
  std::vector<State> states_;
};

/// Start state for sampling: a fixed state, or a draw from mu_w.
struct InitialState {
  std::optional<State> state;
  static InitialState stationary() { return {}; }
  static InitialState fixed(State x) { return {x}; }
};

/// Draws n states. The first uniform picks the initial state (when drawn
/// from mu_w); each later uniform u selects the first outgoing edge, in
/// canonical order, whose cumulative weight exceeds u * row_sum.
/// Throws Error{NotTransitionProbability, InvalidArgument}.
Trajectory sample_trajectory(const EdgeFunction& w, std::size_t n,
                             std::uint64_t seed, InitialState initial);

/// eta_xy = count(x, y) / (n - 1). Throws Error{UnobservedEdge}.
ExpectationPoint empirical_pair_measure(const Trajectory& t);

/// Row-normalized transition counts. Zero entries are kept and flagged.
struct TransitionEstimate {
  GraphPtr graph;
  Eigen::VectorXd values;
  /// Some edge has probability 0 (the estimate lies on the boundary of F+).
  bool boundary = false;

  /// Throws Error{BoundaryEstimate} when `boundary` is set.
  EdgeFunction edge_function() const;
};

/// w(x, y) = (count(x, y) + alpha) / sum_k (count(x, k) + alpha).
/// Throws Error{UnvisitedState} when a state has no outgoing transition and
/// alpha == 0, Error{InvalidArgument} for negative alpha.
TransitionEstimate mle_transition(const Trajectory& t, double smoothing = 0.0);

struct ProjectionOptions {
  double gradient_tolerance = 1e-9;
  std::size_t max_iterations = 100'000;
  double armijo = 1e-4;
  double backtrack = 0.5;
  double min_coordinate = 1e-12;
};

struct ProjectionResult {
  ExpectationPoint point;
  std::size_t iterations = 0;
  /// Objective D_Bre(zeta_k, eta) at the start and after every iteration.
  std::vector<double> objective_trace;
  /// Euclidean norm of the objective gradient projected onto the tangent
  /// space of M, at the returned point.
  double gradient_norm = 0.0;
  /// D_Bre(point, eta).
  double divergence = 0.0;
};

/// Orthonormal basis (columns) of the tangent space of M: edge vectors with
/// zero total and equal in/out sums at every state.
Eigen::MatrixXd stationary_tangent_basis(const ChainGraph& g);

/// argmin over zeta in M of D_Bre(zeta, eta): Newton's method on the affine
/// subspace M with Armijo backtracking, started from the point of M obtained
/// through the row-normalized eta.
/// Throws Error{NotInMtilde, ProjectionNoConvergence}.
ProjectionResult project_to_M(const ExpectationPoint& eta,
                              const ProjectionOptions& options = {});

struct GoodnessOfFit {
  double statistic = 0.0;
  double divergence = 0.0;
};

/// statistic = 2 (n - 1) D_F(taubar(empirical), model).
/// Throws Error{NotInMtilde} for the empirical point and
/// Error{NotTransitionProbability} when r(model) != 1.
GoodnessOfFit goodness_of_fit_statistic(const StandardConvexFunction& F,
                                        const ExpectationPoint& empirical,
                                        const EdgeFunction& model,
                                        std::size_t n);

}  // namespace ptm
