#pragma once

#include <Eigen/Core>

#include "ptm/edge_vector.hpp"
#include "ptm/inference.hpp"

namespace ptm {

/// Strongly connected graph on `num_states` states: the cycle
/// 0 -> 1 -> ... -> n-1 -> 0 plus every other ordered pair (self-loops
/// included) independently with probability 1/2.
GraphPtr random_strong_graph(std::size_t num_states, UniformSource& rng);

/// The complete graph X x X.
GraphPtr complete_graph(std::size_t num_states);

/// Entries exp(U) with U uniform on [log_lo, log_hi].
Eigen::VectorXd random_log_uniform(std::size_t size, UniformSource& rng,
                                   double log_lo = -2.0, double log_hi = 2.0);

EdgeFunction random_edge_function(const GraphPtr& g, UniformSource& rng,
                                  double log_lo = -2.0, double log_hi = 2.0);
/// Random element of W (rows rescaled to sum 1).
EdgeFunction random_transition(const GraphPtr& g, UniformSource& rng);
/// Random positive point; unit mass when `unit_mass` is set.
ExpectationPoint random_expectation(const GraphPtr& g, UniformSource& rng,
                                    bool unit_mass = false);
/// Random point of M (tbar of a random transition probability).
ExpectationPoint random_point_of_M(const GraphPtr& g, UniformSource& rng);
/// Point of M with each coordinate scaled by exp(U), U uniform on
/// [-spread, spread], then renormalized to unit mass. Targets drawn far from M
/// can have their Bregman projection on the boundary, so projection tests use
/// these instead.
ExpectationPoint perturbed_point_of_M(const GraphPtr& g, UniformSource& rng,
                                      double spread = 0.5);

}  // namespace ptm
