#include "ptm/random_instances.hpp"

#include <cmath>

#include "ptm/coordinates.hpp"

namespace ptm {

GraphPtr random_strong_graph(std::size_t num_states, UniformSource& rng) {
  std::vector<Edge> edges;
  for (State x = 0; x < num_states; ++x) {
    for (State y = 0; y < num_states; ++y) {
      const bool on_cycle = (x + 1) % num_states == y;
      if (on_cycle || rng.next() < 0.5) edges.push_back({x, y});
    }
  }
  return std::make_shared<const ChainGraph>(
      ChainGraph::build(num_states, std::move(edges)));
}

GraphPtr complete_graph(std::size_t num_states) {
  std::vector<Edge> edges;
  for (State x = 0; x < num_states; ++x) {
    for (State y = 0; y < num_states; ++y) edges.push_back({x, y});
  }
  return std::make_shared<const ChainGraph>(
      ChainGraph::build(num_states, std::move(edges)));
}

Eigen::VectorXd random_log_uniform(std::size_t size, UniformSource& rng,
                                   double log_lo, double log_hi) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = std::exp(log_lo + (log_hi - log_lo) * rng.next());
  }
  return v;
}

EdgeFunction random_edge_function(const GraphPtr& g, UniformSource& rng,
                                  double log_lo, double log_hi) {
  return EdgeFunction(g, random_log_uniform(g->num_edges(), rng, log_lo, log_hi));
}

EdgeFunction random_transition(const GraphPtr& g, UniformSource& rng) {
  Eigen::VectorXd v = random_log_uniform(g->num_edges(), rng);
  for (State x = 0; x < g->num_states(); ++x) {
    double row = 0.0;
    for (std::size_t i : g->outgoing(x)) row += v[static_cast<Eigen::Index>(i)];
    for (std::size_t i : g->outgoing(x)) v[static_cast<Eigen::Index>(i)] /= row;
  }
  return EdgeFunction(g, std::move(v));
}

ExpectationPoint random_expectation(const GraphPtr& g, UniformSource& rng,
                                    bool unit_mass) {
  Eigen::VectorXd v = random_log_uniform(g->num_edges(), rng);
  if (unit_mass) v /= v.sum();
  return ExpectationPoint(g, std::move(v));
}

ExpectationPoint random_point_of_M(const GraphPtr& g, UniformSource& rng) {
  return tbar(random_transition(g, rng));
}

ExpectationPoint perturbed_point_of_M(const GraphPtr& g, UniformSource& rng,
                                      double spread) {
  const ExpectationPoint base = random_point_of_M(g, rng);
  Eigen::VectorXd v = base.values().cwiseProduct(
      random_log_uniform(g->num_edges(), rng, -spread, spread));
  v /= v.sum();
  return ExpectationPoint(g, std::move(v));
}

}  // namespace ptm
