#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ptm {

using State = std::size_t;

struct Edge {
  State from = 0;
  State to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed graph (X, E) on states {0, ..., num_states - 1}.
///
/// Edges are stored in lexicographic (from, to) order. Every edge-indexed
/// vector in the library (edge functions, expectation points, gradients,
/// Hessian rows) uses this order. Instances are immutable and validated to be
/// strongly connected, so A(f) is irreducible for every positive f.
class ChainGraph {
 public:
  /// Throws Error{TooFewStates, OutOfRangeState, DuplicateEdge,
  /// NotStronglyConnected}. The input order of `edges` is irrelevant.
  static ChainGraph build(std::size_t num_states, std::vector<Edge> edges);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }

  std::optional<std::size_t> find(Edge e) const;
  /// Like find() but throws Error{InvalidArgument} for a non-edge.
  std::size_t index_of(Edge e) const;

  /// Positions of edges (x, *) / (*, x) in canonical order.
  std::span<const std::size_t> outgoing(State x) const;
  std::span<const std::size_t> incoming(State x) const;

  friend bool operator==(const ChainGraph& a, const ChainGraph& b) {
    return a.num_states_ == b.num_states_ && a.edges_ == b.edges_;
  }

 private:
  ChainGraph() = default;

  std::size_t num_states_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::vector<std::size_t>> incoming_;
};

/// True iff every ordered pair of states is joined by a directed path.
/// Throws Error{OutOfRangeState}.
bool strongly_connected(std::size_t num_states, std::span<const Edge> edges);

/// A pair (x, y) with no directed path x -> y, or nullopt when strongly
/// connected. The first such pair in lexicographic order is returned.
std::optional<std::pair<State, State>> unreachable_pair(
    std::size_t num_states, std::span<const Edge> edges);

/// Strongly connected components (Tarjan). Each component lists its states.
std::vector<std::vector<State>> strongly_connected_components(
    std::size_t num_states, std::span<const Edge> edges);

}  // namespace ptm
