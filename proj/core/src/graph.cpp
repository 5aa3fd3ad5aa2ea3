#include "ptm/graph.hpp"

#include <algorithm>
#include <string>

#include "ptm/errors.hpp"

namespace ptm {
namespace {

void check_range(std::size_t num_states, std::span<const Edge> edges) {
  for (const Edge& e : edges) {
    if (e.from >= num_states || e.to >= num_states) {
      throw Error(ErrorKind::OutOfRangeState,
                  "edge (" + std::to_string(e.from) + "," +
                      std::to_string(e.to) + ") out of range for " +
                      std::to_string(num_states) + " states");
    }
  }
}

std::vector<std::vector<State>> adjacency(std::size_t num_states,
                                          std::span<const Edge> edges) {
  std::vector<std::vector<State>> succ(num_states);
  for (const Edge& e : edges) succ[e.from].push_back(e.to);
  return succ;
}

}  // namespace

std::vector<std::vector<State>> strongly_connected_components(
    std::size_t num_states, std::span<const Edge> edges) {
  check_range(num_states, edges);
  const auto succ = adjacency(num_states, edges);

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(num_states, kUnvisited);
  std::vector<std::size_t> lowlink(num_states, 0);
  std::vector<bool> on_stack(num_states, false);
  std::vector<State> stack;
  std::vector<std::vector<State>> components;
  std::size_t counter = 0;

  // Explicit call stack of (vertex, next successor position).
  std::vector<std::pair<State, std::size_t>> frames;
  for (State root = 0; root < num_states; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < succ[v].size()) {
        const State w = succ[v][pos++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const State done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const State parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        std::vector<State> component;
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

bool strongly_connected(std::size_t num_states, std::span<const Edge> edges) {
  if (num_states == 0) return false;
  if (num_states == 1) {
    check_range(num_states, edges);
    return !edges.empty();
  }
  return strongly_connected_components(num_states, edges).size() == 1;
}

std::optional<std::pair<State, State>> unreachable_pair(
    std::size_t num_states, std::span<const Edge> edges) {
  if (strongly_connected(num_states, edges)) return std::nullopt;
  const auto succ = adjacency(num_states, edges);
  for (State x = 0; x < num_states; ++x) {
    // A state reaches itself only through a cycle, matching the path
    // definition with N >= 2.
    std::vector<bool> seen(num_states, false);
    std::vector<State> frontier(succ[x]);
    for (State s : frontier) seen[s] = true;
    while (!frontier.empty()) {
      const State v = frontier.back();
      frontier.pop_back();
      for (State w : succ[v]) {
        if (!seen[w]) {
          seen[w] = true;
          frontier.push_back(w);
        }
      }
    }
    for (State y = 0; y < num_states; ++y) {
      if (!seen[y]) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

ChainGraph ChainGraph::build(std::size_t num_states, std::vector<Edge> edges) {
  if (num_states < 2) {
    throw Error(ErrorKind::TooFewStates,
                "a chain needs at least 2 states, got " +
                    std::to_string(num_states));
  }
  check_range(num_states, edges);
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end());
      dup != edges.end()) {
    throw Error(ErrorKind::DuplicateEdge,
                "duplicate edge (" + std::to_string(dup->from) + "," +
                    std::to_string(dup->to) + ")");
  }
  if (auto witness = unreachable_pair(num_states, edges)) {
    throw Error(ErrorKind::NotStronglyConnected,
                "graph is not strongly connected: no path from " +
                    std::to_string(witness->first) + " to " +
                    std::to_string(witness->second));
  }

  ChainGraph g;
  g.num_states_ = num_states;
  g.edges_ = std::move(edges);
  g.outgoing_.resize(num_states);
  g.incoming_.resize(num_states);
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    g.outgoing_[g.edges_[i].from].push_back(i);
    g.incoming_[g.edges_[i].to].push_back(i);
  }
  return g;
}

std::optional<std::size_t> ChainGraph::find(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t ChainGraph::index_of(Edge e) const {
  if (auto i = find(e)) return *i;
  throw Error(ErrorKind::InvalidArgument,
              "(" + std::to_string(e.from) + "," + std::to_string(e.to) +
                  ") is not an edge of the graph");
}

std::span<const std::size_t> ChainGraph::outgoing(State x) const {
  if (x >= num_states_) {
    throw Error(ErrorKind::OutOfRangeState,
                "state " + std::to_string(x) + " out of range");
  }
  return outgoing_[x];
}

std::span<const std::size_t> ChainGraph::incoming(State x) const {
  if (x >= num_states_) {
    throw Error(ErrorKind::OutOfRangeState,
                "state " + std::to_string(x) + " out of range");
  }
  return incoming_[x];
}

}  // namespace ptm
