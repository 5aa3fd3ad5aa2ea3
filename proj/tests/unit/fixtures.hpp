#pragma once

#include <Eigen/Core>
#include <initializer_list>
#include <memory>
#include <vector>

#include "ptm/edge_vector.hpp"
#include "ptm/graph.hpp"

namespace ptm::testing {

inline GraphPtr make_graph(std::size_t n, std::vector<Edge> edges) {
  return std::make_shared<const ChainGraph>(
      ChainGraph::build(n, std::move(edges)));
}

/// Complete graph on {0, 1}; edge order (0,0), (0,1), (1,0), (1,1).
inline GraphPtr two_state() {
  return make_graph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline EdgeFunction two_state_f(double x, double y, double z, double w) {
  return EdgeFunction(two_state(), vec({x, y, z, w}));
}

inline ExpectationPoint two_state_eta(double a, double b, double c, double d) {
  return ExpectationPoint(two_state(), vec({a, b, c, d}));
}

inline double sup(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace ptm::testing
