#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <memory>
#include <utility>

#include "ptm/graph.hpp"

namespace ptm {

using GraphPtr = std::shared_ptr<const ChainGraph>;

/// Strictly positive vector indexed by the canonical edge order of a graph.
/// `Tag` distinguishes coordinate systems that share this representation.
template <class Tag>
class PositiveEdgeVector {
 public:
  /// Throws Error{InvalidArgument} on a length mismatch or a value that is
  /// not finite and strictly positive.
  PositiveEdgeVector(GraphPtr graph, Eigen::VectorXd values);

  const ChainGraph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(values_.size());
  }

  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
  double at(Edge e) const { return (*this)[graph_->index_of(e)]; }

 private:
  GraphPtr graph_;
  Eigen::VectorXd values_;
};

struct EdgeFunctionTag {};
struct ExpectationTag {};

/// An element f of F+: a positive weight on every edge.
using EdgeFunction = PositiveEdgeVector<EdgeFunctionTag>;
/// A point eta of the extended expectation parameter space.
using ExpectationPoint = PositiveEdgeVector<ExpectationTag>;

/// Throws Error{GraphMismatch} unless both graphs have the same states and
/// edges.
void require_same_graph(const ChainGraph& a, const ChainGraph& b);

/// Throws Error{InvalidArgument} unless `v` has one entry per edge.
void require_edge_length(const ChainGraph& g, const Eigen::VectorXd& v);

}  // namespace ptm
