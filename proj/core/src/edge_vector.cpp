#include "ptm/edge_vector.hpp"

#include <cmath>
#include <string>

#include "ptm/errors.hpp"

namespace ptm {

template <class Tag>
PositiveEdgeVector<Tag>::PositiveEdgeVector(GraphPtr graph,
                                            Eigen::VectorXd values)
    : graph_(std::move(graph)), values_(std::move(values)) {
  if (!graph_) throw Error(ErrorKind::InvalidArgument, "null graph");
  require_edge_length(*graph_, values_);
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      const Edge& e = graph_->edge(static_cast<std::size_t>(i));
      throw Error(ErrorKind::InvalidArgument,
                  "value on edge (" + std::to_string(e.from) + "," +
                      std::to_string(e.to) + ") must be finite and positive");
    }
  }
}

template class PositiveEdgeVector<EdgeFunctionTag>;
template class PositiveEdgeVector<ExpectationTag>;

void require_same_graph(const ChainGraph& a, const ChainGraph& b) {
  if (&a == &b) return;
  if (!(a == b)) {
    throw Error(ErrorKind::GraphMismatch,
                "arguments are defined on different graphs");
  }
}

void require_edge_length(const ChainGraph& g, const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != g.num_edges()) {
    throw Error(ErrorKind::InvalidArgument,
                "expected " + std::to_string(g.num_edges()) +
                    " edge values, got " + std::to_string(v.size()));
  }
}

}  // namespace ptm
