#include "ptm/coordinates.hpp"

#include <cmath>

namespace ptm {

double mass(const ExpectationPoint& eta) { return eta.values().sum(); }

double in_marginal(const ExpectationPoint& eta, State x) {
  double sum = 0.0;
  for (std::size_t i : eta.graph().incoming(x)) sum += eta[i];
  return sum;
}

double out_marginal(const ExpectationPoint& eta, State x) {
  double sum = 0.0;
  for (std::size_t i : eta.graph().outgoing(x)) sum += eta[i];
  return sum;
}

Eigen::VectorXd in_marginals(const ExpectationPoint& eta) {
  const std::size_t n = eta.graph().num_states();
  Eigen::VectorXd m(static_cast<Eigen::Index>(n));
  for (State x = 0; x < n; ++x) m[static_cast<Eigen::Index>(x)] = in_marginal(eta, x);
  return m;
}

Eigen::VectorXd out_marginals(const ExpectationPoint& eta) {
  const std::size_t n = eta.graph().num_states();
  Eigen::VectorXd m(static_cast<Eigen::Index>(n));
  for (State x = 0; x < n; ++x) m[static_cast<Eigen::Index>(x)] = out_marginal(eta, x);
  return m;
}

ExpectationPoint tbar(const EdgeFunction& f, const SpectralData& spectral) {
  const auto edges = f.graph().edges();
  Eigen::VectorXd eta(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    eta[static_cast<Eigen::Index>(i)] =
        spectral.left[static_cast<Eigen::Index>(edges[i].from)] * f[i];
  }
  return ExpectationPoint(f.graph_ptr(), std::move(eta));
}

ExpectationPoint tbar(const EdgeFunction& f) { return tbar(f, perron(f)); }

EdgeFunction taubar(const ExpectationPoint& eta) {
  const double r = mass(eta);
  const Eigen::VectorXd in = in_marginals(eta);
  const auto edges = eta.graph().edges();
  Eigen::VectorXd f(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    f[static_cast<Eigen::Index>(i)] =
        r * eta[i] / in[static_cast<Eigen::Index>(edges[i].from)];
  }
  return EdgeFunction(eta.graph_ptr(), std::move(f));
}

bool is_transition_probability(const EdgeFunction& f, double tol) {
  const ChainGraph& g = f.graph();
  for (State x = 0; x < g.num_states(); ++x) {
    double row = 0.0;
    for (std::size_t i : g.outgoing(x)) row += f[i];
    if (std::abs(row - 1.0) > tol) return false;
  }
  return true;
}

bool is_positive_transition_measure(const EdgeFunction& f, double tol) {
  return std::abs(perron(f).root - 1.0) <= tol;
}

EdgeFunction normalize_to_measure(const EdgeFunction& f) {
  return scale(f, 1.0 / perron(f).root);
}

bool is_in_Mtilde(const ExpectationPoint& eta, double tol) {
  return std::abs(mass(eta) - 1.0) <= tol;
}

bool is_in_M(const ExpectationPoint& eta, double tol) {
  if (!is_in_Mtilde(eta, tol)) return false;
  const Eigen::VectorXd gap = out_marginals(eta) - in_marginals(eta);
  return gap.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace ptm
