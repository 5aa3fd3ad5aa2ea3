#include "ptm/inference.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptm/errors.hpp"
#include "ptm/potential.hpp"
#include "ptm/spectral.hpp"

namespace ptm {

Trajectory::Trajectory(GraphPtr graph, std::vector<State> states)
    : graph_(std::move(graph)), states_(std::move(states)) {
  if (!graph_) throw Error(ErrorKind::InvalidArgument, "null graph");
  if (states_.size() < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "a trajectory needs at least 2 states");
  }
  for (State s : states_) {
    if (s >= graph_->num_states()) {
      throw Error(ErrorKind::OutOfRangeState,
                  "state " + std::to_string(s) + " out of range");
    }
  }
  for (std::size_t k = 0; k + 1 < states_.size(); ++k) {
    if (!graph_->find({states_[k], states_[k + 1]})) {
      throw Error(ErrorKind::InvalidArgument,
                  "step " + std::to_string(k) + " (" +
                      std::to_string(states_[k]) + "," +
                      std::to_string(states_[k + 1]) + ") is not an edge");
    }
  }
}

std::vector<std::size_t> Trajectory::edge_counts() const {
  std::vector<std::size_t> counts(graph_->num_edges(), 0);
  for (std::size_t k = 0; k + 1 < states_.size(); ++k) {
    ++counts[*graph_->find({states_[k], states_[k + 1]})];
  }
  return counts;
}

Trajectory sample_trajectory(const EdgeFunction& w, std::size_t n,
                             std::uint64_t seed, InitialState initial) {
  if (!is_transition_probability(w)) {
    throw Error(ErrorKind::NotTransitionProbability,
                "sampling needs a row-stochastic edge function");
  }
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "trajectory length must be at least 2");
  }
  const ChainGraph& g = w.graph();
  UniformSource uniform(seed);

  State current = 0;
  if (initial.state) {
    current = *initial.state;
    if (current >= g.num_states()) {
      throw Error(ErrorKind::OutOfRangeState,
                  "initial state " + std::to_string(current) + " out of range");
    }
  } else {
    const Eigen::VectorXd mu = perron(w).left;
    const double u = uniform.next() * mu.sum();
    double cumulative = 0.0;
    current = g.num_states() - 1;
    for (State x = 0; x < g.num_states(); ++x) {
      cumulative += mu[static_cast<Eigen::Index>(x)];
      if (u < cumulative) {
        current = x;
        break;
      }
    }
  }

  std::vector<State> states;
  states.reserve(n);
  states.push_back(current);
  while (states.size() < n) {
    const auto out = g.outgoing(current);
    double row = 0.0;
    for (std::size_t i : out) row += w[i];
    const double u = uniform.next() * row;
    double cumulative = 0.0;
    std::size_t chosen = out.back();
    for (std::size_t i : out) {
      cumulative += w[i];
      if (u < cumulative) {
        chosen = i;
        break;
      }
    }
    current = g.edge(chosen).to;
    states.push_back(current);
  }
  return Trajectory(w.graph_ptr(), std::move(states));
}

ExpectationPoint empirical_pair_measure(const Trajectory& t) {
  const std::vector<std::size_t> counts = t.edge_counts();
  std::string missing;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) {
      const Edge& e = t.graph().edge(i);
      if (!missing.empty()) missing += ' ';
      missing += "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::UnobservedEdge, "unobserved edges: " + missing);
  }
  const double steps = static_cast<double>(t.size() - 1);
  Eigen::VectorXd eta(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    eta[static_cast<Eigen::Index>(i)] = static_cast<double>(counts[i]) / steps;
  }
  return ExpectationPoint(t.graph_ptr(), std::move(eta));
}

EdgeFunction TransitionEstimate::edge_function() const {
  if (boundary) {
    throw Error(ErrorKind::BoundaryEstimate,
                "estimate has zero entries and is not a positive edge function");
  }
  return EdgeFunction(graph, values);
}

TransitionEstimate mle_transition(const Trajectory& t, double smoothing) {
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
    throw Error(ErrorKind::InvalidArgument, "smoothing must be nonnegative");
  }
  const ChainGraph& g = t.graph();
  const std::vector<std::size_t> counts = t.edge_counts();
  TransitionEstimate est;
  est.graph = t.graph_ptr();
  est.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(counts.size()));
  for (State x = 0; x < g.num_states(); ++x) {
    double row = 0.0;
    for (std::size_t i : g.outgoing(x)) {
      row += static_cast<double>(counts[i]) + smoothing;
    }
    if (row == 0.0) {
      throw Error(ErrorKind::UnvisitedState,
                  "state " + std::to_string(x) +
                      " has no observed outgoing transition");
    }
    for (std::size_t i : g.outgoing(x)) {
      const double v = (static_cast<double>(counts[i]) + smoothing) / row;
      est.values[static_cast<Eigen::Index>(i)] = v;
      if (v == 0.0) est.boundary = true;
    }
  }
  return est;
}

namespace {

// Rows: total mass, then out - in indicator for every state.
Eigen::MatrixXd m_constraints(const ChainGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_states());
  const auto m = static_cast<Eigen::Index>(g.num_edges());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n + 1, m);
  c.row(0).setOnes();
  const auto edges = g.edges();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Edge& e = edges[static_cast<std::size_t>(i)];
    c(1 + static_cast<Eigen::Index>(e.from), i) += 1.0;
    c(1 + static_cast<Eigen::Index>(e.to), i) -= 1.0;
  }
  return c;
}

Eigen::VectorXd m_targets(const ChainGraph& g) {
  Eigen::VectorXd b =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.num_states()) + 1);
  b[0] = 1.0;
  return b;
}

// Point of M built from the row-normalized eta; equal to eta when eta is
// already stationary.
Eigen::VectorXd feasible_start(const ExpectationPoint& eta) {
  const ChainGraph& g = eta.graph();
  const Eigen::VectorXd out = out_marginals(eta);
  Eigen::VectorXd w(static_cast<Eigen::Index>(eta.size()));
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    w[static_cast<Eigen::Index>(i)] =
        eta[i] / out[static_cast<Eigen::Index>(edges[i].from)];
  }
  return tbar(EdgeFunction(eta.graph_ptr(), w)).values();
}

}  // namespace

Eigen::MatrixXd stationary_tangent_basis(const ChainGraph& g) {
  const Eigen::MatrixXd c = m_constraints(g);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  svd.setThreshold(1e-12);
  const Eigen::Index rank = svd.rank();
  return svd.matrixV().rightCols(c.cols() - rank);
}

ProjectionResult project_to_M(const ExpectationPoint& eta,
                              const ProjectionOptions& options) {
  if (!is_in_Mtilde(eta)) {
    throw Error(ErrorKind::NotInMtilde,
                "projection onto M needs a point of unit mass");
  }
  const ChainGraph& g = eta.graph();
  const GraphPtr& graph = eta.graph_ptr();
  const Eigen::MatrixXd basis = stationary_tangent_basis(g);
  const Eigen::MatrixXd constraints = m_constraints(g);
  const Eigen::VectorXd targets = m_targets(g);
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> restore(
      constraints);
  const Eigen::VectorXd target_gradient = phibar_gradient(eta);

  Eigen::VectorXd zeta =
      (constraints * eta.values() - targets).cwiseAbs().maxCoeff() <= 1e-12
          ? Eigen::VectorXd(eta.values())
          : feasible_start(eta);

  auto objective = [&](const Eigen::VectorXd& z) {
    return bregman_divergence_unclamped(ExpectationPoint(graph, z), eta);
  };

  ProjectionResult result{ExpectationPoint(graph, zeta), 0, {}, 0.0, 0.0};
  double value = objective(zeta);
  result.objective_trace.push_back(value);

  for (;;) {
    const ExpectationPoint current(graph, zeta);
    const Eigen::VectorXd full_gradient =
        phibar_gradient(current) - target_gradient;
    const Eigen::VectorXd reduced_gradient = basis.transpose() * full_gradient;
    const double gradient_norm = reduced_gradient.norm();
    if (gradient_norm < options.gradient_tolerance) {
      result.point = current;
      result.gradient_norm = gradient_norm;
      result.divergence = clamp_small_negative(value);
      return result;
    }
    if (result.iterations >= options.max_iterations) {
      throw Error(ErrorKind::ProjectionNoConvergence,
                  "projection onto M did not converge within " +
                      std::to_string(options.max_iterations) + " iterations");
    }

    const Eigen::MatrixXd reduced_hessian =
        basis.transpose() * phibar_hessian(current) * basis;
    Eigen::LLT<Eigen::MatrixXd> llt(reduced_hessian);
    Eigen::VectorXd step_reduced =
        llt.info() == Eigen::Success ? Eigen::VectorXd(-llt.solve(reduced_gradient))
                                     : Eigen::VectorXd(-reduced_gradient);
    double slope = reduced_gradient.dot(step_reduced);
    if (!(slope < 0.0)) {
      step_reduced = -reduced_gradient;
      slope = -gradient_norm * gradient_norm;
    }
    const Eigen::VectorXd step = basis * step_reduced;

    // Largest step keeping every coordinate above min_coordinate.
    double alpha = 1.0;
    double blocking = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < step.size(); ++i) {
      if (step[i] < 0.0) {
        const double limit = 0.99 *
                             std::max(0.0, zeta[i] - options.min_coordinate) /
                             -step[i];
        if (limit < alpha) {
          alpha = limit;
          blocking = zeta[i];
        }
      }
    }
    // The objective stays bounded as a state loses all of its mass, so the
    // infimum over M can sit on the boundary where no interior point attains it.
    if (blocking <= 1e3 * options.min_coordinate) {
      throw Error(ErrorKind::ProjectionNoConvergence,
                  "projection onto M runs into the boundary of the positive "
                  "orthant; the infimum is not attained in M");
    }

    // Armijo backtracking; the slack absorbs rounding once the objective has
    // converged to machine precision.
    const double slack = 1e-15 * std::max(1.0, std::abs(value));
    Eigen::VectorXd candidate;
    double candidate_value = value;
    bool accepted = false;
    while (alpha > 1e-20) {
      candidate = zeta + alpha * step;
      candidate_value = objective(candidate);
      if (candidate_value <= value + options.armijo * alpha * slope + slack) {
        accepted = true;
        break;
      }
      alpha *= options.backtrack;
    }
    if (!accepted) {
      throw Error(ErrorKind::ProjectionNoConvergence,
                  "line search failed during projection onto M");
    }

    // Remove constraint drift accumulated by rounding.
    candidate -= restore.solve(constraints * candidate - targets);
    zeta = candidate;
    value = objective(zeta);
    result.objective_trace.push_back(value);
    ++result.iterations;
  }
}

GoodnessOfFit goodness_of_fit_statistic(const StandardConvexFunction& F,
                                        const ExpectationPoint& empirical,
                                        const EdgeFunction& model,
                                        std::size_t n) {
  if (!is_in_Mtilde(empirical)) {
    throw Error(ErrorKind::NotInMtilde, "empirical measure must have unit mass");
  }
  if (!is_positive_transition_measure(model)) {
    throw Error(ErrorKind::NotTransitionProbability,
                "model must be a positive transition measure (r = 1)");
  }
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument, "sample size must be at least 2");
  }
  GoodnessOfFit out;
  out.divergence = f_divergence(F, taubar(empirical), model);
  out.statistic = 2.0 * static_cast<double>(n - 1) * out.divergence;
  return out;
}

}  // namespace ptm
