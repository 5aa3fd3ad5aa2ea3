#include "ptm/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "ptm/errors.hpp"

namespace ptm {

double phibar(const ExpectationPoint& eta) {
  const Eigen::VectorXd in = in_marginals(eta);
  const Eigen::VectorXd out = out_marginals(eta);
  double sum = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) sum += eta[i] * std::log(eta[i]);
  for (Eigen::Index x = 0; x < in.size(); ++x) sum -= out[x] * std::log(in[x]);
  return sum;
}

Eigen::VectorXd phibar_gradient(const ExpectationPoint& eta) {
  const Eigen::VectorXd in = in_marginals(eta);
  const Eigen::VectorXd out = out_marginals(eta);
  const auto edges = eta.graph().edges();
  Eigen::VectorXd grad(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto x = static_cast<Eigen::Index>(edges[i].from);
    const auto y = static_cast<Eigen::Index>(edges[i].to);
    grad[static_cast<Eigen::Index>(i)] =
        std::log(eta[i]) - std::log(in[x]) - out[y] / in[y] + 1.0;
  }
  return grad;
}

Eigen::MatrixXd phibar_hessian_raw(const ExpectationPoint& eta) {
  const Eigen::VectorXd in = in_marginals(eta);
  const Eigen::VectorXd out = out_marginals(eta);
  const auto edges = eta.graph().edges();
  const auto n = static_cast<Eigen::Index>(edges.size());
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto s = edges[static_cast<std::size_t>(a)].from;
    const auto t = edges[static_cast<std::size_t>(a)].to;
    const double in_t = in[static_cast<Eigen::Index>(t)];
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto u = edges[static_cast<std::size_t>(b)].from;
      const auto v = edges[static_cast<std::size_t>(b)].to;
      double entry = 0.0;
      if (a == b) entry += 1.0 / eta[static_cast<std::size_t>(a)];
      if (s == v) entry -= 1.0 / in[static_cast<Eigen::Index>(s)];
      double tail = 0.0;
      if (t == u) tail += in_t;
      if (t == v) tail -= out[static_cast<Eigen::Index>(t)];
      entry -= tail / (in_t * in_t);
      h(a, b) = entry;
    }
  }
  return h;
}

Eigen::MatrixXd phibar_hessian(const ExpectationPoint& eta) {
  const Eigen::MatrixXd raw = phibar_hessian_raw(eta);
  const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
  const double asymmetry = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-10 * scale) {
    throw std::logic_error("phibar Hessian assembly is asymmetric");
  }
  return 0.5 * (raw + raw.transpose());
}

Eigen::MatrixXd mtilde_chart_jacobian(std::size_t num_edges,
                                      std::size_t eliminated) {
  if (eliminated >= num_edges || num_edges < 2) {
    throw Error(ErrorKind::InvalidArgument, "eliminated edge out of range");
  }
  const auto n = static_cast<Eigen::Index>(num_edges);
  const auto k = static_cast<Eigen::Index>(eliminated);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n - 1);
  for (Eigen::Index c = 0; c < n - 1; ++c) {
    jac(c < k ? c : c + 1, c) = 1.0;
    jac(k, c) = -1.0;
  }
  return jac;
}

Eigen::MatrixXd restricted_hessian(const ExpectationPoint& eta,
                                   std::optional<Edge> eliminated) {
  if (!is_in_Mtilde(eta)) {
    throw Error(ErrorKind::NotInMtilde,
                "restricted Hessian needs a point of unit mass");
  }
  const ChainGraph& g = eta.graph();
  const std::size_t k =
      eliminated ? g.index_of(*eliminated) : g.num_edges() - 1;
  const Eigen::MatrixXd jac = mtilde_chart_jacobian(g.num_edges(), k);
  const Eigen::MatrixXd h = jac.transpose() * phibar_hessian(eta) * jac;
  return 0.5 * (h + h.transpose());
}

double phihat(const ExpectationPoint& eta) {
  const Eigen::VectorXd out = out_marginals(eta);
  double sum = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) sum += eta[i] * std::log(eta[i]);
  for (Eigen::Index x = 0; x < out.size(); ++x) sum -= out[x] * std::log(out[x]);
  return sum;
}

}  // namespace ptm
