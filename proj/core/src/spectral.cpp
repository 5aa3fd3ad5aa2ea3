#include "ptm/spectral.hpp"

#include <cmath>
#include <string>

#include "ptm/errors.hpp"

namespace ptm {
namespace {

// Normalized power iteration x <- B x / sum(B x) from the uniform vector.
Eigen::VectorXd dominant_vector(const Eigen::MatrixXd& shifted,
                                const PerronOptions& options,
                                std::size_t& iterations) {
  const Eigen::Index n = shifted.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd next(n);
  for (std::size_t k = 1; k <= options.max_iterations; ++k) {
    next.noalias() = shifted * x;
    next /= next.sum();
    const double change = (next - x).cwiseAbs().maxCoeff();
    x.swap(next);
    if (change < options.tolerance) {
      iterations += k;
      return x;
    }
  }
  throw Error(ErrorKind::NoConvergence,
              "power iteration did not converge within " +
                  std::to_string(options.max_iterations) + " iterations");
}

}  // namespace

Eigen::MatrixXd matrix_of(const EdgeFunction& f) {
  const auto n = static_cast<Eigen::Index>(f.graph().num_states());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  const auto edges = f.graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    a(static_cast<Eigen::Index>(edges[i].from),
      static_cast<Eigen::Index>(edges[i].to)) = f[i];
  }
  return a;
}

SpectralData perron(const EdgeFunction& f, const PerronOptions& options) {
  const Eigen::MatrixXd a = matrix_of(f);
  const double shift = a.rowwise().sum().maxCoeff();
  Eigen::MatrixXd shifted = a;
  shifted.diagonal().array() += shift;

  SpectralData out;
  out.right = dominant_vector(shifted, options, out.iterations);
  const Eigen::MatrixXd shifted_t = shifted.transpose();
  out.left = dominant_vector(shifted_t, options, out.iterations);
  out.root = out.left.dot(a * out.right) / out.left.dot(out.right);
  return out;
}

double root_derivative(const SpectralData& spectral, Edge edge) {
  const auto s = static_cast<Eigen::Index>(edge.from);
  const auto t = static_cast<Eigen::Index>(edge.to);
  return spectral.left[s] * spectral.right[t] /
         spectral.left.dot(spectral.right);
}

double root_derivative(const EdgeFunction& f, Edge edge) {
  f.graph().index_of(edge);
  return root_derivative(perron(f), edge);
}

Eigen::VectorXd root_gradient(const EdgeFunction& f,
                              const SpectralData& spectral) {
  const auto edges = f.graph().edges();
  Eigen::VectorXd grad(static_cast<Eigen::Index>(edges.size()));
  const double norm = spectral.left.dot(spectral.right);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    grad[static_cast<Eigen::Index>(i)] =
        spectral.left[static_cast<Eigen::Index>(edges[i].from)] *
        spectral.right[static_cast<Eigen::Index>(edges[i].to)] / norm;
  }
  return grad;
}

EdgeFunction scale(const EdgeFunction& f, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorKind::NonpositiveScale,
                "scale factor must be positive, got " + std::to_string(a));
  }
  return EdgeFunction(f.graph_ptr(), a * f.values());
}

}  // namespace ptm
