#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "ptm/edge_vector.hpp"

namespace ptm {

/// Perron-Frobenius data of A(f).
struct SpectralData {
  double root = 0.0;
  /// Positive left eigenvector, sums to 1: the stationary distribution mu_f.
  Eigen::VectorXd left;
  /// Positive right eigenvector, sums to 1.
  Eigen::VectorXd right;
  std::size_t iterations = 0;
};

struct PerronOptions {
  /// Stop once successive normalized iterates agree to this max-norm bound.
  double tolerance = 1e-14;
  std::size_t max_iterations = 1'000'000;
};

/// Dense |X| x |X| matrix with f(i, j) on edges and 0 elsewhere.
Eigen::MatrixXd matrix_of(const EdgeFunction& f);

/// Power iteration on A(f) + cI, where the shift c is the largest row sum of
/// A(f). The shifted matrix is primitive, so periodic graphs converge too.
/// The root is the two-sided Rayleigh quotient of the converged vectors.
/// Throws Error{NoConvergence} when the iteration budget runs out.
SpectralData perron(const EdgeFunction& f, const PerronOptions& options = {});

/// d r / d f(s, t) = mu_s v_t / <mu, v>.
double root_derivative(const EdgeFunction& f, Edge edge);
double root_derivative(const SpectralData& spectral, Edge edge);

/// All partial derivatives of r in canonical edge order.
Eigen::VectorXd root_gradient(const EdgeFunction& f,
                              const SpectralData& spectral);

/// Pointwise a * f. Throws Error{NonpositiveScale} unless a > 0 is finite.
EdgeFunction scale(const EdgeFunction& f, double a);

}  // namespace ptm
