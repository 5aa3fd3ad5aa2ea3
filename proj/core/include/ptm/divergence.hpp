#pragma once

#include <Eigen/Core>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptm/edge_vector.hpp"

namespace ptm {

/// Strictly convex F on (0, inf) with F(1) = F'(1) = 0 and F''(1) = 1.
struct StandardConvexFunction {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> deriv1;
  std::function<double(double)> deriv2;
};

/// Runs the registration checks: normalization at 1 (to 1e-12), F'' > 0 on
/// t = 2^k for -6 <= k <= 6, and agreement of F', F'' with central finite
/// differences of F on the same grid (1e-6 relative). Returns a description
/// of the first failed check, or nullopt.
std::optional<std::string> check_generator(const StandardConvexFunction& F);

/// KL (-log t + t - 1), chi2 ((t - 1)^2 / 2), hellinger (2 (sqrt t - 1)^2).
std::vector<StandardConvexFunction> builtin_generators();

/// Name -> generator lookup. Fill it once, then share it read-only.
class GeneratorRegistry {
 public:
  /// A registry holding builtin_generators().
  static GeneratorRegistry with_builtins();

  /// Throws Error{InvalidGenerator} if the checks fail or the name is taken.
  void add(StandardConvexFunction F);
  /// Throws Error{InvalidGenerator} for an unknown name.
  const StandardConvexFunction& get(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, StandardConvexFunction> generators_;
};

/// Values in [-1e-12, 0) are reported as 0.
double clamp_small_negative(double value);

/// D_F(f, g) = sum mu_f(x) f(x,y) F((g(x,y)/r(g)) / (f(x,y)/r(f))).
/// Throws Error{GraphMismatch}; propagates Error{NoConvergence}.
double f_divergence(const StandardConvexFunction& F, const EdgeFunction& f,
                    const EdgeFunction& g);

/// sum mu_{w1}(x) w1(x,y) log(w1(x,y) / w2(x,y)) for w1, w2 in W.
/// Throws Error{NotTransitionProbability, GraphMismatch}.
double nagaoka_divergence(const EdgeFunction& w1, const EdgeFunction& w2);

/// Bregman divergence of the potential phibar, in closed form:
///   sum eta log(eta/zeta) - sum_x eta_x log(eta^x/zeta^x)
///     + sum_x eta^x zeta_x / zeta^x - r(eta).
/// Throws Error{GraphMismatch}.
double bregman_divergence(const ExpectationPoint& eta,
                          const ExpectationPoint& zeta);
/// Same value without the small-negative clamp.
double bregman_divergence_unclamped(const ExpectationPoint& eta,
                                    const ExpectationPoint& zeta);

/// Symmetric tensor h_F(X, Y) induced by D_F at f, from the analytic
/// derivative of f / r(f) (independent of F since F''(1) = 1).
/// Throws Error{GraphMismatch} for tangent vectors of the wrong length.
double induced_tensor(const StandardConvexFunction& F, const EdgeFunction& f,
                      const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

/// |E| x |E| Gram matrix of h_F in the coordinate basis.
Eigen::MatrixXd induced_gram(const StandardConvexFunction& F,
                             const EdgeFunction& f);

struct NullSpace {
  std::size_t dimension = 0;
  /// Unit eigenvector of the smallest eigenvalue.
  Eigen::VectorXd direction;
  /// Ascending.
  Eigen::VectorXd eigenvalues;
};

/// Counts eigenvalues of the Gram matrix with |lambda| <= tol * lambda_max.
NullSpace null_space(const StandardConvexFunction& F, const EdgeFunction& f,
                     double tol = 1e-9);
std::size_t null_space_dimension(const StandardConvexFunction& F,
                                 const EdgeFunction& f, double tol = 1e-9);

}  // namespace ptm
