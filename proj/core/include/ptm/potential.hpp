#pragma once

#include <Eigen/Core>
#include <optional>

#include "ptm/coordinates.hpp"

namespace ptm {

/// phibar(eta) = sum eta_xy log eta_xy - sum_x eta_x log eta^x.
/// Homogeneous of degree 1; its Bregman divergence is the KL F-divergence
/// pulled back through tbar.
double phibar(const ExpectationPoint& eta);

/// d phibar / d eta_xy = log eta_xy - log eta^x - eta_y / eta^y + 1.
Eigen::VectorXd phibar_gradient(const ExpectationPoint& eta);

/// Closed-form second derivatives
///   delta_su delta_tv / eta_st - delta_sv / eta^s
///     - (delta_tu eta^t - delta_tv eta_t) / (eta^t)^2
/// for rows (s,t) and columns (u,v), exactly as assembled (no symmetrization).
Eigen::MatrixXd phibar_hessian_raw(const ExpectationPoint& eta);

/// Symmetrized (H + H^T)/2 of the raw Hessian. Throws std::logic_error if the
/// raw matrix is asymmetric beyond 1e-10 relative to its largest entry.
/// The kernel contains eta itself.
Eigen::MatrixXd phibar_hessian(const ExpectationPoint& eta);

/// |E| x (|E|-1) Jacobian of the affine chart of M-tilde that drops the
/// coordinate `eliminated` and solves the unit-mass condition for it.
Eigen::MatrixXd mtilde_chart_jacobian(std::size_t num_edges,
                                      std::size_t eliminated);

/// Hessian of phibar restricted to M-tilde in the chart above. The default
/// eliminated edge is the lexicographically last one.
/// Throws Error{NotInMtilde, InvalidArgument}.
Eigen::MatrixXd restricted_hessian(const ExpectationPoint& eta,
                                   std::optional<Edge> eliminated = std::nullopt);

/// phihat(eta) = sum eta_xy log eta_xy - sum_x eta_x log eta_x.
double phihat(const ExpectationPoint& eta);

}  // namespace ptm
