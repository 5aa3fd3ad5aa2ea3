#pragma once

#include <optional>

#include "ptm/edge_vector.hpp"
#include "ptm/spectral.hpp"

namespace ptm {

inline constexpr double kMembershipTolerance = 1e-9;

/// r(eta): total mass of an expectation point.
double mass(const ExpectationPoint& eta);
/// eta^x: sum of eta over edges entering x. Throws Error{OutOfRangeState}.
double in_marginal(const ExpectationPoint& eta, State x);
/// eta_x: sum of eta over edges leaving x. Throws Error{OutOfRangeState}.
double out_marginal(const ExpectationPoint& eta, State x);
/// All in- (resp. out-) marginals indexed by state.
Eigen::VectorXd in_marginals(const ExpectationPoint& eta);
Eigen::VectorXd out_marginals(const ExpectationPoint& eta);

/// Chart F+ -> M-bar: eta(x, y) = mu_f(x) f(x, y).
ExpectationPoint tbar(const EdgeFunction& f);
ExpectationPoint tbar(const EdgeFunction& f, const SpectralData& spectral);

/// Inverse chart: f(x, y) = r(eta) eta(x, y) / eta^x.
EdgeFunction taubar(const ExpectationPoint& eta);

/// Membership in W: every outgoing row sum within tol of 1.
bool is_transition_probability(const EdgeFunction& f,
                               double tol = kMembershipTolerance);
/// Membership in W-tilde: |r(f) - 1| <= tol.
bool is_positive_transition_measure(const EdgeFunction& f,
                                    double tol = kMembershipTolerance);
/// f / r(f), the radial retraction onto W-tilde.
EdgeFunction normalize_to_measure(const EdgeFunction& f);

/// Membership in M-tilde (unit mass).
bool is_in_Mtilde(const ExpectationPoint& eta,
                  double tol = kMembershipTolerance);
/// Membership in M (unit mass and eta_x = eta^x for every state).
bool is_in_M(const ExpectationPoint& eta, double tol = kMembershipTolerance);

}  // namespace ptm
