#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ptm {

enum class InjectedFault {
  None,
  /// Evaluates the Hessian with the sign of the delta_tv eta_t term flipped.
  HessianSign,
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Random strongly connected graphs per state count (2..8 states).
  std::size_t graphs = 2;
  /// Random instances per graph and identity.
  std::size_t cases = 10;
  InjectedFault fault = InjectedFault::None;
};

struct IdentityCheck {
  std::string name;
  std::size_t cases = 0;
  double max_error = 0.0;
  double threshold = 0.0;
  bool passed() const { return max_error <= threshold; }
};

struct VerifyReport {
  std::vector<IdentityCheck> checks;
  bool passed() const;
};

/// Runs the numerical identity suite: Perron root closed form and scaling,
/// chart roundtrips, Bregman = KL F-divergence, restriction to W, h_F null
/// space, potential homogeneity/gradient/Hessian, the two-state Hessian
/// fixtures, the W-tilde algebraic equation and the projection onto M.
/// Each check reports its largest observed error against a fixed threshold.
VerifyReport run_identity_suite(const VerifyOptions& options);

}  // namespace ptm
