#include "ptm/verify.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ptm/coordinates.hpp"
#include "ptm/divergence.hpp"
#include "ptm/inference.hpp"
#include "ptm/potential.hpp"
#include "ptm/random_instances.hpp"
#include "ptm/spectral.hpp"

namespace ptm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Tracker {
 public:
  void define(const std::string& name, double threshold) {
    index_[name] = checks_.size();
    checks_.push_back({name, 0, 0.0, threshold});
  }
  void record(const std::string& name, double error) {
    IdentityCheck& c = checks_.at(index_.at(name));
    ++c.cases;
    // NaN counts as a failure.
    if (!(error <= c.max_error)) c.max_error = std::isnan(error) ? kInf : error;
  }
  std::vector<IdentityCheck> take() { return std::move(checks_); }

 private:
  std::vector<IdentityCheck> checks_;
  std::map<std::string, std::size_t> index_;
};

double sup(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }
double op_inf_norm(const Eigen::MatrixXd& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::MatrixXd corrupted_hessian(const ExpectationPoint& eta) {
  const Eigen::VectorXd in = in_marginals(eta);
  const Eigen::VectorXd out = out_marginals(eta);
  const auto edges = eta.graph().edges();
  const auto n = static_cast<Eigen::Index>(edges.size());
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto [s, t] = edges[static_cast<std::size_t>(a)];
    const double in_t = in[static_cast<Eigen::Index>(t)];
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto [u, v] = edges[static_cast<std::size_t>(b)];
      double entry = a == b ? 1.0 / eta[static_cast<std::size_t>(a)] : 0.0;
      if (s == v) entry -= 1.0 / in[static_cast<Eigen::Index>(s)];
      double tail = 0.0;
      if (t == u) tail += in_t;
      if (t == v) tail += out[static_cast<Eigen::Index>(t)];  // sign flipped
      entry -= tail / (in_t * in_t);
      h(a, b) = entry;
    }
  }
  return h;
}

// The 4x4 matrix printed for the complete two-state graph, entry by entry.
Eigen::Matrix4d printed_hessian(const Eigen::Vector4d& e) {
  const double i0 = e[0] + e[2], i1 = e[1] + e[3];  // eta^0, eta^1
  const double o0 = e[0] + e[1], o1 = e[2] + e[3];  // eta_0, eta_1
  Eigen::Matrix4d h;
  h << 1 / e[0] - 1 / i0 - (i0 - o0) / (i0 * i0), -1 / i0, -1 / i0 + o0 / (i0 * i0), 0,
      -1 / i0, 1 / e[1] + o1 / (i1 * i1), -1 / i1 - 1 / i0, -1 / i1 + o1 / (i1 * i1),
      -1 / i0 + o0 / (i0 * i0), -1 / i1 - 1 / i0, 1 / e[2] + o0 / (i0 * i0), -1 / i1,
      0, -1 / i1 + o1 / (i1 * i1), -1 / i1, 1 / e[3] - 1 / i1 - (i1 - o1) / (i1 * i1);
  return h;
}

// The 3x3 restricted matrix printed for the chart (eta00, eta01, eta10).
Eigen::Matrix3d printed_restricted(const Eigen::Vector4d& e) {
  const double i0 = e[0] + e[2], i1 = e[1] + e[3];
  const double o0 = e[0] + e[1], o1 = e[2] + e[3];
  const double c = 1 / e[3] - 1 / (i0 * i1);
  const double m = o1 / (i1 * i1) + o0 / (i0 * i0);
  Eigen::Matrix3d h;
  h << 1 / e[3] + 1 / e[0] - 2 / (i0 * i1) + m, c, c + m,
      c, 1 / e[1] + 1 / e[3], c,
      c + m, c, 1 / e[3] + 1 / e[2] + m;
  return h;
}

// d^2/ds dt of D_F(f, f + sX + tY) at 0, central four-point stencil.
double contrast_second_slot(const StandardConvexFunction& F,
                            const EdgeFunction& f, const Eigen::VectorXd& X,
                            const Eigen::VectorXd& Y, double h) {
  auto at = [&](double s, double t) {
    return f_divergence(F, f,
                        EdgeFunction(f.graph_ptr(), f.values() + s * X + t * Y));
  };
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.passed(); });
}

VerifyReport run_identity_suite(const VerifyOptions& options) {
  Tracker t;
  t.define("closed_form_root", 1e-10);
  t.define("scaling_root", 1e-9);
  t.define("scaling_stationary", 1e-9);
  t.define("roundtrip_taubar_tbar", 1e-9);
  t.define("roundtrip_tbar_taubar", 1e-9);
  t.define("tbar_equivariance", 1e-10);
  t.define("bregman_equals_kl", 1e-8);
  t.define("restriction_identity", 1e-10);
  t.define("fdiv_nonnegative", 1e-12);
  t.define("fdiv_ray_zero", 1e-10);
  t.define("null_space_dimension", 0.0);
  t.define("null_direction", 1e-8);
  t.define("induced_tensor_fd", 1e-4);
  t.define("phibar_homogeneity", 1e-10);
  t.define("gradient_fd", 1e-6);
  t.define("hessian_fd", 1e-5);
  t.define("hessian_symmetry", 1e-10);
  t.define("hessian_kernel", 1e-9);
  t.define("two_state_hessian_4x4", 1e-10);
  t.define("two_state_hessian_3x3", 1e-10);
  t.define("wtilde_algebraic", 1e-9);
  t.define("projection_constraints", 1e-8);
  t.define("projection_pythagorean", 1e-6);

  const auto generators = builtin_generators();
  const StandardConvexFunction& kl = generators.front();
  const bool corrupt = options.fault == InjectedFault::HessianSign;
  auto hessian = [&](const ExpectationPoint& eta) {
    return corrupt ? corrupted_hessian(eta) : phibar_hessian(eta);
  };

  // Two-state fixtures.
  const GraphPtr two = complete_graph(2);
  UniformSource rng2(options.seed);
  for (std::size_t c = 0; c < options.cases * options.graphs; ++c) {
    const EdgeFunction f = random_edge_function(two, rng2);
    const double x = f[0], y = f[1], z = f[2], w = f[3];
    const double closed = (x + w + std::sqrt((x - w) * (x - w) + 4 * y * z)) / 2;
    t.record("closed_form_root", std::abs(perron(f).root - closed));

    const EdgeFunction n = normalize_to_measure(f);
    const bool inside = n[0] + n[3] < 2.0;
    t.record("wtilde_algebraic",
             inside ? std::abs((n[0] - 1) * (n[3] - 1) - n[1] * n[2]) : kInf);

    const ExpectationPoint eta = random_expectation(two, rng2, true);
    const Eigen::Vector4d e = eta.values();
    const Eigen::MatrixXd h = hessian(eta);
    t.record("two_state_hessian_4x4",
             (h - printed_hessian(e)).cwiseAbs().maxCoeff() /
                 printed_hessian(e).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd jac = mtilde_chart_jacobian(4, 3);
    const Eigen::MatrixXd restricted = jac.transpose() * h * jac;
    t.record("two_state_hessian_3x3",
             (restricted - printed_restricted(e)).cwiseAbs().maxCoeff() /
                 printed_restricted(e).cwiseAbs().maxCoeff());
  }

  for (std::size_t states = 2; states <= 8; ++states) {
    for (std::size_t gi = 0; gi < options.graphs; ++gi) {
      UniformSource rng(replication_seed(options.seed, 1000 * states + gi));
      const GraphPtr g = random_strong_graph(states, rng);
      for (std::size_t c = 0; c < options.cases; ++c) {
        const EdgeFunction f = random_edge_function(g, rng);
        const EdgeFunction other = random_edge_function(g, rng);
        const double a = 0.1 + 9.9 * rng.next();

        const SpectralData sf = perron(f);
        const EdgeFunction af = scale(f, a);
        const SpectralData saf = perron(af);
        t.record("scaling_root", std::abs(saf.root - a * sf.root) / (a * sf.root));
        t.record("scaling_stationary", sup(saf.left - sf.left));

        const ExpectationPoint tf = tbar(f, sf);
        t.record("roundtrip_taubar_tbar",
                 sup(taubar(tf).values() - f.values()) / sup(f.values()));
        const ExpectationPoint eta = random_expectation(g, rng);
        t.record("roundtrip_tbar_taubar",
                 sup(tbar(taubar(eta)).values() - eta.values()) / sup(eta.values()));
        t.record("tbar_equivariance",
                 sup(tbar(af, saf).values() - a * tf.values()) /
                     (a * sup(tf.values())));

        const double dkl = f_divergence(kl, f, other);
        t.record("bregman_equals_kl",
                 std::abs(bregman_divergence(tf, tbar(other)) - dkl) / (1 + dkl));

        const EdgeFunction w1 = random_transition(g, rng);
        const EdgeFunction w2 = random_transition(g, rng);
        const double d_f = f_divergence(kl, w1, w2);
        const double d_n = nagaoka_divergence(w1, w2);
        const double d_b = bregman_divergence(tbar(w1), tbar(w2));
        t.record("restriction_identity",
                 std::max({std::abs(d_f - d_n), std::abs(d_f - d_b),
                           std::abs(d_n - d_b)}));

        Eigen::VectorXd X(f.values().size()), Y(f.values().size());
        for (Eigen::Index i = 0; i < X.size(); ++i) {
          X[i] = (2 * rng.next() - 1) * f.values()[i];
          Y[i] = (2 * rng.next() - 1) * f.values()[i];
        }
        for (const auto& F : generators) {
          t.record("fdiv_nonnegative", std::max(0.0, -f_divergence(F, f, other)));
          t.record("fdiv_ray_zero", std::abs(f_divergence(F, f, af)));
          const NullSpace ns = null_space(F, f);
          t.record("null_space_dimension",
                   std::abs(static_cast<double>(ns.dimension) - 1.0));
          t.record("null_direction",
                   1.0 - std::abs(ns.direction.dot(f.values())) / f.values().norm());
          const double analytic = induced_tensor(F, f, X, Y);
          const double scale_xy = std::sqrt(induced_tensor(F, f, X, X) *
                                            induced_tensor(F, f, Y, Y));
          const double fd = contrast_second_slot(F, f, X, Y, 1e-4);
          t.record("induced_tensor_fd",
                   std::abs(analytic - fd) / std::max(std::abs(analytic), scale_xy));
        }

        const double phi = phibar(eta);
        const ExpectationPoint aeta(g, a * eta.values());
        t.record("phibar_homogeneity",
                 std::abs(phibar(aeta) - a * phi) / std::abs(a * phi));

        const Eigen::VectorXd grad = phibar_gradient(eta);
        const auto m = eta.values().size();
        Eigen::VectorXd fd_grad(m);
        Eigen::MatrixXd fd_hess(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
          const double h = 1e-6 * std::max(1.0, eta.values()[i]);
          Eigen::VectorXd up = eta.values(), down = eta.values();
          up[i] += h;
          down[i] -= h;
          const ExpectationPoint pu(g, up), pd(g, down);
          fd_grad[i] = (phibar(pu) - phibar(pd)) / (2 * h);
          fd_hess.col(i) = (phibar_gradient(pu) - phibar_gradient(pd)) / (2 * h);
        }
        t.record("gradient_fd", sup(grad - fd_grad) / sup(grad));
        const Eigen::MatrixXd h = hessian(eta);
        t.record("hessian_fd",
                 (h - fd_hess).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff());
        const Eigen::MatrixXd raw = corrupt ? h : phibar_hessian_raw(eta);
        t.record("hessian_symmetry", (raw - raw.transpose()).cwiseAbs().maxCoeff() /
                                         raw.cwiseAbs().maxCoeff());
        t.record("hessian_kernel", sup(h * eta.values()) / op_inf_norm(h));

        const ExpectationPoint target = perturbed_point_of_M(g, rng);
        const ProjectionResult proj = project_to_M(target);
        const ExpectationPoint& star = proj.point;
        t.record("projection_constraints",
                 std::max(std::abs(mass(star) - 1.0),
                          sup(out_marginals(star) - in_marginals(star))));
        const ExpectationPoint zeta = random_point_of_M(g, rng);
        const double total = bregman_divergence(zeta, target);
        const double split = bregman_divergence(zeta, star) +
                             bregman_divergence(star, target);
        t.record("projection_pythagorean", std::abs(total - split) / total);
      }
    }
  }
  return VerifyReport{t.take()};
}

}  // namespace ptm
