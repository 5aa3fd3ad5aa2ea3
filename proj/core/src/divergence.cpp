#include "ptm/divergence.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "ptm/coordinates.hpp"
#include "ptm/errors.hpp"
#include "ptm/spectral.hpp"

namespace ptm {
namespace {

constexpr double kNormalizationTol = 1e-12;
constexpr double kDerivativeTol = 1e-6;

std::string describe(const std::string& name, const std::string& what, double t,
                     double value) {
  std::ostringstream os;
  os.precision(17);
  os << "generator '" << name << "': " << what << " at t=" << t << " (got "
     << value << ")";
  return os.str();
}

void require_tangent(const ChainGraph& g, const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != g.num_edges()) {
    throw Error(ErrorKind::GraphMismatch,
                "tangent vector length does not match the edge count");
  }
}

// Columns are d(f/r)/d a_st, i.e. (delta r - f * dr/da_st) / r^2, so that
// row (x,y) of J times v is the derivative of f(x,y)/r(f) along v.
struct ProjectiveJacobian {
  Eigen::MatrixXd J;
  Eigen::VectorXd weights;  // mu_f(x) r(f)^2 / f(x, y)
};

ProjectiveJacobian projective_jacobian(const EdgeFunction& f) {
  const SpectralData sd = perron(f);
  const Eigen::VectorXd grad = root_gradient(f, sd);
  const double r = sd.root;
  ProjectiveJacobian out;
  out.J = -(f.values() * grad.transpose()) / (r * r);
  out.J.diagonal().array() += 1.0 / r;
  // Second derivative of F(u / (f/r)) in u contributes (r/f)^2 on top of mu f.
  out.weights = tbar(f, sd).values().array() * (r * r) /
                f.values().array().square();
  return out;
}

}  // namespace

std::optional<std::string> check_generator(const StandardConvexFunction& F) {
  if (F.name.empty()) return std::string("generator name is empty");
  if (!F.eval || !F.deriv1 || !F.deriv2) {
    return "generator '" + F.name + "': missing evaluator";
  }
  if (std::abs(F.eval(1.0)) > kNormalizationTol) {
    return describe(F.name, "F(1) != 0", 1.0, F.eval(1.0));
  }
  if (std::abs(F.deriv1(1.0)) > kNormalizationTol) {
    return describe(F.name, "F'(1) != 0", 1.0, F.deriv1(1.0));
  }
  if (std::abs(F.deriv2(1.0) - 1.0) > kNormalizationTol) {
    return describe(F.name, "F''(1) != 1", 1.0, F.deriv2(1.0));
  }
  for (int k = -6; k <= 6; ++k) {
    const double t = std::ldexp(1.0, k);
    const double d1 = F.deriv1(t);
    const double d2 = F.deriv2(t);
    if (!(d2 > 0.0)) return describe(F.name, "F'' not positive", t, d2);

    const double h1 = 1e-5 * t;
    const double fd1 = (F.eval(t + h1) - F.eval(t - h1)) / (2.0 * h1);
    if (std::abs(fd1 - d1) > kDerivativeTol * std::max(1.0, std::abs(d1))) {
      return describe(F.name, "F' disagrees with finite differences", t, d1);
    }
    // Richardson-extrapolated second difference: O(h^4) truncation, so the
    // step can stay large enough for rounding not to dominate at small t.
    auto second_difference = [&](double h) {
      return (F.eval(t + h) - 2.0 * F.eval(t) + F.eval(t - h)) / (h * h);
    };
    const double h2 = 2e-3 * t;
    const double fd2 = (4.0 * second_difference(0.5 * h2) - second_difference(h2)) / 3.0;
    if (std::abs(fd2 - d2) > kDerivativeTol * std::max(1.0, std::abs(d2))) {
      return describe(F.name, "F'' disagrees with finite differences", t, d2);
    }
  }
  return std::nullopt;
}

std::vector<StandardConvexFunction> builtin_generators() {
  std::vector<StandardConvexFunction> out;
  out.push_back({"kl", [](double t) { return -std::log(t) + (t - 1.0); },
                 [](double t) { return 1.0 - 1.0 / t; },
                 [](double t) { return 1.0 / (t * t); }});
  out.push_back({"chi2", [](double t) { return 0.5 * (t - 1.0) * (t - 1.0); },
                 [](double t) { return t - 1.0; },
                 [](double) { return 1.0; }});
  out.push_back({"hellinger",
                 [](double t) {
                   const double s = std::sqrt(t) - 1.0;
                   return 2.0 * s * s;
                 },
                 [](double t) { return 2.0 - 2.0 / std::sqrt(t); },
                 [](double t) { return 1.0 / (t * std::sqrt(t)); }});
  return out;
}

GeneratorRegistry GeneratorRegistry::with_builtins() {
  GeneratorRegistry registry;
  for (auto& F : builtin_generators()) registry.add(std::move(F));
  return registry;
}

void GeneratorRegistry::add(StandardConvexFunction F) {
  if (auto failure = check_generator(F)) {
    throw Error(ErrorKind::InvalidGenerator, *failure);
  }
  if (generators_.count(F.name) != 0) {
    throw Error(ErrorKind::InvalidGenerator,
                "generator '" + F.name + "' is already registered");
  }
  const std::string key = F.name;
  generators_.emplace(key, std::move(F));
}

const StandardConvexFunction& GeneratorRegistry::get(
    const std::string& name) const {
  auto it = generators_.find(name);
  if (it == generators_.end()) {
    throw Error(ErrorKind::InvalidGenerator, "unknown generator '" + name + "'");
  }
  return it->second;
}

bool GeneratorRegistry::contains(const std::string& name) const {
  return generators_.count(name) != 0;
}

std::vector<std::string> GeneratorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, F] : generators_) out.push_back(name);
  return out;
}

double clamp_small_negative(double value) {
  return (value < 0.0 && value >= -1e-12) ? 0.0 : value;
}

double f_divergence(const StandardConvexFunction& F, const EdgeFunction& f,
                    const EdgeFunction& g) {
  require_same_graph(f.graph(), g.graph());
  const SpectralData sf = perron(f);
  const double rg = perron(g).root;
  const auto edges = f.graph().edges();
  double sum = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double ratio = (g[i] / rg) / (f[i] / sf.root);
    sum += sf.left[static_cast<Eigen::Index>(edges[i].from)] * f[i] *
           F.eval(ratio);
  }
  return clamp_small_negative(sum);
}

double nagaoka_divergence(const EdgeFunction& w1, const EdgeFunction& w2) {
  require_same_graph(w1.graph(), w2.graph());
  if (!is_transition_probability(w1) || !is_transition_probability(w2)) {
    throw Error(ErrorKind::NotTransitionProbability,
                "Nagaoka divergence needs row-stochastic arguments");
  }
  const SpectralData s1 = perron(w1);
  const auto edges = w1.graph().edges();
  double sum = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    sum += s1.left[static_cast<Eigen::Index>(edges[i].from)] * w1[i] *
           std::log(w1[i] / w2[i]);
  }
  return clamp_small_negative(sum);
}

double bregman_divergence_unclamped(const ExpectationPoint& eta,
                                    const ExpectationPoint& zeta) {
  require_same_graph(eta.graph(), zeta.graph());
  const Eigen::VectorXd eta_in = in_marginals(eta);
  const Eigen::VectorXd eta_out = out_marginals(eta);
  const Eigen::VectorXd zeta_in = in_marginals(zeta);
  const Eigen::VectorXd zeta_out = out_marginals(zeta);

  double sum = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    sum += eta[i] * std::log(eta[i] / zeta[i]);
  }
  for (Eigen::Index x = 0; x < eta_in.size(); ++x) {
    sum -= eta_out[x] * std::log(eta_in[x] / zeta_in[x]);
    sum += eta_in[x] * zeta_out[x] / zeta_in[x];
  }
  return sum - mass(eta);
}

double bregman_divergence(const ExpectationPoint& eta,
                          const ExpectationPoint& zeta) {
  return clamp_small_negative(bregman_divergence_unclamped(eta, zeta));
}

double induced_tensor(const StandardConvexFunction& F, const EdgeFunction& f,
                      const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  (void)F;
  require_tangent(f.graph(), X);
  require_tangent(f.graph(), Y);
  const ProjectiveJacobian pj = projective_jacobian(f);
  const Eigen::VectorXd jx = pj.J * X;
  const Eigen::VectorXd jy = pj.J * Y;
  return (pj.weights.array() * jx.array() * jy.array()).sum();
}

Eigen::MatrixXd induced_gram(const StandardConvexFunction& F,
                             const EdgeFunction& f) {
  (void)F;
  const ProjectiveJacobian pj = projective_jacobian(f);
  Eigen::MatrixXd gram = pj.J.transpose() * pj.weights.asDiagonal() * pj.J;
  return 0.5 * (gram + gram.transpose());
}

NullSpace null_space(const StandardConvexFunction& F, const EdgeFunction& f,
                     double tol) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      induced_gram(F, f));
  NullSpace out;
  out.eigenvalues = solver.eigenvalues();
  out.direction = solver.eigenvectors().col(0);
  const double largest = out.eigenvalues.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    if (std::abs(out.eigenvalues[i]) <= tol * largest) ++out.dimension;
  }
  return out;
}

std::size_t null_space_dimension(const StandardConvexFunction& F,
                                 const EdgeFunction& f, double tol) {
  return null_space(F, f, tol).dimension;
}

}  // namespace ptm
