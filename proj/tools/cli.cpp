#include "cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "ptm/chain_io.hpp"
#include "ptm/coordinates.hpp"
#include "ptm/divergence.hpp"
#include "ptm/errors.hpp"
#include "ptm/inference.hpp"
#include "ptm/potential.hpp"
#include "ptm/spectral.hpp"
#include "ptm/verify.hpp"
#include "report.hpp"

namespace ptm::cli {
namespace {

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::TooFewStates:
    case ErrorKind::OutOfRangeState:
    case ErrorKind::DuplicateEdge:
    case ErrorKind::NotStronglyConnected:
    case ErrorKind::InvalidGenerator:
      return ExitCode::Usage;
    case ErrorKind::NonpositiveScale:
    case ErrorKind::GraphMismatch:
    case ErrorKind::NotTransitionProbability:
    case ErrorKind::NotInMtilde:
    case ErrorKind::UnobservedEdge:
    case ErrorKind::UnvisitedState:
    case ErrorKind::BoundaryEstimate:
      return ExitCode::Domain;
    case ErrorKind::NoConvergence:
    case ErrorKind::ProjectionNoConvergence:
      return ExitCode::NoConvergence;
  }
  return ExitCode::Usage;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

void add_matrix(Report& report, const std::string& key, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    report.result(key + ".row" + std::to_string(i), Eigen::VectorXd(m.row(i).transpose()));
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  report.result(key + ".eigenvalues", solver.eigenvalues());
}

struct Settings {
  std::string format = "kv";
  // spectral / divergence / potential / project
  std::string file;
  std::string other_file;
  std::string generator = "kl";
  bool hessian = false;
  bool restricted = false;
  std::vector<std::size_t> eliminate;
  // sample / estimate / verify
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string initial = "stationary";
  std::string output;
  double smoothing = 0.0;
  std::size_t graphs = 2;
  std::size_t cases = 10;
  std::string fault = "none";
};

InitialState parse_initial(const std::string& text) {
  if (text == "stationary") return InitialState::stationary();
  std::size_t pos = 0;
  try {
    const unsigned long long x = std::stoull(text, &pos);
    if (pos == text.size()) return InitialState::fixed(static_cast<State>(x));
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Parse, "--initial must be 'stationary' or a state index");
}

void cmd_spectral(const Settings& s, Report& report) {
  report.input("file", s.file);
  const EdgeFunction f = load_chain(s.file).edge_function();
  const SpectralData sd = perron(f);
  report.result("root", sd.root);
  report.result("mu", sd.left);
  report.result("v", sd.right);
  report.result("in_W", is_transition_probability(f));
  report.result("in_Wtilde", is_positive_transition_measure(f));
}

void cmd_divergence(const Settings& s, Report& report) {
  report.input("file_f", s.file);
  report.input("file_g", s.other_file);
  report.input("generator", s.generator);
  const GeneratorRegistry registry = GeneratorRegistry::with_builtins();
  const StandardConvexFunction& F = registry.get(s.generator);
  const EdgeFunction f = load_chain(s.file).edge_function();
  const EdgeFunction g = load_chain(s.other_file).edge_function();
  report.result("divergence", f_divergence(F, f, g));
  if (is_transition_probability(f) && is_transition_probability(g)) {
    report.result("nagaoka", nagaoka_divergence(f, g));
  }
}

void cmd_potential(const Settings& s, Report& report) {
  report.input("file", s.file);
  report.input("hessian", s.hessian);
  report.input("restricted", s.restricted);
  const ExpectationPoint eta = load_chain(s.file).expectation_point();
  report.result("mass", mass(eta));
  report.result("in_Mtilde", is_in_Mtilde(eta));
  report.result("in_M", is_in_M(eta));
  report.result("phibar", phibar(eta));
  report.result("phihat", phihat(eta));
  report.result("gradient", phibar_gradient(eta));
  if (s.hessian) {
    const Eigen::MatrixXd h = phibar_hessian(eta);
    add_matrix(report, "hessian", h);
    report.result("hessian.kernel_residual",
                  (h * eta.values()).cwiseAbs().maxCoeff() /
                      h.cwiseAbs().rowwise().sum().maxCoeff());
  }
  if (s.restricted) {
    std::optional<Edge> eliminated;
    if (!s.eliminate.empty()) {
      if (s.eliminate.size() != 2) {
        throw Error(ErrorKind::Parse, "--eliminate takes two state indices");
      }
      eliminated = Edge{s.eliminate[0], s.eliminate[1]};
    }
    const Eigen::MatrixXd h = restricted_hessian(eta, eliminated);
    add_matrix(report, "restricted", h);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    report.result("restricted.min_eigenvalue", solver.eigenvalues().minCoeff());
  }
}

// Reference point of M used for the reported Pythagorean residual: tbar of
// the chain that moves uniformly along outgoing edges.
ExpectationPoint uniform_point_of_M(const GraphPtr& g) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(g->num_edges()));
  for (State x = 0; x < g->num_states(); ++x) {
    const auto out = g->outgoing(x);
    for (std::size_t i : out) {
      w[static_cast<Eigen::Index>(i)] = 1.0 / static_cast<double>(out.size());
    }
  }
  return tbar(EdgeFunction(g, w));
}

void cmd_project(const Settings& s, Report& report) {
  report.input("file", s.file);
  const ExpectationPoint eta = load_chain(s.file).expectation_point();
  const ProjectionResult proj = project_to_M(eta);
  const ExpectationPoint& star = proj.point;
  report.result("point", star.values());
  report.result("iterations", static_cast<std::int64_t>(proj.iterations));
  report.result("divergence", proj.divergence);
  report.result("gradient_norm", proj.gradient_norm);
  report.result("stationarity_residual",
                (out_marginals(star) - in_marginals(star)).cwiseAbs().maxCoeff());
  report.result("mass_residual", std::abs(mass(star) - 1.0));
  const ExpectationPoint zeta = uniform_point_of_M(eta.graph_ptr());
  const double total = bregman_divergence(zeta, eta);
  const double split = bregman_divergence(zeta, star) + bregman_divergence(star, eta);
  report.result("pythagorean_residual",
                total > 0.0 ? std::abs(total - split) / total : std::abs(total - split));
}

void cmd_sample(const Settings& s, Report& report) {
  report.input("file", s.file);
  report.input("n", static_cast<std::int64_t>(s.n));
  report.input("seed", static_cast<std::int64_t>(s.seed));
  report.input("initial", s.initial);
  const EdgeFunction w = load_chain(s.file).edge_function();
  const Trajectory t = sample_trajectory(w, s.n, s.seed, parse_initial(s.initial));
  std::string line = format_trajectory(t);
  if (!s.output.empty()) {
    std::ofstream out(s.output, std::ios::binary);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + s.output);
    out << line;
    report.result("output", s.output);
  }
  line.pop_back();
  report.result("trajectory", line);
}

void cmd_estimate(const Settings& s, Report& report) {
  report.input("file", s.file);
  report.input("n", static_cast<std::int64_t>(s.n));
  report.input("seed", static_cast<std::int64_t>(s.seed));
  report.input("initial", s.initial);
  report.input("smoothing", s.smoothing);
  const EdgeFunction truth = load_chain(s.file).edge_function();
  const Trajectory t = sample_trajectory(truth, s.n, s.seed, parse_initial(s.initial));
  const StandardConvexFunction kl = builtin_generators().front();

  const TransitionEstimate mle = mle_transition(t, s.smoothing);
  report.result("mle", mle.values);
  report.result("mle.boundary", mle.boundary);
  report.result("mle.max_error", (mle.values - truth.values()).cwiseAbs().maxCoeff());
  if (!mle.boundary) {
    report.result("mle.divergence_to_truth", f_divergence(kl, truth, mle.edge_function()));
  }

  const ExpectationPoint empirical = empirical_pair_measure(t);
  const ProjectionResult proj = project_to_M(empirical);
  const EdgeFunction projected = taubar(proj.point);
  report.result("empirical", empirical.values());
  report.result("projected", projected.values());
  report.result("projected.iterations", static_cast<std::int64_t>(proj.iterations));
  report.result("projected.max_error",
                (projected.values() - truth.values()).cwiseAbs().maxCoeff());
  report.result("projected.divergence_to_truth", f_divergence(kl, truth, projected));
  report.result("estimator_gap", (projected.values() - mle.values).cwiseAbs().maxCoeff());
  const GoodnessOfFit gof = goodness_of_fit_statistic(kl, empirical, truth, t.size());
  report.result("gof.divergence", gof.divergence);
  report.result("gof.statistic", gof.statistic);
}

void cmd_verify(const Settings& s, Report& report) {
  report.input("seed", static_cast<std::int64_t>(s.seed));
  report.input("graphs", static_cast<std::int64_t>(s.graphs));
  report.input("cases", static_cast<std::int64_t>(s.cases));
  report.input("inject_fault", s.fault);
  VerifyOptions options;
  options.seed = s.seed;
  options.graphs = s.graphs;
  options.cases = s.cases;
  if (s.fault == "hessian-sign") {
    options.fault = InjectedFault::HessianSign;
  } else if (s.fault != "none") {
    throw Error(ErrorKind::Parse, "unknown fault '" + s.fault + "'");
  }
  const VerifyReport result = run_identity_suite(options);
  std::size_t failed = 0;
  for (const IdentityCheck& c : result.checks) {
    report.result("check." + c.name,
                  std::string(c.passed() ? "pass" : "FAIL") + " max_error " +
                      format_double(c.max_error) + " threshold " +
                      format_double(c.threshold) + " cases " + std::to_string(c.cases));
    if (!c.passed()) ++failed;
  }
  report.result("failed", static_cast<std::int64_t>(failed));
  if (failed != 0) {
    report.fail(ExitCode::VerificationFailed, "VerificationFailed",
                std::to_string(failed) + " identity checks failed");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Information geometry of positive transition measures on a Markov chain", "ptm"};
  app.require_subcommand(1);
  app.add_option("--format", s.format, "Report format")
      ->check(CLI::IsMember({"kv", "json-lines"}));

  auto* spectral = app.add_subcommand("spectral", "Perron root and eigenvectors of A(f)");
  spectral->add_option("file", s.file, "Edge-function chain file")->required();

  auto* divergence = app.add_subcommand("divergence", "F-divergence D_F(f, g)");
  divergence->add_option("file_f", s.file, "Edge-function chain file for f")->required();
  divergence->add_option("file_g", s.other_file, "Edge-function chain file for g")->required();
  divergence->add_option("--generator", s.generator, "kl|chi2|hellinger");

  auto* potential = app.add_subcommand("potential", "Potentials, gradient and Hessians at eta");
  potential->add_option("file", s.file, "Expectation chain file")->required();
  potential->add_flag("--hessian", s.hessian, "Print the Hessian of phibar");
  potential->add_flag("--restricted", s.restricted, "Print the Hessian restricted to unit mass");
  potential->add_option("--eliminate", s.eliminate, "Edge X Y solved from the unit-mass condition")
      ->expected(2);

  auto* project = app.add_subcommand("project", "Bregman projection onto M");
  project->add_option("file", s.file, "Expectation chain file")->required();

  auto* sample = app.add_subcommand("sample", "Sample a trajectory from w");
  sample->add_option("file", s.file, "Transition-probability chain file")->required();
  sample->add_option("--n", s.n, "Trajectory length")->required();
  sample->add_option("--seed", s.seed, "Random seed")->required();
  sample->add_option("--initial", s.initial, "stationary or a state index");
  sample->add_option("--output", s.output, "Also write the trajectory file here");

  auto* estimate = app.add_subcommand("estimate", "MLE and projected estimates from a sample");
  estimate->add_option("file", s.file, "True transition-probability chain file")->required();
  estimate->add_option("--n", s.n, "Trajectory length")->required();
  estimate->add_option("--seed", s.seed, "Random seed")->required();
  estimate->add_option("--initial", s.initial, "stationary or a state index");
  estimate->add_option("--smoothing", s.smoothing, "Additive count smoothing (e.g. 0.5)");

  auto* verify = app.add_subcommand("verify", "Run the numerical identity suite");
  verify->add_option("--seed", s.seed, "Base seed")->required();
  verify->add_option("--graphs", s.graphs, "Random graphs per state count");
  verify->add_option("--cases", s.cases, "Random cases per graph");
  verify->add_option("--inject-fault", s.fault, "none|hessian-sign");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ptm: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  }

  const Format format = s.format == "json-lines" ? Format::JsonLines : Format::Kv;
  using Handler = std::function<void(const Settings&, Report&)>;
  const std::vector<std::pair<CLI::App*, Handler>> handlers = {
      {spectral, cmd_spectral}, {divergence, cmd_divergence},
      {potential, cmd_potential}, {project, cmd_project},
      {sample, cmd_sample}, {estimate, cmd_estimate}, {verify, cmd_verify}};

  for (const auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    Report report(sub->get_name());
    try {
      handler(s, report);
    } catch (const Error& e) {
      report.fail(exit_code_for(e.kind()), std::string(to_string(e.kind())), e.what());
      err << "ptm: error: " << e.what() << '\n';
    } catch (const std::logic_error& e) {
      report.fail(ExitCode::VerificationFailed, "InternalCheck", e.what());
      err << "ptm: error: " << e.what() << '\n';
    }
    report.render(out, format);
    return static_cast<int>(report.code());
  }
  return static_cast<int>(ExitCode::Usage);
}

}  // namespace ptm::cli
