#include "ptm/inference.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ptm/coordinates.hpp"
#include "ptm/divergence.hpp"
#include "ptm/errors.hpp"
#include "ptm/potential.hpp"
#include "ptm/random_instances.hpp"

namespace ptm {
namespace {

using testing::sup;
using testing::two_state_eta;
using testing::two_state_f;

GraphPtr two_cycle() { return testing::make_graph(2, {{0, 1}, {1, 0}}); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Parse;
}

TEST(Sampling, UniformSourceMapping) {
  // The C++ standard fixes the 10000th output of a default-seeded
  // mt19937_64 at 9981545732273789042.
  UniformSource u(5489);
  double last = 0;
  for (int i = 0; i < 10000; ++i) last = u.next();
  EXPECT_EQ(last, static_cast<double>(9981545732273789042ULL >> 11) * 0x1.0p-53);
  EXPECT_EQ(replication_seed(100, 7), 107u);
}

TEST(Sampling, DeterministicCycle) {
  const EdgeFunction w(two_cycle(), testing::vec({1, 1}));
  const Trajectory t = sample_trajectory(w, 5, 99, InitialState::fixed(0));
  EXPECT_EQ(t.states(), (std::vector<State>{0, 1, 0, 1, 0}));
}

TEST(Sampling, SeedDeterminesPath) {
  const EdgeFunction w = two_state_f(0.3, 0.7, 0.9, 0.1);
  const Trajectory a = sample_trajectory(w, 1000, 5, InitialState::stationary());
  const Trajectory b = sample_trajectory(w, 1000, 5, InitialState::stationary());
  const Trajectory c = sample_trajectory(w, 1000, 6, InitialState::stationary());
  EXPECT_EQ(a.states(), b.states());
  EXPECT_NE(a.states(), c.states());
}

TEST(Sampling, FrozenPrefix) {
  // Regression baseline for the documented generator and inverse-CDF rule.
  const EdgeFunction w = two_state_f(0.3, 0.7, 0.9, 0.1);
  const Trajectory t = sample_trajectory(w, 12, 7, InitialState::stationary());
  EXPECT_EQ(t.states(), (std::vector<State>{1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 0, 1}));
}

TEST(Sampling, Errors) {
  EXPECT_EQ(kind_of([] {
              sample_trajectory(two_state_f(1, 1, 1, 1), 10, 1, InitialState::stationary());
            }),
            ErrorKind::NotTransitionProbability);
  EXPECT_THROW(sample_trajectory(two_state_f(0.5, 0.5, 0.5, 0.5), 1, 1,
                                 InitialState::stationary()),
               Error);
  EXPECT_THROW(Trajectory(two_cycle(), {0, 0}), Error);
  EXPECT_THROW(Trajectory(two_cycle(), {0, 2}), Error);
}

TEST(Sampling, LawOfLargeNumbers) {
  const Trajectory t = sample_trajectory(two_state_f(0.5, 0.5, 0.5, 0.5), 100000,
                                         3, InitialState::stationary());
  double zeros = 0;
  for (State s : t.states()) zeros += (s == 0);
  EXPECT_NEAR(zeros / 100000, 0.5, 0.02);
}

TEST(Empirical, CountsPairs) {
  const Trajectory t(two_cycle(), {0, 1, 0, 1, 0});
  const ExpectationPoint eta = empirical_pair_measure(t);
  EXPECT_LE(sup(eta.values() - testing::vec({0.5, 0.5})), 1e-15);
  EXPECT_DOUBLE_EQ(mass(eta), 1.0);

  const Trajectory partial(testing::two_state(), {0, 0, 1, 0});
  try {
    empirical_pair_measure(partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnobservedEdge);
    EXPECT_NE(std::string(e.what()).find("(1,1)"), std::string::npos) << e.what();
  }
}

TEST(Mle, CycleAndBoundary) {
  const TransitionEstimate cyc = mle_transition(Trajectory(two_cycle(), {0, 1, 0, 1, 0}));
  EXPECT_FALSE(cyc.boundary);
  EXPECT_TRUE(is_transition_probability(cyc.edge_function()));

  const TransitionEstimate est =
      mle_transition(Trajectory(testing::two_state(), {0, 0, 1, 0}));
  EXPECT_LE(sup(est.values - testing::vec({0.5, 0.5, 1.0, 0.0})), 1e-15);
  EXPECT_TRUE(est.boundary);
  EXPECT_EQ(kind_of([&] { est.edge_function(); }), ErrorKind::BoundaryEstimate);

  const TransitionEstimate smooth =
      mle_transition(Trajectory(testing::two_state(), {0, 0, 1, 0}), 0.5);
  EXPECT_FALSE(smooth.boundary);
  EXPECT_LE(sup(smooth.values - testing::vec({0.5, 0.5, 0.75, 0.25})), 1e-15);
}

TEST(Mle, UnvisitedState) {
  const GraphPtr g = testing::make_graph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}});
  EXPECT_EQ(kind_of([&] { mle_transition(Trajectory(g, {0, 1, 0})); }),
            ErrorKind::UnvisitedState);
}

TEST(Projection, PointOfMIsFixed) {
  const ExpectationPoint eta = two_state_eta(0.25, 0.25, 0.25, 0.25);
  const ProjectionResult r = project_to_M(eta);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_LE(sup(r.point.values() - eta.values()), 1e-15);
  EXPECT_EQ(r.divergence, 0.0);
}

TEST(Projection, OffStationaryTwoStatePoint) {
  // Minimizer (a, b, b, 1 - a - 2b) from a 50-digit Newton solve of the
  // reduced optimality conditions.
  const double a = 0.25136814033007763768;
  const double b = 0.24999813329637765271;
  const ExpectationPoint eta = two_state_eta(0.3, 0.3, 0.2, 0.2);
  const ProjectionResult r = project_to_M(eta);
  EXPECT_LE(sup(r.point.values() - testing::vec({a, b, b, 1 - a - 2 * b})), 1e-10);
  EXPECT_NEAR(r.divergence, 0.020407263838944471158, 1e-12);
  EXPECT_TRUE(is_in_M(r.point));
}

TEST(Projection, Errors) {
  EXPECT_EQ(kind_of([] { project_to_M(two_state_eta(0.5, 0.5, 0.5, 0.5)); }),
            ErrorKind::NotInMtilde);
  ProjectionOptions tight;
  tight.max_iterations = 0;
  EXPECT_EQ(kind_of([&] { project_to_M(two_state_eta(0.3, 0.3, 0.2, 0.2), tight); }),
            ErrorKind::ProjectionNoConvergence);
}

TEST(Projection, TangentBasisSpansStationaryDirections) {
  UniformSource rng(61);
  for (std::size_t n = 2; n <= 8; ++n) {
    const GraphPtr g = random_strong_graph(n, rng);
    const Eigen::MatrixXd basis = stationary_tangent_basis(*g);
    // |E| - |X| free directions: |X| - 1 independent balance equations plus
    // the mass equation.
    EXPECT_EQ(static_cast<std::size_t>(basis.cols()), g->num_edges() - n);
    EXPECT_LE((basis.transpose() * basis -
               Eigen::MatrixXd::Identity(basis.cols(), basis.cols()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
      const Eigen::VectorXd col = basis.col(k);
      EXPECT_NEAR(col.sum(), 0.0, 1e-12);
      for (State x = 0; x < n; ++x) {
        double out = 0, in = 0;
        for (std::size_t i : g->outgoing(x)) out += col[static_cast<Eigen::Index>(i)];
        for (std::size_t i : g->incoming(x)) in += col[static_cast<Eigen::Index>(i)];
        EXPECT_NEAR(out, in, 1e-12);
      }
    }
  }
}

TEST(ProjectionProperty, OptimalityIdempotenceAndPythagoras) {
  UniformSource rng(62);
  for (std::size_t n = 2; n <= 8; ++n) {
    const GraphPtr g = random_strong_graph(n, rng);
    const Eigen::MatrixXd basis = stationary_tangent_basis(*g);
    for (int c = 0; c < 5; ++c) {
      const ExpectationPoint eta = perturbed_point_of_M(g, rng);
      const ProjectionResult r = project_to_M(eta);
      const ExpectationPoint& star = r.point;
      EXPECT_LE(std::abs(mass(star) - 1), 1e-10);
      EXPECT_LE(sup(out_marginals(star) - in_marginals(star)), 1e-8);
      const Eigen::VectorXd grad = phibar_gradient(star) - phibar_gradient(eta);
      EXPECT_LE((basis.transpose() * grad).norm(), 1e-8);
      // Monotone up to rounding in the objective itself.
      for (std::size_t k = 1; k < r.objective_trace.size(); ++k) {
        const double prev = r.objective_trace[k - 1];
        EXPECT_LE(r.objective_trace[k], prev + 1e-15 * std::max(1.0, std::abs(prev)));
      }
      const ProjectionResult again = project_to_M(star);
      EXPECT_LE(sup(again.point.values() - star.values()), 1e-9);
      for (int z = 0; z < 20; ++z) {
        const ExpectationPoint zeta = random_point_of_M(g, rng);
        const double total = bregman_divergence(zeta, eta);
        const double split = bregman_divergence(zeta, star) + bregman_divergence(star, eta);
        EXPECT_LE(std::abs(total - split), 1e-6 * total);
      }
    }
  }
}

// Far-away targets can have their infimum on the boundary of the orthant.
TEST(ProjectionProperty, BoundaryInfimumIsReported) {
  const GraphPtr g = testing::make_graph(
      3, {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {2, 0}, {2, 2}});
  const ExpectationPoint eta(
      g, testing::vec({0.0255903, 0.708208, 0.193662, 0.0200126, 0.0245732, 0.0279545}));
  const ExpectationPoint unit(g, eta.values() / eta.values().sum());
  EXPECT_EQ(kind_of([&] { project_to_M(unit); }), ErrorKind::ProjectionNoConvergence);
}

TEST(Estimation, MleAndProjectedEmpiricalAgree) {
  const EdgeFunction w = two_state_f(0.3, 0.7, 0.9, 0.1);
  for (std::uint64_t i = 0; i < 3; ++i) {
    const Trajectory t =
        sample_trajectory(w, 100000, replication_seed(2024, i), InitialState::stationary());
    const Eigen::VectorXd mle = mle_transition(t).edge_function().values();
    const Eigen::VectorXd projected =
        taubar(project_to_M(empirical_pair_measure(t)).point).values();
    EXPECT_LE(sup(mle - w.values()), 0.02);
    EXPECT_LE(sup(projected - w.values()), 0.02);
    EXPECT_LE(sup(mle - projected), 0.01);
    EXPECT_LE(sup(empirical_pair_measure(t).values() - tbar(w).values()), 0.02);
  }
}

TEST(GoodnessOfFit, ExactModelAndScaling) {
  const StandardConvexFunction kl = builtin_generators().at(0);
  const EdgeFunction w = two_state_f(0.3, 0.7, 0.9, 0.1);
  EXPECT_NEAR(goodness_of_fit_statistic(kl, tbar(w), w, 100).statistic, 0.0, 1e-12);
  const ExpectationPoint emp = two_state_eta(0.2, 0.4, 0.3, 0.1);
  const GoodnessOfFit a = goodness_of_fit_statistic(kl, emp, w, 101);
  const GoodnessOfFit b = goodness_of_fit_statistic(kl, emp, w, 201);
  EXPECT_NEAR(b.statistic, 2 * a.statistic, 1e-12 * b.statistic);
  EXPECT_NEAR(a.statistic, 200 * a.divergence, 1e-12 * a.statistic);
  EXPECT_EQ(kind_of([&] { goodness_of_fit_statistic(kl, emp, two_state_f(1, 1, 1, 1), 10); }),
            ErrorKind::NotTransitionProbability);
  EXPECT_EQ(kind_of([&] {
              goodness_of_fit_statistic(kl, two_state_eta(1, 1, 1, 1), w, 10);
            }),
            ErrorKind::NotInMtilde);
}

// Monte Carlo calibration: under the true model the statistic averages near
// |E| - |X| = 2.
TEST(GoodnessOfFit, MonteCarloMean) {
  const StandardConvexFunction kl = builtin_generators().at(0);
  const EdgeFunction w = two_state_f(0.3, 0.7, 0.9, 0.1);
  const std::size_t n = 100000;
  double total = 0;
  const int reps = 200;
  for (int i = 0; i < reps; ++i) {
    const Trajectory t = sample_trajectory(w, n, replication_seed(500, i),
                                           InitialState::stationary());
    total += goodness_of_fit_statistic(kl, empirical_pair_measure(t), w, n).statistic;
  }
  EXPECT_NEAR(total / reps, 2.0, 0.5);
}

}  // namespace
}  // namespace ptm
