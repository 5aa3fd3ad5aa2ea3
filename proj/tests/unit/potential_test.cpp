#include "ptm/potential.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "fixtures.hpp"
#include "ptm/coordinates.hpp"
#include "ptm/divergence.hpp"
#include "ptm/errors.hpp"
#include "ptm/random_instances.hpp"

namespace ptm {
namespace {

using testing::sup;
using testing::two_state_eta;

// The two-state matrices as displayed in closed form, entry by entry.
Eigen::Matrix4d displayed_hessian(double e00, double e01, double e10, double e11) {
  const double u0 = e00 + e10, u1 = e01 + e11;  // in-marginals
  const double l0 = e00 + e01, l1 = e10 + e11;  // out-marginals
  Eigen::Matrix4d m;
  m(0, 0) = 1 / e00 - 1 / u0 - (u0 - l0) / (u0 * u0);
  m(0, 1) = -1 / u0;
  m(0, 2) = -1 / u0 + l0 / (u0 * u0);
  m(0, 3) = 0;
  m(1, 1) = 1 / e01 + l1 / (u1 * u1);
  m(1, 2) = -1 / u1 - 1 / u0;
  m(1, 3) = -1 / u1 + l1 / (u1 * u1);
  m(2, 2) = 1 / e10 + l0 / (u0 * u0);
  m(2, 3) = -1 / u1;
  m(3, 3) = 1 / e11 - 1 / u1 - (u1 - l1) / (u1 * u1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
  return m;
}

Eigen::Matrix3d displayed_restricted(double e00, double e01, double e10, double e11) {
  const double u0 = e00 + e10, u1 = e01 + e11;
  const double l0 = e00 + e01, l1 = e10 + e11;
  const double tail = l1 / (u1 * u1) + l0 / (u0 * u0);
  const double cross = 1 / e11 - 1 / (u0 * u1);
  Eigen::Matrix3d m;
  m << 1 / e11 + 1 / e00 - 2 / (u0 * u1) + tail, cross, cross + tail,
      cross, 1 / e01 + 1 / e11, cross,
      cross + tail, cross, 1 / e11 + 1 / e10 + tail;
  return m;
}

TEST(Potential, UniformPoint) {
  const ExpectationPoint eta = two_state_eta(0.25, 0.25, 0.25, 0.25);
  EXPECT_NEAR(phibar(eta), -std::log(2.0), 1e-15);
  EXPECT_NEAR(phihat(eta), -std::log(2.0), 1e-15);
  EXPECT_LE(sup(phibar_gradient(eta).array() + std::log(2.0)), 1e-15);
}

TEST(Potential, OffStationaryPointSeparatesPotentials) {
  const ExpectationPoint eta = two_state_eta(0.3, 0.3, 0.2, 0.2);
  const double bar = 0.3 * std::log(0.3) * 2 + 0.2 * std::log(0.2) * 2 -
                     0.6 * std::log(0.5) - 0.4 * std::log(0.5);
  const double hat = 0.3 * std::log(0.3) * 2 + 0.2 * std::log(0.2) * 2 -
                     0.6 * std::log(0.6) - 0.4 * std::log(0.4);
  EXPECT_NEAR(phibar(eta), bar, 1e-15);
  EXPECT_NEAR(phihat(eta), hat, 1e-15);
  EXPECT_GT(std::abs(phibar(eta) - phihat(eta)), 0.01);
}

TEST(Potential, NegativeConditionalEntropyOnW) {
  const EdgeFunction w = testing::two_state_f(0.3, 0.7, 0.9, 0.1);
  const ExpectationPoint eta = tbar(w);
  // mu_w = (9/16, 7/16).
  const double mu0 = 9.0 / 16, mu1 = 7.0 / 16;
  const double expected = mu0 * (0.3 * std::log(0.3) + 0.7 * std::log(0.7)) +
                          mu1 * (0.9 * std::log(0.9) + 0.1 * std::log(0.1));
  EXPECT_NEAR(phibar(eta), expected, 1e-14);
}

TEST(Potential, DisplayedTwoStateMatrices) {
  UniformSource rng(51);
  for (int c = 0; c < 100; ++c) {
    const ExpectationPoint eta = random_expectation(testing::two_state(), rng, true);
    const auto& e = eta.values();
    const Eigen::Matrix4d expected = displayed_hessian(e[0], e[1], e[2], e[3]);
    const Eigen::MatrixXd h = phibar_hessian_raw(eta);
    EXPECT_LE((h - expected).cwiseAbs().maxCoeff(), 1e-10 * expected.cwiseAbs().maxCoeff());
    const Eigen::Matrix3d expected3 = displayed_restricted(e[0], e[1], e[2], e[3]);
    const Eigen::MatrixXd r = restricted_hessian(eta);
    EXPECT_LE((r - expected3).cwiseAbs().maxCoeff(),
              1e-10 * expected3.cwiseAbs().maxCoeff());
  }
}

TEST(Potential, RestrictedHessianErrors) {
  try {
    restricted_hessian(two_state_eta(0.5, 0.5, 0.5, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInMtilde);
  }
  EXPECT_THROW(restricted_hessian(two_state_eta(0.25, 0.25, 0.25, 0.25), Edge{0, 5}),
               Error);
}

TEST(PotentialProperty, HomogeneityAndEuler) {
  UniformSource rng(52);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int c = 0; c < 10; ++c) {
      const ExpectationPoint eta = random_expectation(random_strong_graph(n, rng), rng);
      const double a = 0.1 + 9.9 * rng.next();
      const ExpectationPoint aeta(eta.graph_ptr(), a * eta.values());
      const double p = phibar(eta);
      EXPECT_NEAR(phibar(aeta), a * p, 1e-10 * std::abs(a * p));
      // phihat vanishes identically on deterministic cycles, so its scale is
      // taken from the size of its terms.
      const double terms = (eta.values().array() * eta.values().array().log().abs()).sum();
      EXPECT_NEAR(phihat(aeta), a * phihat(eta),
                  1e-10 * a * std::max(std::abs(phihat(eta)), terms));
      const Eigen::VectorXd g = phibar_gradient(eta);
      EXPECT_NEAR(eta.values().dot(g), p, 1e-12 * std::max(1.0, std::abs(p)));
      EXPECT_LE(sup(phibar_gradient(aeta) - g), 1e-12 * std::max(1.0, sup(g)));
    }
  }
}

TEST(PotentialProperty, HessianStructure) {
  UniformSource rng(53);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int c = 0; c < 10; ++c) {
      const ExpectationPoint eta = random_expectation(random_strong_graph(n, rng), rng);
      const Eigen::MatrixXd raw = phibar_hessian_raw(eta);
      const Eigen::MatrixXd h = phibar_hessian(eta);
      const double hmax = h.cwiseAbs().maxCoeff();
      EXPECT_LE((raw - raw.transpose()).cwiseAbs().maxCoeff(), 1e-12 * hmax);
      EXPECT_LE(sup(h * eta.values()), 1e-9 * h.cwiseAbs().rowwise().sum().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      const Eigen::VectorXd ev = es.eigenvalues();
      const double top = ev.cwiseAbs().maxCoeff();
      int small = 0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i]) <= 1e-9 * top) {
          ++small;
        } else {
          EXPECT_GT(ev[i], 0.0);
        }
      }
      EXPECT_EQ(small, 1);
    }
  }
}

TEST(PotentialProperty, PhibarEqualsPhihatOnM) {
  UniformSource rng(54);
  for (std::size_t n = 2; n <= 8; ++n) {
    const ExpectationPoint eta = random_point_of_M(random_strong_graph(n, rng), rng);
    EXPECT_NEAR(phibar(eta), phihat(eta), 1e-12);
  }
}

TEST(PotentialProperty, ConvexAlongSegmentsOfMtilde) {
  UniformSource rng(55);
  for (std::size_t n = 2; n <= 6; ++n) {
    const GraphPtr g = random_strong_graph(n, rng);
    for (int c = 0; c < 20; ++c) {
      const ExpectationPoint a = random_expectation(g, rng, true);
      const ExpectationPoint b = random_expectation(g, rng, true);
      const double t = rng.next();
      const ExpectationPoint mid(g, t * a.values() + (1 - t) * b.values());
      EXPECT_LE(phibar(mid), t * phibar(a) + (1 - t) * phibar(b) + 1e-12);
    }
  }
}

TEST(PotentialProperty, RestrictedHessianPositiveDefinite) {
  UniformSource rng(56);
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = 2 + c % 5;
    const ExpectationPoint eta = random_expectation(random_strong_graph(n, rng), rng, true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted_hessian(eta));
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  }
}

// D_Bre(eta + eps u, eta) = eps^2/2 u' H u + O(eps^3); one Richardson step in
// eps removes the cubic term.
TEST(PotentialProperty, BregmanTaylorExpansion) {
  UniformSource rng(57);
  for (std::size_t n = 2; n <= 5; ++n) {
    const ExpectationPoint eta = random_expectation(random_strong_graph(n, rng), rng, true);
    const std::size_t m = eta.size();
    const Eigen::MatrixXd jac = mtilde_chart_jacobian(m, m - 1);
    Eigen::VectorXd v(static_cast<Eigen::Index>(m - 1));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 2 * rng.next() - 1;
    const Eigen::VectorXd u = jac * v;
    // Keep every coordinate well inside the orthant.
    const double size = 0.1 * eta.values().minCoeff() / sup(u);
    auto quotient = [&](double eps) {
      const ExpectationPoint moved(eta.graph_ptr(), eta.values() + eps * size * u);
      return bregman_divergence_unclamped(moved, eta) / (eps * eps);
    };
    const double q1 = quotient(1e-2), q2 = quotient(1e-3);
    const double extrapolated = (10 * q2 - q1) / 9;
    const double quadratic = 0.5 * size * size * v.dot(restricted_hessian(eta) * v);
    EXPECT_NEAR(extrapolated, quadratic, 1e-5 * quadratic);
  }
}

}  // namespace
}  // namespace ptm
