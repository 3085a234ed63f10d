#include "gausstomo/state.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace gausstomo;

namespace {

void expect_cov(const Covariance2& g, double g1, double g2, double g3, double tol = 1e-13) {
  EXPECT_NEAR(g.g1, g1, tol);
  EXPECT_NEAR(g.g2, g2, tol);
  EXPECT_NEAR(g.g3, g3, tol);
}

}  // namespace

TEST(State, WignerExamples) {
  expect_cov(wigner_covariance({1, 1, 0, 1}), 0.5, 0.5, 0.0);
  expect_cov(wigner_covariance({2, 10, 0, 1}), 0.1, 10.0, 0.0);
  const Covariance2 g = wigner_covariance({1, 4, std::numbers::pi / 4, 1});
  // CCW convention: the squeezed axis points along 45 degrees, so the
  // off-diagonal entry is negative.
  expect_cov(g, 17.0 / 16, 17.0 / 16, -15.0 * std::numbers::sqrt2 / 16);
  EXPECT_NEAR(g.det(), 0.25, 1e-14);
}

TEST(State, WignerMatchesOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mu(1, 20), lam(0.05, 100), phi(-4, 4);
  for (int i = 0; i < 300; ++i) {
    const GaussianStateSpec s{mu(rng), lam(rng), phi(rng), 1.0};
    const auto m = oracle::wigner(s.mu, s.lambda, s.phi);
    const Covariance2 g = wigner_covariance(s);
    const double scale = s.mu * std::max(s.lambda, 1 / s.lambda);
    EXPECT_NEAR(g.xx(), m[0][0], 1e-13 * scale);
    EXPECT_NEAR(g.xp(), m[0][1], 1e-13 * scale);
    EXPECT_NEAR(g.pp(), m[1][1], 1e-13 * scale);
    EXPECT_NEAR(g.det(), s.mu * s.mu / 4, 1e-11 * scale * scale);
  }
}

TEST(State, EffectiveCovarianceExamples) {
  expect_cov(effective_covariance({1, 1, 0, 1}, SchemeKind::Homodyne), 0.5, 0.5, 0);
  expect_cov(effective_covariance({1, 1, 0, 1}, SchemeKind::Heterodyne), 1, 1, 0);
  expect_cov(effective_covariance({2, 10, 0, 0.5}, SchemeKind::Heterodyne), 1.6, 11.5, 0);
  expect_cov(effective_covariance({2, 10, 0, 0.5}, SchemeKind::HypotheticalNoAK), 0.1, 10, 0);
}

TEST(State, QCovarianceExamples) {
  expect_cov(q_covariance({1, 1, 0, 1}), 1, 1, 0);
  expect_cov(q_covariance({1, 2, 0, 1}), 0.75, 1.5, 0);
  expect_cov(q_covariance({1, 1, 0, 0.5}), 1.5, 1.5, 0);
}

TEST(State, HeterodyneOffsetAddsVacuumOverEta) {
  for (double eta = 0.01; eta <= 1.0; eta += 0.01) {
    EXPECT_NEAR(heterodyne_offset(eta) - homodyne_offset(eta), 0.5 / eta, 1e-12 / eta);
    EXPECT_DOUBLE_EQ(homodyne_offset(eta), oracle::hom_offset(eta));
    const GaussianStateSpec s{1.7, 3.0, 0.4, eta};
    const Covariance2 d =
        effective_covariance(s, SchemeKind::Heterodyne) - effective_covariance(s, SchemeKind::Homodyne);
    EXPECT_NEAR(d.g1, 0.5 / eta, 1e-12 / eta);
    EXPECT_NEAR(d.g2, 0.5 / eta, 1e-12 / eta);
    // The heterodyne covariance is the Q-function covariance plus the
    // homodyne loss term.
    const Covariance2 q = effective_covariance(s, SchemeKind::Heterodyne) - q_covariance(s);
    EXPECT_NEAR(q.g1, homodyne_offset(eta), 1e-12 / eta);
    EXPECT_EQ(d.g3, 0.0);
  }
  EXPECT_DOUBLE_EQ(heterodyne_offset(1.0) - homodyne_offset(1.0), 0.5);
  EXPECT_EQ(scheme_offset(SchemeKind::HypotheticalNoAK, 0.3), 0.0);
}

TEST(State, InvariantUnderReciprocalSqueezing) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mu(1, 10), lam(1.01, 50), phi(0, 3);
  for (int i = 0; i < 200; ++i) {
    const GaussianStateSpec a{mu(rng), lam(rng), phi(rng), 0.7};
    const GaussianStateSpec b{a.mu, 1 / a.lambda, a.phi + std::numbers::pi / 2, a.eta};
    const Covariance2 d = wigner_covariance(a) - wigner_covariance(b);
    EXPECT_NEAR(std::abs(d.g1) + std::abs(d.g2) + std::abs(d.g3), 0.0, 1e-11 * a.mu * a.lambda);
    const GaussianStateSpec c = b.canonical();
    EXPECT_NEAR(c.lambda, a.lambda, 1e-12 * a.lambda);
    EXPECT_GE(c.phi, 0.0);
    EXPECT_LT(c.phi, std::numbers::pi);
  }
}

TEST(State, TraceAndDetInvariantUnderPhi) {
  for (double phi : {0.0, 0.3, 1.2, 2.9, -5.0}) {
    const Covariance2 g = effective_covariance({3, 7, phi, 0.4}, SchemeKind::Homodyne);
    const Covariance2 g0 = effective_covariance({3, 7, 0, 0.4}, SchemeKind::Homodyne);
    EXPECT_NEAR(g.trace(), g0.trace(), 1e-12);
    EXPECT_NEAR(g.det(), g0.det(), 1e-11);
  }
}

TEST(State, Validation) {
  EXPECT_NO_THROW((GaussianStateSpec{1 - 1e-13, 1, 0, 1}).validate());
  EXPECT_THROW((GaussianStateSpec{0.99, 1, 0, 1}).validate(), std::domain_error);
  EXPECT_THROW((GaussianStateSpec{1, 0, 0, 1}).validate(), std::domain_error);
  EXPECT_THROW((GaussianStateSpec{1, 1, 0, 0}).validate(), std::domain_error);
  EXPECT_THROW((GaussianStateSpec{1, 1, 0, 1.01}).validate(), std::domain_error);
  EXPECT_THROW((GaussianStateSpec{1, 1, NAN, 1}).validate(), std::domain_error);
  EXPECT_THROW(wigner_covariance({0.5, 1, 0, 1}), std::domain_error);
}

TEST(State, SchemeNames) {
  for (SchemeKind k : {SchemeKind::Homodyne, SchemeKind::Heterodyne, SchemeKind::HypotheticalNoAK}) {
    EXPECT_EQ(scheme_from_string(to_string(k)), k);
  }
  EXPECT_THROW(scheme_from_string("bogus"), std::invalid_argument);
}

TEST(State, SqueezingDb) {
  const auto pair = squeezing_db({1.736, 3.771, 0, 1});
  EXPECT_NEAR(pair.squeeze_db, -3.369, 1e-3);
  EXPECT_NEAR(pair.antisqueeze_db, 8.160, 1e-3);
  const auto coherent = squeezing_db({1, 1, 0, 1});
  EXPECT_EQ(coherent.squeeze_db, 0.0);
  EXPECT_EQ(coherent.antisqueeze_db, 0.0);
  const auto s = squeezing_db({2, 10, 0, 1});
  EXPECT_NEAR(s.squeeze_db, -6.9897, 1e-4);
  EXPECT_NEAR(s.antisqueeze_db, 13.0103, 1e-4);
}
