#include "gausstomo/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

using namespace gausstomo;
constexpr double kPi = std::numbers::pi;

namespace {

struct Moments {
  double xx = 0, pp = 0, xp = 0;
};

Moments second_moments(const std::vector<PhaseSpaceSample>& d) {
  Moments m;
  for (const auto& s : d) {
    m.xx += s.x * s.x;
    m.pp += s.p * s.p;
    m.xp += s.x * s.p;
  }
  const double n = static_cast<double>(d.size());
  return {m.xx / n, m.pp / n, m.xp / n};
}

}  // namespace

TEST(SampleHomodyne, VacuumVariance) {
  const std::size_t n = 100000;
  const auto d = sample_homodyne({1, 1, 0, 1}, n, AnglePolicy::continuous_sweep(), {1, 0});
  double s2 = 0;
  for (const auto& q : d) s2 += q.x * q.x;
  EXPECT_NEAR(s2 / n, 0.5, 3 * 0.5 * std::sqrt(2.0 / n));
}

TEST(SampleHomodyne, GridAngleZeroVariance) {
  const std::size_t n = 80000, d = 8;
  const auto data = sample_homodyne({2, 10, 0, 0.5}, n, AnglePolicy::uniform_grid(d), {2, 0});
  double s2 = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_DOUBLE_EQ(data[i].theta, static_cast<double>(i % d) * kPi / d);
    if (i % d == 0) {
      s2 += data[i].x * data[i].x;
      ++count;
    }
  }
  EXPECT_EQ(count, n / d);
  EXPECT_NEAR(s2 / count, 0.6, 3 * 0.6 * std::sqrt(2.0 / count));
}

TEST(SampleHomodyne, MarginalLawPerAngleBin) {
  const GaussianStateSpec spec{2, 10, 0.6, 0.5};
  const Covariance2 g = effective_covariance(spec, SchemeKind::Homodyne);
  const std::size_t n = 160000;
  const int bins = 8;
  const auto data = sample_homodyne(spec, n, AnglePolicy::continuous_sweep(), {3, 0});
  std::vector<double> sum(bins, 0.0);
  std::vector<int> count(bins, 0);
  for (const auto& q : data) {
    ASSERT_GE(q.theta, 0.0);
    ASSERT_LT(q.theta, kPi);
    const int b = static_cast<int>(q.theta / kPi * bins);
    sum[b] += q.x * q.x / g.quadratic_form(q.theta);
    ++count[b];
  }
  for (int b = 0; b < bins; ++b) {
    EXPECT_NEAR(count[b], n / bins, 4 * std::sqrt(n / bins));
    EXPECT_NEAR(sum[b] / count[b], 1.0, 3 * std::sqrt(2.0 / count[b])) << b;
  }
}

TEST(SampleHomodyne, DeterministicAndPartitionable) {
  const GaussianStateSpec spec{1.5, 3, 0.2, 0.8};
  const auto policy = AnglePolicy::continuous_sweep();
  const auto a = sample_homodyne(spec, 1000, policy, {5, 9});
  EXPECT_EQ(a, sample_homodyne(spec, 1000, policy, {5, 9}));
  std::vector<QuadratureSample> b(1000);
  sample_homodyne_into(spec, policy, {5, 9}, 0, std::span(b).first(333));
  sample_homodyne_into(spec, policy, {5, 9}, 333, std::span(b).subspan(333));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample_homodyne(spec, 1000, policy, {5, 10}));
}

TEST(SampleHomodyne, Errors) {
  EXPECT_THROW(sample_homodyne({1, 1, 0, 1}, 0, {}, {}), std::invalid_argument);
  EXPECT_THROW(sample_homodyne({0.5, 1, 0, 1}, 10, {}, {}), std::domain_error);
}

TEST(SampleHeterodyne, VacuumCovariance) {
  const std::size_t n = 100000;
  const Moments m = second_moments(sample_heterodyne({1, 1, 0, 1}, n, {4, 0}));
  const double se = std::sqrt(2.0 / n);
  EXPECT_NEAR(m.xx, 1.0, 3 * se);
  EXPECT_NEAR(m.pp, 1.0, 3 * se);
  EXPECT_NEAR(m.xp, 0.0, 3 * std::sqrt(1.0 / n));
}

TEST(SampleHeterodyne, SqueezedCovariance) {
  const std::size_t n = 100000;
  const Moments m = second_moments(sample_heterodyne({2, 10, 0, 0.5}, n, {6, 0}));
  EXPECT_NEAR(m.xx, 1.6, 3 * 1.6 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m.pp, 11.5, 3 * 11.5 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m.xp / std::sqrt(m.xx * m.pp), 0.0, 3 / std::sqrt(static_cast<double>(n)));
}

TEST(SampleHeterodyne, RotatedCovariance) {
  const GaussianStateSpec spec{1.2, 6, 1.0, 0.7};
  const Covariance2 g = effective_covariance(spec, SchemeKind::Heterodyne);
  const std::size_t n = 100000;
  const Moments m = second_moments(sample_heterodyne(spec, n, {8, 0}));
  EXPECT_NEAR(m.xp, g.xp(), 3 * std::sqrt((g.xx() * g.pp() + g.xp() * g.xp()) / n));
}

TEST(SampleHeterodyne, DeterministicAndPartitionable) {
  const GaussianStateSpec spec{2, 10, 0, 0.5};
  const auto a = sample_heterodyne(spec, 777, {7, 1});
  EXPECT_EQ(a, sample_heterodyne(spec, 777, {7, 1}));
  std::vector<PhaseSpaceSample> b(777);
  sample_heterodyne_into(spec, {7, 1}, 500, std::span(b).subspan(500));
  sample_heterodyne_into(spec, {7, 1}, 0, std::span(b).first(500));
  EXPECT_EQ(a, b);
  EXPECT_THROW(sample_heterodyne(spec, 0, {}), std::invalid_argument);
}

TEST(AnglePolicy, Parse) {
  EXPECT_EQ(AnglePolicy::parse("continuous"), AnglePolicy::continuous_sweep());
  EXPECT_EQ(AnglePolicy::parse("grid:12"), AnglePolicy::uniform_grid(12));
  EXPECT_EQ(AnglePolicy::uniform_grid(5).to_string(), "grid:5");
  EXPECT_THROW(AnglePolicy::parse("grid:0"), std::invalid_argument);
  EXPECT_THROW(AnglePolicy::parse("grid:x"), std::invalid_argument);
  EXPECT_THROW(AnglePolicy::parse("random"), std::invalid_argument);
}
