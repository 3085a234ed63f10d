#include "gausstomo/random.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace gausstomo;

TEST(Philox, KnownAnswerVectors) {
  using C = std::array<std::uint32_t, 4>;
  using K = std::array<std::uint32_t, 2>;
  EXPECT_EQ(philox4x32(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, BlocksArePureFunctions) {
  const CounterRng a({42, 7}), b({42, 7});
  for (std::uint64_t i : {0ull, 1ull, 1000ull, 1ull << 40}) EXPECT_EQ(a.block(i), b.block(i));
  EXPECT_NE(CounterRng({42, 7}).block(0), CounterRng({42, 8}).block(0));
  EXPECT_NE(CounterRng({42, 7}).block(0), CounterRng({43, 7}).block(0));
  EXPECT_NE(a.block(0), a.block(1));
}

TEST(CounterRng, StreamsShareNoSubsequence) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 8; ++s) {
    const CounterRng r({1, s});
    for (std::uint64_t i = 0; i < 4096; ++i) {
      const auto b = r.block(i);
      EXPECT_TRUE(seen.insert(b[0]).second);
      EXPECT_TRUE(seen.insert(b[1]).second);
    }
  }
}

TEST(CounterRng, UniformMoments) {
  const CounterRng r({99, 0});
  const int n = 200000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = to_unit_closed_open(r.block(i)[0]);
    sum += u;
    sum2 += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sum2 / n, 1.0 / 3, 4 * std::sqrt(4.0 / 45 / n));
}

TEST(DeriveStream, DistinctTagsDistinctStreams) {
  const SeedSpec p{2024, 0};
  std::set<std::uint64_t> ids;
  for (std::uint64_t s = 1; s <= 2; ++s)
    for (std::uint64_t n = 0; n < 20; ++n)
      for (std::uint64_t t = 0; t < 50; ++t) {
        const SeedSpec c = derive_stream(p, {s, n, t});
        EXPECT_EQ(c.master_seed, p.master_seed);
        EXPECT_TRUE(ids.insert(c.stream_id).second);
      }
  EXPECT_EQ(derive_stream(p, {1, 2}), derive_stream(p, {1, 2}));
  EXPECT_NE(derive_stream(p, {1, 2}), derive_stream(p, {2, 1}));
}

TEST(UnitConversions, Ranges) {
  EXPECT_EQ(to_unit_closed_open(0), 0.0);
  EXPECT_LT(to_unit_closed_open(~0ull), 1.0);
  EXPECT_GT(to_unit_open(0), 0.0);
  EXPECT_LT(to_unit_open(~0ull), 1.0);
}

TEST(NormalQuantile, RoundTripsThroughErfc) {
  for (double p : {1e-300, 1e-20, 1e-8, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.97575, 0.999, 1 - 1e-12}) {
    const double x = normal_quantile(p);
    const double back = oracle::normal_cdf(x);
    EXPECT_NEAR(back / p, 1.0, 1e-13) << p;
  }
  EXPECT_EQ(normal_quantile(0.5), 0.0);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-14);
  EXPECT_NEAR(normal_quantile(0.2), -normal_quantile(0.8), 1e-15);
}

TEST(NormalQuantile, RejectsBoundary) {
  EXPECT_THROW(normal_quantile(0.0), std::domain_error);
  EXPECT_THROW(normal_quantile(1.0), std::domain_error);
  EXPECT_THROW(normal_quantile(NAN), std::domain_error);
}
