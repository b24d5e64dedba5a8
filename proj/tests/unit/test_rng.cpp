#include <gtest/gtest.h>

#include <cmath>

#include "qrepeater/link_model.hpp"
#include "qrepeater/monte_carlo.hpp"
#include "qrepeater/rng.hpp"

using namespace qrep;
using Ctr = Philox4x32::Counter;
using Key = Philox4x32::Key;

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}), (Ctr{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Ctr{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Ctr{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamLayout) {
  Philox4x32 g(0x0000000200000001ull, 0x0000000400000003ull);
  const Ctr first = Philox4x32::block({3, 4, 0, 0}, {1, 2});
  for (auto w : first) EXPECT_EQ(g(), w);
  const Ctr second = Philox4x32::block({3, 4, 1, 0}, {1, 2});
  for (auto w : second) EXPECT_EQ(g(), w);
}

TEST(Philox, SubstreamsDiffer) {
  Philox4x32 a(7, 0), b(7, 1), c(8, 0);
  const auto x = a(), y = b(), z = c();
  EXPECT_NE(x, y);
  EXPECT_NE(x, z);
}

TEST(Uniform, OpenClosedRangeAndMean) {
  Philox4x32 g(1, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_open_closed(g);
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Geometric, EdgeAndMean) {
  Philox4x32 g(3, 0);
  EXPECT_EQ(geometric_trials(g, 1.0), 1);
  const double p = 0.2;
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = geometric_trials(g, p);
    ASSERT_GE(k, 1);
    sum += static_cast<double>(k);
  }
  const double sd = std::sqrt((1 - p) / (p * p) / n);
  EXPECT_NEAR(sum / n, 1.0 / p, 4.0 * sd);
}

TEST(RatioAccumulator, EqualDurationsGiveSampleMean) {
  RatioAccumulator acc;
  const double xs[] = {1.0, 2.0, 4.0, 7.0};
  for (double x : xs) acc.add({x, 1.0});
  const MCEstimate e = acc.estimate(9);
  EXPECT_DOUBLE_EQ(e.mean, 3.5);
  // sample std = sqrt(((2.5^2 + 1.5^2 + 0.5^2 + 3.5^2) / 3)) = sqrt(7)
  EXPECT_NEAR(e.std_error, std::sqrt(7.0) / 2.0, 1e-14);
  EXPECT_EQ(e.episodes, 4u);
  EXPECT_EQ(e.seed, 9u);
}

TEST(RunEpisodes, IndependentOfWorkerCount) {
  SimParams p = presets::elementary_comparison(10);
  p.link_length_km = 30.0;
  for (Scheme s : {Scheme::SS, Scheme::ST, Scheme::TT}) {
    const MCEstimate one = mc_elementary(s, p, {20000, 42, 1});
    const MCEstimate three = mc_elementary(s, p, {20000, 42, 3});
    const MCEstimate eight = mc_elementary(s, p, {20000, 42, 8});
    EXPECT_EQ(one, three);
    EXPECT_EQ(one, eight);
  }
}

TEST(RunEpisodes, EpisodeIndexSelectsSubstream) {
  std::vector<std::uint32_t> seen(10);
  run_episodes({10, 5, 2}, [&](std::uint64_t i, Philox4x32& rng) {
    seen[i] = rng();
    return EpisodeSample{};
  });
  for (std::uint64_t i = 0; i < 10; ++i) {
    Philox4x32 ref(5, i);
    EXPECT_EQ(seen[i], ref());
  }
}
