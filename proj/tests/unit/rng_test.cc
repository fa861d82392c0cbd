// Copyright 2026 The zovr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "zovr/estimators.h"
#include "zovr/minibatch.h"
#include "zovr/rng.h"
#include "zovr/seeds.h"

namespace zovr {
namespace {

// Known-answer vectors published with the Random123 distribution.
TEST(Philox, KnownAnswerVectors) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, OpenUnitIntervalExcludesEndpoints) {
  EXPECT_GT(bits_to_open_unit(0), 0.0);
  EXPECT_LT(bits_to_open_unit(~std::uint64_t{0}), 1.0);
}

TEST(NormalStream, RandomAccessMatchesSequential) {
  NormalStream stream(99, 3);
  for (std::uint64_t i = 0; i < 17; ++i) {
    EXPECT_EQ(stream.next(), normal_at(99, 3, i)) << i;
  }
  NormalStream offset(99, 3, 5);
  EXPECT_EQ(offset.next(), normal_at(99, 3, 5));
}

TEST(UniformStream, NextBelowStaysInRange) {
  UniformStream stream(4, 0);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[stream.next_below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(RegenerateZ, SameSeedIsBitIdentical) {
  const DenseVector a = regenerate_z({42, 0}, 5);
  const DenseVector b = regenerate_z({42, 0}, 5);
  EXPECT_TRUE(bitwise_equal(a, b));
}

TEST(RegenerateZ, PrefixIndependentOfLength) {
  const DenseVector a = regenerate_z({8, 1}, 10);
  const DenseVector b = regenerate_z({8, 1}, 3);
  EXPECT_TRUE(bitwise_equal(std::span(a).first(3), b));
}

TEST(RegenerateZ, NeighbouringSeedsAreUncorrelated) {
  const std::size_t d = 10000;
  const DenseVector a = regenerate_z({42, 0}, d);
  const DenseVector b = regenerate_z({43, 0}, d);
  auto mean = [](const DenseVector& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  };
  const double ma = mean(a), mb = mean(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < d; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  EXPECT_LT(std::abs(sab / std::sqrt(saa * sbb)), 0.1);
}

TEST(RegenerateZ, StandardNormalMoments) {
  const std::size_t d = 100000;
  const DenseVector z = regenerate_z({2024, 0}, d);
  double sum = 0, sq = 0;
  for (double v : z) sum += v;
  const double mean = sum / d;
  for (double v : z) sq += (v - mean) * (v - mean);
  EXPECT_LT(std::abs(mean), 0.02);
  EXPECT_LT(std::abs(std::sqrt(sq / d) - 1.0), 0.02);
}

TEST(RegenerateZ, StreamOffsetSelectsADifferentVector) {
  EXPECT_FALSE(bitwise_equal(regenerate_z({5, 0}, 8), regenerate_z({5, 1}, 8)));
}

TEST(Seeds, DerivationSeparatesPurposesAndSteps) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 50; ++t) {
    seen.insert(seeds::derive(7, t, seeds::Purpose::kPerturbation));
    seen.insert(seeds::derive(7, t, seeds::Purpose::kBatch));
    seen.insert(seeds::derive(7, t, seeds::Purpose::kAnchorBatch));
  }
  EXPECT_EQ(seen.size(), 150u);
  EXPECT_EQ(seeds::perturbation(7, 3).seed,
            seeds::derive(7, 3, seeds::Purpose::kPerturbation));
}

TEST(Seeds, PerSampleSeedsShareKeyAndUseIndexAsOffset) {
  const auto s = seeds::per_sample(11, 2, {4, 0, 9});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].seed, s[1].seed);
  EXPECT_EQ(s[0].stream_offset, 4u);
  EXPECT_EQ(s[2].stream_offset, 9u);
}

TEST(Minibatch, WithoutReplacementIsDistinctAndInRange) {
  const Minibatch b = sample_minibatch(50, 50, SamplingMode::kWithoutReplacement,
                                       3);
  std::set<std::size_t> unique(b.indices.begin(), b.indices.end());
  EXPECT_EQ(unique.size(), 50u);
  EXPECT_EQ(*unique.rbegin(), 49u);
  EXPECT_NO_THROW(b.validate(50));
}

TEST(Minibatch, ValidateRejectsBadIndices) {
  Minibatch dup{{1, 1}, SamplingMode::kWithoutReplacement};
  EXPECT_THROW(dup.validate(4), ContractViolation);
  dup.mode = SamplingMode::kWithReplacement;
  EXPECT_NO_THROW(dup.validate(4));
  Minibatch out{{4}, SamplingMode::kWithReplacement};
  EXPECT_THROW(out.validate(4), ContractViolation);
}

TEST(Minibatch, SamplingIsDeterministic) {
  const auto a = sample_minibatch(100, 8, SamplingMode::kWithReplacement, 9);
  const auto b = sample_minibatch(100, 8, SamplingMode::kWithReplacement, 9);
  EXPECT_EQ(a.indices, b.indices);
  EXPECT_EQ(full_batch(3).indices, (std::vector<std::size_t>{0, 1, 2}));
}

}  // namespace
}  // namespace zovr
