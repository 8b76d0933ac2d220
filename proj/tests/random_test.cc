//
// Copyright 2026 The synaug Authors
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
//

#include "synaug/random.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "testing/stats.h"

namespace synaug {
namespace {

TEST(DeriveSeedTest, DependsOnEveryInput) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed : {0u, 1u, 42u}) {
    for (const char* component : {"pairgen", "augment", "shuffle"}) {
      for (std::uint64_t index : {0u, 1u, 2u, 1000u}) {
        seen.insert(DeriveSeed(seed, component, index));
      }
    }
  }
  EXPECT_EQ(seen.size(), 3u * 3u * 4u);
}

TEST(DeriveSeedTest, IsAPureFunction) {
  EXPECT_EQ(DeriveSeed(7, "negatives", 3), DeriveSeed(7, "negatives", 3));
}

TEST(RngTest, EqualSeedsGiveEqualStreams) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Next(), b.Next());
}

TEST(RngTest, UniformStaysInUnitInterval) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, BelowIsUniform) {
  Rng rng(5);
  constexpr std::size_t kBins = 7;
  constexpr std::size_t kDraws = 70000;
  std::vector<std::size_t> counts(kBins, 0);
  for (std::size_t i = 0; i < kDraws; ++i) {
    const auto v = rng.Below(kBins);
    ASSERT_LT(v, kBins);
    ++counts[v];
  }
  const std::vector<double> probs(kBins, 1.0 / kBins);
  EXPECT_LT(testing::ChiSquareStatistic(counts, probs, kDraws),
            testing::ChiSquareCritical01(kBins - 1));
}

TEST(RngTest, BelowOneIsZero) {
  Rng rng(3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rng.Below(1), 0u);
}

TEST(RngTest, ShuffleIsAPermutation) {
  Rng rng(11);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.Shuffle(std::span<int>(v));
  EXPECT_FALSE(std::is_sorted(v.begin(), v.end()));
  std::sort(v.begin(), v.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(v[i], i);
}

}  // namespace
}  // namespace synaug
