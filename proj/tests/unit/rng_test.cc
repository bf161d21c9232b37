// Copyright 2026 The Newsrec Authors
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

#include "newsrec/tensor/rng.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"

namespace newsrec {
namespace {

// Known-answer vectors published with the Random123 library.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(Philox4x32({0, 0, 0, 0}, {0, 0}),
            (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c,
                                          0x9b00dbd8}));
  EXPECT_EQ(Philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6,
                                          0x6d5451fd}));
  EXPECT_EQ(Philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420,
                                          0x24126ea1}));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.NextU32(), b.NextU32());
}

TEST(Rng, DerivedStreamsDiffer) {
  Rng a = Rng::Derive(7, "dropout", 0);
  Rng b = Rng::Derive(7, "dropout", 1);
  Rng c = Rng::Derive(7, "shuffle", 0);
  int equal_ab = 0, equal_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.NextU32();
    equal_ab += x == b.NextU32();
    equal_ac += x == c.NextU32();
  }
  EXPECT_LT(equal_ab, 2);
  EXPECT_LT(equal_ac, 2);
}

TEST(Rng, StateRoundTripResumesMidBlock) {
  Rng a(9, 3);
  for (int i = 0; i < 6; ++i) a.NextU32();  // stop inside the second block
  Rng b = Rng::FromState(a.state());
  EXPECT_EQ(a.state(), b.state());
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.NextU32(), b.NextU32());
}

TEST(Rng, UniformRangeAndMean) {
  Rng rng(1);
  double sum = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / kDraws, 0.5, 0.01);
}

TEST(Rng, NormalMoments) {
  Rng rng(2);
  double sum = 0.0, sq = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double z = rng.Normal(0.0, 0.1);
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / kDraws, 0.0, 0.002);
  EXPECT_NEAR(std::sqrt(sq / kDraws), 0.1, 0.002);
}

TEST(Rng, UniformIntCoversRange) {
  Rng rng(3);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.UniformInt(7)];
  for (const int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(Rng, ShuffleIsPermutationAndReproducible) {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 0);
  Rng ra(11), rb(11);
  ra.Shuffle(std::span<int>(a));
  rb.Shuffle(std::span<int>(b));
  EXPECT_EQ(a, b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

}  // namespace
}  // namespace newsrec
