// Copyright 2026 The risunc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "risunc/random.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace risunc {
namespace {

TEST(CounterRng, SameKeySameSequence) {
  CounterRng a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(CounterRng, StreamsDiffer) {
  CounterRng a(42, 0), b(42, 1), c(43, 0);
  EXPECT_NE(a(), b());
  CounterRng a2(42, 0);
  EXPECT_NE(a2(), c());
}

TEST(CounterRng, Uniform01InHalfOpenUnitInterval) {
  CounterRng r(1, 2);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.Uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(StreamKey, DistinctForNearbyInputs) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t s = 0; s < 32; ++s) {
    for (std::uint64_t t = 0; t < 32; ++t) keys.insert(StreamKey(s, t));
  }
  EXPECT_EQ(keys.size(), 32u * 32u);
}

}  // namespace
}  // namespace risunc
