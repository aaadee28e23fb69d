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

#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace risunc {

struct OrientationErrorSeries;

// Type-A evaluation of repeated observations. Units follow the input
// (degrees for orientation errors).
struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;          // experimental variance, 1/(n-1)
  double std_dev = 0.0;
  double variance_of_mean = 0.0;  // variance / n
  double std_of_mean = 0.0;
};

// Two-pass mean then squared deviations. Throws kInsufficientData for n < 2
// and kInvalidArgument on non-finite samples.
SampleStats TypeAStats(std::span<const double> samples);

// Roll, pitch, yaw in that order.
std::array<SampleStats, 3> StatsPerAngle(const OrientationErrorSeries& series);

}  // namespace risunc
