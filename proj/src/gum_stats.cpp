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

#include "risunc/gum_stats.hpp"

#include <cmath>
#include <string>

#include "risunc/dataio.hpp"
#include "risunc/error.hpp"

namespace risunc {

SampleStats TypeAStats(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    Fail(ErrorCode::kInsufficientData,
         "Type-A evaluation needs at least 2 samples, got " + std::to_string(n));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(samples[i])) {
      Fail(ErrorCode::kInvalidArgument,
           "non-finite sample at index " + std::to_string(i));
    }
    sum += samples[i];
  }
  SampleStats s;
  s.n = n;
  s.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double q : samples) {
    const double dev = q - s.mean;
    ss += dev * dev;
  }
  s.variance = ss / static_cast<double>(n - 1);
  s.std_dev = std::sqrt(s.variance);
  s.variance_of_mean = s.variance / static_cast<double>(n);
  s.std_of_mean = std::sqrt(s.variance_of_mean);
  return s;
}

std::array<SampleStats, 3> StatsPerAngle(const OrientationErrorSeries& series) {
  series.Validate();
  return {TypeAStats(series.roll), TypeAStats(series.pitch),
          TypeAStats(series.yaw)};
}

}  // namespace risunc
