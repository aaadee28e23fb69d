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
#include <cstdint>
#include <span>
#include <vector>

#include "risunc/coverage.hpp"

namespace risunc {

struct AngleDistribution {
  double mean_deg = 0.0;
  double std_deg = 0.0;
};

struct McConfig {
  std::size_t sample_count = 100000;
  std::uint64_t seed = 1;
  // Gaussian angle errors (roll, pitch, yaw), independent per angle and draw.
  std::array<AngleDistribution, 3> angles{};
  // Re-derive the configuration at every perturbed pose (diagnostic only).
  bool reoptimize_per_draw = false;

  void Validate() const;
  static McConfig FromStdDegrees(double roll, double pitch, double yaw,
                                 std::size_t samples, std::uint64_t seed);
};

// Draw i applies angle error e_i (stream i of the seed) to the nominal pose
// and evaluates the exact effective channel with the given configuration.
std::vector<Complex> SampleTruths(const Scenario& scenario,
                                  const EulerAngles& nominal,
                                  const RisConfig& config, const McConfig& mc);

// Angle error of draw i, radians.
EulerAngles SampleAngleError(const McConfig& mc, std::uint64_t draw);

// Bessel-corrected covariance of (Re, Im).
Covariance2 SampleCovariance(std::span<const Complex> samples);
Complex SampleMean(std::span<const Complex> samples);

double EmpiricalCoverage(const Region& region, std::span<const Complex> samples);

}  // namespace risunc
