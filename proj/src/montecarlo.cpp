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

#include "risunc/montecarlo.hpp"

#include <cmath>
#include <random>
#include <string>

#include "risunc/error.hpp"
#include "risunc/random.hpp"

namespace risunc {

void McConfig::Validate() const {
  if (sample_count < 2) {
    Fail(ErrorCode::kInvalidArgument, "Monte Carlo needs at least 2 samples");
  }
  for (const auto& a : angles) {
    if (!(a.std_deg >= 0.0) || !std::isfinite(a.mean_deg)) {
      Fail(ErrorCode::kInvalidArgument, "invalid angle error distribution");
    }
  }
}

McConfig McConfig::FromStdDegrees(double roll, double pitch, double yaw,
                                  std::size_t samples, std::uint64_t seed) {
  McConfig mc;
  mc.sample_count = samples;
  mc.seed = seed;
  mc.angles = {AngleDistribution{0.0, roll}, AngleDistribution{0.0, pitch},
               AngleDistribution{0.0, yaw}};
  return mc;
}

EulerAngles SampleAngleError(const McConfig& mc, std::uint64_t draw) {
  CounterRng rng(mc.seed, draw);
  std::normal_distribution<double> normal(0.0, 1.0);
  double e[3];
  for (int i = 0; i < 3; ++i) {
    const double z = normal(rng);
    e[i] = DegToRad(mc.angles[i].mean_deg + mc.angles[i].std_deg * z);
  }
  return {e[0], e[1], e[2]};
}

std::vector<Complex> SampleTruths(const Scenario& scenario,
                                  const EulerAngles& nominal,
                                  const RisConfig& config, const McConfig& mc) {
  mc.Validate();
  scenario.Validate();
  std::vector<Complex> out;
  out.reserve(mc.sample_count);
  for (std::size_t i = 0; i < mc.sample_count; ++i) {
    const EulerAngles e = SampleAngleError(mc, i);
    const EulerAngles truth{nominal.roll + e.roll, nominal.pitch + e.pitch,
                            nominal.yaw + e.yaw};
    if (mc.reoptimize_per_draw) {
      const RisConfig redo = MakeConfig(config.kind, scenario, truth, mc.seed ^ i);
      out.push_back(ComputeEffectiveChannel(scenario, truth, redo).value);
    } else {
      out.push_back(ComputeEffectiveChannel(scenario, truth, config).value);
    }
  }
  return out;
}

Complex SampleMean(std::span<const Complex> samples) {
  if (samples.empty()) {
    Fail(ErrorCode::kInsufficientData, "mean of zero samples");
  }
  Complex sum(0.0, 0.0);
  for (const auto& s : samples) sum += s;
  return sum / static_cast<double>(samples.size());
}

Covariance2 SampleCovariance(std::span<const Complex> samples) {
  if (samples.size() < 2) {
    Fail(ErrorCode::kInsufficientData,
         "sample covariance needs at least 2 samples, got " +
             std::to_string(samples.size()));
  }
  const Complex mean = SampleMean(samples);
  Covariance2 c;
  for (const auto& s : samples) {
    const double dr = s.real() - mean.real(), di = s.imag() - mean.imag();
    c.u11 += dr * dr;
    c.u12 += dr * di;
    c.u22 += di * di;
  }
  return c * (1.0 / static_cast<double>(samples.size() - 1));
}

double EmpiricalCoverage(const Region& region, std::span<const Complex> samples) {
  if (samples.empty()) {
    Fail(ErrorCode::kInsufficientData, "empirical coverage over zero samples");
  }
  std::size_t inside = 0;
  for (const auto& s : samples) inside += Contains(region, s) ? 1 : 0;
  return static_cast<double>(inside) / static_cast<double>(samples.size());
}

}  // namespace risunc
