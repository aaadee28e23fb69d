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

#include "risunc/channel.hpp"

#include <cmath>
#include <string>

#include "risunc/error.hpp"
#include "risunc/random.hpp"

namespace risunc {

std::string_view ToString(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::kOff:
      return "off";
    case ConfigKind::kRandom:
      return "random";
    case ConfigKind::kOptimized:
      return "optimized";
    case ConfigKind::kQuantized1Bit:
      return "quantized";
  }
  return "unknown";
}

ConfigKind ParseConfigKind(std::string_view text) {
  if (text == "off") return ConfigKind::kOff;
  if (text == "random") return ConfigKind::kRandom;
  if (text == "optimized") return ConfigKind::kOptimized;
  if (text == "quantized" || text == "quantized-1bit") {
    return ConfigKind::kQuantized1Bit;
  }
  Fail(ErrorCode::kParse, "unknown RIS configuration '" + std::string(text) +
                              "' (expected off|random|optimized|quantized)");
}

double WrapAngle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

namespace {

CascadedChannel FromDistances(const Scenario& scenario, double d_tx,
                              double d_rx) {
  CascadedChannel ch;
  ch.distance_tx = d_tx;
  ch.distance_rx = d_rx;
  const double four_pi_nu = 4.0 * kPi * scenario.frequency_hz;
  ch.amplitude = kSpeedOfLight * kSpeedOfLight /
                 (four_pi_nu * four_pi_nu * ch.distance_tx * ch.distance_rx);
  ch.phase = scenario.wavenumber() * (ch.distance_tx + ch.distance_rx);
  return ch;
}

// Same as the geometry-module path but with the rotation built once per pose.
CascadedChannel FromPose(const Scenario& scenario, const Mat3& rotation,
                         std::size_t m) {
  const Vec3 p = scenario.p_cg + rotation * scenario.ris.element_offsets[m];
  const double d_tx = (p - scenario.p_tx).norm();
  const double d_rx = (p - scenario.p_rx).norm();
  if (!(d_tx >= scenario.degeneracy_eps) || !(d_rx >= scenario.degeneracy_eps)) {
    Fail(ErrorCode::kDegenerateGeometry,
         "element " + std::to_string(m) + " coincides with an antenna");
  }
  return FromDistances(scenario, d_tx, d_rx);
}

}  // namespace

CascadedChannel ComputeCascadedChannel(const Scenario& scenario,
                                       const EulerAngles& angles,
                                       std::size_t m) {
  return FromDistances(scenario, Distance(scenario, angles, m, Endpoint::kTx),
                       Distance(scenario, angles, m, Endpoint::kRx));
}

std::vector<CascadedChannel> ComputeCascadedChannels(const Scenario& scenario,
                                                     const EulerAngles& angles) {
  const Mat3 rotation = RotationMatrix(angles);
  std::vector<CascadedChannel> out;
  out.reserve(scenario.element_count());
  for (std::size_t m = 0; m < scenario.element_count(); ++m) {
    out.push_back(FromPose(scenario, rotation, m));
  }
  return out;
}

RisConfig MakeConfig(ConfigKind kind, const Scenario& scenario,
                     const EulerAngles& angles, std::uint64_t seed) {
  const std::size_t count = scenario.element_count();
  RisConfig config{kind, std::vector<double>(count, 0.0)};
  switch (kind) {
    case ConfigKind::kOff:
      break;
    case ConfigKind::kRandom: {
      CounterRng rng(seed, 0);
      for (auto& phi : config.phases) phi = 2.0 * kPi * rng.Uniform01();
      break;
    }
    case ConfigKind::kOptimized:
    case ConfigKind::kQuantized1Bit: {
      const Mat3 rotation = RotationMatrix(angles);
      for (std::size_t m = 0; m < count; ++m) {
        double phi = -std::arg(FromPose(scenario, rotation, m).value());
        if (kind == ConfigKind::kQuantized1Bit) {
          phi = std::abs(WrapAngle(phi)) <= 0.5 * kPi ? 0.0 : kPi;
        }
        config.phases[m] = phi;
      }
      break;
    }
  }
  return config;
}

EffectiveChannel ComputeEffectiveChannel(const Scenario& scenario,
                                         const EulerAngles& angles,
                                         const RisConfig& config) {
  const std::size_t count = scenario.element_count();
  if (config.phases.size() != count) {
    Fail(ErrorCode::kInvalidArgument,
         "RIS configuration has " + std::to_string(config.phases.size()) +
             " phases, scenario has " + std::to_string(count) + " elements");
  }
  const Mat3 rotation = RotationMatrix(angles);
  EffectiveChannel eff;
  eff.terms.reserve(count);
  Complex sum(0.0, 0.0);
  for (std::size_t m = 0; m < count; ++m) {
    const Complex term = FromPose(scenario, rotation, m).value() *
                         std::polar(1.0, config.phases[m]);
    eff.terms.push_back(term);
    sum += term;
  }
  eff.value = std::sqrt(scenario.gain_tx * scenario.gain_rx) * sum;
  return eff;
}

}  // namespace risunc
