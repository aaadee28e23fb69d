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

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "risunc/geometry.hpp"

namespace risunc {

using Complex = std::complex<double>;

// Tx -> element m -> Rx channel, before the element's phase shift.
struct CascadedChannel {
  double amplitude = 0.0;  // A_m
  double phase = 0.0;      // P_m, radians, unwrapped
  double distance_tx = 0.0;
  double distance_rx = 0.0;

  Complex value() const { return std::polar(amplitude, phase); }
};

enum class ConfigKind { kOff, kRandom, kOptimized, kQuantized1Bit };

std::string_view ToString(ConfigKind kind);
// Accepts off|random|optimized|quantized (also quantized-1bit).
ConfigKind ParseConfigKind(std::string_view text);

struct RisConfig {
  ConfigKind kind = ConfigKind::kOff;
  std::vector<double> phases;  // radians, one per element
};

struct EffectiveChannel {
  Complex value;               // gains applied
  std::vector<Complex> terms;  // per element, gains not applied
};

// A_m = c^2 / ((4 pi nu)^2 d_h d_g), P_m = (2 pi / lambda)(d_h + d_g).
CascadedChannel ComputeCascadedChannel(const Scenario& scenario,
                                       const EulerAngles& angles,
                                       std::size_t m);

std::vector<CascadedChannel> ComputeCascadedChannels(const Scenario& scenario,
                                                     const EulerAngles& angles);

// Random phases are i.i.d. uniform on [0, 2 pi) from a generator keyed by
// seed; the other kinds ignore it.
RisConfig MakeConfig(ConfigKind kind, const Scenario& scenario,
                     const EulerAngles& angles, std::uint64_t seed);

// h_eff = sqrt(G_T G_R) * sum_m h_m^casc exp(j phi_m).
EffectiveChannel ComputeEffectiveChannel(const Scenario& scenario,
                                         const EulerAngles& angles,
                                         const RisConfig& config);

// Wraps an angle onto (-pi, pi].
double WrapAngle(double a);

}  // namespace risunc
