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

// Shared test scaffolding: random scenarios and conversion to oracle form.

#pragma once

#include <array>
#include <random>

#include "oracles.hpp"
#include "risunc/channel.hpp"
#include "risunc/geometry.hpp"

namespace testing_support {

inline oracle::World ToWorld(const risunc::Scenario& s) {
  oracle::World w;
  w.tx = s.p_tx;
  w.rx = s.p_rx;
  w.cg = s.p_cg;
  w.offsets = s.ris.element_offsets;
  w.freq = s.frequency_hz;
  w.gain = s.gain_tx * s.gain_rx;
  return w;
}

inline std::array<double, 3> ToArray(const risunc::EulerAngles& a) {
  return {a.roll, a.pitch, a.yaw};
}

inline risunc::EulerAngles RandomAngles(std::mt19937_64& rng, double max_rad) {
  std::uniform_real_distribution<double> u(-max_rad, max_rad);
  return {u(rng), u(rng), u(rng)};
}

// Random small-array geometry with antennas kept well away from the array.
inline risunc::Scenario RandomScenario(std::mt19937_64& rng, std::size_t rows = 3,
                                       std::size_t cols = 4) {
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> freq(1e9, 10e9);
  std::uniform_real_distribution<double> off(-0.5, 0.5);
  risunc::Scenario s;
  s.frequency_hz = freq(rng);
  s.p_cg = risunc::Vec3(pos(rng), pos(rng), 2.0 + pos(rng) / 3.0);
  s.p_tx = risunc::Vec3(pos(rng), pos(rng), -1.0);
  s.p_rx = risunc::Vec3(pos(rng), pos(rng), -1.5);
  s.ris = risunc::RisGeometry::Grid(rows, cols, s.wavelength() / 2.0,
                                    risunc::Vec3(off(rng), off(rng), -0.3));
  return s;
}

}  // namespace testing_support
