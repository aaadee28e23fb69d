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

#include "risunc/gum_stats.hpp"
#include "risunc/geometry.hpp"

namespace risunc {

// Variances of the Euler angles in radians^2. The angles are treated as
// mutually independent.
struct AngleUncertainty {
  double var_roll = 0.0;
  double var_pitch = 0.0;
  double var_yaw = 0.0;

  static AngleUncertainty FromStdDegrees(double roll_deg, double pitch_deg,
                                         double yaw_deg);
  static AngleUncertainty FromVarianceDegrees2(double roll_deg2,
                                               double pitch_deg2,
                                               double yaw_deg2);

  double operator[](Axis a) const;
  AngleUncertainty Scaled(double alpha) const;
};

// Which Type-A quantity feeds the propagation.
enum class UncertaintySource { kPerSample, kOfMean };

AngleUncertainty AngleUncertaintyFromStats(const std::array<SampleStats, 3>& s,
                                           UncertaintySource source);

struct DistanceUncertainty {
  double var_tx = 0.0;  // u^2(d^h)
  double var_rx = 0.0;  // u^2(d^g)
  double cov = 0.0;     // u(d^h, d^g)
};

struct AmpPhaseUncertainty {
  double var_amplitude = 0.0;
  double var_phase = 0.0;
  double cov = 0.0;
};

struct SensitivityTerm {
  double coefficient = 0.0;
  double variance = 0.0;
};

struct CovarianceTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  double covariance = 0.0;  // u(x_i, x_j), i != j
};

// u^2(y) = sum c_i^2 u^2(x_i).
double PropagateLpu(std::span<const SensitivityTerm> terms);

// Adds 2 sum_{i<j} c_i c_j u(x_i, x_j). Each unordered pair may appear once.
// The implied input covariance must be positive semidefinite.
double PropagateLpuCorrelated(std::span<const SensitivityTerm> terms,
                              std::span<const CovarianceTerm> covariances);

DistanceUncertainty ComputeDistanceUncertainty(const Scenario& scenario,
                                               const EulerAngles& angles,
                                               const AngleUncertainty& unc,
                                               std::size_t m);

// Sensitivities of amplitude and phase to the two distances.
struct AmpPhaseSensitivity {
  double amp_tx = 0.0;    // dA/dd^h
  double amp_rx = 0.0;    // dA/dd^g
  double phase_tx = 0.0;  // dP/dd^h = 2 pi / lambda
  double phase_rx = 0.0;
};

AmpPhaseSensitivity ComputeAmpPhaseSensitivity(const Scenario& scenario,
                                               double distance_tx,
                                               double distance_rx);

AmpPhaseUncertainty ComputeAmpPhaseUncertainty(const Scenario& scenario,
                                               const EulerAngles& angles,
                                               const DistanceUncertainty& dist,
                                               std::size_t m);

// Same propagation from already known distances.
AmpPhaseUncertainty ComputeAmpPhaseUncertainty(const Scenario& scenario,
                                               double distance_tx,
                                               double distance_rx,
                                               const DistanceUncertainty& dist);

// Closed form (2 pi / lambda)^2 (u^2(d^h) + u^2(d^g) + 2 u(d^h, d^g)); used
// to cross-check the staged phase variance.
double PhaseVarianceClosedForm(const Scenario& scenario,
                               const DistanceUncertainty& dist);

}  // namespace risunc
