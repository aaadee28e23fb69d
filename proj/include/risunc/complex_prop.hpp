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

#include <Eigen/Core>
#include <span>
#include <vector>

#include "risunc/channel.hpp"
#include "risunc/lpu.hpp"

namespace risunc {

// Symmetric 2x2 covariance of a pair of real quantities, e.g. (Re, Im) of a
// complex value.
struct Covariance2 {
  double u11 = 0.0;
  double u12 = 0.0;
  double u22 = 0.0;

  double u21() const { return u12; }
  double trace() const { return u11 + u22; }
  double det() const { return u11 * u22 - u12 * u12; }
  // trace >= 0, diagonal >= 0 and det >= -tol.
  bool IsPsd(double det_tolerance = 1e-15) const;

  Eigen::Matrix2d matrix() const;
  static Covariance2 FromMatrix(const Eigen::Matrix2d& m);

  Covariance2 operator+(const Covariance2& o) const {
    return {u11 + o.u11, u12 + o.u12, u22 + o.u22};
  }
  Covariance2& operator+=(const Covariance2& o) {
    u11 += o.u11;
    u12 += o.u12;
    u22 += o.u22;
    return *this;
  }
  Covariance2 operator*(double s) const { return {s * u11, s * u12, s * u22}; }
};

double FrobeniusNorm(const Covariance2& c);
// ||a - b||_F / ||b||_F
double RelativeFrobenius(const Covariance2& a, const Covariance2& b);

struct UncertainComplex {
  Complex value;
  Covariance2 cov;  // over (Re, Im)
};

// (A, P) -> (Re, Im) of A exp(jP), using the expanded entries of J U J^T with
// J = [cos P, -A sin P; sin P, A cos P].
UncertainComplex CascadedCovariance(double amplitude, double phase,
                                    const AmpPhaseUncertainty& unc);

// Multiplies the value by exp(j phi) and conjugates the covariance with the
// corresponding 2D rotation.
UncertainComplex ApplyPhaseShift(const UncertainComplex& h, double phi);

// Sum of values and of covariances, with the terms treated as independent.
UncertainComplex SumEffective(std::span<const UncertainComplex> terms);

struct ElementTrace {
  CascadedChannel channel;
  DistanceSensitivity sens_tx;
  DistanceSensitivity sens_rx;
  DistanceUncertainty distance_unc;
  AmpPhaseUncertainty amp_phase_unc;
  UncertainComplex cascaded;
  UncertainComplex effective;
};

struct ChainResult {
  // sqrt(G_T G_R)-scaled value and covariance of h_eff, per-element
  // covariances summed as independent.
  UncertainComplex total;
  // Diagnostic: covariance of h_eff when the shared dependence of every
  // element on the same three angles is kept (J diag(u^2) J^T with J the
  // summed 2x3 per-element Jacobians). Same gain scaling as total.
  Covariance2 shared_input_cov;
  std::vector<ElementTrace> elements;  // empty unless requested
};

// Runs geometry -> distance LPU -> amplitude/phase LPU -> cascaded covariance
// -> phase shift -> summation. Errors carry the failing stage and element.
ChainResult PropagateFullChain(const Scenario& scenario,
                               const EulerAngles& angles,
                               const AngleUncertainty& unc,
                               const RisConfig& config,
                               bool keep_elements = true);

}  // namespace risunc
