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

#include "risunc/lpu.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "risunc/error.hpp"

namespace risunc {

AngleUncertainty AngleUncertainty::FromStdDegrees(double roll_deg,
                                                  double pitch_deg,
                                                  double yaw_deg) {
  const double r = DegToRad(roll_deg), p = DegToRad(pitch_deg),
               y = DegToRad(yaw_deg);
  return {r * r, p * p, y * y};
}

AngleUncertainty AngleUncertainty::FromVarianceDegrees2(double roll_deg2,
                                                        double pitch_deg2,
                                                        double yaw_deg2) {
  const double s = DegToRad(1.0) * DegToRad(1.0);
  return {roll_deg2 * s, pitch_deg2 * s, yaw_deg2 * s};
}

double AngleUncertainty::operator[](Axis a) const {
  switch (a) {
    case Axis::kRoll:
      return var_roll;
    case Axis::kPitch:
      return var_pitch;
    case Axis::kYaw:
      return var_yaw;
  }
  return 0.0;
}

AngleUncertainty AngleUncertainty::Scaled(double alpha) const {
  return {alpha * var_roll, alpha * var_pitch, alpha * var_yaw};
}

AngleUncertainty AngleUncertaintyFromStats(const std::array<SampleStats, 3>& s,
                                           UncertaintySource source) {
  if (source == UncertaintySource::kOfMean) {
    return AngleUncertainty::FromVarianceDegrees2(
        s[0].variance_of_mean, s[1].variance_of_mean, s[2].variance_of_mean);
  }
  return AngleUncertainty::FromVarianceDegrees2(s[0].variance, s[1].variance,
                                                s[2].variance);
}

double PropagateLpu(std::span<const SensitivityTerm> terms) {
  double var = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!(terms[i].variance >= 0.0)) {
      Fail(ErrorCode::kInvalidArgument,
           "negative input variance at term " + std::to_string(i));
    }
    var += terms[i].coefficient * terms[i].coefficient * terms[i].variance;
  }
  return var;
}

double PropagateLpuCorrelated(std::span<const SensitivityTerm> terms,
                              std::span<const CovarianceTerm> covariances) {
  const double base = PropagateLpu(terms);
  if (covariances.empty()) return base;

  const auto n = static_cast<Eigen::Index>(terms.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) cov(i, i) = terms[i].variance;
  std::vector<char> seen(terms.size() * terms.size(), 0);
  double cross = 0.0;
  for (const auto& c : covariances) {
    if (c.i == c.j || c.i >= terms.size() || c.j >= terms.size()) {
      Fail(ErrorCode::kInvalidArgument, "invalid covariance index pair (" +
                                            std::to_string(c.i) + ", " +
                                            std::to_string(c.j) + ")");
    }
    const auto i = static_cast<Eigen::Index>(c.i);
    const auto j = static_cast<Eigen::Index>(c.j);
    const std::size_t lo = std::min(c.i, c.j), hi = std::max(c.i, c.j);
    if (seen[lo * terms.size() + hi]++) {
      Fail(ErrorCode::kInvalidArgument, "duplicate covariance pair");
    }
    cov(i, j) = cov(j, i) = c.covariance;
    cross += terms[c.i].coefficient * terms[c.j].coefficient * c.covariance;
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      cov, Eigen::EigenvaluesOnly);
  const double largest = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (eig.eigenvalues().minCoeff() < -1e-12 * largest) {
    Fail(ErrorCode::kNumerical,
         "input covariance matrix is not positive semidefinite");
  }
  return base + 2.0 * cross;
}

DistanceUncertainty ComputeDistanceUncertainty(const Scenario& scenario,
                                               const EulerAngles& angles,
                                               const AngleUncertainty& unc,
                                               std::size_t m) {
  const auto sh = ComputeDistanceSensitivity(scenario, angles, m, Endpoint::kTx);
  const auto sg = ComputeDistanceSensitivity(scenario, angles, m, Endpoint::kRx);
  const SensitivityTerm th[] = {{sh.roll, unc.var_roll},
                                {sh.pitch, unc.var_pitch},
                                {sh.yaw, unc.var_yaw}};
  const SensitivityTerm tg[] = {{sg.roll, unc.var_roll},
                                {sg.pitch, unc.var_pitch},
                                {sg.yaw, unc.var_yaw}};
  DistanceUncertainty out;
  out.var_tx = PropagateLpu(th);
  out.var_rx = PropagateLpu(tg);
  // Independent angles: only the diagonal of the angle covariance survives.
  for (Axis a : kAllAxes) out.cov += sh[a] * sg[a] * unc[a];
  return out;
}

AmpPhaseSensitivity ComputeAmpPhaseSensitivity(const Scenario& scenario,
                                               double distance_tx,
                                               double distance_rx) {
  if (!(distance_tx >= scenario.degeneracy_eps) ||
      !(distance_rx >= scenario.degeneracy_eps)) {
    Fail(ErrorCode::kDegenerateGeometry, "distance below degeneracy threshold");
  }
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const double ft = 4.0 * kPi * scenario.frequency_hz * distance_tx;
  const double fr = 4.0 * kPi * scenario.frequency_hz * distance_rx;
  const double k = scenario.wavenumber();
  return {-c2 / (ft * ft * distance_rx), -c2 / (fr * fr * distance_tx), k, k};
}

AmpPhaseUncertainty ComputeAmpPhaseUncertainty(const Scenario& scenario,
                                               double distance_tx,
                                               double distance_rx,
                                               const DistanceUncertainty& dist) {
  const auto s = ComputeAmpPhaseSensitivity(scenario, distance_tx, distance_rx);
  const CovarianceTerm pair[] = {{0, 1, dist.cov}};

  const SensitivityTerm amp[] = {{s.amp_tx, dist.var_tx}, {s.amp_rx, dist.var_rx}};
  const SensitivityTerm phase[] = {{s.phase_tx, dist.var_tx},
                                   {s.phase_rx, dist.var_rx}};
  AmpPhaseUncertainty out;
  out.var_amplitude = PropagateLpuCorrelated(amp, pair);
  out.var_phase = PropagateLpuCorrelated(phase, pair);
  out.cov = s.amp_tx * s.phase_tx * dist.var_tx +
            s.amp_rx * s.phase_rx * dist.var_rx +
            (s.amp_tx * s.phase_rx + s.amp_rx * s.phase_tx) * dist.cov;
  return out;
}

AmpPhaseUncertainty ComputeAmpPhaseUncertainty(const Scenario& scenario,
                                               const EulerAngles& angles,
                                               const DistanceUncertainty& dist,
                                               std::size_t m) {
  return ComputeAmpPhaseUncertainty(
      scenario, Distance(scenario, angles, m, Endpoint::kTx),
      Distance(scenario, angles, m, Endpoint::kRx), dist);
}

double PhaseVarianceClosedForm(const Scenario& scenario,
                               const DistanceUncertainty& dist) {
  const double k = scenario.wavenumber();
  return k * k * (dist.var_tx + dist.var_rx + 2.0 * dist.cov);
}

}  // namespace risunc
