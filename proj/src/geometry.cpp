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

#include "risunc/geometry.hpp"

#include <cmath>
#include <string>

#include "risunc/error.hpp"

namespace risunc {

double DegToRad(double deg) { return deg * (kPi / 180.0); }
double RadToDeg(double rad) { return rad * (180.0 / kPi); }

EulerAngles EulerAngles::FromDegrees(double roll_deg, double pitch_deg,
                                     double yaw_deg) {
  return {DegToRad(roll_deg), DegToRad(pitch_deg), DegToRad(yaw_deg)};
}

bool EulerAngles::finite() const {
  return std::isfinite(roll) && std::isfinite(pitch) && std::isfinite(yaw);
}

RisGeometry RisGeometry::Grid(std::size_t rows, std::size_t cols,
                              double element_pitch, const Vec3& mount_offset) {
  if (rows == 0 || cols == 0) {
    Fail(ErrorCode::kInvalidArgument, "RIS grid needs at least one element");
  }
  if (!(element_pitch >= 0.0) || !std::isfinite(element_pitch)) {
    Fail(ErrorCode::kInvalidArgument, "element pitch must be finite and >= 0");
  }
  RisGeometry g;
  g.rows = rows;
  g.cols = cols;
  g.element_pitch = element_pitch;
  g.mount_offset = mount_offset;
  g.element_offsets.reserve(rows * cols);
  const double row_center = 0.5 * static_cast<double>(rows - 1);
  const double col_center = 0.5 * static_cast<double>(cols - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vec3 in_plane((static_cast<double>(r) - row_center) * element_pitch,
                          (static_cast<double>(c) - col_center) * element_pitch,
                          0.0);
      g.element_offsets.push_back(mount_offset + in_plane);
    }
  }
  return g;
}

RisGeometry RisGeometry::FromOffsets(std::vector<Vec3> offsets) {
  if (offsets.empty()) {
    Fail(ErrorCode::kInvalidArgument, "RIS needs at least one element");
  }
  RisGeometry g;
  g.rows = 1;
  g.cols = offsets.size();
  Vec3 mean = Vec3::Zero();
  for (const auto& r : offsets) mean += r;
  g.mount_offset = mean / static_cast<double>(offsets.size());
  g.element_offsets = std::move(offsets);
  return g;
}

void Scenario::Validate() const {
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
    Fail(ErrorCode::kInvalidArgument, "frequency must be positive");
  }
  if (!(gain_tx > 0.0) || !(gain_rx > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "antenna gains must be positive");
  }
  if (ris.size() == 0) {
    Fail(ErrorCode::kInvalidArgument, "RIS has no elements");
  }
  if (!p_tx.allFinite() || !p_rx.allFinite() || !p_cg.allFinite()) {
    Fail(ErrorCode::kInvalidArgument, "positions must be finite");
  }
  if ((p_tx - p_cg).norm() < degeneracy_eps ||
      (p_rx - p_cg).norm() < degeneracy_eps) {
    Fail(ErrorCode::kDegenerateGeometry,
         "antenna coincides with the UAV center of gravity");
  }
}

Scenario Scenario::Reference(double frequency_hz) {
  Scenario s;
  s.p_tx = Vec3(0.0, 0.0, 0.1);
  s.p_rx = Vec3(2.0, 0.0, 0.1);
  s.p_cg = Vec3(1.0, 1.0, 1.0);
  s.frequency_hz = frequency_hz;
  s.ris = RisGeometry::Grid(12, 10, 0.5 * s.wavelength(), Vec3(0.0, 0.0, -0.3));
  return s;
}

namespace {

Mat3 Rx(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << 1, 0, 0, 0, c, -s, 0, s, c;
  return m;
}

Mat3 Ry(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, 0, s, 0, 1, 0, -s, 0, c;
  return m;
}

Mat3 Rz(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return m;
}

Mat3 DRx(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << 0, 0, 0, 0, -s, -c, 0, c, -s;
  return m;
}

Mat3 DRy(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << -s, 0, c, 0, 0, 0, -c, 0, -s;
  return m;
}

Mat3 DRz(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << -s, -c, 0, c, -s, 0, 0, 0, 0;
  return m;
}

void CheckIndex(const Scenario& scenario, std::size_t m) {
  if (m >= scenario.element_count()) {
    Fail(ErrorCode::kInvalidArgument,
         "element index " + std::to_string(m) + " out of range [0, " +
             std::to_string(scenario.element_count()) + ")");
  }
}

const Vec3& AntennaPosition(const Scenario& scenario, Endpoint endpoint) {
  return endpoint == Endpoint::kTx ? scenario.p_tx : scenario.p_rx;
}

}  // namespace

Mat3 RotationMatrix(const EulerAngles& angles) {
  return Rz(angles.yaw) * Ry(angles.pitch) * Rx(angles.roll);
}

Mat3 RotationMatrixDerivative(const EulerAngles& angles, Axis which) {
  switch (which) {
    case Axis::kRoll:
      return Rz(angles.yaw) * Ry(angles.pitch) * DRx(angles.roll);
    case Axis::kPitch:
      return Rz(angles.yaw) * DRy(angles.pitch) * Rx(angles.roll);
    case Axis::kYaw:
      return DRz(angles.yaw) * Ry(angles.pitch) * Rx(angles.roll);
  }
  return Mat3::Zero();
}

Vec3 ElementPosition(const Scenario& scenario, const EulerAngles& angles,
                     std::size_t m) {
  CheckIndex(scenario, m);
  return scenario.p_cg + RotationMatrix(angles) * scenario.ris.element_offsets[m];
}

double Distance(const Scenario& scenario, const EulerAngles& angles,
                std::size_t m, Endpoint endpoint) {
  const double d =
      (ElementPosition(scenario, angles, m) - AntennaPosition(scenario, endpoint))
          .norm();
  if (!(d >= scenario.degeneracy_eps)) {
    Fail(ErrorCode::kDegenerateGeometry,
         "element " + std::to_string(m) + " coincides with the " +
             (endpoint == Endpoint::kTx ? "Tx" : "Rx") + " antenna");
  }
  return d;
}

double DistanceSensitivity::operator[](Axis a) const {
  switch (a) {
    case Axis::kRoll:
      return roll;
    case Axis::kPitch:
      return pitch;
    case Axis::kYaw:
      return yaw;
  }
  return 0.0;
}

DistanceSensitivity ComputeDistanceSensitivity(const Scenario& scenario,
                                               const EulerAngles& angles,
                                               std::size_t m,
                                               Endpoint endpoint) {
  const Vec3 delta =
      ElementPosition(scenario, angles, m) - AntennaPosition(scenario, endpoint);
  const double d = delta.norm();
  if (!(d >= scenario.degeneracy_eps)) {
    Fail(ErrorCode::kDegenerateGeometry,
         "element " + std::to_string(m) + " coincides with an antenna");
  }
  const Vec3 unit = delta / d;
  const Vec3& r = scenario.ris.element_offsets[m];
  // dp_m/dq = (dR/dq) r_m; the c.g. does not move.
  return {unit.dot(RotationMatrixDerivative(angles, Axis::kRoll) * r),
          unit.dot(RotationMatrixDerivative(angles, Axis::kPitch) * r),
          unit.dot(RotationMatrixDerivative(angles, Axis::kYaw) * r)};
}

}  // namespace risunc
