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
#include <cstddef>
#include <vector>

namespace risunc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

double DegToRad(double deg);
double RadToDeg(double rad);

// Roll (x), pitch (y), yaw (z), radians.
struct EulerAngles {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;

  static EulerAngles FromDegrees(double roll_deg, double pitch_deg,
                                 double yaw_deg);
  bool finite() const;
};

enum class Axis { kRoll = 0, kPitch = 1, kYaw = 2 };
inline constexpr Axis kAllAxes[] = {Axis::kRoll, Axis::kPitch, Axis::kYaw};

enum class Endpoint { kTx, kRx };

// Planar element grid hanging from the UAV body. Element offsets are in the
// body frame relative to the center of gravity; the grid lies in the body
// x-y plane, row-major (m = row * cols + col) and centered on mount_offset.
struct RisGeometry {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double element_pitch = 0.0;
  Vec3 mount_offset = Vec3::Zero();
  std::vector<Vec3> element_offsets;

  static RisGeometry Grid(std::size_t rows, std::size_t cols,
                          double element_pitch, const Vec3& mount_offset);
  // Arbitrary element layout; rows = 1, cols = offsets.size().
  static RisGeometry FromOffsets(std::vector<Vec3> offsets);

  std::size_t size() const { return element_offsets.size(); }
};

struct Scenario {
  Vec3 p_tx = Vec3::Zero();
  Vec3 p_rx = Vec3::Zero();
  Vec3 p_cg = Vec3::Zero();
  RisGeometry ris;
  double frequency_hz = 5.0e9;
  double gain_tx = 1.0;
  double gain_rx = 1.0;
  // Minimum admissible antenna-element separation.
  double degeneracy_eps = 1e-6;

  double wavelength() const { return kSpeedOfLight / frequency_hz; }
  double wavenumber() const { return 2.0 * kPi / wavelength(); }
  std::size_t element_count() const { return ris.size(); }

  // Throws kInvalidArgument / kDegenerateGeometry.
  void Validate() const;

  // Tx (0,0,0.1), Rx (2,0,0.1), c.g. (1,1,1), 12x10 grid at half-wavelength
  // pitch hanging 0.3 m below the c.g., unit gains.
  static Scenario Reference(double frequency_hz = 5.0e9);
};

// R = Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 RotationMatrix(const EulerAngles& angles);

// Analytic partial derivative of RotationMatrix with respect to one angle.
Mat3 RotationMatrixDerivative(const EulerAngles& angles, Axis which);

// Element index m is zero-based.
Vec3 ElementPosition(const Scenario& scenario, const EulerAngles& angles,
                     std::size_t m);

double Distance(const Scenario& scenario, const EulerAngles& angles,
                std::size_t m, Endpoint endpoint);

// d(distance)/d(roll, pitch, yaw) in meters per radian.
struct DistanceSensitivity {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;

  double operator[](Axis a) const;
};

DistanceSensitivity ComputeDistanceSensitivity(const Scenario& scenario,
                                               const EulerAngles& angles,
                                               std::size_t m,
                                               Endpoint endpoint);

}  // namespace risunc
