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

// Independent reference computations for tests. Nothing here calls the
// library's numerical code; everything is written out from first principles.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Complex = std::complex<double>;

inline constexpr double kC = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

inline Mat3 Rx(double a) {
  Mat3 m;
  m << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
  return m;
}
inline Mat3 Ry(double a) {
  Mat3 m;
  m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return m;
}
inline Mat3 Rz(double a) {
  Mat3 m;
  m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return m;
}

// Z-Y-X (yaw, pitch, roll) composition.
inline Mat3 Rotation(double roll, double pitch, double yaw) {
  return Rz(yaw) * Ry(pitch) * Rx(roll);
}

inline Mat3 Rotation(const std::array<double, 3>& q) { return Rotation(q[0], q[1], q[2]); }

inline Mat3 dRx(double a) {
  Mat3 m;
  m << 0, 0, 0, 0, -std::sin(a), -std::cos(a), 0, std::cos(a), -std::sin(a);
  return m;
}
inline Mat3 dRy(double a) {
  Mat3 m;
  m << -std::sin(a), 0, std::cos(a), 0, 0, 0, -std::cos(a), 0, -std::sin(a);
  return m;
}
inline Mat3 dRz(double a) {
  Mat3 m;
  m << -std::sin(a), -std::cos(a), 0, std::cos(a), -std::sin(a), 0, 0, 0, 0;
  return m;
}

// Partial derivative of the rotation with respect to angle i (0 roll, 1 pitch, 2 yaw).
inline Mat3 RotationDerivative(const std::array<double, 3>& q, int i) {
  const Mat3 x = i == 0 ? dRx(q[0]) : Rx(q[0]);
  const Mat3 y = i == 1 ? dRy(q[1]) : Ry(q[1]);
  const Mat3 z = i == 2 ? dRz(q[2]) : Rz(q[2]);
  return z * y * x;
}

// Central difference with step h.
inline double CentralDiff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct World {
  Vec3 tx, rx, cg;
  std::vector<Vec3> offsets;
  double freq = 5e9;
  double gain = 1.0;  // G_T * G_R
  double lambda() const { return kC / freq; }
};

inline Vec3 Element(const World& w, const std::array<double, 3>& q, std::size_t m) {
  return w.cg + Rotation(q) * w.offsets[m];
}

inline double DistTx(const World& w, const std::array<double, 3>& q, std::size_t m) {
  return (Element(w, q, m) - w.tx).norm();
}
inline double DistRx(const World& w, const std::array<double, 3>& q, std::size_t m) {
  return (Element(w, q, m) - w.rx).norm();
}

inline double Amplitude(const World& w, double dh, double dg) {
  const double f = 4.0 * kPi * w.freq;
  return kC * kC / (f * f * dh * dg);
}
inline double Phase(const World& w, double dh, double dg) {
  return 2.0 * kPi / w.lambda() * (dh + dg);
}

inline double AmplitudeAt(const World& w, const std::array<double, 3>& q, std::size_t m) {
  return Amplitude(w, DistTx(w, q, m), DistRx(w, q, m));
}
inline double PhaseAt(const World& w, const std::array<double, 3>& q, std::size_t m) {
  return Phase(w, DistTx(w, q, m), DistRx(w, q, m));
}

// Single-step analytic Jacobian of (A_m, P_m) with respect to the angles,
// obtained by differentiating the composite map directly.
inline Eigen::Matrix<double, 2, 3> AmpPhaseJacobian(const World& w, const std::array<double, 3>& q,
                                                    std::size_t m) {
  const Vec3 p = Element(w, q, m);
  const Vec3 uh = (p - w.tx).normalized();
  const Vec3 ug = (p - w.rx).normalized();
  const double dh = (p - w.tx).norm();
  const double dg = (p - w.rx).norm();
  const double a = Amplitude(w, dh, dg);
  const double k = 2.0 * kPi / w.lambda();
  Eigen::Matrix<double, 2, 3> j;
  for (int i = 0; i < 3; ++i) {
    const Vec3 dp = RotationDerivative(q, i) * w.offsets[m];
    const double ddh = uh.dot(dp);
    const double ddg = ug.dot(dp);
    j(0, i) = -a * (ddh / dh + ddg / dg);
    j(1, i) = k * (ddh + ddg);
  }
  return j;
}

// Gain-scaled effective channel with per-element phases phi.
inline Complex Effective(const World& w, const std::array<double, 3>& q,
                         const std::vector<double>& phi) {
  Complex sum = 0.0;
  for (std::size_t m = 0; m < w.offsets.size(); ++m) {
    sum += std::polar(AmplitudeAt(w, q, m), PhaseAt(w, q, m) + phi[m]);
  }
  return std::sqrt(w.gain) * sum;
}

// Extended-precision distance from an antenna to element m; used so that
// finite-difference rounding stays far below the comparison tolerance.
inline long double DistanceExtended(const World& w, const std::array<long double, 3>& q,
                                    std::size_t m, const Vec3& antenna) {
  using L = long double;
  const L cr = std::cos(q[0]), sr = std::sin(q[0]);
  const L cp = std::cos(q[1]), sp = std::sin(q[1]);
  const L cy = std::cos(q[2]), sy = std::sin(q[2]);
  const L r[3][3] = {{cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr},
                     {sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr},
                     {-sp, cp * sr, cp * cr}};
  L sum = 0;
  for (int i = 0; i < 3; ++i) {
    L p = static_cast<L>(w.cg(i)) - static_cast<L>(antenna(i));
    for (int j = 0; j < 3; ++j) p += r[i][j] * static_cast<L>(w.offsets[m](j));
    sum += p * p;
  }
  return std::sqrt(sum);
}

// Central difference of DistanceExtended with respect to angle i.
inline double DistanceDerivativeFd(const World& w, const std::array<double, 3>& q,
                                   std::size_t m, const Vec3& antenna, int i, double h) {
  std::array<long double, 3> qp{q[0], q[1], q[2]}, qm = qp;
  qp[i] += h;
  qm[i] -= h;
  return static_cast<double>((DistanceExtended(w, qp, m, antenna) -
                              DistanceExtended(w, qm, m, antenna)) /
                             (2.0L * h));
}

// Finite-difference Jacobian of a scalar function of the three angles.
inline std::array<double, 3> Gradient(const std::function<double(std::array<double, 3>)>& f,
                                      std::array<double, 3> q, double h) {
  std::array<double, 3> g{};
  for (int i = 0; i < 3; ++i) {
    auto qp = q, qm = q;
    qp[i] += h;
    qm[i] -= h;
    g[i] = (f(qp) - f(qm)) / (2.0 * h);
  }
  return g;
}

// J diag(var) J^T for a 2x3 Jacobian.
inline Eigen::Matrix2d Sandwich(const Eigen::Matrix<double, 2, 3>& j,
                                const std::array<double, 3>& var) {
  const Eigen::Vector3d v(var[0], var[1], var[2]);
  return j * v.asDiagonal() * j.transpose();
}

// Covariance of x = (Re, Im) of A e^{iP} given the (A, P) covariance.
inline Eigen::Matrix2d PolarToCartesian(double a, double p, const Eigen::Matrix2d& ap) {
  Eigen::Matrix2d j;
  j << std::cos(p), -a * std::sin(p), std::sin(p), a * std::cos(p);
  return j * ap * j.transpose();
}

inline double Frobenius(const Eigen::Matrix2d& m) { return m.norm(); }

inline double RelFrobenius(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  return (a - b).norm() / b.norm();
}

// Probability mass of a bivariate normal inside the k-sigma Mahalanobis ellipse.
inline double EllipseMass(double k) { return 1.0 - std::exp(-0.5 * k * k); }

// Quantiles of chi-square with 999 degrees of freedom (0.5% and 99.5%).
inline constexpr double kChi2Df999Lo = 887.6211352175186;
inline constexpr double kChi2Df999Hi = 1117.890452678641;

}  // namespace oracle
