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

#include "risunc/complex_prop.hpp"

#include <cmath>
#include <string>

#include "risunc/error.hpp"

namespace risunc {

bool Covariance2::IsPsd(double det_tolerance) const {
  return std::isfinite(u11) && std::isfinite(u12) && std::isfinite(u22) &&
         u11 >= 0.0 && u22 >= 0.0 && det() >= -det_tolerance;
}

Eigen::Matrix2d Covariance2::matrix() const {
  Eigen::Matrix2d m;
  m << u11, u12, u12, u22;
  return m;
}

Covariance2 Covariance2::FromMatrix(const Eigen::Matrix2d& m) {
  return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)};
}

double FrobeniusNorm(const Covariance2& c) {
  return std::sqrt(c.u11 * c.u11 + 2.0 * c.u12 * c.u12 + c.u22 * c.u22);
}

double RelativeFrobenius(const Covariance2& a, const Covariance2& b) {
  const Covariance2 diff{a.u11 - b.u11, a.u12 - b.u12, a.u22 - b.u22};
  return FrobeniusNorm(diff) / FrobeniusNorm(b);
}

UncertainComplex CascadedCovariance(double amplitude, double phase,
                                    const AmpPhaseUncertainty& unc) {
  if (!(unc.var_amplitude >= 0.0) || !(unc.var_phase >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "negative amplitude/phase variance");
  }
  const double c = std::cos(phase), s = std::sin(phase);
  const double a = amplitude;
  const double va = unc.var_amplitude, vp = unc.var_phase, cap = unc.cov;
  UncertainComplex out;
  out.value = Complex(a * c, a * s);
  out.cov.u11 = c * c * va + a * a * s * s * vp - 2.0 * a * c * s * cap;
  out.cov.u22 = s * s * va + a * a * c * c * vp + 2.0 * a * c * s * cap;
  out.cov.u12 = a * (c * c - s * s) * cap + s * c * va - a * a * s * c * vp;
  return out;
}

UncertainComplex ApplyPhaseShift(const UncertainComplex& h, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const Covariance2& in = h.cov;
  UncertainComplex out;
  out.value = h.value * Complex(c, s);
  out.cov.u11 = c * c * in.u11 + s * s * in.u22 - 2.0 * c * s * in.u21();
  out.cov.u22 = s * s * in.u11 + c * c * in.u22 + 2.0 * c * s * in.u21();
  out.cov.u12 = c * s * in.u11 - c * s * in.u22 + (c * c - s * s) * in.u21();
  return out;
}

UncertainComplex SumEffective(std::span<const UncertainComplex> terms) {
  if (terms.empty()) {
    Fail(ErrorCode::kInvalidArgument, "cannot sum an empty list of channels");
  }
  UncertainComplex out{Complex(0.0, 0.0), Covariance2{}};
  for (const auto& t : terms) {
    out.value += t.value;
    out.cov += t.cov;
  }
  return out;
}

namespace {

[[noreturn]] void Rethrow(const Error& e, const char* stage, std::size_t m) {
  throw Error(e.code(), std::string("stage '") + stage + "', element " +
                            std::to_string(m) + ": " + e.what());
}

}  // namespace

ChainResult PropagateFullChain(const Scenario& scenario,
                               const EulerAngles& angles,
                               const AngleUncertainty& unc,
                               const RisConfig& config, bool keep_elements) {
  const std::size_t count = scenario.element_count();
  if (config.phases.size() != count) {
    Fail(ErrorCode::kInvalidArgument,
         "RIS configuration length " + std::to_string(config.phases.size()) +
             " does not match " + std::to_string(count) + " elements");
  }
  if (!angles.finite()) {
    Fail(ErrorCode::kInvalidArgument, "non-finite orientation angles");
  }

  ChainResult result;
  if (keep_elements) result.elements.reserve(count);
  UncertainComplex sum{Complex(0.0, 0.0), Covariance2{}};
  Eigen::Matrix<double, 2, 3> jac_sum = Eigen::Matrix<double, 2, 3>::Zero();

  for (std::size_t m = 0; m < count; ++m) {
    ElementTrace t;
    try {
      t.channel = ComputeCascadedChannel(scenario, angles, m);
      t.sens_tx = ComputeDistanceSensitivity(scenario, angles, m, Endpoint::kTx);
      t.sens_rx = ComputeDistanceSensitivity(scenario, angles, m, Endpoint::kRx);
    } catch (const Error& e) {
      Rethrow(e, "geometry", m);
    }

    AmpPhaseSensitivity ap;
    try {
      const SensitivityTerm th[] = {{t.sens_tx.roll, unc.var_roll},
                                    {t.sens_tx.pitch, unc.var_pitch},
                                    {t.sens_tx.yaw, unc.var_yaw}};
      const SensitivityTerm tg[] = {{t.sens_rx.roll, unc.var_roll},
                                    {t.sens_rx.pitch, unc.var_pitch},
                                    {t.sens_rx.yaw, unc.var_yaw}};
      t.distance_unc.var_tx = PropagateLpu(th);
      t.distance_unc.var_rx = PropagateLpu(tg);
      for (Axis a : kAllAxes) {
        t.distance_unc.cov += t.sens_tx[a] * t.sens_rx[a] * unc[a];
      }
      t.amp_phase_unc = ComputeAmpPhaseUncertainty(
          scenario, t.channel.distance_tx, t.channel.distance_rx, t.distance_unc);
      ap = ComputeAmpPhaseSensitivity(scenario, t.channel.distance_tx,
                                      t.channel.distance_rx);
    } catch (const Error& e) {
      Rethrow(e, "lpu", m);
    }

    try {
      t.cascaded = CascadedCovariance(t.channel.amplitude, t.channel.phase,
                                      t.amp_phase_unc);
      t.effective = ApplyPhaseShift(t.cascaded, config.phases[m]);
    } catch (const Error& e) {
      Rethrow(e, "complex", m);
    }
    sum.value += t.effective.value;
    sum.cov += t.effective.cov;

    // d(Re, Im of h_m^eff)/d(roll, pitch, yaw) by the chain rule.
    const double c = std::cos(t.channel.phase), s = std::sin(t.channel.phase);
    const double a = t.channel.amplitude;
    Eigen::Matrix2d polar;
    polar << c, -a * s, s, a * c;
    const double cp = std::cos(config.phases[m]), sp = std::sin(config.phases[m]);
    Eigen::Matrix2d rot;
    rot << cp, -sp, sp, cp;
    Eigen::Matrix2d dist_to_ap;
    dist_to_ap << ap.amp_tx, ap.amp_rx, ap.phase_tx, ap.phase_rx;
    Eigen::Matrix<double, 2, 3> angle_to_dist;
    angle_to_dist << t.sens_tx.roll, t.sens_tx.pitch, t.sens_tx.yaw,
        t.sens_rx.roll, t.sens_rx.pitch, t.sens_rx.yaw;
    jac_sum += rot * polar * dist_to_ap * angle_to_dist;

    if (keep_elements) result.elements.push_back(t);
  }

  const double gain2 = scenario.gain_tx * scenario.gain_rx;
  result.total.value = std::sqrt(gain2) * sum.value;
  result.total.cov = sum.cov * gain2;
  const Eigen::Vector3d var(unc.var_roll, unc.var_pitch, unc.var_yaw);
  result.shared_input_cov = Covariance2::FromMatrix(
      jac_sum * var.asDiagonal() * jac_sum.transpose() * gain2);
  return result;
}

}  // namespace risunc
