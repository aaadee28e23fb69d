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

#include "risunc/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "risunc/error.hpp"

namespace risunc {

std::string_view ToString(RegionKind kind) {
  return kind == RegionKind::kEllipse ? "ellipse" : "annulus";
}

RegionKind ParseRegionKind(std::string_view text) {
  if (text == "ellipse") return RegionKind::kEllipse;
  if (text == "annulus") return RegionKind::kAnnulus;
  Fail(ErrorCode::kParse, "unknown region kind '" + std::string(text) +
                              "' (expected ellipse|annulus)");
}

namespace {

void CheckFactor(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    Fail(ErrorCode::kInvalidArgument, "coverage factor must be positive");
  }
}

// Eigen-decomposition of a symmetric 2x2 matrix; l1 >= l2, v1 = (cos, sin)
// of the major-axis angle.
struct SymEigen2 {
  double l1, l2, angle;
};

SymEigen2 Decompose(const Covariance2& c) {
  const double mid = 0.5 * (c.u11 + c.u22);
  const double half_diff = 0.5 * (c.u11 - c.u22);
  const double rad = std::hypot(half_diff, c.u12);
  return {mid + rad, mid - rad, 0.5 * std::atan2(2.0 * c.u12, c.u11 - c.u22)};
}

}  // namespace

CoverageEllipse EllipseFrom(const UncertainComplex& uc, double k) {
  CheckFactor(k);
  if (!uc.cov.IsPsd()) {
    Fail(ErrorCode::kNumerical, "ellipse covariance is not positive semidefinite");
  }
  return {uc.value, uc.cov, k};
}

bool EllipseContains(const CoverageEllipse& e, Complex p) {
  const SymEigen2 eig = Decompose(e.cov);
  const double c = std::cos(eig.angle), s = std::sin(eig.angle);
  const Complex d = p - e.center;
  const double along[2] = {c * d.real() + s * d.imag(),
                           -s * d.real() + c * d.imag()};
  const double lambda[2] = {eig.l1, eig.l2};
  const double l_max = std::max(eig.l1, 0.0);
  const double null_tol =
      1e-12 * std::max(std::abs(e.center), e.k * std::sqrt(l_max));
  double mahalanobis2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (lambda[i] > 1e-12 * l_max && lambda[i] > 0.0) {
      mahalanobis2 += along[i] * along[i] / lambda[i];
    } else if (std::abs(along[i]) > null_tol) {
      return false;  // outside the range space
    }
  }
  return mahalanobis2 <= e.k * e.k;
}

EllipseAxes ComputeEllipseAxes(const CoverageEllipse& e) {
  const SymEigen2 eig = Decompose(e.cov);
  return {e.k * std::sqrt(std::max(eig.l1, 0.0)),
          e.k * std::sqrt(std::max(eig.l2, 0.0)), eig.angle};
}

PolarUncertainty ComputePolarUncertainty(const UncertainComplex& uc) {
  const double r = std::abs(uc.value);
  const double t = std::arg(uc.value);
  const double c = std::cos(t), s = std::sin(t);
  const Covariance2& u = uc.cov;
  const double var_r = c * c * u.u11 + 2.0 * c * s * u.u12 + s * s * u.u22;
  const double var_t =
      (s * s * u.u11 - 2.0 * c * s * u.u12 + c * c * u.u22) / (r * r);
  return {std::sqrt(std::max(var_r, 0.0)), std::sqrt(std::max(var_t, 0.0))};
}

AnnularSection AnnulusFrom(const UncertainComplex& uc, double k, double eps) {
  CheckFactor(k);
  if (!(std::abs(uc.value) > eps)) {
    Fail(ErrorCode::kDegenerateGeometry,
         "annular section is undefined for an estimate at the origin");
  }
  const PolarUncertainty pu = ComputePolarUncertainty(uc);
  AnnularSection a;
  a.r0 = std::abs(uc.value);
  a.theta0 = std::arg(uc.value);
  a.dr = k * pu.u_radius;
  a.dtheta = std::min(k * pu.u_angle, kPi);
  return a;
}

bool AnnulusContains(const AnnularSection& a, Complex p) {
  const double r = std::abs(p);
  if (r < a.inner_radius() || r > a.outer_radius()) return false;
  if (a.dtheta >= kPi) return true;
  return std::abs(WrapAngle(std::arg(p) - a.theta0)) <= a.dtheta;
}

Region MakeRegion(RegionKind kind, const UncertainComplex& uc, double k) {
  if (kind == RegionKind::kEllipse) return EllipseFrom(uc, k);
  return AnnulusFrom(uc, k);
}

bool Contains(const Region& region, Complex p) {
  return std::visit(
      [p](const auto& r) {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, CoverageEllipse>) {
          return EllipseContains(r, p);
        } else {
          return AnnulusContains(r, p);
        }
      },
      region);
}

double RegionArea(const Region& region) {
  if (const auto* e = std::get_if<CoverageEllipse>(&region)) {
    return kPi * e->k * e->k * std::sqrt(std::max(e->cov.det(), 0.0));
  }
  const auto& a = std::get<AnnularSection>(region);
  const double outer = a.outer_radius(), inner = a.inner_radius();
  return a.dtheta * (outer * outer - inner * inner);
}

double SuccessRate(std::span<const Region> regions,
                   std::span<const Complex> truths) {
  if (regions.size() != truths.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "success rate needs one truth per region (" +
             std::to_string(regions.size()) + " vs " +
             std::to_string(truths.size()) + ")");
  }
  if (regions.empty()) {
    Fail(ErrorCode::kInsufficientData, "success rate over zero regions");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    hits += Contains(regions[i], truths[i]) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(regions.size());
}

}  // namespace risunc
