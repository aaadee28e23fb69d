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

#include <span>
#include <string_view>
#include <variant>

#include "risunc/complex_prop.hpp"

namespace risunc {

// Coverage-factor presets.
inline constexpr double kEllipseCoverageFactor = 2.0;
inline constexpr double kAnnulusCoverageFactor = 2.24;
inline constexpr double kAnnulusReducedCoverageFactor = 1.445;

// {p : (p - center)^T cov^-1 (p - center) <= k^2}. Singular covariances are
// handled with a pseudo-inverse; the deviation must then lie in the range
// of cov, so degenerate ellipses collapse to segments or points.
struct CoverageEllipse {
  Complex center;
  Covariance2 cov;
  double k = kEllipseCoverageFactor;
};

// Principal axes of an ellipse, for plotting.
struct EllipseAxes {
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double angle = 0.0;  // of the major axis, radians from the real axis
};

// {(r, theta) : |r - r0| <= dr, |wrap(theta - theta0)| <= dtheta}.
struct AnnularSection {
  double r0 = 0.0;
  double dr = 0.0;
  double theta0 = 0.0;
  double dtheta = 0.0;  // capped at pi

  double inner_radius() const { return r0 > dr ? r0 - dr : 0.0; }
  double outer_radius() const { return r0 + dr; }
};

enum class RegionKind { kEllipse, kAnnulus };
std::string_view ToString(RegionKind kind);
RegionKind ParseRegionKind(std::string_view text);

using Region = std::variant<CoverageEllipse, AnnularSection>;

CoverageEllipse EllipseFrom(const UncertainComplex& uc, double k);
bool EllipseContains(const CoverageEllipse& e, Complex p);
EllipseAxes ComputeEllipseAxes(const CoverageEllipse& e);

// Polar moments at the estimate: J_pol = [cos t, sin t; -sin t / r, cos t / r].
struct PolarUncertainty {
  double u_radius = 0.0;
  double u_angle = 0.0;
};
PolarUncertainty ComputePolarUncertainty(const UncertainComplex& uc);

// Degenerate at the origin: throws kDegenerateGeometry when |value| <= eps.
AnnularSection AnnulusFrom(const UncertainComplex& uc, double k,
                           double eps = 1e-300);
bool AnnulusContains(const AnnularSection& a, Complex p);

Region MakeRegion(RegionKind kind, const UncertainComplex& uc, double k);
bool Contains(const Region& region, Complex p);
double RegionArea(const Region& region);

// Fraction of i with truths[i] inside regions[i].
double SuccessRate(std::span<const Region> regions,
                   std::span<const Complex> truths);

}  // namespace risunc
