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
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "risunc/error.hpp"

namespace risunc {
namespace {

using testing_support::RandomAngles;
using testing_support::RandomScenario;
using testing_support::ToArray;
using testing_support::ToWorld;

Scenario SingleElement(const Vec3& offset) {
  Scenario s = Scenario::Reference();
  s.ris = RisGeometry::FromOffsets({offset});
  return s;
}

TEST(Rotation, IdentityAtZero) {
  EXPECT_EQ(RotationMatrix({}), Mat3::Identity());
}

TEST(Rotation, MatchesIndependentComposition) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const EulerAngles a = RandomAngles(rng, kPi);
    EXPECT_LT((RotationMatrix(a) - oracle::Rotation(ToArray(a))).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Rotation, OrthonormalWithUnitDeterminant) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    const Mat3 r = RotationMatrix(RandomAngles(rng, kPi));
    ASSERT_LT((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_NEAR(r.determinant(), 1.0, 1e-12);
  }
}

TEST(Rotation, YawGeneratorAtZero) {
  const Vec3 v = RotationMatrixDerivative({}, Axis::kYaw) * Vec3::UnitX();
  EXPECT_NEAR((v - Vec3::UnitY()).norm(), 0.0, 1e-15);
}

TEST(Rotation, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(13);
  const double h = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const EulerAngles a = RandomAngles(rng, kPi);
    for (Axis ax : kAllAxes) {
      EulerAngles ap = a, am = a;
      double* ppos = ax == Axis::kRoll ? &ap.roll : ax == Axis::kPitch ? &ap.pitch : &ap.yaw;
      double* pneg = ax == Axis::kRoll ? &am.roll : ax == Axis::kPitch ? &am.pitch : &am.yaw;
      *ppos += h;
      *pneg -= h;
      const Mat3 fd = (oracle::Rotation(ToArray(ap)) - oracle::Rotation(ToArray(am))) / (2 * h);
      ASSERT_LT((RotationMatrixDerivative(a, ax) - fd).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}

TEST(ElementPosition, IdentityRotationAddsOffset) {
  const Scenario s = SingleElement(Vec3(0, 0, -0.3));
  EXPECT_NEAR((ElementPosition(s, {}, 0) - Vec3(1, 1, 0.7)).norm(), 0.0, 1e-15);
}

TEST(ElementPosition, HalfTurnRollFlipsOffset) {
  const Scenario s = SingleElement(Vec3(0, 0, -0.3));
  EXPECT_NEAR((ElementPosition(s, {kPi, 0, 0}, 0) - Vec3(1, 1, 1.3)).norm(), 0.0, 1e-15);
}

TEST(ElementPosition, PreservesOffsetNorm) {
  std::mt19937_64 rng(14);
  const Scenario s = Scenario::Reference();
  for (int i = 0; i < 1000; ++i) {
    const EulerAngles a = RandomAngles(rng, kPi);
    const std::size_t m = rng() % s.element_count();
    EXPECT_NEAR((ElementPosition(s, a, m) - s.p_cg).norm(), s.ris.element_offsets[m].norm(),
                1e-12);
  }
}

TEST(ElementPosition, IndexOutOfRange) {
  const Scenario s = Scenario::Reference();
  try {
    ElementPosition(s, {}, s.element_count());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(Grid, ReferenceLayout) {
  const Scenario s = Scenario::Reference();
  ASSERT_EQ(s.element_count(), 120u);
  Vec3 mean = Vec3::Zero();
  for (const Vec3& r : s.ris.element_offsets) mean += r;
  mean /= 120.0;
  EXPECT_NEAR((mean - Vec3(0, 0, -0.3)).norm(), 0.0, 1e-15);
  const double pitch = kSpeedOfLight / 5e9 / 2.0;
  EXPECT_NEAR((s.ris.element_offsets[1] - s.ris.element_offsets[0]).norm(), pitch, 1e-15);
  EXPECT_NEAR((s.ris.element_offsets[10] - s.ris.element_offsets[0]).norm(), pitch, 1e-15);
  for (const Vec3& r : s.ris.element_offsets) EXPECT_DOUBLE_EQ(r.z(), -0.3);
}

TEST(Distance, TxToReferenceCenter) {
  const Scenario s = SingleElement(Vec3(0, 0, -0.3));
  EXPECT_NEAR(Distance(s, {}, 0, Endpoint::kTx), std::sqrt(2.36), 1e-15);
}

TEST(Distance, UnitOffsetFromRx) {
  Scenario s = SingleElement(Vec3::Zero());
  s.p_cg = s.p_rx + Vec3(0, 0, 1);
  EXPECT_DOUBLE_EQ(Distance(s, {}, 0, Endpoint::kRx), 1.0);
}

TEST(Distance, TranslationInvariant) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 100; ++i) {
    Scenario s = RandomScenario(rng);
    const EulerAngles a = RandomAngles(rng, 0.5);
    const double d0 = Distance(s, a, 3, Endpoint::kTx);
    const Vec3 shift(1.5, -2.0, 0.25);
    s.p_tx += shift;
    s.p_rx += shift;
    s.p_cg += shift;
    EXPECT_NEAR(Distance(s, a, 3, Endpoint::kTx), d0, 1e-12 * d0);
  }
}

TEST(Distance, DegenerateCoincidence) {
  Scenario s = SingleElement(Vec3::Zero());
  s.p_cg = s.p_tx + Vec3(0, 0, 1e-7);
  try {
    Distance(s, {}, 0, Endpoint::kTx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateGeometry);
  }
}

TEST(DistanceSensitivity, ZeroAtCenterOfGravity) {
  const Scenario s = SingleElement(Vec3::Zero());
  const DistanceSensitivity c = ComputeDistanceSensitivity(s, {0.1, -0.2, 0.3}, 0, Endpoint::kTx);
  EXPECT_EQ(c.roll, 0.0);
  EXPECT_EQ(c.pitch, 0.0);
  EXPECT_EQ(c.yaw, 0.0);
}

TEST(DistanceSensitivity, YawVanishesOnYawAxis) {
  const Scenario s = SingleElement(Vec3(0, 0, -0.3));
  EXPECT_NEAR(ComputeDistanceSensitivity(s, {}, 0, Endpoint::kTx).yaw, 0.0, 1e-15);
}

TEST(DistanceSensitivity, MatchesFiniteDifference) {
  std::mt19937_64 rng(16);
  const double h = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    const Scenario s = RandomScenario(rng, 2, 2);
    const oracle::World w = ToWorld(s);
    const EulerAngles a = RandomAngles(rng, 0.5);
    const std::size_t m = rng() % s.element_count();
    for (Endpoint ep : {Endpoint::kTx, Endpoint::kRx}) {
      const Vec3& antenna = ep == Endpoint::kTx ? w.tx : w.rx;
      const DistanceSensitivity c = ComputeDistanceSensitivity(s, a, m, ep);
      for (int q = 0; q < 3; ++q) {
        const double v = c[kAllAxes[q]];
        const double fd = oracle::DistanceDerivativeFd(w, ToArray(a), m, antenna, q, h);
        if (std::abs(v) > 1e-9) {
          ASSERT_NEAR(v, fd, 1e-6 * std::abs(v)) << "trial " << i << " axis " << q;
        }
      }
    }
  }
}

TEST(Scenario, ValidateRejectsBadFrequency) {
  Scenario s = Scenario::Reference();
  s.frequency_hz = 0.0;
  EXPECT_THROW(s.Validate(), Error);
  s = Scenario::Reference();
  s.ris.element_offsets.clear();
  EXPECT_THROW(s.Validate(), Error);
}

}  // namespace
}  // namespace risunc
