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
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "risunc/channel.hpp"
#include "risunc/coverage.hpp"
#include "risunc/montecarlo.hpp"
#include "risunc/lpu.hpp"

namespace risunc {

// Orientation errors (EKF minus reference), degrees, one row per sample.
struct OrientationErrorSeries {
  std::vector<double> timestamps;  // seconds, strictly increasing
  std::vector<double> roll;
  std::vector<double> pitch;
  std::vector<double> yaw;
  double rate_hz = 100.0;  // nominal sample rate

  std::size_t size() const { return timestamps.size(); }
  // Throws kInvalidArgument on length mismatch or non-monotone timestamps.
  void Validate() const;
};

enum class LogFormat {
  kAuto,
  // timestamp, roll_ekf, pitch_ekf, yaw_ekf, roll_ref, pitch_ref, yaw_ref
  kPaired,
  // timestamp, roll_err, pitch_err, yaw_err
  kErrors,
};

// Delimited text with a header row. The delimiter is taken from the header
// (comma, semicolon, tab, else whitespace); '#' lines and blank lines are
// skipped. Parse errors name the line and column.
OrientationErrorSeries ParseFlightLog(std::string_view text,
                                      LogFormat format = LogFormat::kAuto,
                                      double rate_hz = 100.0);
OrientationErrorSeries LoadFlightLog(const std::filesystem::path& path,
                                     LogFormat format = LogFormat::kAuto,
                                     double rate_hz = 100.0);

// Writes the error-column format.
std::string FormatSeries(const OrientationErrorSeries& series);
void SaveSeries(const OrientationErrorSeries& series,
                const std::filesystem::path& path);

// Drops round(trim * rate) samples at each end, then keeps a contiguous
// window of round(window * rate) samples at a seeded random offset.
// window_seconds <= 0 keeps everything left after trimming.
OrientationErrorSeries Preprocess(const OrientationErrorSeries& series,
                                  double trim_seconds, double window_seconds,
                                  std::uint64_t seed);

// Offset (in samples, after trimming) chosen by Preprocess.
std::size_t PreprocessOffset(std::size_t available, std::size_t window,
                             std::uint64_t seed);

// i.i.d. Gaussian errors per angle, timestamps k / rate.
OrientationErrorSeries SynthesizeSeries(
    const std::array<AngleDistribution, 3>& stats, std::size_t n,
    double rate_hz, std::uint64_t seed);

// Reference hover-flight error statistics (roll, pitch, yaw).
inline constexpr std::array<AngleDistribution, 3> kReferenceErrorStats{{
    {0.23, 0.49},
    {0.22, 0.48},
    {-0.06, 0.18},
}};

struct RegionSpec {
  RegionKind kind = RegionKind::kEllipse;
  double k = kEllipseCoverageFactor;
};

// Scenario plus everything a run needs; loaded from one JSON document.
struct RunConfig {
  Scenario scenario = Scenario::Reference();
  EulerAngles nominal;  // true hover orientation
  UncertaintySource uncertainty_source = UncertaintySource::kPerSample;
  bool bias_correction = false;
  std::vector<ConfigKind> configs{ConfigKind::kOff, ConfigKind::kRandom,
                                  ConfigKind::kOptimized};
  std::vector<RegionSpec> regions{
      {RegionKind::kEllipse, kEllipseCoverageFactor},
      {RegionKind::kAnnulus, kAnnulusCoverageFactor},
      {RegionKind::kAnnulus, kAnnulusReducedCoverageFactor}};
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;
  double trim_seconds = 5.0;
  double window_seconds = 10.0;
  double sample_rate_hz = 100.0;
  // Used when no flight log is supplied.
  std::array<AngleDistribution, 3> synthetic_stats = kReferenceErrorStats;
  std::size_t synthetic_samples = 3000;
};

RunConfig ParseRunConfig(std::string_view json_text);
RunConfig LoadRunConfig(const std::filesystem::path& path);
// Canonical JSON (sorted keys, units in names, every field explicit).
std::string RunConfigToJson(const RunConfig& config);

// 17 significant digits.
std::string FormatDouble(double v);

}  // namespace risunc
