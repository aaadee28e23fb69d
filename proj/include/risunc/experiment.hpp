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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "risunc/dataio.hpp"

namespace risunc {

struct RegionOutcome {
  RegionSpec spec;
  std::optional<Region> region;  // nullopt when degenerate (skipped)
  bool inside = false;
  double area = 0.0;
};

// One evaluated time step under one RIS configuration.
struct PointRecord {
  std::size_t run = 0;
  std::size_t step = 0;
  double timestamp = 0.0;
  ConfigKind config = ConfigKind::kOff;
  EulerAngles estimated;  // EKF-side orientation
  UncertainComplex estimate;
  Complex truth;
  std::vector<RegionOutcome> regions;
};

// Success counts for one (run, config, region, k). run == nullopt is the
// pooled row over all runs.
struct Aggregate {
  std::optional<std::size_t> run;
  ConfigKind config = ConfigKind::kOff;
  RegionSpec spec;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t inside = 0;
  double mean_area = 0.0;

  // Throws kInsufficientData when nothing was evaluated.
  double success_rate() const;
};

// Monte Carlo coverage of a region built at the nominal pose.
struct CoverageCheck {
  std::size_t run = 0;
  ConfigKind config = ConfigKind::kOff;
  RegionSpec spec;
  std::size_t samples = 0;
  double coverage = 0.0;
  double area = 0.0;
};

struct RunSummary {
  std::size_t samples = 0;
  std::array<SampleStats, 3> stats{};
  AngleUncertainty angle_unc;
};

struct ExperimentReport {
  RunConfig config;
  std::vector<RunSummary> runs;
  std::vector<PointRecord> points;
  std::vector<Aggregate> aggregates;
  std::vector<CoverageCheck> coverage;
};

// For every run and time step k: the EKF-side orientation is the nominal
// pose plus the recorded error e_k, the configuration is derived there, the
// estimate and its covariance come from PropagateFullChain, and the ground
// truth is the exact channel at the nominal pose with the same
// configuration. Errors abort with the failing run and step.
ExperimentReport RunExperiment(const RunConfig& config,
                               std::span<const OrientationErrorSeries> runs,
                               bool with_coverage = true);

// Recomputes the aggregates from point records.
std::vector<Aggregate> AggregatePoints(const RunConfig& config,
                                       std::size_t run_count,
                                       std::span<const PointRecord> points);

// Files: points.csv, aggregates.csv, table2.csv, ellipses.csv, annuli.csv,
// coverage.csv, metadata.json.
void EmitReport(const ExperimentReport& report, const std::filesystem::path& out_dir);

// One row of points.csv read back.
struct PointRow {
  std::size_t run = 0;
  std::size_t step = 0;
  ConfigKind config = ConfigKind::kOff;
  RegionSpec spec;
  bool valid = false;
  bool inside = false;
  double area = 0.0;
};
std::vector<PointRow> LoadPointTable(const std::filesystem::path& path);
// Pooled success counts keyed by (config, region, k) as in aggregates.csv.
std::vector<Aggregate> AggregateRows(std::span<const PointRow> rows);

// FNV-1a 64 of the canonical configuration JSON.
std::uint64_t ConfigHash(const RunConfig& config);

}  // namespace risunc
