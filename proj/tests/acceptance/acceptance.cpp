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
// Acceptance suite: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; pass criterion numbers to run a subset.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "risunc/complex_prop.hpp"
#include "risunc/coverage.hpp"
#include "risunc/dataio.hpp"
#include "risunc/error.hpp"
#include "risunc/experiment.hpp"
#include "risunc/gum_stats.hpp"
#include "risunc/lpu.hpp"
#include "risunc/montecarlo.hpp"

namespace {

using namespace risunc;
using testing_support::RandomAngles;
using testing_support::RandomScenario;
using testing_support::ToArray;
using testing_support::ToWorld;
namespace fs = std::filesystem;

// Pinned thresholds.
constexpr double kStatsRuntimeS = 1.0;
constexpr double kJacobianRelTol = 1e-6;
constexpr double kFdStepRad = 1e-6;
constexpr double kJacobianRuntimeS = 10.0;
constexpr double kStagedRelTol = 1e-10;
constexpr double kTraceRelTol = 1e-12;
constexpr double kMcRelFrobenius = 0.05;
constexpr std::size_t kMcSamples = 100000;
constexpr double kMcRuntimeS = 60.0;
constexpr double kEllipseRateMin = 0.99;
constexpr double kAnnulusMinusEllipseMin = 0.25;
constexpr double kAnnulusRateMin = 0.95;
constexpr double kAreaRatioTarget = 0.5839;
constexpr double kAreaRatioRelTol = 0.005;
constexpr double kCoverageAbsTol = 0.01;
constexpr std::size_t kCoverageSamples = 1000000;
constexpr double kPipelineRuntimeS = 5.0;
constexpr std::size_t kFlights = 10;

const AngleUncertainty kTableStd = AngleUncertainty::FromStdDegrees(0.49, 0.48, 0.18);

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

const char* kAngleNames[3] = {"roll", "pitch", "yaw"};

Outcome GumStatistics() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  const OrientationErrorSeries s = SynthesizeSeries(kReferenceErrorStats, 1000, 100.0, 1);
  const auto stats = StatsPerAngle(s);
  for (int a = 0; a < 3; ++a) {
    const double sigma = kReferenceErrorStats[a].std_deg;
    const double mean_err = std::abs(stats[a].mean - kReferenceErrorStats[a].mean_deg);
    const double mean_bound = 3.0 * sigma / std::sqrt(1000.0);
    const double lo = sigma * std::sqrt(oracle::kChi2Df999Lo / 999.0);
    const double hi = sigma * std::sqrt(oracle::kChi2Df999Hi / 999.0);
    ok &= mean_err <= mean_bound && stats[a].std_dev >= lo && stats[a].std_dev <= hi;
    detail += Fmt("%s mean %.4f std %.4f [%.4f,%.4f]; ", kAngleNames[a], stats[a].mean,
                  stats[a].std_dev, lo, hi);
  }
  const std::vector<double> x{1.0, 2.0, 3.0};
  const SampleStats t = TypeAStats(x);
  const bool exact = t.mean == 2.0 && t.variance == 1.0 && t.variance_of_mean == 1.0 / 3.0;
  ok &= exact;
  const double secs = Seconds(start);
  ok &= secs < kStatsRuntimeS;
  detail += Fmt("[1,2,3] %s; %.3f s", exact ? "exact" : "NOT exact", secs);
  return {ok, detail};
}

Outcome JacobianCorrectness() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  double worst_dist = 0.0, worst_amp = 0.0, worst_phase = 0.0;
  std::size_t checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Scenario s = RandomScenario(rng);
    const oracle::World w = ToWorld(s);
    const EulerAngles a = RandomAngles(rng, 0.5);
    for (std::size_t m = 0; m < s.element_count(); ++m) {
      for (Endpoint ep : {Endpoint::kTx, Endpoint::kRx}) {
        const Vec3& antenna = ep == Endpoint::kTx ? w.tx : w.rx;
        const DistanceSensitivity c = ComputeDistanceSensitivity(s, a, m, ep);
        for (int q = 0; q < 3; ++q) {
          const double v = c[kAllAxes[q]];
          if (std::abs(v) <= 1e-9) continue;
          const double fd = oracle::DistanceDerivativeFd(w, ToArray(a), m, antenna, q, kFdStepRad);
          worst_dist = std::max(worst_dist, std::abs(v - fd) / std::abs(v));
          ++checked;
        }
      }
      const double dh = Distance(s, a, m, Endpoint::kTx);
      const double dg = Distance(s, a, m, Endpoint::kRx);
      const AmpPhaseSensitivity c = ComputeAmpPhaseSensitivity(s, dh, dg);
      // Relative step keeps the difference well resolved at any distance.
      const double h = 1e-6 * dh, g = 1e-6 * dg;
      const double fa_h = (oracle::Amplitude(w, dh + h, dg) - oracle::Amplitude(w, dh - h, dg)) / (2 * h);
      const double fa_g = (oracle::Amplitude(w, dh, dg + g) - oracle::Amplitude(w, dh, dg - g)) / (2 * g);
      const double fp = (oracle::Phase(w, dh + h, dg) - oracle::Phase(w, dh - h, dg)) / (2 * h);
      worst_amp = std::max({worst_amp, std::abs(c.amp_tx - fa_h) / std::abs(c.amp_tx),
                            std::abs(c.amp_rx - fa_g) / std::abs(c.amp_rx)});
      worst_phase = std::max({worst_phase, std::abs(c.phase_tx - fp) / c.phase_tx,
                              std::abs(c.phase_rx - fp) / c.phase_rx});
    }
  }
  const double secs = Seconds(start);
  const bool ok = worst_dist <= kJacobianRelTol && worst_amp <= kJacobianRelTol &&
                  worst_phase <= kJacobianRelTol && secs < kJacobianRuntimeS;
  return {ok, Fmt("1000 geometries, %zu distance partials; worst rel: distance %.2e, "
                  "amplitude %.2e, phase %.2e; %.2f s",
                  checked, worst_dist, worst_amp, worst_phase, secs)};
}

Outcome StagedVsDirect() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s = RandomScenario(rng);
    const oracle::World w = ToWorld(s);
    const EulerAngles a = RandomAngles(rng, 0.4);
    for (std::size_t m = 0; m < s.element_count(); ++m) {
      const DistanceUncertainty du = ComputeDistanceUncertainty(s, a, kTableStd, m);
      const AmpPhaseUncertainty ap = ComputeAmpPhaseUncertainty(s, a, du, m);
      Eigen::Matrix2d staged;
      staged << ap.var_amplitude, ap.cov, ap.cov, ap.var_phase;
      const Eigen::Matrix2d direct =
          oracle::Sandwich(oracle::AmpPhaseJacobian(w, ToArray(a), m),
                           {kTableStd.var_roll, kTableStd.var_pitch, kTableStd.var_yaw});
      worst = std::max(worst, oracle::RelFrobenius(staged, direct));
    }
  }
  return {worst <= kStagedRelTol, Fmt("100 scenarios, worst rel Frobenius %.2e", worst)};
}

Outcome TracePreservation() {
  const Scenario s = Scenario::Reference();
  double worst = 0.0;
  for (ConfigKind k : {ConfigKind::kOff, ConfigKind::kRandom, ConfigKind::kOptimized}) {
    const ChainResult r = PropagateFullChain(s, {}, kTableStd, MakeConfig(k, s, {}, 1));
    for (const ElementTrace& e : r.elements) {
      worst = std::max(worst, std::abs(e.effective.cov.trace() - e.cascaded.cov.trace()) /
                                  e.cascaded.cov.trace());
    }
  }
  return {worst <= kTraceRelTol, Fmt("120 elements x 3 configs, worst rel %.2e", worst)};
}

Outcome MonteCarloAgreement() {
  const auto start = Clock::now();
  const Scenario s = Scenario::Reference();
  bool ok = true;
  std::string detail;
  for (ConfigKind k : {ConfigKind::kOff, ConfigKind::kRandom, ConfigKind::kOptimized}) {
    const RisConfig c = MakeConfig(k, s, {}, 1);
    const ChainResult r = PropagateFullChain(s, {}, kTableStd, c, false);
    const McConfig mc = McConfig::FromStdDegrees(0.49, 0.48, 0.18, kMcSamples, 1);
    const Covariance2 sample = SampleCovariance(SampleTruths(s, {}, c, mc));
    const double rel = RelativeFrobenius(r.total.cov, sample);
    const double rel_shared = RelativeFrobenius(r.shared_input_cov, sample);
    ok &= rel <= kMcRelFrobenius;
    detail += Fmt("%s %.3f (shared-input %.3f); ", std::string(ToString(k)).c_str(), rel,
                  rel_shared);
  }
  const double secs = Seconds(start);
  ok &= secs < kMcRuntimeS;
  return {ok, detail + Fmt("limit %.2f; %.1f s", kMcRelFrobenius, secs)};
}

std::vector<OrientationErrorSeries> SyntheticFlights() {
  std::vector<OrientationErrorSeries> runs;
  for (std::size_t f = 0; f < kFlights; ++f) {
    const OrientationErrorSeries raw = SynthesizeSeries(kReferenceErrorStats, 3000, 100.0, 1 + f);
    runs.push_back(Preprocess(raw, 5.0, 10.0, 1 + f));
  }
  return runs;
}

double Pooled(const ExperimentReport& r, ConfigKind k, RegionKind kind, double factor) {
  for (const Aggregate& a : r.aggregates) {
    if (!a.run && a.config == k && a.spec.kind == kind && a.spec.k == factor) {
      return a.success_rate();
    }
  }
  Fail(ErrorCode::kInvalidArgument, "aggregate missing");
}

Outcome SuccessPattern() {
  RunConfig cfg;
  cfg.regions = {{RegionKind::kEllipse, kEllipseCoverageFactor},
                 {RegionKind::kAnnulus, kAnnulusCoverageFactor}};
  const auto runs = SyntheticFlights();
  const ExperimentReport r = RunExperiment(cfg, runs, false);
  const double e_off = Pooled(r, ConfigKind::kOff, RegionKind::kEllipse, 2.0);
  const double e_rnd = Pooled(r, ConfigKind::kRandom, RegionKind::kEllipse, 2.0);
  const double e_opt = Pooled(r, ConfigKind::kOptimized, RegionKind::kEllipse, 2.0);
  const double a_opt = Pooled(r, ConfigKind::kOptimized, RegionKind::kAnnulus, 2.24);
  const bool ok = e_off >= kEllipseRateMin && e_rnd >= kEllipseRateMin &&
                  a_opt - e_opt >= kAnnulusMinusEllipseMin && a_opt >= kAnnulusRateMin;
  return {ok, Fmt("%zu flights x 1000 points: ellipse off %.4f, random %.4f, optimized %.4f; "
                  "annulus optimized %.4f (gap %.4f)",
                  kFlights, e_off, e_rnd, e_opt, a_opt, a_opt - e_opt)};
}

Outcome AreaReduction() {
  const Scenario s = Scenario::Reference();
  const ChainResult r =
      PropagateFullChain(s, {}, kTableStd, MakeConfig(ConfigKind::kOptimized, s, {}, 1), false);
  const AnnularSection big = AnnulusFrom(r.total, kAnnulusCoverageFactor);
  const AnnularSection small = AnnulusFrom(r.total, kAnnulusReducedCoverageFactor);
  const bool unclamped = big.dtheta < kPi && big.r0 > big.dr;
  const double reduction = 1.0 - RegionArea(Region(small)) / RegionArea(Region(big));
  const double rel = std::abs(reduction - kAreaRatioTarget) / kAreaRatioTarget;
  return {unclamped && rel <= kAreaRatioRelTol,
          Fmt("reduction %.5f vs %.4f (rel %.2e), unclamped %s", reduction, kAreaRatioTarget, rel,
              unclamped ? "yes" : "no")};
}

Outcome CoverageCalibration() {
  const Scenario s = Scenario::Reference();
  const ChainResult r =
      PropagateFullChain(s, {}, kTableStd, MakeConfig(ConfigKind::kOff, s, {}, 1), false);
  const Eigen::Matrix2d l = r.total.cov.matrix().llt().matrixL();
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> samples(kCoverageSamples);
  for (Complex& z : samples) {
    const Eigen::Vector2d x = l * Eigen::Vector2d(g(rng), g(rng));
    z = r.total.value + Complex(x(0), x(1));
  }
  const double cov = EmpiricalCoverage(Region(EllipseFrom(r.total, 2.0)), samples);
  const double target = oracle::EllipseMass(2.0);

  const RisConfig opt = MakeConfig(ConfigKind::kOptimized, s, {}, 1);
  const ChainResult ro = PropagateFullChain(s, {}, kTableStd, opt, false);
  const std::vector<Complex> truths =
      SampleTruths(s, {}, opt, McConfig::FromStdDegrees(0.49, 0.48, 0.18, kMcSamples, 1));
  const double ann = EmpiricalCoverage(
      Region(AnnulusFrom(ro.total, kAnnulusReducedCoverageFactor)), truths);
  return {std::abs(cov - target) <= kCoverageAbsTol,
          Fmt("ellipse k=2 coverage %.4f vs %.4f; annulus k=1.445 optimized coverage %.4f "
              "(reported against 0.95 target)",
              cov, target, ann)};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Determinism() {
  const fs::path base = fs::temp_directory_path() / "risunc_acceptance_determinism";
  fs::remove_all(base);
  const fs::path a = base / "a", b = base / "b";
  for (const fs::path& d : {a, b}) {
    const std::string cmd = std::string("\"") + RISUNC_CLI_PATH +
                            "\" report --seed 7 --mc-samples 20000 --out \"" + d.string() +
                            "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "report command failed"};
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    if (!fs::exists(other) || Slurp(entry.path()) != Slurp(other)) {
      return {false, "differs: " + entry.path().filename().string()};
    }
    ++files;
  }
  fs::remove_all(base);
  return {files >= 7, Fmt("%zu files byte-identical", files)};
}

Outcome PipelinePerformance() {
  RunConfig cfg;
  const std::vector<OrientationErrorSeries> runs{
      Preprocess(SynthesizeSeries(kReferenceErrorStats, 3000, 100.0, 1), 5.0, 10.0, 1)};
  const auto start = Clock::now();
  const ExperimentReport r = RunExperiment(cfg, runs, false);
  const double secs = Seconds(start);
  return {secs < kPipelineRuntimeS && r.points.size() == 3000,
          Fmt("1000 steps x 120 elements x %zu configs x %zu regions in %.2f s",
              cfg.configs.size(), cfg.regions.size(), secs)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "GUM statistics", GumStatistics},
      {2, "Jacobian correctness", JacobianCorrectness},
      {3, "staged vs direct propagation", StagedVsDirect},
      {4, "trace preservation", TracePreservation},
      {5, "Monte Carlo oracle agreement", MonteCarloAgreement},
      {6, "success-rate pattern", SuccessPattern},
      {7, "area reduction", AreaReduction},
      {8, "coverage calibration", CoverageCalibration},
      {9, "determinism", Determinism},
      {10, "pipeline performance", PipelinePerformance},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
