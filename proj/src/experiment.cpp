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

#include "risunc/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "risunc/error.hpp"
#include "risunc/random.hpp"

namespace risunc {

double Aggregate::success_rate() const {
  if (evaluated == 0) {
    Fail(ErrorCode::kInsufficientData,
         "no non-degenerate regions to score for this aggregate");
  }
  return static_cast<double>(inside) / static_cast<double>(evaluated);
}

namespace {

constexpr std::uint64_t kConfigStreamTag = 0x52495343ULL;    // step configs
constexpr std::uint64_t kCoverageStreamTag = 0x4D43434FULL;  // MC coverage

std::optional<Region> TryRegion(const RegionSpec& spec, const UncertainComplex& uc) {
  try {
    return MakeRegion(spec.kind, uc, spec.k);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDegenerateGeometry) return std::nullopt;
    throw;
  }
}

bool SameSpec(const RegionSpec& a, const RegionSpec& b) {
  return a.kind == b.kind && a.k == b.k;
}

}  // namespace

ExperimentReport RunExperiment(const RunConfig& config,
                               std::span<const OrientationErrorSeries> runs,
                               bool with_coverage) {
  config.scenario.Validate();
  ExperimentReport report;
  report.config = config;
  const Scenario& scenario = config.scenario;

  for (std::size_t run = 0; run < runs.size(); ++run) {
    const OrientationErrorSeries& series = runs[run];
    RunSummary summary;
    summary.samples = series.size();
    summary.stats = StatsPerAngle(series);
    summary.angle_unc = AngleUncertaintyFromStats(summary.stats, config.uncertainty_source);
    const double bias[3] = {
        config.bias_correction ? summary.stats[0].mean : 0.0,
        config.bias_correction ? summary.stats[1].mean : 0.0,
        config.bias_correction ? summary.stats[2].mean : 0.0};
    const std::uint64_t run_key = StreamKey(config.seed, kConfigStreamTag + run);

    for (std::size_t k = 0; k < series.size(); ++k) {
      const EulerAngles estimated{
          config.nominal.roll + DegToRad(series.roll[k] - bias[0]),
          config.nominal.pitch + DegToRad(series.pitch[k] - bias[1]),
          config.nominal.yaw + DegToRad(series.yaw[k] - bias[2])};
      for (ConfigKind kind : config.configs) {
        try {
          PointRecord p;
          p.run = run;
          p.step = k;
          p.timestamp = series.timestamps[k];
          p.config = kind;
          p.estimated = estimated;
          const RisConfig ris =
              MakeConfig(kind, scenario, estimated, StreamKey(run_key, k));
          p.estimate =
              PropagateFullChain(scenario, estimated, summary.angle_unc, ris, false)
                  .total;
          p.truth = ComputeEffectiveChannel(scenario, config.nominal, ris).value;
          p.regions.reserve(config.regions.size());
          for (const RegionSpec& spec : config.regions) {
            RegionOutcome o;
            o.spec = spec;
            o.region = TryRegion(spec, p.estimate);
            if (o.region) {
              o.inside = Contains(*o.region, p.truth);
              o.area = RegionArea(*o.region);
            }
            p.regions.push_back(o);
          }
          report.points.push_back(std::move(p));
        } catch (const Error& e) {
          throw Error(e.code(), "run " + std::to_string(run) + ", time step " +
                                    std::to_string(k) + " (" +
                                    std::string(ToString(kind)) + "): " + e.what());
        }
      }
    }

    if (with_coverage) {
      McConfig mc;
      mc.sample_count = config.mc_samples;
      mc.seed = StreamKey(config.seed, kCoverageStreamTag + run);
      for (int a = 0; a < 3; ++a) {
        const Axis axis = kAllAxes[a];
        mc.angles[a] = {0.0, RadToDeg(std::sqrt(summary.angle_unc[axis]))};
      }
      for (ConfigKind kind : config.configs) {
        const RisConfig ris = MakeConfig(kind, scenario, config.nominal, mc.seed);
        const UncertainComplex est =
            PropagateFullChain(scenario, config.nominal, summary.angle_unc, ris, false)
                .total;
        const std::vector<Complex> truths =
            SampleTruths(scenario, config.nominal, ris, mc);
        for (const RegionSpec& spec : config.regions) {
          const std::optional<Region> region = TryRegion(spec, est);
          if (!region) continue;
          report.coverage.push_back({run, kind, spec, truths.size(),
                                     EmpiricalCoverage(*region, truths),
                                     RegionArea(*region)});
        }
      }
    }
    report.runs.push_back(summary);
  }
  report.aggregates = AggregatePoints(config, runs.size(), report.points);
  return report;
}

std::vector<Aggregate> AggregatePoints(const RunConfig& config,
                                       std::size_t run_count,
                                       std::span<const PointRecord> points) {
  std::vector<Aggregate> out;
  auto build = [&](std::optional<std::size_t> run) {
    for (ConfigKind kind : config.configs) {
      for (std::size_t r = 0; r < config.regions.size(); ++r) {
        Aggregate a;
        a.run = run;
        a.config = kind;
        a.spec = config.regions[r];
        double area_sum = 0.0;
        for (const PointRecord& p : points) {
          if (p.config != kind || (run && p.run != *run)) continue;
          const RegionOutcome& o = p.regions[r];
          if (!o.region) {
            ++a.skipped;
            continue;
          }
          ++a.evaluated;
          a.inside += o.inside ? 1 : 0;
          area_sum += o.area;
        }
        if (a.evaluated > 0) a.mean_area = area_sum / static_cast<double>(a.evaluated);
        out.push_back(a);
      }
    }
  };
  for (std::size_t run = 0; run < run_count; ++run) build(run);
  build(std::nullopt);
  return out;
}

// ---------------------------------------------------------------------------
// Emission

namespace {

std::string F(double v) { return FormatDouble(v); }

std::string ShortNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string RunLabel(const std::optional<std::size_t>& run) {
  return run ? std::to_string(*run) : "pooled";
}

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& header)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
    out_ << header << '\n';
  }
  void Row(const std::string& row) { out_ << row << '\n'; }
  ~CsvFile() noexcept(false) {
    out_.flush();
    if (!out_ && std::uncaught_exceptions() == 0) {
      Fail(ErrorCode::kIo, "write failed for '" + path_.string() + "'");
    }
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace

std::uint64_t ConfigHash(const RunConfig& config) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : RunConfigToJson(config)) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

void EmitReport(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    Fail(ErrorCode::kIo, "cannot create directory '" + out_dir.string() +
                             "': " + ec.message());
  }

  {
    CsvFile points(out_dir / "points.csv",
                   "run,step,timestamp_s,config,roll_deg,pitch_deg,yaw_deg,est_re,"
                   "est_im,u11,u12,u22,truth_re,truth_im,region,k,valid,inside,area");
    CsvFile ellipses(out_dir / "ellipses.csv",
                     "run,step,config,k,center_re,center_im,semi_major,semi_minor,"
                     "angle_rad");
    CsvFile annuli(out_dir / "annuli.csv", "run,step,config,k,r0,dr,theta0,dtheta");
    for (const PointRecord& p : report.points) {
      const std::string cfg(ToString(p.config));
      const std::string common =
          std::to_string(p.run) + "," + std::to_string(p.step) + "," + F(p.timestamp) +
          "," + cfg + "," + F(RadToDeg(p.estimated.roll)) + "," +
          F(RadToDeg(p.estimated.pitch)) + "," + F(RadToDeg(p.estimated.yaw)) + "," +
          F(p.estimate.value.real()) + "," + F(p.estimate.value.imag()) + "," +
          F(p.estimate.cov.u11) + "," + F(p.estimate.cov.u12) + "," +
          F(p.estimate.cov.u22) + "," + F(p.truth.real()) + "," + F(p.truth.imag());
      const std::string key =
          std::to_string(p.run) + "," + std::to_string(p.step) + "," + cfg + ",";
      for (const RegionOutcome& o : p.regions) {
        points.Row(common + "," + std::string(ToString(o.spec.kind)) + "," + F(o.spec.k) +
                   "," + (o.region ? "1" : "0") + "," + (o.inside ? "1" : "0") + "," +
                   F(o.area));
        if (!o.region) continue;
        if (const auto* e = std::get_if<CoverageEllipse>(&*o.region)) {
          const EllipseAxes ax = ComputeEllipseAxes(*e);
          ellipses.Row(key + F(e->k) + "," + F(e->center.real()) + "," +
                       F(e->center.imag()) + "," + F(ax.semi_major) + "," +
                       F(ax.semi_minor) + "," + F(ax.angle));
        } else {
          const auto& a = std::get<AnnularSection>(*o.region);
          annuli.Row(key + F(o.spec.k) + "," + F(a.r0) + "," + F(a.dr) + "," +
                     F(a.theta0) + "," + F(a.dtheta));
        }
      }
    }
  }

  {
    CsvFile agg(out_dir / "aggregates.csv",
                "run,config,region,k,evaluated,skipped,inside,success_rate,mean_area");
    for (const Aggregate& a : report.aggregates) {
      agg.Row(RunLabel(a.run) + "," + std::string(ToString(a.config)) + "," +
              std::string(ToString(a.spec.kind)) + "," + F(a.spec.k) + "," +
              std::to_string(a.evaluated) + "," + std::to_string(a.skipped) + "," +
              std::to_string(a.inside) + "," +
              (a.evaluated ? F(a.success_rate()) : std::string()) + "," +
              (a.evaluated ? F(a.mean_area) : std::string()));
    }
  }

  {
    // Rows: first spec of each region kind; columns: configurations.
    std::string header = "representation";
    for (ConfigKind kind : report.config.configs) header += "," + std::string(ToString(kind));
    CsvFile table(out_dir / "success_table.csv", header);
    for (RegionKind kind : {RegionKind::kEllipse, RegionKind::kAnnulus}) {
      const RegionSpec* spec = nullptr;
      for (const auto& s : report.config.regions) {
        if (s.kind == kind) {
          spec = &s;
          break;
        }
      }
      if (!spec) continue;
      std::string row = std::string(ToString(kind)) + "(k=" + ShortNumber(spec->k) + ")";
      for (ConfigKind cfg : report.config.configs) {
        row += ",";
        for (const Aggregate& a : report.aggregates) {
          if (!a.run && a.config == cfg && SameSpec(a.spec, *spec) && a.evaluated) {
            row += F(a.success_rate());
            break;
          }
        }
      }
      table.Row(row);
    }
  }

  {
    CsvFile cov(out_dir / "coverage.csv", "run,config,region,k,samples,coverage,area");
    for (const CoverageCheck& c : report.coverage) {
      cov.Row(std::to_string(c.run) + "," + std::string(ToString(c.config)) + "," +
              std::string(ToString(c.spec.kind)) + "," + F(c.spec.k) + "," +
              std::to_string(c.samples) + "," + F(c.coverage) + "," + F(c.area));
    }
  }

  {
    using nlohmann::ordered_json;
    ordered_json meta;
    meta["tool"] = "risunc";
    meta["version"] = "0.1.0";
    meta["seed"] = report.config.seed;
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(ConfigHash(report.config)));
    meta["config_hash"] = hash;
    meta["config"] = nlohmann::json::parse(RunConfigToJson(report.config));
    meta["runs"] = ordered_json::array();
    for (const RunSummary& r : report.runs) {
      ordered_json jr;
      jr["samples"] = r.samples;
      const char* names[3] = {"roll", "pitch", "yaw"};
      for (int a = 0; a < 3; ++a) {
        jr["stats_deg"][names[a]] = {{"mean", r.stats[a].mean},
                                     {"std", r.stats[a].std_dev},
                                     {"std_of_mean", r.stats[a].std_of_mean}};
      }
      jr["angle_variance_rad2"] = {r.angle_unc.var_roll, r.angle_unc.var_pitch,
                                   r.angle_unc.var_yaw};
      meta["runs"].push_back(jr);
    }
    std::ofstream out(out_dir / "metadata.json", std::ios::binary);
    if (!out) Fail(ErrorCode::kIo, "cannot write '" + (out_dir / "metadata.json").string() + "'");
    out << meta.dump(2) << '\n';
    if (!out) Fail(ErrorCode::kIo, "write failed for metadata.json");
  }
}

// ---------------------------------------------------------------------------
// Re-ingestion

std::vector<PointRow> LoadPointTable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kParse, path.string() + ": empty file");
  std::map<std::string, std::size_t> col;
  {
    std::stringstream ss(line);
    std::string cell;
    for (std::size_t i = 0; std::getline(ss, cell, ','); ++i) col[cell] = i;
  }
  for (const char* need : {"run", "step", "config", "region", "k", "valid", "inside", "area"}) {
    if (!col.count(need)) {
      Fail(ErrorCode::kParse, path.string() + ": missing column '" + need + "'");
    }
  }
  std::vector<PointRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != col.size()) {
      Fail(ErrorCode::kParse, path.string() + ": line " + std::to_string(line_no) +
                                  " has the wrong number of cells");
    }
    try {
      PointRow r;
      r.run = std::stoul(cells[col["run"]]);
      r.step = std::stoul(cells[col["step"]]);
      r.config = ParseConfigKind(cells[col["config"]]);
      r.spec = {ParseRegionKind(cells[col["region"]]), std::stod(cells[col["k"]])};
      r.valid = cells[col["valid"]] == "1";
      r.inside = cells[col["inside"]] == "1";
      r.area = std::stod(cells[col["area"]]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      Fail(ErrorCode::kParse,
           path.string() + ": line " + std::to_string(line_no) + " is malformed");
    }
  }
  return rows;
}

std::vector<Aggregate> AggregateRows(std::span<const PointRow> rows) {
  std::vector<Aggregate> out;
  std::vector<double> area_sums;
  for (const PointRow& r : rows) {
    std::size_t i = 0;
    for (; i < out.size(); ++i) {
      if (out[i].config == r.config && SameSpec(out[i].spec, r.spec)) break;
    }
    if (i == out.size()) {
      Aggregate a;
      a.config = r.config;
      a.spec = r.spec;
      out.push_back(a);
      area_sums.push_back(0.0);
    }
    if (!r.valid) {
      ++out[i].skipped;
      continue;
    }
    ++out[i].evaluated;
    out[i].inside += r.inside ? 1 : 0;
    area_sums[i] += r.area;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].evaluated) out[i].mean_area = area_sums[i] / static_cast<double>(out[i].evaluated);
  }
  return out;
}

}  // namespace risunc
