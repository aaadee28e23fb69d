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

#include "risunc/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "risunc/error.hpp"
#include "risunc/random.hpp"

namespace risunc {

using nlohmann::json;

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void OrientationErrorSeries::Validate() const {
  const std::size_t n = timestamps.size();
  if (roll.size() != n || pitch.size() != n || yaw.size() != n) {
    Fail(ErrorCode::kInvalidArgument,
         "orientation series columns have different lengths");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(timestamps[i] > timestamps[i - 1])) {
      Fail(ErrorCode::kInvalidArgument,
           "timestamps not strictly increasing at sample " + std::to_string(i));
    }
  }
}

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> Split(std::string_view line, char delim) {
  std::vector<std::string> cells;
  if (delim == ' ') {
    std::istringstream is{std::string(line)};
    std::string cell;
    while (is >> cell) cells.push_back(cell);
    return cells;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    cells.push_back(Trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

char DetectDelimiter(std::string_view header) {
  for (char c : {',', ';', '\t'}) {
    if (header.find(c) != std::string_view::npos) return c;
  }
  return ' ';
}

bool ParseNumber(const std::string& cell, double& out) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

}  // namespace

OrientationErrorSeries ParseFlightLog(std::string_view text, LogFormat format,
                                      double rate_hz) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
      const std::size_t pos = text.find('\n', start);
      ++line_no;
      std::string_view raw = text.substr(
          start, pos == std::string_view::npos ? std::string_view::npos
                                               : pos - start);
      std::string line = Trim(raw);
      if (!line.empty() && line[0] != '#') lines.emplace_back(line_no, line);
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  }
  if (lines.empty()) Fail(ErrorCode::kParse, "flight log has no header row");

  const char delim = DetectDelimiter(lines[0].second);
  const std::vector<std::string> header = Split(lines[0].second, delim);
  auto find = [&](std::initializer_list<const char*> names) -> int {
    for (std::size_t i = 0; i < header.size(); ++i) {
      for (const char* n : names) {
        if (Lower(header[i]) == n) return static_cast<int>(i);
      }
    }
    return -1;
  };
  const int t_col = find({"timestamp", "timestamp_s", "time"});
  if (t_col < 0) Fail(ErrorCode::kParse, "flight log header lacks a timestamp column");

  const int err[3] = {find({"roll_err"}), find({"pitch_err"}), find({"yaw_err"})};
  const int ekf[3] = {find({"roll_ekf"}), find({"pitch_ekf"}), find({"yaw_ekf"})};
  const int ref[3] = {find({"roll_ref"}), find({"pitch_ref"}), find({"yaw_ref"})};
  const bool has_err = err[0] >= 0 && err[1] >= 0 && err[2] >= 0;
  const bool has_paired = ekf[0] >= 0 && ekf[1] >= 0 && ekf[2] >= 0 &&
                          ref[0] >= 0 && ref[1] >= 0 && ref[2] >= 0;
  if (format == LogFormat::kAuto) {
    format = has_err ? LogFormat::kErrors : LogFormat::kPaired;
  }
  if (format == LogFormat::kErrors && !has_err) {
    Fail(ErrorCode::kParse, "flight log needs roll_err, pitch_err, yaw_err columns");
  }
  if (format == LogFormat::kPaired && !has_paired) {
    Fail(ErrorCode::kParse,
         "flight log needs either *_err columns or paired *_ekf and *_ref columns");
  }

  OrientationErrorSeries s;
  s.rate_hz = rate_hz;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& [line_no, line] = lines[r];
    const std::vector<std::string> cells = Split(line, delim);
    if (cells.size() != header.size()) {
      Fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " cells, got " +
                                  std::to_string(cells.size()));
    }
    auto cell = [&](int col) {
      double v = 0.0;
      if (!ParseNumber(cells[col], v)) {
        Fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ", column " +
                                    std::to_string(col + 1) + " ('" +
                                    header[col] + "'): cannot parse '" +
                                    cells[col] + "' as a number");
      }
      return v;
    };
    const double t = cell(t_col);
    if (!s.timestamps.empty() && !(t > s.timestamps.back())) {
      Fail(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                  ": timestamps not strictly increasing");
    }
    s.timestamps.push_back(t);
    double e[3];
    for (int a = 0; a < 3; ++a) {
      e[a] = format == LogFormat::kErrors ? cell(err[a]) : cell(ekf[a]) - cell(ref[a]);
    }
    s.roll.push_back(e[0]);
    s.pitch.push_back(e[1]);
    s.yaw.push_back(e[2]);
  }
  return s;
}

OrientationErrorSeries LoadFlightLog(const std::filesystem::path& path,
                                     LogFormat format, double rate_hz) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open flight log '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return ParseFlightLog(ss.str(), format, rate_hz);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string FormatSeries(const OrientationErrorSeries& series) {
  series.Validate();
  std::string out = "timestamp,roll_err,pitch_err,yaw_err\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += FormatDouble(series.timestamps[i]) + "," + FormatDouble(series.roll[i]) +
           "," + FormatDouble(series.pitch[i]) + "," + FormatDouble(series.yaw[i]) +
           "\n";
  }
  return out;
}

void SaveSeries(const OrientationErrorSeries& series,
                const std::filesystem::path& path) {
  const std::string text = FormatSeries(series);
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

std::size_t PreprocessOffset(std::size_t available, std::size_t window,
                             std::uint64_t seed) {
  if (window > available) {
    Fail(ErrorCode::kInsufficientData, "window longer than the trimmed series");
  }
  const std::size_t slack = available - window;
  if (slack == 0) return 0;
  CounterRng rng(seed, 0x7072657072ULL);
  return static_cast<std::size_t>(rng() % (static_cast<std::uint64_t>(slack) + 1));
}

OrientationErrorSeries Preprocess(const OrientationErrorSeries& series,
                                  double trim_seconds, double window_seconds,
                                  std::uint64_t seed) {
  series.Validate();
  if (!(trim_seconds >= 0.0) || !(series.rate_hz > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "trim must be >= 0 and rate > 0");
  }
  const auto trim = static_cast<std::size_t>(std::llround(trim_seconds * series.rate_hz));
  const std::size_t n = series.size();
  if (2 * trim >= n) {
    Fail(ErrorCode::kInsufficientData,
         "series of " + std::to_string(n) + " samples too short to trim " +
             std::to_string(trim) + " samples at each end");
  }
  const std::size_t available = n - 2 * trim;
  std::size_t window = available;
  if (window_seconds > 0.0) {
    window = static_cast<std::size_t>(std::llround(window_seconds * series.rate_hz));
    if (window > available) {
      Fail(ErrorCode::kInsufficientData,
           "series too short: " + std::to_string(available) +
               " samples after trimming, window needs " + std::to_string(window));
    }
  }
  const std::size_t begin = trim + PreprocessOffset(available, window, seed);
  auto slice = [&](const std::vector<double>& v) {
    return std::vector<double>(v.begin() + begin, v.begin() + begin + window);
  };
  OrientationErrorSeries out;
  out.rate_hz = series.rate_hz;
  out.timestamps = slice(series.timestamps);
  out.roll = slice(series.roll);
  out.pitch = slice(series.pitch);
  out.yaw = slice(series.yaw);
  return out;
}

OrientationErrorSeries SynthesizeSeries(
    const std::array<AngleDistribution, 3>& stats, std::size_t n,
    double rate_hz, std::uint64_t seed) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "synthetic series needs n >= 2");
  if (!(rate_hz > 0.0)) Fail(ErrorCode::kInvalidArgument, "rate must be positive");
  for (const auto& a : stats) {
    if (!(a.std_deg >= 0.0) || !std::isfinite(a.mean_deg)) {
      Fail(ErrorCode::kInvalidArgument, "invalid synthetic angle statistics");
    }
  }
  OrientationErrorSeries s;
  s.rate_hz = rate_hz;
  s.timestamps.resize(n);
  std::vector<double>* cols[3] = {&s.roll, &s.pitch, &s.yaw};
  for (int a = 0; a < 3; ++a) {
    CounterRng rng(seed, static_cast<std::uint64_t>(a));
    std::normal_distribution<double> normal(stats[a].mean_deg, stats[a].std_deg);
    cols[a]->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      (*cols[a])[i] = stats[a].std_deg == 0.0 ? stats[a].mean_deg : normal(rng);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    s.timestamps[i] = static_cast<double>(i) / rate_hz;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Run configuration

namespace {

Vec3 ReadVec3(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 3) {
    Fail(ErrorCode::kParse, std::string("'") + key + "' must be a 3-element array");
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) {
      Fail(ErrorCode::kParse, std::string("'") + key + "' entries must be numbers");
    }
    v[i] = j[i].get<double>();
  }
  return v;
}

json WriteVec3(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

void CheckKeys(const json& j, const char* where,
               std::initializer_list<const char*> allowed) {
  if (!j.is_object()) Fail(ErrorCode::kParse, std::string(where) + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) {
      Fail(ErrorCode::kParse, std::string("unknown key '") + key + "' in " + where);
    }
  }
}

double Number(const json& j, const char* key) {
  if (!j.is_number()) {
    Fail(ErrorCode::kParse, std::string("'") + key + "' must be a number");
  }
  return j.get<double>();
}

std::size_t Count(const json& j, const char* key) {
  if (!j.is_number_unsigned()) {
    Fail(ErrorCode::kParse, std::string("'") + key + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

Scenario ReadScenario(const json& j) {
  CheckKeys(j, "scenario",
            {"frequency_hz", "tx_position_m", "rx_position_m", "cg_position_m",
             "gain_tx", "gain_rx", "ris", "degeneracy_eps_m"});
  Scenario s = Scenario::Reference();
  if (j.contains("frequency_hz")) s.frequency_hz = Number(j["frequency_hz"], "frequency_hz");
  if (j.contains("tx_position_m")) s.p_tx = ReadVec3(j["tx_position_m"], "tx_position_m");
  if (j.contains("rx_position_m")) s.p_rx = ReadVec3(j["rx_position_m"], "rx_position_m");
  if (j.contains("cg_position_m")) s.p_cg = ReadVec3(j["cg_position_m"], "cg_position_m");
  if (j.contains("gain_tx")) s.gain_tx = Number(j["gain_tx"], "gain_tx");
  if (j.contains("gain_rx")) s.gain_rx = Number(j["gain_rx"], "gain_rx");
  if (j.contains("degeneracy_eps_m")) {
    s.degeneracy_eps = Number(j["degeneracy_eps_m"], "degeneracy_eps_m");
  }
  if (!(s.frequency_hz > 0.0)) Fail(ErrorCode::kParse, "frequency_hz must be positive");

  std::size_t rows = 12, cols = 10;
  Vec3 offset(0.0, 0.0, -0.3);
  double pitch = 0.5 * s.wavelength();
  if (j.contains("ris")) {
    const json& r = j["ris"];
    CheckKeys(r, "scenario.ris", {"rows", "cols", "element_pitch_m", "mount_offset_m"});
    if (r.contains("rows")) rows = Count(r["rows"], "rows");
    if (r.contains("cols")) cols = Count(r["cols"], "cols");
    if (r.contains("mount_offset_m")) offset = ReadVec3(r["mount_offset_m"], "mount_offset_m");
    if (r.contains("element_pitch_m") && !r["element_pitch_m"].is_null()) {
      pitch = Number(r["element_pitch_m"], "element_pitch_m");
    }
  }
  s.ris = RisGeometry::Grid(rows, cols, pitch, offset);
  s.Validate();
  return s;
}

UncertaintySource ParseSource(const std::string& text) {
  if (text == "per_sample") return UncertaintySource::kPerSample;
  if (text == "of_mean") return UncertaintySource::kOfMean;
  Fail(ErrorCode::kParse, "uncertainty_source must be per_sample or of_mean");
}

std::array<AngleDistribution, 3> ReadStats(const json& j) {
  CheckKeys(j, "synthetic", {"means_deg", "stds_deg", "samples"});
  std::array<AngleDistribution, 3> out = kReferenceErrorStats;
  if (j.contains("means_deg")) {
    const Vec3 m = ReadVec3(j["means_deg"], "means_deg");
    for (int i = 0; i < 3; ++i) out[i].mean_deg = m[i];
  }
  if (j.contains("stds_deg")) {
    const Vec3 s = ReadVec3(j["stds_deg"], "stds_deg");
    for (int i = 0; i < 3; ++i) out[i].std_deg = s[i];
  }
  return out;
}

}  // namespace

RunConfig ParseRunConfig(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
  CheckKeys(j, "run configuration",
            {"scenario", "nominal_angles_deg", "uncertainty_source",
             "bias_correction", "configs", "regions", "mc_samples", "seed",
             "trim_seconds", "window_seconds", "sample_rate_hz", "synthetic"});
  RunConfig c;
  try {
    if (j.contains("scenario")) c.scenario = ReadScenario(j["scenario"]);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, std::string("scenario: ") + e.what());
  }
  if (j.contains("nominal_angles_deg")) {
    const Vec3 a = ReadVec3(j["nominal_angles_deg"], "nominal_angles_deg");
    c.nominal = EulerAngles::FromDegrees(a[0], a[1], a[2]);
  }
  if (j.contains("uncertainty_source")) {
    if (!j["uncertainty_source"].is_string()) {
      Fail(ErrorCode::kParse, "uncertainty_source must be a string");
    }
    c.uncertainty_source = ParseSource(j["uncertainty_source"].get<std::string>());
  }
  if (j.contains("bias_correction")) {
    if (!j["bias_correction"].is_boolean()) {
      Fail(ErrorCode::kParse, "bias_correction must be true or false");
    }
    c.bias_correction = j["bias_correction"].get<bool>();
  }
  if (j.contains("configs")) {
    if (!j["configs"].is_array() || j["configs"].empty()) {
      Fail(ErrorCode::kParse, "configs must be a non-empty array");
    }
    c.configs.clear();
    for (const auto& k : j["configs"]) {
      if (!k.is_string()) Fail(ErrorCode::kParse, "configs entries must be strings");
      c.configs.push_back(ParseConfigKind(k.get<std::string>()));
    }
  }
  if (j.contains("regions")) {
    if (!j["regions"].is_array() || j["regions"].empty()) {
      Fail(ErrorCode::kParse, "regions must be a non-empty array");
    }
    c.regions.clear();
    for (const auto& r : j["regions"]) {
      CheckKeys(r, "regions entry", {"kind", "k"});
      if (!r.contains("kind") || !r["kind"].is_string() || !r.contains("k")) {
        Fail(ErrorCode::kParse, "regions entries need 'kind' and 'k'");
      }
      RegionSpec spec{ParseRegionKind(r["kind"].get<std::string>()), Number(r["k"], "k")};
      if (!(spec.k > 0.0)) Fail(ErrorCode::kParse, "coverage factor k must be positive");
      c.regions.push_back(spec);
    }
  }
  if (j.contains("mc_samples")) c.mc_samples = Count(j["mc_samples"], "mc_samples");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      Fail(ErrorCode::kParse, "seed must be a non-negative integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("trim_seconds")) c.trim_seconds = Number(j["trim_seconds"], "trim_seconds");
  if (j.contains("window_seconds")) {
    c.window_seconds = Number(j["window_seconds"], "window_seconds");
  }
  if (j.contains("sample_rate_hz")) {
    c.sample_rate_hz = Number(j["sample_rate_hz"], "sample_rate_hz");
    if (!(c.sample_rate_hz > 0.0)) Fail(ErrorCode::kParse, "sample_rate_hz must be positive");
  }
  if (j.contains("synthetic")) {
    c.synthetic_stats = ReadStats(j["synthetic"]);
    if (j["synthetic"].contains("samples")) {
      c.synthetic_samples = Count(j["synthetic"]["samples"], "samples");
    }
  }
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open configuration '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return ParseRunConfig(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string RunConfigToJson(const RunConfig& c) {
  const Scenario& s = c.scenario;
  json j;
  j["scenario"] = {
      {"frequency_hz", s.frequency_hz},
      {"tx_position_m", WriteVec3(s.p_tx)},
      {"rx_position_m", WriteVec3(s.p_rx)},
      {"cg_position_m", WriteVec3(s.p_cg)},
      {"gain_tx", s.gain_tx},
      {"gain_rx", s.gain_rx},
      {"degeneracy_eps_m", s.degeneracy_eps},
      {"ris",
       {{"rows", s.ris.rows},
        {"cols", s.ris.cols},
        {"element_pitch_m", s.ris.element_pitch},
        {"mount_offset_m", WriteVec3(s.ris.mount_offset)}}}};
  j["nominal_angles_deg"] = json::array(
      {RadToDeg(c.nominal.roll), RadToDeg(c.nominal.pitch), RadToDeg(c.nominal.yaw)});
  j["uncertainty_source"] =
      c.uncertainty_source == UncertaintySource::kPerSample ? "per_sample" : "of_mean";
  j["bias_correction"] = c.bias_correction;
  j["configs"] = json::array();
  for (ConfigKind k : c.configs) j["configs"].push_back(std::string(ToString(k)));
  j["regions"] = json::array();
  for (const auto& r : c.regions) {
    j["regions"].push_back({{"kind", std::string(ToString(r.kind))}, {"k", r.k}});
  }
  j["mc_samples"] = c.mc_samples;
  j["seed"] = c.seed;
  j["trim_seconds"] = c.trim_seconds;
  j["window_seconds"] = c.window_seconds;
  j["sample_rate_hz"] = c.sample_rate_hz;
  json means = json::array(), stds = json::array();
  for (const auto& a : c.synthetic_stats) {
    means.push_back(a.mean_deg);
    stds.push_back(a.std_deg);
  }
  j["synthetic"] = {{"means_deg", means}, {"stds_deg", stds},
                    {"samples", c.synthetic_samples}};
  return j.dump(2);
}

}  // namespace risunc
