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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "risunc/risunc.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

struct ApiFailure {
  risunc_status status;
  std::string message;
};

void Check(risunc_status st) {
  if (st != RISUNC_OK) throw ApiFailure{st, risunc_last_error()};
}

int ExitCodeFor(risunc_status st) {
  switch (st) {
    case RISUNC_ERR_INVALID_ARGUMENT:
    case RISUNC_ERR_PARSE:
    case RISUNC_ERR_IO:
      return kExitInput;
    default:
      return kExitNumerical;
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ConfigPtr =
    std::unique_ptr<risunc_run_config, Deleter<risunc_run_config, risunc_config_free>>;
using SeriesPtr = std::unique_ptr<risunc_series, Deleter<risunc_series, risunc_series_free>>;
using PropPtr = std::unique_ptr<risunc_propagation,
                                Deleter<risunc_propagation, risunc_propagation_free>>;
using ReportPtr = std::unique_ptr<risunc_report, Deleter<risunc_report, risunc_report_free>>;

struct Options {
  std::string scenario;
  std::vector<std::string> inputs;
  std::optional<uint64_t> seed;
  std::string config = "optimized";
  std::string region = "ellipse";
  std::optional<double> k;
  std::optional<size_t> mc_samples;
  std::string out;
  std::optional<double> trim_seconds;
  std::optional<double> window_seconds;
  std::optional<size_t> samples;
};

risunc_config_kind ParseKind(const std::string& s) {
  if (s == "off") return RISUNC_CONFIG_OFF;
  if (s == "random") return RISUNC_CONFIG_RANDOM;
  if (s == "optimized") return RISUNC_CONFIG_OPTIMIZED;
  return RISUNC_CONFIG_QUANTIZED;
}

risunc_region_kind ParseRegion(const std::string& s) {
  return s == "annulus" ? RISUNC_REGION_ANNULUS : RISUNC_REGION_ELLIPSE;
}

double DefaultK(risunc_region_kind r) { return r == RISUNC_REGION_ANNULUS ? 2.24 : 2.0; }

ConfigPtr LoadConfig(const Options& o) {
  risunc_run_config* raw = nullptr;
  if (o.scenario.empty()) {
    Check(risunc_config_default(&raw));
  } else {
    Check(risunc_config_load(o.scenario.c_str(), &raw));
  }
  ConfigPtr cfg(raw);
  if (o.seed) Check(risunc_config_set_seed(cfg.get(), *o.seed));
  if (o.mc_samples) Check(risunc_config_set_mc_samples(cfg.get(), *o.mc_samples));
  if (o.trim_seconds || o.window_seconds) {
    double trim = 0, window = 0;
    Check(risunc_config_get_window(cfg.get(), &trim, &window, nullptr));
    Check(risunc_config_set_window(cfg.get(), o.trim_seconds.value_or(trim),
                                   o.window_seconds.value_or(window)));
  }
  return cfg;
}

uint64_t Seed(const risunc_run_config* cfg) {
  uint64_t seed = 0;
  Check(risunc_config_get_seed(cfg, &seed));
  return seed;
}

// Raw series for run `run`: a flight log, or synthetic data from the config.
SeriesPtr RawSeries(const risunc_run_config* cfg, const Options& o, size_t run) {
  double rate = 100.0;
  Check(risunc_config_get_window(cfg, nullptr, nullptr, &rate));
  risunc_series* raw = nullptr;
  if (!o.inputs.empty()) {
    Check(risunc_series_load(o.inputs[run].c_str(), rate, &raw));
  } else {
    double means[3], stds[3];
    size_t n = 0;
    Check(risunc_config_get_synthetic(cfg, means, stds, &n));
    Check(risunc_series_synthesize(means, stds, o.samples.value_or(n), rate,
                                   Seed(cfg) + run, &raw));
  }
  return SeriesPtr(raw);
}

SeriesPtr Window(const risunc_run_config* cfg, const risunc_series* s, size_t run) {
  double trim = 0, window = 0;
  Check(risunc_config_get_window(cfg, &trim, &window, nullptr));
  risunc_series* raw = nullptr;
  Check(risunc_series_preprocess(s, trim, window, Seed(cfg) + run, &raw));
  return SeriesPtr(raw);
}

ordered_json Cov(const risunc_cov2& c) {
  return {{"u11", c.u11}, {"u12", c.u12}, {"u21", c.u21}, {"u22", c.u22}};
}

ordered_json Uc(const risunc_uncertain_complex& u) {
  return {{"re", u.re}, {"im", u.im}, {"cov", Cov(u.cov)}};
}

void Print(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

struct PropagationInput {
  double angles_deg[3];
  double std_deg[3];
};

PropagationInput AngleInputs(const risunc_run_config* cfg, const Options& o) {
  PropagationInput in{};
  Check(risunc_config_get_nominal(cfg, in.angles_deg));
  if (o.inputs.empty()) {
    Check(risunc_config_get_synthetic(cfg, nullptr, in.std_deg, nullptr));
    return in;
  }
  SeriesPtr raw = RawSeries(cfg, o, 0);
  SeriesPtr win = Window(cfg, raw.get(), 0);
  Check(risunc_series_angle_std(cfg, win.get(), in.std_deg));
  return in;
}

int CmdStats(const Options& o) {
  ConfigPtr cfg = LoadConfig(o);
  SeriesPtr series = RawSeries(cfg.get(), o, 0);
  if (o.trim_seconds || o.window_seconds) series = Window(cfg.get(), series.get(), 0);
  risunc_sample_stats st[3];
  Check(risunc_series_stats(series.get(), st));
  ordered_json j;
  const char* names[3] = {"roll", "pitch", "yaw"};
  for (int a = 0; a < 3; ++a) {
    j[names[a]] = {{"n", st[a].n},
                   {"mean_deg", st[a].mean},
                   {"variance_deg2", st[a].variance},
                   {"std_deg", st[a].std_dev},
                   {"variance_of_mean_deg2", st[a].variance_of_mean},
                   {"std_of_mean_deg", st[a].std_of_mean}};
  }
  Print(j);
  return kExitOk;
}

int CmdSynthesize(const Options& o) {
  ConfigPtr cfg = LoadConfig(o);
  SeriesPtr series = RawSeries(cfg.get(), o, 0);
  Check(risunc_series_save(series.get(), o.out.c_str()));
  Print({{"path", o.out}, {"samples", risunc_series_length(series.get())}});
  return kExitOk;
}

int CmdPropagate(const Options& o) {
  ConfigPtr cfg = LoadConfig(o);
  const PropagationInput in = AngleInputs(cfg.get(), o);
  risunc_propagation* raw = nullptr;
  Check(risunc_propagate(cfg.get(), in.angles_deg, in.std_deg, ParseKind(o.config),
                         Seed(cfg.get()), &raw));
  PropPtr prop(raw);
  risunc_uncertain_complex total;
  risunc_cov2 shared;
  Check(risunc_propagation_total(prop.get(), &total));
  Check(risunc_propagation_shared_cov(prop.get(), &shared));
  ordered_json j{{"config", o.config},
                 {"angles_deg", in.angles_deg},
                 {"angle_std_deg", in.std_deg},
                 {"elements", risunc_propagation_element_count(prop.get())},
                 {"h_eff", Uc(total)},
                 {"shared_input_cov", Cov(shared)}};
  if (!o.out.empty()) {
    ordered_json elems = ordered_json::array();
    for (size_t m = 0; m < risunc_propagation_element_count(prop.get()); ++m) {
      risunc_element_trace t;
      Check(risunc_propagation_element(prop.get(), m, &t));
      elems.push_back({{"m", m},
                       {"d_tx_m", t.distance_tx},
                       {"d_rx_m", t.distance_rx},
                       {"amplitude", t.amplitude},
                       {"phase_rad", t.phase},
                       {"var_d_tx", t.var_distance_tx},
                       {"var_d_rx", t.var_distance_rx},
                       {"cov_d", t.cov_distance},
                       {"var_amplitude", t.var_amplitude},
                       {"var_phase", t.var_phase},
                       {"cov_amp_phase", t.cov_amp_phase},
                       {"cascaded", Uc(t.cascaded)},
                       {"effective", Uc(t.effective)}});
    }
    std::FILE* f = std::fopen(o.out.c_str(), "wb");
    if (f == nullptr) throw ApiFailure{RISUNC_ERR_IO, "cannot open '" + o.out + "'"};
    const std::string text = elems.dump(2) + "\n";
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  Print(j);
  return kExitOk;
}

int CmdCoverage(const Options& o) {
  ConfigPtr cfg = LoadConfig(o);
  const PropagationInput in = AngleInputs(cfg.get(), o);
  risunc_propagation* raw = nullptr;
  Check(risunc_propagate(cfg.get(), in.angles_deg, in.std_deg, ParseKind(o.config),
                         Seed(cfg.get()), &raw));
  PropPtr prop(raw);
  risunc_uncertain_complex total;
  Check(risunc_propagation_total(prop.get(), &total));
  const risunc_region_kind rk = ParseRegion(o.region);
  const double k = o.k.value_or(DefaultK(rk));
  ordered_json j{{"config", o.config}, {"region", o.region}, {"k", k}, {"h_eff", Uc(total)}};
  double area = 0;
  if (rk == RISUNC_REGION_ELLIPSE) {
    risunc_ellipse e;
    Check(risunc_ellipse_from(&total, k, &e));
    double a = 0, b = 0, ang = 0;
    Check(risunc_ellipse_axes(&e, &a, &b, &ang));
    Check(risunc_ellipse_area(&e, &area));
    j["ellipse"] = {{"center_re", e.center_re},
                    {"center_im", e.center_im},
                    {"semi_major", a},
                    {"semi_minor", b},
                    {"angle_rad", ang}};
  } else {
    risunc_annulus an;
    Check(risunc_annulus_from(&total, k, &an));
    Check(risunc_annulus_area(&an, &area));
    j["annulus"] = {{"r0", an.r0}, {"dr", an.dr}, {"theta0", an.theta0}, {"dtheta", an.dtheta}};
  }
  j["area"] = area;
  Print(j);
  return kExitOk;
}

int CmdMcValidate(const Options& o) {
  ConfigPtr cfg = LoadConfig(o);
  const PropagationInput in = AngleInputs(cfg.get(), o);
  const risunc_region_kind rk = ParseRegion(o.region);
  const double k = o.k.value_or(DefaultK(rk));
  risunc_mc_result r;
  Check(risunc_mc_validate(cfg.get(), in.angles_deg, in.std_deg, ParseKind(o.config), rk, k,
                           o.mc_samples.value_or(100000), Seed(cfg.get()), &r));
  ordered_json j{{"config", o.config},
                 {"samples", r.samples},
                 {"propagated", Uc(r.propagated)},
                 {"shared_input_cov", Cov(r.shared_cov)},
                 {"sample_cov", Cov(r.sample_cov)},
                 {"sample_mean", {{"re", r.sample_mean_re}, {"im", r.sample_mean_im}}},
                 {"rel_frobenius", r.rel_frobenius},
                 {"rel_frobenius_shared", r.rel_frobenius_shared},
                 {"region", o.region},
                 {"k", k}};
  j["coverage"] = r.coverage < 0 ? ordered_json(nullptr) : ordered_json(r.coverage);
  Print(j);
  return kExitOk;
}

int CmdReport(const Options& o) {
  ConfigPtr cfg = LoadConfig(o);
  const size_t runs = o.inputs.empty() ? 1 : o.inputs.size();
  std::vector<SeriesPtr> owned;
  std::vector<const risunc_series*> views;
  for (size_t r = 0; r < runs; ++r) {
    SeriesPtr raw = RawSeries(cfg.get(), o, r);
    owned.push_back(Window(cfg.get(), raw.get(), r));
    views.push_back(owned.back().get());
  }
  risunc_report* raw = nullptr;
  Check(risunc_report_run(cfg.get(), views.data(), views.size(), &raw));
  ReportPtr report(raw);
  Check(risunc_report_emit(report.get(), o.out.c_str()));
  Print({{"out", o.out}, {"runs", runs}, {"points", risunc_report_point_count(report.get())}});
  return kExitOk;
}

void AddCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Run configuration JSON file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--trim-seconds", o.trim_seconds, "Seconds trimmed at each end")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--window-seconds", o.window_seconds, "Analysis window length");
}

void AddInput(CLI::App* cmd, Options& o, bool many) {
  auto* opt = cmd->add_option("--input", o.inputs, "Flight log (delimited text)")
                  ->check(CLI::ExistingFile);
  if (!many) opt->expected(1);
}

void AddConfigKind(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "RIS configuration")
      ->check(CLI::IsMember({"off", "random", "optimized", "quantized"}));
}

void AddRegion(CLI::App* cmd, Options& o) {
  cmd->add_option("--region", o.region, "Coverage region")
      ->check(CLI::IsMember({"ellipse", "annulus"}));
  cmd->add_option("--k", o.k, "Coverage factor")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orientation-uncertainty propagation for UAV-mounted RIS channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", risunc_version());
  Options o;

  auto* stats = app.add_subcommand("stats", "Type-A statistics of an orientation-error log");
  AddCommon(stats, o);
  AddInput(stats, o, false);
  stats->add_option("--samples", o.samples, "Synthetic sample count when no input is given");

  auto* synth = app.add_subcommand("synthesize", "Write a synthetic orientation-error log");
  AddCommon(synth, o);
  synth->add_option("--out", o.out, "Output CSV path")->required();
  synth->add_option("--samples", o.samples, "Sample count");

  auto* prop = app.add_subcommand("propagate", "Propagate angle uncertainty to h_eff");
  AddCommon(prop, o);
  AddInput(prop, o, false);
  AddConfigKind(prop, o);
  prop->add_option("--out", o.out, "Per-element trace JSON path");

  auto* cov = app.add_subcommand("coverage", "Build a coverage region around h_eff");
  AddCommon(cov, o);
  AddInput(cov, o, false);
  AddConfigKind(cov, o);
  AddRegion(cov, o);

  auto* mc = app.add_subcommand("mc-validate", "Compare propagation with Monte Carlo");
  AddCommon(mc, o);
  AddInput(mc, o, false);
  AddConfigKind(mc, o);
  AddRegion(mc, o);
  mc->add_option("--mc-samples", o.mc_samples, "Monte Carlo draws")
      ->check(CLI::Range(size_t{2}, size_t{1} << 40));

  auto* report = app.add_subcommand("report", "Run the full evaluation and emit tables");
  AddCommon(report, o);
  AddInput(report, o, true);
  report->add_option("--out", o.out, "Output directory")->required();
  report->add_option("--mc-samples", o.mc_samples, "Monte Carlo draws per coverage check")
      ->check(CLI::Range(size_t{2}, size_t{1} << 40));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*stats) return CmdStats(o);
    if (*synth) return CmdSynthesize(o);
    if (*prop) return CmdPropagate(o);
    if (*cov) return CmdCoverage(o);
    if (*mc) return CmdMcValidate(o);
    if (*report) return CmdReport(o);
  } catch (const ApiFailure& f) {
    std::cerr << "risunc: " << f.message << "\n";
    return ExitCodeFor(f.status);
  } catch (const std::exception& e) {
    std::cerr << "risunc: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}
