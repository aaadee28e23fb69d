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

#include "risunc/risunc.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "risunc/error.hpp"
#include "risunc/experiment.hpp"

struct risunc_run_config {
  risunc::RunConfig value;
};

struct risunc_series {
  risunc::OrientationErrorSeries value;
};

struct risunc_propagation {
  risunc::ChainResult value;
};

struct risunc_report {
  risunc::ExperimentReport value;
};

namespace {

using namespace risunc;

thread_local std::string g_last_error;

risunc_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return RISUNC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse:
      return RISUNC_ERR_PARSE;
    case ErrorCode::kIo:
      return RISUNC_ERR_IO;
    case ErrorCode::kDegenerateGeometry:
      return RISUNC_ERR_DEGENERATE;
    case ErrorCode::kInsufficientData:
      return RISUNC_ERR_INSUFFICIENT_DATA;
    case ErrorCode::kNumerical:
      return RISUNC_ERR_NUMERICAL;
  }
  return RISUNC_ERR_INTERNAL;
}

template <typename F>
risunc_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return RISUNC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RISUNC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RISUNC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RISUNC_ERR_INTERNAL;
  }
}

template <typename T>
void Require(const T* p, const char* name) {
  if (p == nullptr) {
    Fail(ErrorCode::kInvalidArgument, std::string(name) + " must not be NULL");
  }
}

ConfigKind ToKind(risunc_config_kind k) {
  switch (k) {
    case RISUNC_CONFIG_OFF:
      return ConfigKind::kOff;
    case RISUNC_CONFIG_RANDOM:
      return ConfigKind::kRandom;
    case RISUNC_CONFIG_OPTIMIZED:
      return ConfigKind::kOptimized;
    case RISUNC_CONFIG_QUANTIZED:
      return ConfigKind::kQuantized1Bit;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown configuration kind");
}

RegionKind ToRegion(risunc_region_kind k) {
  switch (k) {
    case RISUNC_REGION_ELLIPSE:
      return RegionKind::kEllipse;
    case RISUNC_REGION_ANNULUS:
      return RegionKind::kAnnulus;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown region kind");
}

risunc_cov2 ToC(const Covariance2& c) { return {c.u11, c.u12, c.u21(), c.u22}; }

Covariance2 FromC(const risunc_cov2& c) {
  if (c.u12 != c.u21) {
    Fail(ErrorCode::kInvalidArgument, "covariance must be symmetric (u12 == u21)");
  }
  return {c.u11, c.u12, c.u22};
}

risunc_uncertain_complex ToC(const UncertainComplex& u) {
  return {u.value.real(), u.value.imag(), ToC(u.cov)};
}

UncertainComplex FromC(const risunc_uncertain_complex& u) {
  return {Complex(u.re, u.im), FromC(u.cov)};
}

risunc_sample_stats ToC(const SampleStats& s) {
  return {s.n, s.mean, s.variance, s.std_dev, s.variance_of_mean, s.std_of_mean};
}

CoverageEllipse FromC(const risunc_ellipse& e) {
  return {Complex(e.center_re, e.center_im), FromC(e.cov), e.k};
}

AnnularSection FromC(const risunc_annulus& a) { return {a.r0, a.dr, a.theta0, a.dtheta}; }

EulerAngles AnglesFromDeg(const double deg[3]) {
  return EulerAngles::FromDegrees(deg[0], deg[1], deg[2]);
}

}  // namespace

extern "C" {

const char* risunc_last_error(void) { return g_last_error.c_str(); }

const char* risunc_version(void) { return "0.1.0"; }

risunc_status risunc_config_default(risunc_run_config** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new risunc_run_config{RunConfig{}};
  });
}

risunc_status risunc_config_load(const char* path, risunc_run_config** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new risunc_run_config{LoadRunConfig(path)};
  });
}

risunc_status risunc_config_parse(const char* json_text, risunc_run_config** out) {
  return Guard([&] {
    Require(json_text, "json_text");
    Require(out, "out");
    *out = new risunc_run_config{ParseRunConfig(json_text)};
  });
}

void risunc_config_free(risunc_run_config* config) { delete config; }

risunc_status risunc_config_to_json(const risunc_run_config* config, char* buf,
                                    size_t buf_size, size_t* needed) {
  return Guard([&] {
    Require(config, "config");
    const std::string text = RunConfigToJson(config->value);
    if (needed) *needed = text.size() + 1;
    if (buf == nullptr) return;
    if (buf_size < text.size() + 1) {
      Fail(ErrorCode::kInvalidArgument, "buffer too small for configuration JSON");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

risunc_status risunc_config_set_seed(risunc_run_config* config, uint64_t seed) {
  return Guard([&] {
    Require(config, "config");
    config->value.seed = seed;
  });
}

risunc_status risunc_config_set_mc_samples(risunc_run_config* config, size_t n) {
  return Guard([&] {
    Require(config, "config");
    if (n < 2) Fail(ErrorCode::kInvalidArgument, "Monte Carlo needs at least 2 samples");
    config->value.mc_samples = n;
  });
}

risunc_status risunc_config_set_window(risunc_run_config* config, double trim_seconds,
                                       double window_seconds) {
  return Guard([&] {
    Require(config, "config");
    if (!(trim_seconds >= 0.0)) Fail(ErrorCode::kInvalidArgument, "trim must be >= 0");
    config->value.trim_seconds = trim_seconds;
    config->value.window_seconds = window_seconds;
  });
}

risunc_status risunc_config_set_configs(risunc_run_config* config,
                                        const risunc_config_kind* kinds, size_t count) {
  return Guard([&] {
    Require(config, "config");
    Require(kinds, "kinds");
    if (count == 0) Fail(ErrorCode::kInvalidArgument, "need at least one configuration");
    std::vector<ConfigKind> v;
    for (size_t i = 0; i < count; ++i) v.push_back(ToKind(kinds[i]));
    config->value.configs = std::move(v);
  });
}

risunc_status risunc_config_set_regions(risunc_run_config* config,
                                        const risunc_region_kind* kinds, const double* k,
                                        size_t count) {
  return Guard([&] {
    Require(config, "config");
    Require(kinds, "kinds");
    Require(k, "k");
    if (count == 0) Fail(ErrorCode::kInvalidArgument, "need at least one region");
    std::vector<RegionSpec> v;
    for (size_t i = 0; i < count; ++i) {
      if (!(k[i] > 0.0)) Fail(ErrorCode::kInvalidArgument, "coverage factor must be positive");
      v.push_back({ToRegion(kinds[i]), k[i]});
    }
    config->value.regions = std::move(v);
  });
}

risunc_status risunc_config_element_count(const risunc_run_config* config, size_t* out) {
  return Guard([&] {
    Require(config, "config");
    Require(out, "out");
    *out = config->value.scenario.element_count();
  });
}

risunc_status risunc_config_get_seed(const risunc_run_config* config, uint64_t* out) {
  return Guard([&] {
    Require(config, "config");
    Require(out, "out");
    *out = config->value.seed;
  });
}

risunc_status risunc_config_get_window(const risunc_run_config* config,
                                       double* trim_seconds, double* window_seconds,
                                       double* sample_rate_hz) {
  return Guard([&] {
    Require(config, "config");
    if (trim_seconds) *trim_seconds = config->value.trim_seconds;
    if (window_seconds) *window_seconds = config->value.window_seconds;
    if (sample_rate_hz) *sample_rate_hz = config->value.sample_rate_hz;
  });
}

risunc_status risunc_config_get_nominal(const risunc_run_config* config,
                                        double angles_deg[3]) {
  return Guard([&] {
    Require(config, "config");
    Require(angles_deg, "angles_deg");
    const EulerAngles& n = config->value.nominal;
    angles_deg[0] = RadToDeg(n.roll);
    angles_deg[1] = RadToDeg(n.pitch);
    angles_deg[2] = RadToDeg(n.yaw);
  });
}

risunc_status risunc_config_get_synthetic(const risunc_run_config* config,
                                          double means_deg[3], double stds_deg[3],
                                          size_t* samples) {
  return Guard([&] {
    Require(config, "config");
    for (int a = 0; a < 3; ++a) {
      if (means_deg) means_deg[a] = config->value.synthetic_stats[a].mean_deg;
      if (stds_deg) stds_deg[a] = config->value.synthetic_stats[a].std_deg;
    }
    if (samples) *samples = config->value.synthetic_samples;
  });
}

risunc_status risunc_series_load(const char* path, double rate_hz, risunc_series** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new risunc_series{LoadFlightLog(path, LogFormat::kAuto, rate_hz)};
  });
}

risunc_status risunc_series_synthesize(const double means_deg[3], const double stds_deg[3],
                                       size_t n, double rate_hz, uint64_t seed,
                                       risunc_series** out) {
  return Guard([&] {
    Require(means_deg, "means_deg");
    Require(stds_deg, "stds_deg");
    Require(out, "out");
    std::array<AngleDistribution, 3> stats;
    for (int a = 0; a < 3; ++a) stats[a] = {means_deg[a], stds_deg[a]};
    *out = new risunc_series{SynthesizeSeries(stats, n, rate_hz, seed)};
  });
}

risunc_status risunc_series_preprocess(const risunc_series* series, double trim_seconds,
                                       double window_seconds, uint64_t seed,
                                       risunc_series** out) {
  return Guard([&] {
    Require(series, "series");
    Require(out, "out");
    *out = new risunc_series{Preprocess(series->value, trim_seconds, window_seconds, seed)};
  });
}

risunc_status risunc_series_save(const risunc_series* series, const char* path) {
  return Guard([&] {
    Require(series, "series");
    Require(path, "path");
    SaveSeries(series->value, path);
  });
}

size_t risunc_series_length(const risunc_series* series) {
  return series ? series->value.size() : 0;
}

void risunc_series_free(risunc_series* series) { delete series; }

risunc_status risunc_series_stats(const risunc_series* series, risunc_sample_stats out[3]) {
  return Guard([&] {
    Require(series, "series");
    Require(out, "out");
    const auto s = StatsPerAngle(series->value);
    for (int a = 0; a < 3; ++a) out[a] = ToC(s[a]);
  });
}

risunc_status risunc_series_angle_std(const risunc_run_config* config,
                                      const risunc_series* series, double std_deg[3]) {
  return Guard([&] {
    Require(config, "config");
    Require(series, "series");
    Require(std_deg, "std_deg");
    const auto s = StatsPerAngle(series->value);
    const bool of_mean = config->value.uncertainty_source == UncertaintySource::kOfMean;
    for (int a = 0; a < 3; ++a) std_deg[a] = of_mean ? s[a].std_of_mean : s[a].std_dev;
  });
}

risunc_status risunc_type_a_stats(const double* samples, size_t n,
                                  risunc_sample_stats* out) {
  return Guard([&] {
    if (n > 0) Require(samples, "samples");
    Require(out, "out");
    *out = ToC(TypeAStats(std::span<const double>(samples, n)));
  });
}

risunc_status risunc_propagate(const risunc_run_config* config, const double angles_deg[3],
                               const double angle_std_deg[3], risunc_config_kind kind,
                               uint64_t seed, risunc_propagation** out) {
  return Guard([&] {
    Require(config, "config");
    Require(angles_deg, "angles_deg");
    Require(angle_std_deg, "angle_std_deg");
    Require(out, "out");
    const Scenario& s = config->value.scenario;
    const EulerAngles angles = AnglesFromDeg(angles_deg);
    const RisConfig ris = MakeConfig(ToKind(kind), s, angles, seed);
    const AngleUncertainty unc = AngleUncertainty::FromStdDegrees(
        angle_std_deg[0], angle_std_deg[1], angle_std_deg[2]);
    *out = new risunc_propagation{PropagateFullChain(s, angles, unc, ris, true)};
  });
}

void risunc_propagation_free(risunc_propagation* p) { delete p; }

risunc_status risunc_propagation_total(const risunc_propagation* p,
                                       risunc_uncertain_complex* out) {
  return Guard([&] {
    Require(p, "propagation");
    Require(out, "out");
    *out = ToC(p->value.total);
  });
}

risunc_status risunc_propagation_shared_cov(const risunc_propagation* p, risunc_cov2* out) {
  return Guard([&] {
    Require(p, "propagation");
    Require(out, "out");
    *out = ToC(p->value.shared_input_cov);
  });
}

size_t risunc_propagation_element_count(const risunc_propagation* p) {
  return p ? p->value.elements.size() : 0;
}

risunc_status risunc_propagation_element(const risunc_propagation* p, size_t m,
                                         risunc_element_trace* out) {
  return Guard([&] {
    Require(p, "propagation");
    Require(out, "out");
    if (m >= p->value.elements.size()) {
      Fail(ErrorCode::kInvalidArgument, "element index out of range");
    }
    const ElementTrace& t = p->value.elements[m];
    *out = {t.channel.distance_tx,
            t.channel.distance_rx,
            t.channel.amplitude,
            t.channel.phase,
            t.distance_unc.var_tx,
            t.distance_unc.var_rx,
            t.distance_unc.cov,
            t.amp_phase_unc.var_amplitude,
            t.amp_phase_unc.var_phase,
            t.amp_phase_unc.cov,
            ToC(t.cascaded),
            ToC(t.effective)};
  });
}

risunc_status risunc_ellipse_from(const risunc_uncertain_complex* uc, double k,
                                  risunc_ellipse* out) {
  return Guard([&] {
    Require(uc, "uc");
    Require(out, "out");
    const CoverageEllipse e = EllipseFrom(FromC(*uc), k);
    *out = {e.center.real(), e.center.imag(), ToC(e.cov), e.k};
  });
}

risunc_status risunc_ellipse_contains(const risunc_ellipse* e, double re, double im,
                                      int* inside) {
  return Guard([&] {
    Require(e, "ellipse");
    Require(inside, "inside");
    *inside = EllipseContains(FromC(*e), Complex(re, im)) ? 1 : 0;
  });
}

risunc_status risunc_ellipse_axes(const risunc_ellipse* e, double* semi_major,
                                  double* semi_minor, double* angle) {
  return Guard([&] {
    Require(e, "ellipse");
    const EllipseAxes ax = ComputeEllipseAxes(FromC(*e));
    if (semi_major) *semi_major = ax.semi_major;
    if (semi_minor) *semi_minor = ax.semi_minor;
    if (angle) *angle = ax.angle;
  });
}

risunc_status risunc_ellipse_area(const risunc_ellipse* e, double* area) {
  return Guard([&] {
    Require(e, "ellipse");
    Require(area, "area");
    *area = RegionArea(Region(FromC(*e)));
  });
}

risunc_status risunc_annulus_from(const risunc_uncertain_complex* uc, double k,
                                  risunc_annulus* out) {
  return Guard([&] {
    Require(uc, "uc");
    Require(out, "out");
    const AnnularSection a = AnnulusFrom(FromC(*uc), k);
    *out = {a.r0, a.dr, a.theta0, a.dtheta};
  });
}

risunc_status risunc_annulus_contains(const risunc_annulus* a, double re, double im,
                                      int* inside) {
  return Guard([&] {
    Require(a, "annulus");
    Require(inside, "inside");
    *inside = AnnulusContains(FromC(*a), Complex(re, im)) ? 1 : 0;
  });
}

risunc_status risunc_annulus_area(const risunc_annulus* a, double* area) {
  return Guard([&] {
    Require(a, "annulus");
    Require(area, "area");
    *area = RegionArea(Region(FromC(*a)));
  });
}

risunc_status risunc_mc_validate(const risunc_run_config* config,
                                 const double angles_deg[3], const double angle_std_deg[3],
                                 risunc_config_kind kind, risunc_region_kind region,
                                 double k, size_t samples, uint64_t seed,
                                 risunc_mc_result* out) {
  return Guard([&] {
    Require(config, "config");
    Require(angles_deg, "angles_deg");
    Require(angle_std_deg, "angle_std_deg");
    Require(out, "out");
    const Scenario& s = config->value.scenario;
    const EulerAngles angles = AnglesFromDeg(angles_deg);
    const RisConfig ris = MakeConfig(ToKind(kind), s, angles, seed);
    const AngleUncertainty unc = AngleUncertainty::FromStdDegrees(
        angle_std_deg[0], angle_std_deg[1], angle_std_deg[2]);
    const ChainResult chain = PropagateFullChain(s, angles, unc, ris, false);
    const McConfig mc = McConfig::FromStdDegrees(angle_std_deg[0], angle_std_deg[1],
                                                 angle_std_deg[2], samples, seed);
    const std::vector<Complex> truths = SampleTruths(s, angles, ris, mc);
    const Covariance2 sample_cov = SampleCovariance(truths);
    const Complex mean = SampleMean(truths);
    out->samples = truths.size();
    out->propagated = ToC(chain.total);
    out->shared_cov = ToC(chain.shared_input_cov);
    out->sample_cov = ToC(sample_cov);
    out->sample_mean_re = mean.real();
    out->sample_mean_im = mean.imag();
    out->rel_frobenius = RelativeFrobenius(chain.total.cov, sample_cov);
    out->rel_frobenius_shared = RelativeFrobenius(chain.shared_input_cov, sample_cov);
    out->coverage = -1.0;
    try {
      const Region r = MakeRegion(ToRegion(region), chain.total, k);
      out->coverage = EmpiricalCoverage(r, truths);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateGeometry) throw;
    }
  });
}

risunc_status risunc_report_run(const risunc_run_config* config,
                                const risunc_series* const* series, size_t series_count,
                                risunc_report** out) {
  return Guard([&] {
    Require(config, "config");
    Require(out, "out");
    if (series_count > 0) Require(series, "series");
    std::vector<OrientationErrorSeries> runs;
    runs.reserve(series_count);
    for (size_t i = 0; i < series_count; ++i) {
      Require(series[i], "series entry");
      runs.push_back(series[i]->value);
    }
    *out = new risunc_report{RunExperiment(config->value, runs, true)};
  });
}

void risunc_report_free(risunc_report* report) { delete report; }

risunc_status risunc_report_emit(const risunc_report* report, const char* out_dir) {
  return Guard([&] {
    Require(report, "report");
    Require(out_dir, "out_dir");
    EmitReport(report->value, out_dir);
  });
}

risunc_status risunc_report_success_rate(const risunc_report* report,
                                         risunc_config_kind kind, risunc_region_kind region,
                                         double k, double* out) {
  return Guard([&] {
    Require(report, "report");
    Require(out, "out");
    const ConfigKind ck = ToKind(kind);
    const RegionKind rk = ToRegion(region);
    for (const Aggregate& a : report->value.aggregates) {
      if (!a.run && a.config == ck && a.spec.kind == rk && a.spec.k == k) {
        *out = a.success_rate();
        return;
      }
    }
    Fail(ErrorCode::kInvalidArgument, "no aggregate for the requested (config, region, k)");
  });
}

risunc_status risunc_report_coverage(const risunc_report* report, risunc_config_kind kind,
                                     risunc_region_kind region, double k, double* out) {
  return Guard([&] {
    Require(report, "report");
    Require(out, "out");
    const ConfigKind ck = ToKind(kind);
    const RegionKind rk = ToRegion(region);
    for (const CoverageCheck& c : report->value.coverage) {
      if (c.run == 0 && c.config == ck && c.spec.kind == rk && c.spec.k == k) {
        *out = c.coverage;
        return;
      }
    }
    Fail(ErrorCode::kInvalidArgument, "no coverage check for the requested (config, region, k)");
  });
}

size_t risunc_report_point_count(const risunc_report* report) {
  return report ? report->value.points.size() : 0;
}

risunc_status risunc_points_success_rate(const char* points_csv, risunc_config_kind kind,
                                         risunc_region_kind region, double k, double* out) {
  return Guard([&] {
    Require(points_csv, "points_csv");
    Require(out, "out");
    const std::vector<PointRow> rows = LoadPointTable(points_csv);
    const ConfigKind ck = ToKind(kind);
    const RegionKind rk = ToRegion(region);
    for (const Aggregate& a : AggregateRows(rows)) {
      if (a.config == ck && a.spec.kind == rk && a.spec.k == k) {
        *out = a.success_rate();
        return;
      }
    }
    Fail(ErrorCode::kInvalidArgument, "points table has no rows for the requested key");
  });
}

}  // extern "C"
