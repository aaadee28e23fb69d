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

/* C interface to the risunc library.
 *
 * Objects are opaque handles created by *_create / *_load functions and
 * released with the matching *_free. Every fallible call returns a
 * risunc_status; on failure risunc_last_error() describes the problem (the
 * message is thread-local and valid until the next call on that thread).
 * Angles cross this boundary in degrees, lengths in meters, frequency in Hz.
 * Element indices are zero-based. */
#ifndef RISUNC_RISUNC_H_
#define RISUNC_RISUNC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RISUNC_BUILDING_LIBRARY)
#    define RISUNC_API __declspec(dllexport)
#  else
#    define RISUNC_API __declspec(dllimport)
#  endif
#else
#  define RISUNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum risunc_status {
  RISUNC_OK = 0,
  RISUNC_ERR_INVALID_ARGUMENT = 1,
  RISUNC_ERR_PARSE = 2,
  RISUNC_ERR_IO = 3,
  RISUNC_ERR_DEGENERATE = 4,
  RISUNC_ERR_INSUFFICIENT_DATA = 5,
  RISUNC_ERR_NUMERICAL = 6,
  RISUNC_ERR_INTERNAL = 7
} risunc_status;

typedef enum risunc_config_kind {
  RISUNC_CONFIG_OFF = 0,
  RISUNC_CONFIG_RANDOM = 1,
  RISUNC_CONFIG_OPTIMIZED = 2,
  RISUNC_CONFIG_QUANTIZED = 3
} risunc_config_kind;

typedef enum risunc_region_kind {
  RISUNC_REGION_ELLIPSE = 0,
  RISUNC_REGION_ANNULUS = 1
} risunc_region_kind;

typedef enum risunc_uncertainty_source {
  RISUNC_UNC_PER_SAMPLE = 0,
  RISUNC_UNC_OF_MEAN = 1
} risunc_uncertainty_source;

typedef struct risunc_cov2 {
  double u11, u12, u21, u22;
} risunc_cov2;

typedef struct risunc_uncertain_complex {
  double re, im;
  risunc_cov2 cov; /* over (re, im) */
} risunc_uncertain_complex;

typedef struct risunc_sample_stats {
  size_t n;
  double mean, variance, std_dev, variance_of_mean, std_of_mean;
} risunc_sample_stats;

typedef struct risunc_ellipse {
  double center_re, center_im;
  risunc_cov2 cov;
  double k;
} risunc_ellipse;

typedef struct risunc_annulus {
  double r0, dr, theta0, dtheta; /* radians */
} risunc_annulus;

typedef struct risunc_element_trace {
  double distance_tx, distance_rx;
  double amplitude, phase;
  double var_distance_tx, var_distance_rx, cov_distance;
  double var_amplitude, var_phase, cov_amp_phase;
  risunc_uncertain_complex cascaded;
  risunc_uncertain_complex effective;
} risunc_element_trace;

typedef struct risunc_run_config risunc_run_config;
typedef struct risunc_series risunc_series;
typedef struct risunc_propagation risunc_propagation;
typedef struct risunc_report risunc_report;

RISUNC_API const char* risunc_last_error(void);
RISUNC_API const char* risunc_version(void);

/* Run configuration (scenario + experiment settings). */
RISUNC_API risunc_status risunc_config_default(risunc_run_config** out);
RISUNC_API risunc_status risunc_config_load(const char* path, risunc_run_config** out);
RISUNC_API risunc_status risunc_config_parse(const char* json_text, risunc_run_config** out);
RISUNC_API void risunc_config_free(risunc_run_config* config);
/* Writes the canonical JSON into buf (NUL-terminated). *needed receives the
 * required size including the terminator; buf may be NULL to query it. */
RISUNC_API risunc_status risunc_config_to_json(const risunc_run_config* config,
                                               char* buf, size_t buf_size,
                                               size_t* needed);
RISUNC_API risunc_status risunc_config_set_seed(risunc_run_config* config, uint64_t seed);
RISUNC_API risunc_status risunc_config_set_mc_samples(risunc_run_config* config, size_t n);
RISUNC_API risunc_status risunc_config_set_window(risunc_run_config* config,
                                                  double trim_seconds,
                                                  double window_seconds);
/* Replace the evaluated configurations / regions. */
RISUNC_API risunc_status risunc_config_set_configs(risunc_run_config* config,
                                                   const risunc_config_kind* kinds,
                                                   size_t count);
RISUNC_API risunc_status risunc_config_set_regions(risunc_run_config* config,
                                                   const risunc_region_kind* kinds,
                                                   const double* k, size_t count);
RISUNC_API risunc_status risunc_config_element_count(const risunc_run_config* config,
                                                     size_t* out);
RISUNC_API risunc_status risunc_config_get_seed(const risunc_run_config* config,
                                                uint64_t* out);
RISUNC_API risunc_status risunc_config_get_window(const risunc_run_config* config,
                                                  double* trim_seconds,
                                                  double* window_seconds,
                                                  double* sample_rate_hz);
RISUNC_API risunc_status risunc_config_get_nominal(const risunc_run_config* config,
                                                   double angles_deg[3]);
/* Synthetic-data parameters used when no flight log is given. */
RISUNC_API risunc_status risunc_config_get_synthetic(const risunc_run_config* config,
                                                     double means_deg[3],
                                                     double stds_deg[3],
                                                     size_t* samples);

/* Orientation error series (degrees). */
RISUNC_API risunc_status risunc_series_load(const char* path, double rate_hz,
                                            risunc_series** out);
RISUNC_API risunc_status risunc_series_synthesize(const double means_deg[3],
                                                  const double stds_deg[3], size_t n,
                                                  double rate_hz, uint64_t seed,
                                                  risunc_series** out);
/* window_seconds <= 0 keeps everything after trimming. */
RISUNC_API risunc_status risunc_series_preprocess(const risunc_series* series,
                                                  double trim_seconds,
                                                  double window_seconds, uint64_t seed,
                                                  risunc_series** out);
RISUNC_API risunc_status risunc_series_save(const risunc_series* series, const char* path);
RISUNC_API size_t risunc_series_length(const risunc_series* series);
RISUNC_API void risunc_series_free(risunc_series* series);
/* Roll, pitch, yaw. */
RISUNC_API risunc_status risunc_series_stats(const risunc_series* series,
                                             risunc_sample_stats out[3]);
/* Per-angle standard uncertainty (degrees) that the configuration's
 * uncertainty source selects from the series statistics. */
RISUNC_API risunc_status risunc_series_angle_std(const risunc_run_config* config,
                                                 const risunc_series* series,
                                                 double std_deg[3]);
RISUNC_API risunc_status risunc_type_a_stats(const double* samples, size_t n,
                                             risunc_sample_stats* out);

/* Full propagation chain at one orientation with the given per-angle
 * standard uncertainties. */
RISUNC_API risunc_status risunc_propagate(const risunc_run_config* config,
                                          const double angles_deg[3],
                                          const double angle_std_deg[3],
                                          risunc_config_kind kind, uint64_t seed,
                                          risunc_propagation** out);
RISUNC_API void risunc_propagation_free(risunc_propagation* p);
/* Production covariance (per-element terms summed as independent). */
RISUNC_API risunc_status risunc_propagation_total(const risunc_propagation* p,
                                                  risunc_uncertain_complex* out);
/* Diagnostic covariance keeping the shared angle dependence. */
RISUNC_API risunc_status risunc_propagation_shared_cov(const risunc_propagation* p,
                                                       risunc_cov2* out);
RISUNC_API size_t risunc_propagation_element_count(const risunc_propagation* p);
RISUNC_API risunc_status risunc_propagation_element(const risunc_propagation* p,
                                                    size_t m, risunc_element_trace* out);

/* Coverage regions. */
RISUNC_API risunc_status risunc_ellipse_from(const risunc_uncertain_complex* uc,
                                             double k, risunc_ellipse* out);
RISUNC_API risunc_status risunc_ellipse_contains(const risunc_ellipse* e, double re,
                                                 double im, int* inside);
/* Semi-axes and major-axis angle (radians). */
RISUNC_API risunc_status risunc_ellipse_axes(const risunc_ellipse* e, double* semi_major,
                                             double* semi_minor, double* angle);
RISUNC_API risunc_status risunc_ellipse_area(const risunc_ellipse* e, double* area);
RISUNC_API risunc_status risunc_annulus_from(const risunc_uncertain_complex* uc,
                                             double k, risunc_annulus* out);
RISUNC_API risunc_status risunc_annulus_contains(const risunc_annulus* a, double re,
                                                 double im, int* inside);
RISUNC_API risunc_status risunc_annulus_area(const risunc_annulus* a, double* area);

/* Monte Carlo check at one orientation: sample covariance of the exact
 * effective channel under Gaussian angle errors (zero mean, given stds),
 * and the empirical coverage of a region built from the propagated
 * covariance. */
typedef struct risunc_mc_result {
  size_t samples;
  risunc_uncertain_complex propagated;
  risunc_cov2 shared_cov;
  risunc_cov2 sample_cov;
  double sample_mean_re, sample_mean_im;
  double rel_frobenius;        /* propagated vs sample */
  double rel_frobenius_shared; /* shared-input diagnostic vs sample */
  double coverage;             /* -1 when the region is degenerate */
} risunc_mc_result;

RISUNC_API risunc_status risunc_mc_validate(const risunc_run_config* config,
                                            const double angles_deg[3],
                                            const double angle_std_deg[3],
                                            risunc_config_kind kind,
                                            risunc_region_kind region, double k,
                                            size_t samples, uint64_t seed,
                                            risunc_mc_result* out);

/* Experiment over one or more error series. */
RISUNC_API risunc_status risunc_report_run(const risunc_run_config* config,
                                           const risunc_series* const* series,
                                           size_t series_count, risunc_report** out);
RISUNC_API void risunc_report_free(risunc_report* report);
RISUNC_API risunc_status risunc_report_emit(const risunc_report* report,
                                            const char* out_dir);
/* Pooled success rate for (config, region, k). */
RISUNC_API risunc_status risunc_report_success_rate(const risunc_report* report,
                                                    risunc_config_kind kind,
                                                    risunc_region_kind region, double k,
                                                    double* out);
/* Monte Carlo coverage of run 0 for (config, region, k). */
RISUNC_API risunc_status risunc_report_coverage(const risunc_report* report,
                                                risunc_config_kind kind,
                                                risunc_region_kind region, double k,
                                                double* out);
RISUNC_API size_t risunc_report_point_count(const risunc_report* report);

/* Re-reads an emitted points.csv and recomputes the pooled success rate for
 * (config, region, k). */
RISUNC_API risunc_status risunc_points_success_rate(const char* points_csv,
                                                    risunc_config_kind kind,
                                                    risunc_region_kind region, double k,
                                                    double* out);

#ifdef __cplusplus
}
#endif

#endif /* RISUNC_RISUNC_H_ */
