/* SPDX-License-Identifier: Apache-2.0 */
#ifndef MAHC_MAHC_H
#define MAHC_MAHC_H

/*
 * C interface to the multi-stage agglomerative clustering library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a mahc_status; on
 * failure, mahc_last_error() describes the problem until the next call on the
 * same thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MAHC_BUILDING_LIBRARY)
#    define MAHC_API __declspec(dllexport)
#  else
#    define MAHC_API __declspec(dllimport)
#  endif
#else
#  define MAHC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mahc_status {
  MAHC_OK = 0,
  MAHC_ERR_USAGE = 1,    /* invalid argument or configuration */
  MAHC_ERR_DATA = 2,     /* malformed or inconsistent data */
  MAHC_ERR_INTERNAL = 3  /* algorithm invariant breached */
} mahc_status;

typedef enum mahc_mode {
  MAHC_MODE_AHC_BASELINE = 0,
  MAHC_MODE_MAHC = 1,    /* iterative, no occupancy cap */
  MAHC_MODE_MAHC_M = 2   /* iterative with the split step */
} mahc_mode;

typedef struct mahc_dataset mahc_dataset;
typedef struct mahc_result mahc_result;

typedef struct mahc_config {
  mahc_mode mode;
  size_t p0;
  size_t beta;
  size_t max_iters;
  size_t conv_window;
  uint64_t seed;
  size_t workers;
  size_t final_k;       /* 0 selects K automatically */
  int ward_on_squared;  /* nonzero: DTW values enter Ward as squared distances */
  int l_refine;
  int dtw_normalize;
  int dtw_squared_cost;
  int split_by_cluster; /* split along stage-one cluster boundaries */
} mahc_config;

typedef struct mahc_synthetic_spec {
  size_t classes;
  size_t members_min;
  size_t members_max;
  size_t dim;
  size_t length_min;
  size_t length_max;
  double jitter;
  double warp;
  uint64_t seed;
} mahc_synthetic_spec;

typedef struct mahc_iteration_stats {
  size_t iteration;
  size_t subsets;
  size_t max_occupancy;
  size_t min_occupancy;
  size_t medoids;
  size_t k_estimate;
  double seconds;
  int has_f_measure;
  double f_measure;
} mahc_iteration_stats;

MAHC_API const char* mahc_version(void);
MAHC_API const char* mahc_last_error(void);

/* Fill with defaults. */
MAHC_API void mahc_config_init(mahc_config* config);
MAHC_API void mahc_synthetic_spec_init(mahc_synthetic_spec* spec);

/* Datasets */
MAHC_API mahc_status mahc_dataset_load(const char* path, mahc_dataset** out);
MAHC_API mahc_status mahc_dataset_save(const mahc_dataset* dataset, const char* path);
MAHC_API mahc_status mahc_dataset_generate(const mahc_synthetic_spec* spec, mahc_dataset** out);
MAHC_API void mahc_dataset_free(mahc_dataset* dataset);
MAHC_API size_t mahc_dataset_size(const mahc_dataset* dataset);
MAHC_API size_t mahc_dataset_dim(const mahc_dataset* dataset);
MAHC_API int mahc_dataset_has_labels(const mahc_dataset* dataset);
MAHC_API size_t mahc_dataset_class_count(const mahc_dataset* dataset);
MAHC_API int64_t mahc_dataset_segment_id(const mahc_dataset* dataset, size_t index);

/* Clustering */
MAHC_API mahc_status mahc_run(const mahc_dataset* dataset, const mahc_config* config,
                              mahc_result** out);
MAHC_API void mahc_result_free(mahc_result* result);
MAHC_API size_t mahc_result_final_k(const mahc_result* result);
MAHC_API size_t mahc_result_peak_occupancy(const mahc_result* result);
/* Copies one cluster id per dataset position into out[0..n). */
MAHC_API mahc_status mahc_result_assignment(const mahc_result* result, uint32_t* out, size_t n);
MAHC_API size_t mahc_result_iteration_count(const mahc_result* result);
MAHC_API mahc_status mahc_result_iteration(const mahc_result* result, size_t index,
                                           mahc_iteration_stats* out);
MAHC_API size_t mahc_result_warning_count(const mahc_result* result);
MAHC_API const char* mahc_result_warning(const mahc_result* result, size_t index);

/* Evaluation: F-measure of a clustering given as (segment id, cluster id)
 * pairs against the dataset's labels. Every segment must appear once. */
MAHC_API mahc_status mahc_evaluate(const mahc_dataset* dataset, const int64_t* segment_ids,
                                   const int64_t* cluster_ids, size_t n, double* f_measure);

#ifdef __cplusplus
}
#endif

#endif /* MAHC_MAHC_H */
