/* Copyright 2026 The FreqCa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef FREQCA_FREQCA_H_
#define FREQCA_FREQCA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FREQCA_BUILDING_LIBRARY)
#define FREQCA_API __attribute__((visibility("default")))
#else
#define FREQCA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values match freqca::ErrorCode. */
typedef enum freqca_status {
  FREQCA_OK = 0,
  FREQCA_ERR_INVALID_ARGUMENT = 1,
  FREQCA_ERR_SHAPE_MISMATCH = 2,
  FREQCA_ERR_RANK_DEFICIENT = 3,
  FREQCA_ERR_ZERO_VECTOR = 4,
  FREQCA_ERR_DEGENERATE_COVARIANCE = 5,
  FREQCA_ERR_INVALID_CUTOFF = 6,
  FREQCA_ERR_ORDER_TOO_HIGH = 7,
  FREQCA_ERR_INSUFFICIENT_HISTORY = 8,
  FREQCA_ERR_BACKWARD_PREDICTION = 9,
  FREQCA_ERR_NON_MONOTONE_STEP = 10,
  FREQCA_ERR_EMPTY_CACHE = 11,
  FREQCA_ERR_INVALID_INTERVAL = 12,
  FREQCA_ERR_INVALID_CONFIG = 13,
  FREQCA_ERR_CONFIG = 14,
  FREQCA_ERR_FORMAT = 15,
  FREQCA_ERR_IO = 16,
  FREQCA_ERR_NUMERICAL = 17,
  FREQCA_ERR_INTERNAL = 99
} freqca_status;

typedef enum freqca_transform {
  FREQCA_TRANSFORM_DCT = 0,
  FREQCA_TRANSFORM_FFT = 1,
  FREQCA_TRANSFORM_NONE = 2
} freqca_transform;

/* Message for the last failing call on this thread; never NULL. */
FREQCA_API const char* freqca_last_error(void);
FREQCA_API const char* freqca_status_name(freqca_status status);
FREQCA_API const char* freqca_version(void);

/* Strings returned through char** out-parameters must be released here. */
FREQCA_API void freqca_string_free(char* s);

/* ---- toy diffusion transformer ---------------------------------------- */

typedef struct freqca_model freqca_model;

typedef struct freqca_model_config {
  int32_t layers;
  int32_t channels;
  int32_t tokens;
  int32_t heads;
  int32_t timestep_embedding_dim;
  int32_t mlp_ratio;
  int32_t zero_init_gates;
  uint64_t seed;
} freqca_model_config;

FREQCA_API void freqca_model_config_default(freqca_model_config* cfg);
FREQCA_API freqca_status freqca_model_create(const freqca_model_config* cfg, freqca_model** out);
FREQCA_API void freqca_model_destroy(freqca_model* model);

/* x and out are tokens * channels row-major doubles. */
FREQCA_API freqca_status freqca_model_forward(const freqca_model* model, const double* x, size_t len,
                                              double t, double* out, size_t out_len);

/* residuals receives 2 * layers tensors (attention then MLP per layer),
 * each tokens * channels; crf receives the output. */
FREQCA_API freqca_status freqca_model_forward_trace(const freqca_model* model, const double* x,
                                                    size_t len, double t, double* residuals,
                                                    size_t residuals_len, double* crf, size_t crf_len);

/* ---- frequency bands --------------------------------------------------- */

FREQCA_API freqca_status freqca_split_bands(const double* z, size_t rows, size_t cols, double cutoff,
                                            freqca_transform transform, double* low, double* high);

/* ---- CRF cache --------------------------------------------------------- */

typedef struct freqca_cache freqca_cache;

typedef struct freqca_cache_config {
  int32_t low_order;
  int32_t high_order;
  double cutoff;
  freqca_transform transform;
} freqca_cache_config;

FREQCA_API freqca_status freqca_cache_create(const freqca_cache_config* cfg, size_t rows, size_t cols,
                                             freqca_cache** out);
FREQCA_API void freqca_cache_destroy(freqca_cache* cache);
FREQCA_API freqca_status freqca_cache_record_full(freqca_cache* cache, int64_t step, const double* crf,
                                                  size_t len);
FREQCA_API freqca_status freqca_cache_reconstruct(const freqca_cache* cache, int64_t step,
                                                  int32_t low_order, int32_t high_order, double* out,
                                                  size_t len);
FREQCA_API freqca_status freqca_cache_units(const freqca_cache* cache, size_t* units);

/* ---- cost model -------------------------------------------------------- */

typedef struct freqca_cost_ledger {
  double full_cost;
  double pred_cost;
  double average_cost;
  double speedup;
  int64_t cache_units_freqca;
  int64_t cache_units_layerwise;
  double ratio;
} freqca_cost_ledger;

FREQCA_API freqca_status freqca_compute_cost_ledger(int32_t layers, int32_t order, int32_t interval,
                                                    double full_cost, double pred_cost,
                                                    freqca_cost_ledger* out);

/* ---- harness (JSON in, JSON/CSV out) ------------------------------------ */

/* method: "freqca", "fora", "taylor" or "layerwise". */
FREQCA_API freqca_status freqca_run_json(const char* config_json, const char* method,
                                         char** report_json, char** report_csv);

/* threads <= 0 uses FREQCA_THREADS or the machine's core count. */
FREQCA_API freqca_status freqca_sweep_json(const char* grid_json, int32_t threads, char** report_json,
                                           char** report_csv);

/* Writes the ground-truth CRF trajectory of a configuration. */
FREQCA_API freqca_status freqca_dump_trajectory(const char* config_json, const char* path);

/* intervals: e.g. "1..10". transform: "dct", "fft" or "none". */
FREQCA_API freqca_status freqca_analyze_file(const char* trajectory_path, const char* intervals,
                                             double cutoff, const char* transform, char** report_json,
                                             char** similarity_csv, char** pca_csv);

/* schema: "run", "sweep" or "analyze". On failure the violations are
 * available from freqca_last_error(). */
FREQCA_API freqca_status freqca_validate_report(const char* report_json, const char* schema);

#ifdef __cplusplus
}
#endif

#endif  // FREQCA_FREQCA_H_
