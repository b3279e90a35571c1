/*
 * C interface to the prsi library: interaction datasets, the full
 * split-upload-recommend-download pipeline, and the bundled experiment
 * drivers.
 *
 * Every object is an opaque handle created by a prsi_*_run/load function
 * and released with the matching prsi_*_free. Functions that can fail
 * return a prsi_status; on failure the output handle is untouched and
 * prsi_last_error() holds a message for the calling thread. Strings
 * returned by getters are owned by their handle and stay valid until it
 * is freed.
 */
#ifndef PRSI_H
#define PRSI_H

#include <stddef.h>
#include <stdint.h>

#ifndef PRSI_API
#define PRSI_API __attribute__((visibility("default")))
#endif

#define PRSI_VERSION "0.1.0"

#ifdef __cplusplus
extern "C" {
#endif

typedef enum prsi_status {
  PRSI_OK = 0,
  PRSI_ERR_INVALID_ARGUMENT = 1,
  PRSI_ERR_PARSE = 2,
  PRSI_ERR_VALIDATION = 3,
  PRSI_ERR_SHARE_MIXING = 4,
  PRSI_ERR_INCOMPLETE_SHARES = 5,
  PRSI_ERR_PHASE_INCOMPLETE = 6,
  PRSI_ERR_IO = 7,
  PRSI_ERR_UNKNOWN = 8
} prsi_status;

/* Library version string, always PRSI_VERSION. */
PRSI_API const char* prsi_version(void);

/* Message from the last failed call on this thread; "" after a success. */
PRSI_API const char* prsi_last_error(void);

/* ---- datasets -------------------------------------------------------- */

typedef struct prsi_dataset prsi_dataset;

/*
 * Reads one user per line: whitespace-separated 1-based item ids, at most
 * n_max per line, '#' lines skipped. n_item 0 sizes the catalogue by the
 * largest id seen.
 */
PRSI_API prsi_status prsi_dataset_load(const char* path, uint32_t n_max,
                                       uint32_t n_item, prsi_dataset** out);

/* Uniform random histories, 1..n_max distinct items per user. */
PRSI_API prsi_status prsi_dataset_synthetic(uint32_t n_user, uint32_t n_item,
                                            uint32_t n_max, uint64_t seed,
                                            prsi_dataset** out);

PRSI_API uint32_t prsi_dataset_n_user(const prsi_dataset* data);
PRSI_API uint32_t prsi_dataset_n_item(const prsi_dataset* data);
PRSI_API void prsi_dataset_free(prsi_dataset* data);

/* ---- split demo ------------------------------------------------------ */

typedef struct prsi_split_demo prsi_split_demo;

/*
 * Splits one interaction vector into s_spl shares and keeps the Jaccard
 * similarity between each partial reconstruction and the full vector.
 */
typedef struct prsi_split_config {
  uint32_t n_item; /* catalogue size */
  uint32_t n_max;  /* interaction cap per user; also the fake-item budget */
  uint32_t c;      /* masked dimensions per real slot, >= 2 */
  uint32_t s_spl;  /* number of shares */
} prsi_split_config;

/*
 * items may be NULL with n_items 0 to let the demo draw a random history.
 * Ids are 1-based and must be distinct.
 */
PRSI_API prsi_status prsi_split_demo_run(const prsi_split_config* cfg,
                                         const uint32_t* items,
                                         size_t n_items, uint64_t seed,
                                         prsi_split_demo** out);

PRSI_API uint32_t prsi_split_demo_n_star(const prsi_split_demo* demo);
PRSI_API uint32_t prsi_split_demo_share_count(const prsi_split_demo* demo);

/* Bytes one share occupies on the wire for the given id length. */
PRSI_API prsi_status prsi_split_demo_message_bytes(const prsi_split_demo* demo,
                                                   uint32_t id_len,
                                                   size_t* out);

/* Similarity of the first t shares' sum to the full vector, 0 <= t <= s_spl. */
PRSI_API prsi_status prsi_split_demo_similarity_at(const prsi_split_demo* demo,
                                                   uint32_t t, double* out);

/* 1 when summing all shares reproduced the source items exactly. */
PRSI_API int prsi_split_demo_roundtrip_exact(const prsi_split_demo* demo);

PRSI_API void prsi_split_demo_free(prsi_split_demo* demo);

/* ---- pipeline -------------------------------------------------------- */

typedef struct prsi_pipeline_result prsi_pipeline_result;

typedef struct prsi_pipeline_config {
  uint32_t n_user;
  uint32_t n_item;
  uint32_t n_max;
  uint32_t c;
  uint32_t s_spl;
  double alpha;        /* per-round decay of the forwarding probability */
  uint32_t id_len;     /* virtual id length in characters */
  uint64_t max_rounds; /* 0 means ten rounds per user */
  uint64_t seed;
  uint32_t top_k;      /* recommendation list length */
  const char* recommender; /* NULL means "popularity" */
} prsi_pipeline_config;

/* Fills cfg with the defaults: 1000 users, catalogue 2000, n_max 50,
 * c 2, s_spl 50, alpha 0.9, id_len 7, top_k 10, seed 0. */
PRSI_API void prsi_pipeline_config_init(prsi_pipeline_config* cfg);

PRSI_API prsi_status prsi_pipeline_run(const prsi_dataset* data,
                                       const prsi_pipeline_config* cfg,
                                       prsi_pipeline_result** out);

typedef struct prsi_phase_metrics {
  uint64_t total_bytes;
  uint64_t messages_client_to_client;
  uint64_t messages_to_server;
  uint64_t messages_server_to_client;
  uint64_t rounds_used;
  uint64_t undelivered;
  double mean_sends_per_client;
} prsi_phase_metrics;

typedef struct prsi_fidelity {
  uint64_t duplicate_vid_groups;
  uint64_t detected_collisions;
  uint64_t aggregated_groups;
  uint64_t aggregate_failures;
  uint64_t upload_expected;
  uint64_t upload_exact;
  uint64_t assembly_expected;
  uint64_t assembled_exact;
  int fidelity_ok;
} prsi_fidelity;

PRSI_API void prsi_pipeline_result_upload(const prsi_pipeline_result* result,
                                          prsi_phase_metrics* out);
PRSI_API void prsi_pipeline_result_download(const prsi_pipeline_result* result,
                                            prsi_phase_metrics* out);
PRSI_API void prsi_pipeline_result_fidelity(const prsi_pipeline_result* result,
                                            prsi_fidelity* out);

/* Two-row CSV (upload, download) of the transport counters. */
PRSI_API const char* prsi_pipeline_result_csv(const prsi_pipeline_result* r);

/* Whole-run outcome as indented JSON. */
PRSI_API const char* prsi_pipeline_result_summary(
    const prsi_pipeline_result* r);

PRSI_API void prsi_pipeline_result_free(prsi_pipeline_result* result);

/* ---- experiments ----------------------------------------------------- */

typedef struct prsi_experiment prsi_experiment;

typedef struct prsi_attack_params {
  const uint32_t* s_spl_values;
  size_t n_s_spl_values;
  uint32_t c;
  uint32_t n_item;
  uint32_t n_max;
  uint32_t trials;
  uint64_t seed;
} prsi_attack_params;

typedef struct prsi_ratio_params {
  const uint32_t* c_values;
  size_t n_c_values;
  uint32_t s_spl;
  uint32_t n_item;
  uint32_t n_max;
  uint32_t trials;
  uint64_t seed;
} prsi_ratio_params;

typedef struct prsi_id_collision_params {
  const uint32_t* id_lengths;
  size_t n_id_lengths;
  uint32_t n_user;
  uint32_t trials;
  uint64_t seed;
} prsi_id_collision_params;

typedef struct prsi_alpha_sweep_params {
  const double* alphas;
  size_t n_alphas;
  uint32_t n_user;
  uint32_t n_item;
  uint32_t n_max;
  uint32_t c;
  uint32_t s_spl;
  uint32_t id_len;
  uint32_t top_k;
  uint32_t trials;
  uint64_t seed;
} prsi_alpha_sweep_params;

typedef struct prsi_scaling_params {
  const uint32_t* n_users;
  size_t n_n_users;
  const double* alphas;
  size_t n_alphas;
  uint32_t n_item;
  uint32_t n_max;
  uint32_t c;
  uint32_t s_spl;
  uint32_t id_len;
  uint32_t top_k;
  uint32_t trials;
  uint64_t seed;
} prsi_scaling_params;

/*
 * The _init functions fill a params struct with the stock configuration;
 * list pointers are set to static storage and may be replaced. All seeds
 * default to 0.
 */
PRSI_API void prsi_attack_params_init(prsi_attack_params* params);
PRSI_API void prsi_ratio_params_init(prsi_ratio_params* params);
PRSI_API void prsi_id_collision_params_init(prsi_id_collision_params* params);
PRSI_API void prsi_alpha_sweep_params_init(prsi_alpha_sweep_params* params);
PRSI_API void prsi_scaling_params_init(prsi_scaling_params* params);

PRSI_API prsi_status prsi_attack_run(const prsi_attack_params* params,
                                     prsi_experiment** out);
PRSI_API prsi_status prsi_ratio_run(const prsi_ratio_params* params,
                                    prsi_experiment** out);
PRSI_API prsi_status prsi_id_collision_run(
    const prsi_id_collision_params* params, prsi_experiment** out);
PRSI_API prsi_status prsi_alpha_sweep_run(const prsi_alpha_sweep_params* params,
                                          prsi_experiment** out);
PRSI_API prsi_status prsi_scaling_run(const prsi_scaling_params* params,
                                      prsi_experiment** out);

typedef struct prsi_assertion_view {
  const char* name;
  int passed;
  double observed;
  const char* detail;
} prsi_assertion_view;

PRSI_API const char* prsi_experiment_name(const prsi_experiment* exp);
PRSI_API int prsi_experiment_passed(const prsi_experiment* exp);
PRSI_API const char* prsi_experiment_csv(const prsi_experiment* exp);
PRSI_API const char* prsi_experiment_summary(const prsi_experiment* exp);
PRSI_API size_t prsi_experiment_assertion_count(const prsi_experiment* exp);
PRSI_API prsi_status prsi_experiment_assertion(const prsi_experiment* exp,
                                               size_t index,
                                               prsi_assertion_view* out);

/* Writes <name>.csv and <name>.summary.json into out_dir. */
PRSI_API prsi_status prsi_experiment_write(const prsi_experiment* exp,
                                           const char* out_dir);

PRSI_API void prsi_experiment_free(prsi_experiment* exp);

#ifdef __cplusplus
}
#endif

#endif /* PRSI_H */
