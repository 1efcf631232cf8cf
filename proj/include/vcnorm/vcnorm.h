/* include/vcnorm/vcnorm.h */

/* Copyright 2026  the vcnorm authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.  */

/* C interface of the vcnorm shared library: privacy-preserving cohort score
 * normalisation for speaker verification.  All functions return vcn_status;
 * vcn_last_error() carries the message of the most recent failure on the
 * calling thread.  Objects behind opaque handles must be released with their
 * matching free/close call. */

#ifndef VCNORM_VCNORM_H_
#define VCNORM_VCNORM_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vcn_status {
  VCN_OK = 0,
  VCN_ERR_INVALID_ARGUMENT = 1,
  VCN_ERR_DIMENSION = 2,
  VCN_ERR_DEGENERATE = 3,
  VCN_ERR_IO = 4,
  VCN_ERR_CRYPTO = 5,
  VCN_ERR_PROTOCOL = 6,
  VCN_ERR_OVERFLOW = 7,
  VCN_ERR_STATE = 8,
  VCN_ERR_INTERNAL = 9
} vcn_status;

const char *vcn_status_name(vcn_status status);
const char *vcn_last_error(void);
const char *vcn_version(void);

typedef struct vcn_workspace vcn_workspace;
typedef struct vcn_keypair vcn_keypair;

/* ------------------------------------------------------------------ */
/* Synthetic corpus + derived models (UBM, KBM, PLDA, cohort BK store) */

typedef struct vcn_synth_params {
  uint64_t seed;
  uint32_t embedding_dim;
  uint32_t feature_dim;
  uint32_t ubm_components;
  uint32_t anchors;
  uint32_t frames_per_sample;
  uint32_t train_speakers;
  uint32_t train_sessions;
  uint32_t cohort_speakers;
  uint32_t cohort_sessions;
  uint32_t trial_speakers;
  uint32_t ref_sessions;
  uint32_t probe_sessions;
  uint32_t target_trials;
  uint32_t nontarget_trials;
  double channel_shift_norm; /* < 0 selects the 0.5*sqrt(D) default */
  uint32_t per_frame_selection; /* M */
  uint32_t bk_set_bits;         /* K */
  double map_relevance;
} vcn_synth_params;

void vcn_synth_params_default(vcn_synth_params *params);
vcn_status vcn_synth(const vcn_synth_params *params, const char *out_dir);

vcn_status vcn_workspace_open(const char *dir, vcn_workspace **out);
void vcn_workspace_close(vcn_workspace *ws);

/* ------------------------------------------------------------------ */
/* Paillier keys                                                       */

vcn_status vcn_keypair_generate(uint32_t key_bits, uint64_t seed,
                                vcn_keypair **out);
vcn_status vcn_keypair_save(const vcn_keypair *kp, const char *public_path,
                            const char *secret_path);
vcn_status vcn_keypair_load(const char *secret_path, vcn_keypair **out);
void vcn_keypair_free(vcn_keypair *kp);

/* ------------------------------------------------------------------ */
/* Enrollment: HETP template plus one SHR1 share file per server       */

vcn_status vcn_enroll(const vcn_workspace *ws, const vcn_keypair *kp,
                      const char *sample_id, uint32_t scale_bits,
                      uint64_t seed, const char *out_dir);

/* ------------------------------------------------------------------ */
/* Trials                                                              */

typedef struct vcn_trial_options {
  const char *config_file; /* optional key-value file loaded first */
  const char *mode; /* plaintext_scores | plaintext_bk | protected */
  uint32_t top_n;
  uint32_t scale_bits;
  uint64_t seed;
  double bandwidth_bps;
  double rtt_ms;
  const char *net_mode; /* "", "inproc" or "socket"; "" honours VC_NET_MODE */
  uint32_t max_trials;  /* 0 runs the full list */
  int threaded;         /* 0: roles interleaved in one context */
  int use_config_only;  /* nonzero: take n/mode/net from the file verbatim */
} vcn_trial_options;

void vcn_trial_options_default(vcn_trial_options *opts);

typedef struct vcn_trial_summary {
  uint32_t trials;
  double bk_seconds;
  double gmw_compute_seconds;
  double gmw_network_seconds;
  double he_seconds;
  double offline_seconds;
  uint64_t he_comparisons;
  uint64_t gmw_rounds;
  uint64_t gmw_bytes_sent0;
  uint64_t gmw_bytes_sent1;
} vcn_trial_summary;

vcn_status vcn_run_trials(const vcn_workspace *ws, const vcn_keypair *kp,
                          const vcn_trial_options *opts,
                          const char *scores_out_path,
                          vcn_trial_summary *summary /* nullable */);

/* ------------------------------------------------------------------ */
/* Metrics and reports                                                 */

typedef struct vcn_metrics {
  double cllr_min;
  double min_dcf;
  double eer;
} vcn_metrics;

/* use_raw != 0 evaluates the raw-score column (baseline) instead of the
 * normalised one. */
vcn_status vcn_eval_scores(const char *scores_path, double effective_prior,
                           int use_raw, vcn_metrics *out);

typedef struct vcn_bench_options {
  const uint32_t *n_grid;
  uint32_t n_grid_len;
  uint32_t max_trials;
  uint32_t scale_bits;
  uint64_t seed;
  double bandwidth_bps;
  double rtt_ms;
  const char *net_mode;
  int threaded;
  int dry_run;
  double effective_prior;
} vcn_bench_options;

void vcn_bench_options_default(vcn_bench_options *opts);

/* Writes the aligned table to table_out_path and the line-delimited records
 * to records_out_path (either may be NULL to skip). */
vcn_status vcn_bench(const vcn_workspace *ws, const vcn_keypair *kp,
                     const vcn_bench_options *opts, const char *table_out_path,
                     const char *records_out_path);

/* (cohort * t_he) / (t_bk + t_gmw + n * t_he) */
vcn_status vcn_improvement_ratio(double t_bk_seconds, double t_gmw_seconds,
                                 double t_he_per_cmp_seconds, uint64_t cohort,
                                 uint64_t top_n, double *out);

/* Reference timing dataset report recomputing the stored improvement
 * ratios.  Copies up to cap-1 bytes into buf (NUL terminated); *needed gets
 * the full length. */
vcn_status vcn_reference_report(char *buf, size_t cap, size_t *needed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VCNORM_VCNORM_H_ */
