// src/capi/capi.cpp

// Copyright 2026  the vcnorm authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcnorm/vcnorm.h"

#include <cstring>
#include <filesystem>
#include <string>

#include "bench/bench.hpp"
#include "bench/ratio.hpp"
#include "common/container.hpp"
#include "common/error.hpp"
#include "paillier/paillier.hpp"
#include "pipeline/pipeline.hpp"
#include "synthcorpus/corpus.hpp"

namespace {

thread_local std::string g_last_error;

vcn_status map_code(vcn::ErrorCode code) {
  switch (code) {
    case vcn::ErrorCode::kInvalidArgument:
      return VCN_ERR_INVALID_ARGUMENT;
    case vcn::ErrorCode::kDimension:
      return VCN_ERR_DIMENSION;
    case vcn::ErrorCode::kDegenerate:
      return VCN_ERR_DEGENERATE;
    case vcn::ErrorCode::kIo:
      return VCN_ERR_IO;
    case vcn::ErrorCode::kCrypto:
      return VCN_ERR_CRYPTO;
    case vcn::ErrorCode::kProtocol:
      return VCN_ERR_PROTOCOL;
    case vcn::ErrorCode::kOverflow:
      return VCN_ERR_OVERFLOW;
    case vcn::ErrorCode::kState:
      return VCN_ERR_STATE;
  }
  return VCN_ERR_INTERNAL;
}

template <typename Fn>
vcn_status guarded(Fn &&fn) {
  try {
    fn();
    return VCN_OK;
  } catch (const vcn::Error &e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return VCN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return VCN_ERR_INTERNAL;
  }
}

vcn_status require(bool cond, const char *msg) {
  if (cond) return VCN_OK;
  g_last_error = msg;
  return VCN_ERR_INVALID_ARGUMENT;
}

vcn::PipelineConfig pipeline_config_from(const vcn_trial_options &o) {
  vcn::PipelineConfig cfg;
  if (o.config_file && *o.config_file)
    cfg = vcn::pipeline_config_from_file(o.config_file);
  if (o.config_file && o.use_config_only) return cfg;
  cfg.mode = vcn::parse_trial_mode(o.mode ? o.mode : "plaintext_scores");
  cfg.top_n = o.top_n;
  cfg.scale_bits = o.scale_bits;
  cfg.seed = o.seed;
  cfg.net.bandwidth_bps = o.bandwidth_bps;
  cfg.net.rtt_seconds = o.rtt_ms * 1e-3;
  cfg.net_mode = vcn::parse_net_mode(o.net_mode ? o.net_mode : "");
  cfg.exec = o.threaded ? vcn::ExecMode::kThreaded
                        : vcn::ExecMode::kInterleaved;
  return cfg;
}

}  // namespace

struct vcn_workspace {
  vcn::Workspace ws;
};

struct vcn_keypair {
  vcn::PaillierKeypair kp;
};

extern "C" {

const char *vcn_status_name(vcn_status status) {
  switch (status) {
    case VCN_OK:
      return "ok";
    case VCN_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case VCN_ERR_DIMENSION:
      return "dimension-mismatch";
    case VCN_ERR_DEGENERATE:
      return "degenerate-input";
    case VCN_ERR_IO:
      return "io-error";
    case VCN_ERR_CRYPTO:
      return "crypto-error";
    case VCN_ERR_PROTOCOL:
      return "protocol-error";
    case VCN_ERR_OVERFLOW:
      return "overflow";
    case VCN_ERR_STATE:
      return "bad-state";
    case VCN_ERR_INTERNAL:
      return "internal-error";
  }
  return "unknown";
}

const char *vcn_last_error(void) { return g_last_error.c_str(); }

const char *vcn_version(void) { return "vcnorm 1.0.0"; }

void vcn_synth_params_default(vcn_synth_params *params) {
  vcn::CorpusConfig c;
  vcn::WorkspaceOptions w;
  params->seed = c.seed;
  params->embedding_dim = static_cast<uint32_t>(c.embedding_dim);
  params->feature_dim = static_cast<uint32_t>(c.feature_dim);
  params->ubm_components = static_cast<uint32_t>(c.ubm_components);
  params->anchors = static_cast<uint32_t>(c.anchors);
  params->frames_per_sample = static_cast<uint32_t>(c.frames_per_sample);
  params->train_speakers = static_cast<uint32_t>(c.train_speakers);
  params->train_sessions = static_cast<uint32_t>(c.train_sessions);
  params->cohort_speakers = static_cast<uint32_t>(c.cohort_speakers);
  params->cohort_sessions = static_cast<uint32_t>(c.cohort_sessions);
  params->trial_speakers = static_cast<uint32_t>(c.trial_speakers);
  params->ref_sessions = static_cast<uint32_t>(c.ref_sessions);
  params->probe_sessions = static_cast<uint32_t>(c.probe_sessions);
  params->target_trials = static_cast<uint32_t>(c.target_trials);
  params->nontarget_trials = static_cast<uint32_t>(c.nontarget_trials);
  params->channel_shift_norm = c.channel_shift_norm;
  params->per_frame_selection = static_cast<uint32_t>(w.per_frame_selection);
  params->bk_set_bits = static_cast<uint32_t>(w.bk_set_bits);
  params->map_relevance = w.map_relevance;
}

vcn_status vcn_synth(const vcn_synth_params *params, const char *out_dir) {
  if (auto s = require(params && out_dir, "null argument")) return s;
  return guarded([&] {
    vcn::CorpusConfig c;
    c.seed = params->seed;
    c.embedding_dim = params->embedding_dim;
    c.feature_dim = params->feature_dim;
    c.ubm_components = params->ubm_components;
    c.anchors = params->anchors;
    c.frames_per_sample = params->frames_per_sample;
    c.train_speakers = params->train_speakers;
    c.train_sessions = params->train_sessions;
    c.cohort_speakers = params->cohort_speakers;
    c.cohort_sessions = params->cohort_sessions;
    c.trial_speakers = params->trial_speakers;
    c.ref_sessions = params->ref_sessions;
    c.probe_sessions = params->probe_sessions;
    c.target_trials = params->target_trials;
    c.nontarget_trials = params->nontarget_trials;
    c.channel_shift_norm = params->channel_shift_norm;
    vcn::WorkspaceOptions w;
    w.per_frame_selection = params->per_frame_selection;
    w.bk_set_bits = params->bk_set_bits;
    w.map_relevance = params->map_relevance;
    vcn::Workspace ws = vcn::build_workspace(vcn::build_corpus(c), w);
    vcn::save_workspace(ws, out_dir);
  });
}

vcn_status vcn_workspace_open(const char *dir, vcn_workspace **out) {
  if (auto s = require(dir && out, "null argument")) return s;
  return guarded([&] {
    auto ws = std::make_unique<vcn_workspace>();
    ws->ws = vcn::load_workspace(dir);
    *out = ws.release();
  });
}

void vcn_workspace_close(vcn_workspace *ws) { delete ws; }

vcn_status vcn_keypair_generate(uint32_t key_bits, uint64_t seed,
                                vcn_keypair **out) {
  if (auto s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    auto kp = std::make_unique<vcn_keypair>();
    kp->kp = vcn::paillier_keygen(key_bits, seed);
    *out = kp.release();
  });
}

vcn_status vcn_keypair_save(const vcn_keypair *kp, const char *public_path,
                            const char *secret_path) {
  if (auto s = require(kp != nullptr, "null keypair")) return s;
  return guarded([&] {
    if (public_path) vcn::save_public_key(public_path, kp->kp.pk);
    if (secret_path) vcn::save_keypair(secret_path, kp->kp);
  });
}

vcn_status vcn_keypair_load(const char *secret_path, vcn_keypair **out) {
  if (auto s = require(secret_path && out, "null argument")) return s;
  return guarded([&] {
    auto kp = std::make_unique<vcn_keypair>();
    kp->kp = vcn::load_keypair(secret_path);
    *out = kp.release();
  });
}

void vcn_keypair_free(vcn_keypair *kp) { delete kp; }

vcn_status vcn_enroll(const vcn_workspace *ws, const vcn_keypair *kp,
                      const char *sample_id, uint32_t scale_bits,
                      uint64_t seed, const char *out_dir) {
  if (auto s = require(ws && kp && sample_id && out_dir, "null argument"))
    return s;
  return guarded([&] {
    namespace fs = std::filesystem;
    const vcn::CorpusSample &sample = ws->ws.corpus.find_sample(sample_id);
    vcn::Rng rng(seed);
    vcn::Enrollment e =
        vcn::enroll(sample, ws->ws, kp->kp.pk, scale_bits, rng);
    fs::create_directories(out_dir);
    vcn::save_template(
        (fs::path(out_dir) / (e.sample_id + ".hetp")).string(), e.tpl);
    for (int party = 0; party < 2; ++party) {
      vcn::ShareStore store;
      store.bit_length = ws->ws.bk_bits();
      store.party = party;
      store.shares.push_back(party == 0 ? e.bk_shares.first
                                        : e.bk_shares.second);
      store.save((fs::path(out_dir) /
                  (e.sample_id + ".shr" + std::to_string(party)))
                     .string());
    }
  });
}

void vcn_trial_options_default(vcn_trial_options *opts) {
  std::memset(opts, 0, sizeof(*opts));
  opts->config_file = "";
  opts->mode = "plaintext_scores";
  opts->top_n = 32;
  opts->scale_bits = 24;
  opts->seed = 7;
  opts->bandwidth_bps = 1e9;
  opts->rtt_ms = 1.0;
  opts->net_mode = "";
  opts->max_trials = 0;
  opts->threaded = 0;
}

vcn_status vcn_run_trials(const vcn_workspace *ws, const vcn_keypair *kp,
                          const vcn_trial_options *opts,
                          const char *scores_out_path,
                          vcn_trial_summary *summary) {
  if (auto s = require(ws && kp && opts && scores_out_path, "null argument"))
    return s;
  return guarded([&] {
    vcn::PipelineConfig cfg = pipeline_config_from(*opts);
    vcn::TrialRunner runner(ws->ws, kp->kp, cfg);
    std::vector<vcn::Trial> trials = ws->ws.corpus.trials;
    if (opts->max_trials && trials.size() > opts->max_trials)
      trials.resize(opts->max_trials);
    auto records = runner.run_trials(trials);
    vcn::write_score_file(scores_out_path, records);
    if (summary) {
      std::memset(summary, 0, sizeof(*summary));
      summary->trials = static_cast<uint32_t>(records.size());
      for (const auto &r : records) {
        summary->bk_seconds += r.bk_seconds;
        summary->gmw_compute_seconds += r.gmw_compute_seconds;
        summary->gmw_network_seconds += r.gmw_network_seconds;
        summary->he_seconds += r.he_seconds;
        summary->he_comparisons += r.he_comparisons;
        summary->gmw_rounds += r.gmw_rounds;
        summary->gmw_bytes_sent0 += r.gmw_bytes_sent0;
        summary->gmw_bytes_sent1 += r.gmw_bytes_sent1;
      }
      summary->offline_seconds = runner.offline_seconds();
    }
  });
}

vcn_status vcn_eval_scores(const char *scores_path, double effective_prior,
                           int use_raw, vcn_metrics *out) {
  if (auto s = require(scores_path && out, "null argument")) return s;
  return guarded([&] {
    auto rows = vcn::read_score_file(scores_path);
    std::vector<double> scores;
    std::vector<bool> labels;
    for (const auto &r : rows) {
      scores.push_back(use_raw ? r.raw : r.normalized);
      labels.push_back(r.target);
    }
    vcn::MetricConfig cfg;
    cfg.effective_prior = effective_prior;
    const vcn::MetricTriple m = vcn::compute_metrics(scores, labels, cfg);
    out->cllr_min = m.cllr;
    out->min_dcf = m.dcf;
    out->eer = m.err;
  });
}

void vcn_bench_options_default(vcn_bench_options *opts) {
  std::memset(opts, 0, sizeof(*opts));
  opts->max_trials = 200;
  opts->scale_bits = 24;
  opts->seed = 7;
  opts->bandwidth_bps = 1e9;
  opts->rtt_ms = 1.0;
  opts->net_mode = "";
  opts->effective_prior = 0.01;
}

vcn_status vcn_bench(const vcn_workspace *ws, const vcn_keypair *kp,
                     const vcn_bench_options *opts, const char *table_out_path,
                     const char *records_out_path) {
  if (auto s = require(ws && kp && opts, "null argument")) return s;
  return guarded([&] {
    vcn::BenchOptions o;
    if (opts->n_grid && opts->n_grid_len) {
      o.n_grid.clear();
      for (uint32_t i = 0; i < opts->n_grid_len; ++i)
        o.n_grid.push_back(opts->n_grid[i]);
    }
    o.max_trials = opts->max_trials;
    o.scale_bits = opts->scale_bits;
    o.seed = opts->seed;
    o.net.bandwidth_bps = opts->bandwidth_bps;
    o.net.rtt_seconds = opts->rtt_ms * 1e-3;
    o.net_mode = vcn::parse_net_mode(opts->net_mode ? opts->net_mode : "");
    o.exec = opts->threaded ? vcn::ExecMode::kThreaded
                            : vcn::ExecMode::kInterleaved;
    o.dry_run = opts->dry_run != 0;
    o.metric.effective_prior = opts->effective_prior;
    const vcn::BenchReport report = vcn::bench_run(ws->ws, kp->kp, o);
    if (table_out_path)
      vcn::write_text_file(table_out_path, vcn::bench_table_text(report));
    if (records_out_path)
      vcn::write_text_file(records_out_path, vcn::bench_records(report));
  });
}

vcn_status vcn_improvement_ratio(double t_bk_seconds, double t_gmw_seconds,
                                 double t_he_per_cmp_seconds, uint64_t cohort,
                                 uint64_t top_n, double *out) {
  if (auto s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    vcn::TimingLedger ledger{t_bk_seconds, t_gmw_seconds,
                             t_he_per_cmp_seconds, cohort, top_n};
    *out = vcn::improvement_ratio(cohort, ledger);
  });
}

vcn_status vcn_reference_report(char *buf, size_t cap, size_t *needed) {
  return guarded([&] {
    const std::string text = vcn::reference_ratio_report();
    if (needed) *needed = text.size() + 1;
    if (buf && cap) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

}  // extern "C"
