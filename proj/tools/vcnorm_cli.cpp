// tools/vcnorm_cli.cpp

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

// Command-line front end.  Everything goes through the extern-C surface in
// vcnorm/vcnorm.h; this translation unit never touches library internals.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcnorm/vcnorm.h"

namespace {

int fail(vcn_status status, const char *what) {
  std::fprintf(stderr, "vcnorm: %s failed: %s (%s)\n", what,
               vcn_last_error(), vcn_status_name(status));
  return 1;
}

struct WorkspaceHandle {
  vcn_workspace *ws = nullptr;
  ~WorkspaceHandle() { vcn_workspace_close(ws); }
};

struct KeypairHandle {
  vcn_keypair *kp = nullptr;
  ~KeypairHandle() { vcn_keypair_free(kp); }
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"privacy-preserving cohort score normalisation toolkit"};
  app.require_subcommand(1);

  // ---- synth ----------------------------------------------------------
  vcn_synth_params synth_params;
  vcn_synth_params_default(&synth_params);
  std::string synth_out;
  auto *synth = app.add_subcommand(
      "synth", "generate a synthetic workspace (corpus, UBM, KBM, PLDA, "
               "cohort binary keys)");
  synth->add_option("--out", synth_out, "workspace directory")->required();
  synth->add_option("--seed", synth_params.seed, "master seed");
  synth->add_option("--embedding-dim", synth_params.embedding_dim, "D");
  synth->add_option("--feature-dim", synth_params.feature_dim, "F");
  synth->add_option("--ubm-components", synth_params.ubm_components, "C");
  synth->add_option("--anchors", synth_params.anchors, "A (KBM anchors)");
  synth->add_option("--frames", synth_params.frames_per_sample,
                    "frames per sample");
  synth->add_option("--train-speakers", synth_params.train_speakers, "");
  synth->add_option("--train-sessions", synth_params.train_sessions, "");
  synth->add_option("--cohort-speakers", synth_params.cohort_speakers, "");
  synth->add_option("--cohort-sessions", synth_params.cohort_sessions, "");
  synth->add_option("--trial-speakers", synth_params.trial_speakers, "");
  synth->add_option("--ref-sessions", synth_params.ref_sessions, "");
  synth->add_option("--probe-sessions", synth_params.probe_sessions, "");
  synth->add_option("--target-trials", synth_params.target_trials, "");
  synth->add_option("--nontarget-trials", synth_params.nontarget_trials, "");
  synth->add_option("--channel-shift", synth_params.channel_shift_norm,
                    "probe condition shift norm (<0: default 0.5*sqrt(D))");
  synth->add_option("--top-m", synth_params.per_frame_selection,
                    "per-frame selection M");
  synth->add_option("--bk-bits", synth_params.bk_set_bits, "BK set bits K");
  synth->add_option("--relevance", synth_params.map_relevance,
                    "MAP relevance factor");

  // ---- keygen ---------------------------------------------------------
  uint32_t key_bits = 3072;
  uint64_t key_seed = 1;
  std::string key_out = "paillier";
  auto *keygen = app.add_subcommand("keygen", "generate a Paillier keypair");
  keygen->add_option("--key-bits", key_bits,
                     "modulus size (default 3072; 512 is fine for experiments)");
  keygen->add_option("--seed", key_seed, "deterministic keygen seed");
  keygen->add_option("--out", key_out,
                     "output prefix (writes <out>.pub and <out>.key)");

  // ---- enroll ---------------------------------------------------------
  std::string enroll_ws, enroll_keys, enroll_sample, enroll_out;
  uint32_t enroll_scale = 24;
  uint64_t enroll_seed = 7;
  auto *enroll = app.add_subcommand(
      "enroll", "enroll one sample: encrypted template + BK share files");
  enroll->add_option("--workspace", enroll_ws, "workspace dir")->required();
  enroll->add_option("--keys", enroll_keys, "secret key file")->required();
  enroll->add_option("--sample", enroll_sample, "sample id")->required();
  enroll->add_option("--scale-bits", enroll_scale, "fixed-point scale");
  enroll->add_option("--seed", enroll_seed, "randomness seed");
  enroll->add_option("--out", enroll_out, "output directory")->required();

  // ---- trial ----------------------------------------------------------
  vcn_trial_options trial_opts;
  vcn_trial_options_default(&trial_opts);
  std::string trial_ws, trial_keys, trial_mode = "plaintext_scores";
  std::string trial_net, trial_out = "scores.tsv", trial_config;
  uint32_t trial_n = 32, trial_scale = 24, trial_max = 0;
  uint64_t trial_seed = 7;
  double trial_bw = 1e9, trial_rtt = 1.0;
  bool trial_threaded = false;
  auto *trial = app.add_subcommand("trial", "run the workspace trial list");
  trial->add_option("--workspace", trial_ws, "workspace dir")->required();
  trial->add_option("--keys", trial_keys, "secret key file")->required();
  trial->add_option("--config", trial_config,
                    "key-value run config (flags still override)");
  trial->add_option("--mode", trial_mode,
                    "plaintext_scores | plaintext_bk | protected");
  trial->add_option("--n", trial_n, "top-n cohort size");
  trial->add_option("--scale-bits", trial_scale, "fixed-point scale");
  trial->add_option("--seed", trial_seed, "run seed");
  trial->add_option("--bandwidth-bps", trial_bw, "simulated bandwidth");
  trial->add_option("--rtt-ms", trial_rtt, "simulated round-trip time");
  trial->add_option("--net-mode", trial_net, "inproc | socket");
  trial->add_option("--max-trials", trial_max, "cap on trials (0 = all)");
  trial->add_flag("--threaded", trial_threaded,
                  "run protocol roles on separate threads");
  trial->add_option("--out", trial_out, "score file path");

  // ---- eval -----------------------------------------------------------
  std::string eval_scores;
  double eval_prior = 0.01;
  bool eval_raw = false;
  auto *eval = app.add_subcommand("eval",
                                  "EER / minDCF / Cllr_min of a score file");
  eval->add_option("--scores", eval_scores, "score file")->required();
  eval->add_option("--prior", eval_prior, "effective target prior");
  eval->add_flag("--raw", eval_raw, "evaluate the raw column");

  // ---- bench ----------------------------------------------------------
  std::string bench_ws, bench_keys, bench_net, bench_out = "bench";
  std::vector<uint32_t> bench_grid;
  uint32_t bench_max = 200, bench_scale = 24;
  uint64_t bench_seed = 7;
  double bench_bw = 1e9, bench_rtt = 1.0, bench_prior = 0.01;
  bool bench_dry = false, bench_threaded = false;
  auto *bench = app.add_subcommand(
      "bench", "timing/metric table over an n grid (baseline row + grid "
               "rows)");
  bench->add_option("--workspace", bench_ws, "workspace dir")->required();
  bench->add_option("--keys", bench_keys, "secret key file")->required();
  bench->add_option("--n", bench_grid, "n grid (repeatable)");
  bench->add_option("--max-trials", bench_max, "trial cap per run");
  bench->add_option("--scale-bits", bench_scale, "fixed-point scale");
  bench->add_option("--seed", bench_seed, "run seed");
  bench->add_option("--bandwidth-bps", bench_bw, "simulated bandwidth");
  bench->add_option("--rtt-ms", bench_rtt, "simulated round-trip time");
  bench->add_option("--net-mode", bench_net, "inproc | socket");
  bench->add_flag("--dry-run", bench_dry, "zero timings, metrics only");
  bench->add_flag("--threaded", bench_threaded, "threaded protocol roles");
  bench->add_option("--out", bench_out,
                    "output prefix (<out>.txt table, <out>.tsv records)");

  // ---- report ---------------------------------------------------------
  std::string report_out;
  auto *report = app.add_subcommand(
      "report", "reproduce the reference improvement-ratio table");
  report->add_option("--out", report_out, "also write the table to a file");

  CLI11_PARSE(app, argc, argv);

  if (synth->parsed()) {
    if (auto s = vcn_synth(&synth_params, synth_out.c_str()))
      return fail(s, "synth");
    std::printf("workspace written to %s\n", synth_out.c_str());
    return 0;
  }

  if (keygen->parsed()) {
    KeypairHandle kp;
    if (auto s = vcn_keypair_generate(key_bits, key_seed, &kp.kp))
      return fail(s, "keygen");
    const std::string pub = key_out + ".pub", sec = key_out + ".key";
    if (auto s = vcn_keypair_save(kp.kp, pub.c_str(), sec.c_str()))
      return fail(s, "key save");
    std::printf("wrote %s and %s\n", pub.c_str(), sec.c_str());
    return 0;
  }

  if (enroll->parsed()) {
    WorkspaceHandle ws;
    KeypairHandle kp;
    if (auto s = vcn_workspace_open(enroll_ws.c_str(), &ws.ws))
      return fail(s, "workspace open");
    if (auto s = vcn_keypair_load(enroll_keys.c_str(), &kp.kp))
      return fail(s, "key load");
    if (auto s = vcn_enroll(ws.ws, kp.kp, enroll_sample.c_str(), enroll_scale,
                            enroll_seed, enroll_out.c_str()))
      return fail(s, "enroll");
    std::printf("enrolled %s into %s\n", enroll_sample.c_str(),
                enroll_out.c_str());
    return 0;
  }

  if (trial->parsed()) {
    WorkspaceHandle ws;
    KeypairHandle kp;
    if (auto s = vcn_workspace_open(trial_ws.c_str(), &ws.ws))
      return fail(s, "workspace open");
    if (auto s = vcn_keypair_load(trial_keys.c_str(), &kp.kp))
      return fail(s, "key load");
    trial_opts.config_file = trial_config.c_str();
    // A config file provides the run settings unless explicit flags
    // override them.
    const bool tuned = trial->count("--mode") || trial->count("--n") ||
                       trial->count("--scale-bits") ||
                       trial->count("--seed") ||
                       trial->count("--bandwidth-bps") ||
                       trial->count("--rtt-ms") ||
                       trial->count("--net-mode") ||
                       trial->count("--threaded");
    trial_opts.use_config_only = (!trial_config.empty() && !tuned) ? 1 : 0;
    trial_opts.mode = trial_mode.c_str();
    trial_opts.top_n = trial_n;
    trial_opts.scale_bits = trial_scale;
    trial_opts.seed = trial_seed;
    trial_opts.bandwidth_bps = trial_bw;
    trial_opts.rtt_ms = trial_rtt;
    trial_opts.net_mode = trial_net.c_str();
    trial_opts.max_trials = trial_max;
    trial_opts.threaded = trial_threaded ? 1 : 0;
    vcn_trial_summary summary;
    if (auto s = vcn_run_trials(ws.ws, kp.kp, &trial_opts, trial_out.c_str(),
                                &summary))
      return fail(s, "trial run");
    std::printf("%u trials -> %s\n", summary.trials, trial_out.c_str());
    if (std::string(trial_opts.mode) == "protected") {
      std::printf("  bk %.3fs  gmw %.3fs (+%.3fs simulated net)  he %.3fs "
                  "(%llu comparisons)\n",
                  summary.bk_seconds, summary.gmw_compute_seconds,
                  summary.gmw_network_seconds, summary.he_seconds,
                  static_cast<unsigned long long>(summary.he_comparisons));
      std::printf("  rounds %llu  bytes %llu/%llu  offline %.3fs\n",
                  static_cast<unsigned long long>(summary.gmw_rounds),
                  static_cast<unsigned long long>(summary.gmw_bytes_sent0),
                  static_cast<unsigned long long>(summary.gmw_bytes_sent1),
                  summary.offline_seconds);
    }
    return 0;
  }

  if (eval->parsed()) {
    vcn_metrics m;
    if (auto s = vcn_eval_scores(eval_scores.c_str(), eval_prior,
                                 eval_raw ? 1 : 0, &m))
      return fail(s, "eval");
    std::printf("%s column: Cllr_min %.4f  minDCF %.4f  EER %.4f%%\n",
                eval_raw ? "raw" : "normalised", m.cllr_min, m.min_dcf,
                m.eer * 100.0);
    return 0;
  }

  if (bench->parsed()) {
    WorkspaceHandle ws;
    KeypairHandle kp;
    if (auto s = vcn_workspace_open(bench_ws.c_str(), &ws.ws))
      return fail(s, "workspace open");
    if (auto s = vcn_keypair_load(bench_keys.c_str(), &kp.kp))
      return fail(s, "key load");
    vcn_bench_options opts;
    vcn_bench_options_default(&opts);
    if (!bench_grid.empty()) {
      opts.n_grid = bench_grid.data();
      opts.n_grid_len = static_cast<uint32_t>(bench_grid.size());
    }
    opts.max_trials = bench_max;
    opts.scale_bits = bench_scale;
    opts.seed = bench_seed;
    opts.bandwidth_bps = bench_bw;
    opts.rtt_ms = bench_rtt;
    opts.net_mode = bench_net.c_str();
    opts.threaded = bench_threaded ? 1 : 0;
    opts.dry_run = bench_dry ? 1 : 0;
    opts.effective_prior = bench_prior;
    const std::string table = bench_out + ".txt";
    const std::string records = bench_out + ".tsv";
    if (auto s = vcn_bench(ws.ws, kp.kp, &opts, table.c_str(),
                           records.c_str()))
      return fail(s, "bench");
    // Echo the table for interactive runs.
    if (FILE *f = std::fopen(table.c_str(), "rb")) {
      char buf[4096];
      size_t n;
      while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0)
        std::fwrite(buf, 1, n, stdout);
      std::fclose(f);
    }
    std::printf("wrote %s and %s\n", table.c_str(), records.c_str());
    return 0;
  }

  if (report->parsed()) {
    size_t needed = 0;
    vcn_reference_report(nullptr, 0, &needed);
    std::string text(needed, '\0');
    if (auto s = vcn_reference_report(text.data(), text.size(), nullptr))
      return fail(s, "report");
    text.resize(needed ? needed - 1 : 0);
    std::fputs(text.c_str(), stdout);
    if (!report_out.empty()) {
      if (FILE *f = std::fopen(report_out.c_str(), "wb")) {
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
      } else {
        std::fprintf(stderr, "vcnorm: cannot write %s\n", report_out.c_str());
        return 1;
      }
    }
    return 0;
  }

  return 0;
}
