// src/pipeline/pipeline.hpp

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

#ifndef VCNORM_PIPELINE_PIPELINE_HPP_
#define VCNORM_PIPELINE_PIPELINE_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "binarykey/binarykey.hpp"
#include "paillier/heplda.hpp"
#include "pipeline/norm.hpp"
#include "plda/plda.hpp"
#include "smpc/runner.hpp"
#include "synthcorpus/corpus.hpp"

namespace vcn {

// Everything derived from one synthetic corpus: UBM, KBM, PLDA backend and
// the cohort BK store.  This is what the `synth` CLI command materialises on
// disk and what trials and benchmarks run against.
struct WorkspaceOptions {
  size_t per_frame_selection = 1;  // M
  size_t bk_set_bits = 32;         // K
  double map_relevance = 16.0;
};

struct Workspace {
  Corpus corpus;
  Gmm ubm;
  Kbm kbm;
  PreprocessStats pre;
  PldaModel model;
  PldaFitReport fit_report;
  ScoringForm form;
  BkStore cohort_bks;
  WorkspaceOptions options;

  size_t bk_bits() const { return kbm.size(); }
};

Workspace build_workspace(Corpus corpus, const WorkspaceOptions &opts = {});
void save_workspace(const Workspace &ws, const std::string &dir);
Workspace load_workspace(const std::string &dir);

enum class TrialMode { kPlaintextScores, kPlaintextBk, kProtected };
TrialMode parse_trial_mode(const std::string &name);
std::string trial_mode_name(TrialMode mode);

struct PipelineConfig {
  size_t top_n = 32;
  TrialMode mode = TrialMode::kPlaintextScores;
  unsigned scale_bits = 24;
  unsigned key_bits = 512;  // informational; keys come from key files
  NetConfig net;
  NetMode net_mode = NetMode::kInproc;
  ExecMode exec = ExecMode::kInterleaved;
  uint64_t seed = 7;
  bool two_cohort_stores = false;
};

PipelineConfig pipeline_config_from_file(const std::string &path);

// Reference enrollment: protected template plus BK share pair.  The
// plaintext BK lives only inside this call.
struct Enrollment {
  std::string sample_id;
  ProtectedTemplate tpl;
  SharePair bk_shares;
};

Enrollment enroll(const CorpusSample &sample, const Workspace &ws,
                  const PaillierPublicKey &pk, unsigned scale_bits, Rng &rng,
                  RandomizerPool *pool = nullptr,
                  HeOpCounters *counters = nullptr);

// Plaintext pruning oracle: indices ordered by descending similarity, ties
// to the lowest index, truncated to n.
std::vector<uint64_t> plaintext_prune_order(const std::vector<size_t> &sims,
                                            const std::vector<uint64_t> &ids,
                                            size_t n);

struct TrialRecord {
  std::string ref_id, probe_id;
  bool target = false;
  double raw_score = 0.0;   // S
  double normalized = 0.0;  // S'
  NormStats ref_stats, probe_stats;
  std::vector<double> ref_scores, probe_scores;      // R and P (as used)
  std::vector<uint64_t> pruned_ref, pruned_probe;    // cohort indices per side
  bool cohort_smaller_than_n = false;

  // Timing and protocol footprint (protected mode).
  double bk_seconds = 0.0;
  double gmw_compute_seconds = 0.0;
  double gmw_network_seconds = 0.0;
  double he_seconds = 0.0;
  size_t he_comparisons = 0;
  uint64_t gmw_rounds = 0;
  uint64_t gmw_bytes_sent0 = 0;
  uint64_t gmw_bytes_sent1 = 0;
};

// Runs trials in one of the three modes.  Holds the prepared cohort state
// (plaintext embeddings, BK shares for the two servers, lazily enrolled
// cohort templates) plus per-sample caches.
class TrialRunner {
 public:
  TrialRunner(const Workspace &ws, const PaillierKeypair &kp,
              PipelineConfig cfg);

  TrialRecord run_trial(const Trial &trial);
  std::vector<TrialRecord> run_trials(const std::vector<Trial> &trials);

  void set_transcript(TranscriptLog *log) { transcript_ = log; }
  const HeOpCounters &he_counters() const { return he_counters_; }
  double offline_seconds() const { return offline_seconds_; }
  const PipelineConfig &config() const { return cfg_; }

 private:
  struct SampleCache {
    BinaryKey bk;
    double bk_seconds = 0.0;
    Vec preprocessed;
    std::optional<ProtectedTemplate> tpl;
  };
  SampleCache &sample_state(const std::string &sample_id, bool need_template);
  const ProtectedTemplate &cohort_template(size_t index);

  struct SideOutcome {
    std::vector<uint64_t> pruned;
    std::vector<double> scores;
  };
  // side 0 = reference side (R), side 1 = probe side (P)
  SideOutcome protected_prune_and_score(int side, const BinaryKey &sample_bk,
                                        const SampleCache &ref_state,
                                        const Vec &probe_emb,
                                        TrialRecord *rec);
  const std::vector<size_t> &side_store(int side) const;

  const Workspace &ws_;
  const PaillierKeypair &kp_;
  PipelineConfig cfg_;
  Rng rng_;
  RandomizerPool pool_;
  HeOpCounters he_counters_;
  TranscriptLog *transcript_ = nullptr;
  double offline_seconds_ = 0.0;

  std::unordered_map<std::string, const CorpusSample *> samples_;
  std::unordered_map<std::string, SampleCache> cache_;
  std::vector<Vec> cohort_emb_;                  // preprocessed
  std::vector<BinaryKey> cohort_bk_;             // plaintext modes only
  std::vector<BitVec> cohort_share0_, cohort_share1_;  // server state
  std::vector<std::optional<ProtectedTemplate>> cohort_tpl_;
  std::vector<size_t> store_ref_, store_probe_;  // cohort indices per side
  uint64_t trial_counter_ = 0;
};

// Trial list file: ref-id TAB probe-id TAB label.
std::vector<Trial> read_trial_list(const std::string &path);
void write_trial_list(const std::string &path,
                      const std::vector<Trial> &trials);

// Score file: ref-id TAB probe-id TAB raw TAB normalised TAB label, scores
// printed with 9 significant digits.
void write_score_file(const std::string &path,
                      const std::vector<TrialRecord> &records);
struct ScoreRow {
  std::string ref_id, probe_id;
  double raw = 0.0, normalized = 0.0;
  bool target = false;
};
std::vector<ScoreRow> read_score_file(const std::string &path);

}  // namespace vcn

#endif  // VCNORM_PIPELINE_PIPELINE_HPP_
