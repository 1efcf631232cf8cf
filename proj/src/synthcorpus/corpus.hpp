// src/synthcorpus/corpus.hpp

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

#ifndef VCNORM_SYNTHCORPUS_CORPUS_HPP_
#define VCNORM_SYNTHCORPUS_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "common/matrix.hpp"
#include "synthcorpus/gmm.hpp"

namespace vcn {

// Generative stand-in for a real speaker: a latent between-speaker factor in
// embedding space plus a mean-shifted copy of the UBM for frame generation.
struct SpeakerModel {
  std::string speaker_id;
  Vec latent;  // D-dim
  Gmm gmm;     // UBM means + per-speaker offset
};

// Speakers with i.i.d. N(0, between_cov) latents.  Frame-space offsets are
// drawn per speaker with std frame_shift_sigma; anchors for the KBM get a
// +/- population bias on top (two balanced sub-populations).
std::vector<SpeakerModel> gen_speakers(const Gmm &ubm, size_t count,
                                       const Matrix &between_cov,
                                       uint64_t seed,
                                       double frame_shift_sigma = 1.0,
                                       double population_bias = 0.0);

Matrix gen_frames(const SpeakerModel &speaker, size_t num_frames,
                  uint64_t seed);

Vec gen_embedding(const SpeakerModel &speaker, const Matrix &within_cov,
                  const Vec &global_mean, const Vec &shift, uint64_t seed);

struct CorpusConfig {
  uint64_t seed = 1;
  size_t embedding_dim = 32;   // D
  size_t feature_dim = 8;      // F
  size_t ubm_components = 64;  // C
  size_t anchors = 4;          // A (KBM)
  size_t frames_per_sample = 200;

  size_t train_speakers = 192;  // PLDA / preprocessing fit
  size_t train_sessions = 3;
  size_t cohort_speakers = 128;
  size_t cohort_sessions = 4;  // 512 cohort samples by default
  size_t trial_speakers = 300;
  size_t ref_sessions = 2;
  size_t probe_sessions = 2;
  size_t target_trials = 1200;
  size_t nontarget_trials = 1200;

  double between_sigma2 = 1.0;
  double within_sigma2 = 0.4;
  double frame_shift_sigma = 1.0;
  double anchor_population_bias = 1.0;
  // Norm of the probe channel-shift condition; < 0 means the 0.5*sqrt(D)
  // default.  Half of the probes get the shift, half none (pooled
  // conditions).
  double channel_shift_norm = -1.0;
  double shifted_fraction = 0.5;
  // Collection mismatch: the evaluation collection (cohort, refs, probes)
  // sits at a global-mean offset from the training collection, the usual
  // reason cohort normalisation pays off.  < 0 means 2*sqrt(D).
  double trial_mean_offset_norm = -1.0;

  void validate() const;
};

struct CorpusSample {
  std::string sample_id;
  std::string speaker_id;
  std::string role;  // anchor | cohort | ref | probe
  Vec embedding;
  Matrix frames;
  bool shifted = false;  // probes only
};

struct Trial {
  std::string ref_id;
  std::string probe_id;
  bool target = false;
};

struct Corpus {
  CorpusConfig config;
  Vec channel_shift;  // the condition vector actually applied
  std::vector<CorpusSample> train;  // backend training collection
  std::vector<CorpusSample> anchors;
  std::vector<CorpusSample> cohort;
  std::vector<CorpusSample> refs;
  std::vector<CorpusSample> probes;
  std::vector<Trial> trials;

  const CorpusSample &find_sample(const std::string &sample_id) const;
  std::vector<const CorpusSample *> all_samples() const;
};

// Deterministic corpus with pairwise-disjoint anchor / cohort / trial
// speaker sets.
Corpus build_corpus(const CorpusConfig &config);

// Directory layout: manifest.tsv (sample-id TAB speaker-id TAB role TAB
// file), samples/<id>.vcdb (embedding block then frames block), trials.tsv,
// condition.vcdb, synth.cfg.
void save_corpus(const Corpus &corpus, const std::string &dir);
Corpus load_corpus(const std::string &dir);

}  // namespace vcn

#endif  // VCNORM_SYNTHCORPUS_CORPUS_HPP_
