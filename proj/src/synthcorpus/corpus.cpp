// src/synthcorpus/corpus.cpp

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

#include "synthcorpus/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

namespace {

// Stream ids for seed splitting; fixed so corpora replay bit-identically.
enum : uint64_t {
  kStreamSpeakers = 1,
  kStreamFrames = 2,
  kStreamEmbeddings = 3,
  kStreamTrials = 4,
  kStreamCondition = 5,
  kStreamCollection = 6,
};

Matrix cholesky_lower_of(const Matrix &cov, const char *what) {
  Matrix l;
  if (!Cholesky::try_factor(cov, &l))
    VCN_THROW(kInvalidArgument) << what << " covariance is not SPD";
  return l;
}

// Anisotropic diagonal spectrum: linearly spaced eigenvalues scaled by
// `sigma2`.  An isotropic space would make the PLDA probe-self term constant
// on the unit sphere after length normalisation, leaving a channel shift
// with no score bias for the normalisation stage to remove.
Matrix diag_spectrum(size_t d, double sigma2, double hi, double lo) {
  Matrix m(d, d);
  for (size_t i = 0; i < d; ++i) {
    const double t = d > 1 ? static_cast<double>(i) / (d - 1) : 0.0;
    m.at(i, i) = sigma2 * (hi + (lo - hi) * t);
  }
  return m;
}

Vec gaussian_vec(size_t d, Rng &rng) {
  Vec z(d);
  for (auto &v : z) v = rng.gaussian();
  return z;
}

}  // namespace

std::vector<SpeakerModel> gen_speakers(const Gmm &ubm, size_t count,
                                       const Matrix &between_cov,
                                       uint64_t seed, double frame_shift_sigma,
                                       double population_bias) {
  const size_t d = between_cov.rows();
  Matrix l = cholesky_lower_of(between_cov, "between");
  Rng rng = Rng(seed).split(kStreamSpeakers);
  std::vector<SpeakerModel> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    SpeakerModel s;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "spk%05zu", i);
    s.speaker_id = buf;
    Vec z = gaussian_vec(d, rng);
    s.latent = l.apply(z);
    s.gmm = ubm;
    // Per-speaker frame-space offset; sub-population bias on coordinate 0
    // alternates sign (the "10 fe/male each" analogue).
    const double bias = (i % 2 == 0 ? 1.0 : -1.0) * population_bias;
    Vec offset(ubm.feature_dim());
    for (auto &v : offset) v = frame_shift_sigma * rng.gaussian();
    offset[0] += bias;
    for (size_t c = 0; c < s.gmm.num_components(); ++c)
      for (size_t j = 0; j < s.gmm.feature_dim(); ++j)
        s.gmm.means.at(c, j) += offset[j];
    out.push_back(std::move(s));
  }
  return out;
}

Matrix gen_frames(const SpeakerModel &speaker, size_t num_frames,
                  uint64_t seed) {
  VCN_CHECK(num_frames >= 1, kInvalidArgument) << "T must be >= 1";
  Rng rng = Rng(seed).split(kStreamFrames);
  return speaker.gmm.sample_frames(num_frames, rng);
}

Vec gen_embedding(const SpeakerModel &speaker, const Matrix &within_cov,
                  const Vec &global_mean, const Vec &shift, uint64_t seed) {
  const size_t d = speaker.latent.size();
  VCN_CHECK(within_cov.rows() == d && global_mean.size() == d &&
                shift.size() == d,
            kDimension)
      << "gen_embedding dims";
  Matrix l = cholesky_lower_of(within_cov, "within");
  Rng rng = Rng(seed).split(kStreamEmbeddings);
  Vec noise = l.apply(gaussian_vec(d, rng));
  Vec x(d);
  for (size_t i = 0; i < d; ++i)
    x[i] = global_mean[i] + speaker.latent[i] + noise[i] + shift[i];
  return x;
}

void CorpusConfig::validate() const {
  VCN_CHECK(embedding_dim >= 1 && feature_dim >= 1 && ubm_components >= 1,
            kInvalidArgument)
      << "corpus dims";
  VCN_CHECK(anchors >= 1, kInvalidArgument) << "need at least one anchor";
  VCN_CHECK(frames_per_sample >= 1, kInvalidArgument) << "frames_per_sample";
  VCN_CHECK(train_speakers >= 2 && train_sessions >= 1, kInvalidArgument)
      << "train split sizing";
  VCN_CHECK(cohort_speakers >= 1 && cohort_sessions >= 1, kInvalidArgument)
      << "cohort sizing";
  const size_t target_pool = trial_speakers * ref_sessions * probe_sessions;
  VCN_CHECK(target_trials <= target_pool, kInvalidArgument)
      << "requested " << target_trials << " target trials, only "
      << target_pool << " distinct pairs exist";
  if (target_trials + nontarget_trials > 0) {
    VCN_CHECK(trial_speakers >= 2, kInvalidArgument)
        << "need >= 2 trial speakers for trials";
  }
  VCN_CHECK(shifted_fraction >= 0.0 && shifted_fraction <= 1.0,
            kInvalidArgument)
      << "shifted_fraction";
}

const CorpusSample &Corpus::find_sample(const std::string &sample_id) const {
  for (const auto *group : {&train, &anchors, &cohort, &refs, &probes})
    for (const auto &s : *group)
      if (s.sample_id == sample_id) return s;
  VCN_THROW(kInvalidArgument) << "unknown sample id " << sample_id;
}

std::vector<const CorpusSample *> Corpus::all_samples() const {
  std::vector<const CorpusSample *> out;
  for (const auto *group : {&train, &anchors, &cohort, &refs, &probes})
    for (const auto &s : *group) out.push_back(&s);
  return out;
}

Corpus build_corpus(const CorpusConfig &config) {
  config.validate();
  Corpus corpus;
  corpus.config = config;
  const size_t d = config.embedding_dim;

  Gmm ubm = gen_ubm(config.seed, config.ubm_components, config.feature_dim);
  Matrix between = diag_spectrum(d, config.between_sigma2, 2.5, 0.05);
  Matrix within = diag_spectrum(d, config.within_sigma2, 1.2, 0.6);
  const Vec global_mean(d, 0.0);
  const Vec no_shift(d, 0.0);

  // One speaker universe, partitioned so train / anchor / cohort / trial
  // speaker sets are pairwise disjoint.
  const size_t total_speakers = config.train_speakers + config.anchors +
                                config.cohort_speakers +
                                config.trial_speakers;
  std::vector<SpeakerModel> speakers =
      gen_speakers(ubm, total_speakers, between, config.seed,
                   config.frame_shift_sigma, config.anchor_population_bias);

  // Channel-shift condition vector with the configured norm.  The direction
  // leans on the low-between-variance axes (a nuisance direction mostly
  // outside the dominant speaker subspace) plus a small random component.
  double shift_norm = config.channel_shift_norm;
  if (shift_norm < 0.0) shift_norm = 0.5 * std::sqrt(static_cast<double>(d));
  {
    Rng rng = Rng(config.seed).split(kStreamCondition);
    Vec dir = gaussian_vec(d, rng);
    for (size_t i = 0; i < d; ++i) {
      const double t = d > 1 ? static_cast<double>(i) / (d - 1) : 1.0;
      dir[i] = 0.02 * dir[i] + 4.0 * t * t * t;
    }
    const double n2 = norm2(dir);
    corpus.channel_shift.resize(d);
    for (size_t i = 0; i < d; ++i)
      corpus.channel_shift[i] = n2 > 0 ? dir[i] / n2 * shift_norm : 0.0;
  }

  // Evaluation-collection offset relative to the training population.
  double offset_norm = config.trial_mean_offset_norm;
  if (offset_norm < 0.0) offset_norm = 2.0 * std::sqrt(static_cast<double>(d));
  Vec trial_mean(d, 0.0);
  {
    Rng rng = Rng(config.seed).split(kStreamCollection);
    Vec dir = gaussian_vec(d, rng);
    const double n2 = norm2(dir);
    if (n2 > 0)
      for (size_t i = 0; i < d; ++i) trial_mean[i] = dir[i] / n2 * offset_norm;
  }

  uint64_t sample_counter = 0;
  auto make_sample = [&](const SpeakerModel &spk, const std::string &role,
                         const Vec &mean, const Vec &shift, bool shifted) {
    CorpusSample s;
    std::ostringstream id;
    id << spk.speaker_id << "-" << role << "-" << std::setfill('0')
       << std::setw(3) << sample_counter;
    ++sample_counter;
    s.sample_id = id.str();
    s.speaker_id = spk.speaker_id;
    s.role = role;
    s.shifted = shifted;
    const uint64_t sample_seed = config.seed ^ fnv1a64(s.sample_id);
    s.frames = gen_frames(spk, config.frames_per_sample, sample_seed);
    // Channel severity varies per capture: shifted probes get the condition
    // vector scaled by a per-sample factor in [0.5, 1.5].
    Vec applied = shift;
    if (shifted) {
      Rng jitter = Rng(sample_seed).split(kStreamCondition);
      const double u = 0.5 + jitter.next_double();
      for (auto &v : applied) v *= u;
    }
    s.embedding = gen_embedding(spk, within, mean, applied, sample_seed);
    return s;
  };

  size_t spk_idx = 0;
  // Training collection sits at the origin; the whole evaluation collection
  // (cohort, refs, probes) carries the trial_mean offset, which is what the
  // cohort statistics exist to absorb.
  for (size_t i = 0; i < config.train_speakers; ++i, ++spk_idx)
    for (size_t s = 0; s < config.train_sessions; ++s)
      corpus.train.push_back(make_sample(speakers[spk_idx], "train",
                                         global_mean, no_shift, false));
  for (size_t a = 0; a < config.anchors; ++a, ++spk_idx)
    corpus.anchors.push_back(make_sample(speakers[spk_idx], "anchor",
                                         global_mean, no_shift, false));
  for (size_t i = 0; i < config.cohort_speakers; ++i, ++spk_idx)
    for (size_t s = 0; s < config.cohort_sessions; ++s)
      corpus.cohort.push_back(make_sample(speakers[spk_idx], "cohort",
                                          trial_mean, no_shift, false));

  Rng trial_rng = Rng(config.seed).split(kStreamTrials);
  for (size_t i = 0; i < config.trial_speakers; ++i, ++spk_idx) {
    for (size_t s = 0; s < config.ref_sessions; ++s)
      corpus.refs.push_back(make_sample(speakers[spk_idx], "ref", trial_mean,
                                        no_shift, false));
    for (size_t s = 0; s < config.probe_sessions; ++s) {
      const bool shifted = trial_rng.next_double() < config.shifted_fraction;
      corpus.probes.push_back(make_sample(
          speakers[spk_idx], "probe", trial_mean,
          shifted ? corpus.channel_shift : no_shift, shifted));
    }
  }

  // Target trials: all (ref, probe) same-speaker pairs, shuffled, truncated.
  {
    std::vector<Trial> pool;
    std::unordered_map<std::string, std::vector<const CorpusSample *>>
        probes_of;
    for (const auto &p : corpus.probes) probes_of[p.speaker_id].push_back(&p);
    for (const auto &r : corpus.refs)
      for (const auto *p : probes_of[r.speaker_id])
        pool.push_back({r.sample_id, p->sample_id, true});
    for (size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[trial_rng.below(i)]);
    pool.resize(std::min(pool.size(), config.target_trials));
    corpus.trials = std::move(pool);
  }
  // Nontarget trials: rejection-sampled distinct cross-speaker pairs.
  {
    std::set<std::pair<size_t, size_t>> used;
    size_t made = 0, attempts = 0;
    const size_t limit = 1000 * (config.nontarget_trials + 1);
    while (made < config.nontarget_trials) {
      VCN_CHECK(++attempts < limit, kInvalidArgument)
          << "cannot draw " << config.nontarget_trials
          << " distinct nontarget trials";
      const size_t ri = trial_rng.below(corpus.refs.size());
      const size_t pi = trial_rng.below(corpus.probes.size());
      if (corpus.refs[ri].speaker_id == corpus.probes[pi].speaker_id) continue;
      if (!used.insert({ri, pi}).second) continue;
      corpus.trials.push_back(
          {corpus.refs[ri].sample_id, corpus.probes[pi].sample_id, false});
      ++made;
    }
  }
  // Interleave the classes so any prefix of the list is usable on its own.
  for (size_t i = corpus.trials.size(); i > 1; --i)
    std::swap(corpus.trials[i - 1], corpus.trials[trial_rng.below(i)]);
  return corpus;
}

namespace fs = std::filesystem;

void save_corpus(const Corpus &corpus, const std::string &dir) {
  fs::create_directories(fs::path(dir) / "samples");
  std::ofstream manifest(fs::path(dir) / "manifest.tsv");
  VCN_CHECK(manifest.good(), kIo) << "cannot write manifest in " << dir;
  for (const auto *s : corpus.all_samples()) {
    const std::string rel = "samples/" + s->sample_id + ".vcdb";
    manifest << s->sample_id << "\t" << s->speaker_id << "\t" << s->role
             << (s->shifted ? "-shifted" : "") << "\t" << rel << "\n";
    auto os = open_out((fs::path(dir) / rel).string());
    Matrix emb(1, s->embedding.size());
    for (size_t i = 0; i < s->embedding.size(); ++i)
      emb.at(0, i) = s->embedding[i];
    write_vcdb(os, emb);
    write_vcdb(os, s->frames);
  }
  std::ofstream trials(fs::path(dir) / "trials.tsv");
  for (const auto &t : corpus.trials)
    trials << t.ref_id << "\t" << t.probe_id << "\t"
           << (t.target ? "target" : "nontarget") << "\n";
  {
    auto os = open_out((fs::path(dir) / "condition.vcdb").string());
    write_vcdb_vec(os, corpus.channel_shift);
  }
  const auto &c = corpus.config;
  write_kv_file((fs::path(dir) / "synth.cfg").string(),
                {{"seed", std::to_string(c.seed)},
                 {"embedding_dim", std::to_string(c.embedding_dim)},
                 {"feature_dim", std::to_string(c.feature_dim)},
                 {"ubm_components", std::to_string(c.ubm_components)},
                 {"anchors", std::to_string(c.anchors)},
                 {"frames_per_sample", std::to_string(c.frames_per_sample)},
                 {"train_speakers", std::to_string(c.train_speakers)},
                 {"train_sessions", std::to_string(c.train_sessions)},
                 {"cohort_speakers", std::to_string(c.cohort_speakers)},
                 {"cohort_sessions", std::to_string(c.cohort_sessions)},
                 {"trial_speakers", std::to_string(c.trial_speakers)},
                 {"ref_sessions", std::to_string(c.ref_sessions)},
                 {"probe_sessions", std::to_string(c.probe_sessions)},
                 {"target_trials", std::to_string(c.target_trials)},
                 {"nontarget_trials", std::to_string(c.nontarget_trials)},
                 {"between_sigma2", std::to_string(c.between_sigma2)},
                 {"within_sigma2", std::to_string(c.within_sigma2)},
                 {"frame_shift_sigma", std::to_string(c.frame_shift_sigma)},
                 {"anchor_population_bias",
                  std::to_string(c.anchor_population_bias)},
                 {"channel_shift_norm", std::to_string(c.channel_shift_norm)},
                 {"shifted_fraction", std::to_string(c.shifted_fraction)},
                 {"trial_mean_offset_norm",
                  std::to_string(c.trial_mean_offset_norm)}});
}

Corpus load_corpus(const std::string &dir) {
  Corpus corpus;
  auto kv = read_kv_file((fs::path(dir) / "synth.cfg").string());
  auto &c = corpus.config;
  auto geti = [&](const char *k, size_t dflt) -> size_t {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stoull(it->second);
  };
  auto getd = [&](const char *k, double dflt) -> double {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stod(it->second);
  };
  c.seed = geti("seed", c.seed);
  c.embedding_dim = geti("embedding_dim", c.embedding_dim);
  c.feature_dim = geti("feature_dim", c.feature_dim);
  c.ubm_components = geti("ubm_components", c.ubm_components);
  c.anchors = geti("anchors", c.anchors);
  c.frames_per_sample = geti("frames_per_sample", c.frames_per_sample);
  c.train_speakers = geti("train_speakers", c.train_speakers);
  c.train_sessions = geti("train_sessions", c.train_sessions);
  c.cohort_speakers = geti("cohort_speakers", c.cohort_speakers);
  c.cohort_sessions = geti("cohort_sessions", c.cohort_sessions);
  c.trial_speakers = geti("trial_speakers", c.trial_speakers);
  c.ref_sessions = geti("ref_sessions", c.ref_sessions);
  c.probe_sessions = geti("probe_sessions", c.probe_sessions);
  c.target_trials = geti("target_trials", c.target_trials);
  c.nontarget_trials = geti("nontarget_trials", c.nontarget_trials);
  c.between_sigma2 = getd("between_sigma2", c.between_sigma2);
  c.within_sigma2 = getd("within_sigma2", c.within_sigma2);
  c.frame_shift_sigma = getd("frame_shift_sigma", c.frame_shift_sigma);
  c.anchor_population_bias =
      getd("anchor_population_bias", c.anchor_population_bias);
  c.channel_shift_norm = getd("channel_shift_norm", c.channel_shift_norm);
  c.shifted_fraction = getd("shifted_fraction", c.shifted_fraction);
  c.trial_mean_offset_norm =
      getd("trial_mean_offset_norm", c.trial_mean_offset_norm);

  {
    auto is = open_in((fs::path(dir) / "condition.vcdb").string());
    corpus.channel_shift = read_vcdb_vec(is);
  }
  std::ifstream manifest(fs::path(dir) / "manifest.tsv");
  VCN_CHECK(manifest.good(), kIo) << "cannot open manifest in " << dir;
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    auto f = split_fields(line, '\t');
    VCN_CHECK(f.size() == 4, kIo) << "bad manifest line: " << line;
    CorpusSample s;
    s.sample_id = f[0];
    s.speaker_id = f[1];
    std::string role = f[2];
    if (role.size() > 8 && role.substr(role.size() - 8) == "-shifted") {
      s.shifted = true;
      role = role.substr(0, role.size() - 8);
    }
    s.role = role;
    auto is = open_in((fs::path(dir) / f[3]).string());
    Matrix emb = read_vcdb(is);
    s.embedding = emb.data();
    s.frames = read_vcdb(is);
    if (role == "train")
      corpus.train.push_back(std::move(s));
    else if (role == "anchor")
      corpus.anchors.push_back(std::move(s));
    else if (role == "cohort")
      corpus.cohort.push_back(std::move(s));
    else if (role == "ref")
      corpus.refs.push_back(std::move(s));
    else if (role == "probe")
      corpus.probes.push_back(std::move(s));
    else
      VCN_THROW(kIo) << "unknown role " << role;
  }
  std::ifstream trials(fs::path(dir) / "trials.tsv");
  VCN_CHECK(trials.good(), kIo) << "cannot open trials in " << dir;
  while (std::getline(trials, line)) {
    if (line.empty()) continue;
    auto f = split_fields(line, '\t');
    VCN_CHECK(f.size() == 3, kIo) << "bad trial line: " << line;
    corpus.trials.push_back({f[0], f[1], f[2] == "target"});
  }
  return corpus;
}

}  // namespace vcn
