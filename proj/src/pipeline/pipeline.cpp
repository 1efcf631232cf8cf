// src/pipeline/pipeline.cpp

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

#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "common/container.hpp"
#include "common/error.hpp"
#include "smpc/circuit.hpp"

namespace vcn {

namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

Workspace build_workspace(Corpus corpus, const WorkspaceOptions &opts) {
  Workspace ws;
  ws.options = opts;
  ws.ubm = gen_ubm(corpus.config.seed, corpus.config.ubm_components,
                   corpus.config.feature_dim);
  std::vector<Matrix> anchor_frames;
  for (const auto &a : corpus.anchors) anchor_frames.push_back(a.frames);
  ws.kbm = build_kbm(ws.ubm, anchor_frames, opts.map_relevance);
  VCN_CHECK(opts.bk_set_bits >= 1 && opts.bk_set_bits <= ws.kbm.size(),
            kInvalidArgument)
      << "K=" << opts.bk_set_bits << " outside KBM size " << ws.kbm.size();

  // Backend fit on the training collection; the cohort belongs to the
  // evaluation collection and only feeds the normalisation statistics.
  const auto &fit_split = corpus.train.empty() ? corpus.cohort : corpus.train;
  std::vector<Vec> train_embeddings;
  std::vector<std::string> train_labels;
  for (const auto &s : fit_split) {
    train_embeddings.push_back(s.embedding);
    train_labels.push_back(s.speaker_id);
  }
  ws.pre = compute_preprocess_stats(train_embeddings);
  std::vector<Vec> train = preprocess_all(train_embeddings, ws.pre);
  ws.model = fit_plda(train, train_labels, PldaFitOptions{}, &ws.fit_report);
  ws.form = scoring_form(ws.model);

  ws.cohort_bks = BkStore(ws.kbm.size(), opts.bk_set_bits);
  for (const auto &s : corpus.cohort)
    ws.cohort_bks.add(s.sample_id,
                      extract_bk(ws.kbm, s.frames, opts.per_frame_selection,
                                 opts.bk_set_bits));
  ws.corpus = std::move(corpus);
  return ws;
}

void save_workspace(const Workspace &ws, const std::string &dir) {
  fs::create_directories(dir);
  save_corpus(ws.corpus, dir);
  save_gmm((fs::path(dir) / "ubm.gmm").string(), ws.ubm);
  save_kbm((fs::path(dir) / "kbm.kbm").string(), ws.kbm);
  save_plda((fs::path(dir) / "plda.mdl").string(), ws.model, ws.pre,
            ws.fit_report);
  ws.cohort_bks.save((fs::path(dir) / "cohort.bkdb").string());
  write_kv_file((fs::path(dir) / "workspace.cfg").string(),
                {{"per_frame_selection",
                  std::to_string(ws.options.per_frame_selection)},
                 {"bk_set_bits", std::to_string(ws.options.bk_set_bits)},
                 {"map_relevance", std::to_string(ws.options.map_relevance)}});
}

Workspace load_workspace(const std::string &dir) {
  Workspace ws;
  ws.corpus = load_corpus(dir);
  ws.ubm = load_gmm((fs::path(dir) / "ubm.gmm").string());
  ws.kbm = load_kbm((fs::path(dir) / "kbm.kbm").string());
  load_plda((fs::path(dir) / "plda.mdl").string(), &ws.model, &ws.pre);
  ws.form = scoring_form(ws.model);
  ws.cohort_bks = BkStore::load((fs::path(dir) / "cohort.bkdb").string());
  auto kv = read_kv_file((fs::path(dir) / "workspace.cfg").string());
  ws.options.per_frame_selection = std::stoull(kv.at("per_frame_selection"));
  ws.options.bk_set_bits = std::stoull(kv.at("bk_set_bits"));
  ws.options.map_relevance = std::stod(kv.at("map_relevance"));
  return ws;
}

TrialMode parse_trial_mode(const std::string &name) {
  if (name == "plaintext_scores") return TrialMode::kPlaintextScores;
  if (name == "plaintext_bk") return TrialMode::kPlaintextBk;
  if (name == "protected") return TrialMode::kProtected;
  VCN_THROW(kInvalidArgument) << "unknown trial mode '" << name << "'";
}

std::string trial_mode_name(TrialMode mode) {
  switch (mode) {
    case TrialMode::kPlaintextScores:
      return "plaintext_scores";
    case TrialMode::kPlaintextBk:
      return "plaintext_bk";
    case TrialMode::kProtected:
      return "protected";
  }
  return "?";
}

PipelineConfig pipeline_config_from_file(const std::string &path) {
  auto kv = read_kv_file(path);
  PipelineConfig cfg;
  if (kv.count("n")) cfg.top_n = std::stoull(kv.at("n"));
  if (kv.count("mode")) cfg.mode = parse_trial_mode(kv.at("mode"));
  if (kv.count("scale_bits"))
    cfg.scale_bits = static_cast<unsigned>(std::stoul(kv.at("scale_bits")));
  if (kv.count("key_bits"))
    cfg.key_bits = static_cast<unsigned>(std::stoul(kv.at("key_bits")));
  if (kv.count("bandwidth_bps"))
    cfg.net.bandwidth_bps = std::stod(kv.at("bandwidth_bps"));
  if (kv.count("rtt_ms"))
    cfg.net.rtt_seconds = std::stod(kv.at("rtt_ms")) * 1e-3;
  if (kv.count("seed")) cfg.seed = std::stoull(kv.at("seed"));
  if (kv.count("net_mode")) cfg.net_mode = parse_net_mode(kv.at("net_mode"));
  if (kv.count("two_cohort_stores"))
    cfg.two_cohort_stores = kv.at("two_cohort_stores") == "true";
  cfg.net.validate();
  return cfg;
}

Enrollment enroll(const CorpusSample &sample, const Workspace &ws,
                  const PaillierPublicKey &pk, unsigned scale_bits, Rng &rng,
                  RandomizerPool *pool, HeOpCounters *counters) {
  Enrollment e;
  e.sample_id = sample.sample_id;
  // The BK is extracted and immediately shared; only the shares survive.
  const BinaryKey bk =
      extract_bk(ws.kbm, sample.frames, ws.options.per_frame_selection,
                 ws.options.bk_set_bits);
  e.bk_shares = share_bits(bk.bits, rng, fnv1a64(sample.sample_id));
  const Vec x = preprocess(sample.embedding, ws.pre);
  e.tpl = protect_reference(pk, ws.form, x, scale_bits, rng, pool, counters);
  return e;
}

std::vector<uint64_t> plaintext_prune_order(const std::vector<size_t> &sims,
                                            const std::vector<uint64_t> &ids,
                                            size_t n) {
  VCN_CHECK(sims.size() == ids.size(), kDimension) << "prune oracle inputs";
  VCN_CHECK(n >= 1 && n <= sims.size(), kInvalidArgument)
      << "prune oracle n=" << n;
  std::vector<size_t> order(sims.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    return ids[a] < ids[b];
  });
  std::vector<uint64_t> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(ids[order[i]]);
  return out;
}

TrialRunner::TrialRunner(const Workspace &ws, const PaillierKeypair &kp,
                         PipelineConfig cfg)
    : ws_(ws), kp_(kp), cfg_(cfg), rng_(Rng(cfg.seed).split(0x7472)),
      pool_(kp_.pk, Rng(cfg.seed).split(0x72616e)) {
  cfg_.net.validate();
  for (const auto *s : ws_.corpus.all_samples()) samples_[s->sample_id] = s;

  const auto t0 = std::chrono::steady_clock::now();
  const size_t cohort_size = ws_.corpus.cohort.size();
  VCN_CHECK(cohort_size >= 2, kInvalidArgument) << "cohort too small";
  cohort_emb_.reserve(cohort_size);
  cohort_bk_.reserve(cohort_size);
  for (size_t i = 0; i < cohort_size; ++i) {
    const auto &s = ws_.corpus.cohort[i];
    cohort_emb_.push_back(preprocess(s.embedding, ws_.pre));
    VCN_CHECK(ws_.cohort_bks.record(i).id_hash == fnv1a64(s.sample_id), kState)
        << "cohort BK store out of step with corpus at " << s.sample_id;
    cohort_bk_.push_back(ws_.cohort_bks.record(i).key);
  }
  // Server share state ("upload" of the cohort BK database).
  Rng upload_rng = Rng(cfg_.seed).split(0x636f68);
  for (size_t i = 0; i < cohort_size; ++i) {
    auto pair = share_bits(cohort_bk_[i].bits, upload_rng, i);
    cohort_share0_.push_back(std::move(pair.first.bits));
    cohort_share1_.push_back(std::move(pair.second.bits));
  }
  cohort_tpl_.resize(cohort_size);
  // One physical store serves both sides by default; the two-store config
  // splits it in halves (reference side first).
  if (cfg_.two_cohort_stores) {
    const size_t half = cohort_size / 2;
    for (size_t i = 0; i < half; ++i) store_ref_.push_back(i);
    for (size_t i = half; i < cohort_size; ++i) store_probe_.push_back(i);
    VCN_CHECK(store_ref_.size() >= 2 && store_probe_.size() >= 2,
              kInvalidArgument)
        << "two-store split leaves a side too small";
  } else {
    store_ref_.resize(cohort_size);
    std::iota(store_ref_.begin(), store_ref_.end(), size_t{0});
    store_probe_ = store_ref_;
  }
  offline_seconds_ += seconds_since(t0);
}

const std::vector<size_t> &TrialRunner::side_store(int side) const {
  return side == 0 ? store_ref_ : store_probe_;
}

TrialRunner::SampleCache &TrialRunner::sample_state(
    const std::string &sample_id, bool need_template) {
  auto it = cache_.find(sample_id);
  if (it == cache_.end()) {
    auto sit = samples_.find(sample_id);
    VCN_CHECK(sit != samples_.end(), kInvalidArgument)
        << "unknown sample id " << sample_id;
    SampleCache state;
    const auto t0 = std::chrono::steady_clock::now();
    state.bk = extract_bk(ws_.kbm, sit->second->frames,
                          ws_.options.per_frame_selection,
                          ws_.options.bk_set_bits);
    state.bk_seconds = seconds_since(t0);
    state.preprocessed = preprocess(sit->second->embedding, ws_.pre);
    it = cache_.emplace(sample_id, std::move(state)).first;
  }
  if (need_template && !it->second.tpl) {
    const auto t0 = std::chrono::steady_clock::now();
    it->second.tpl = protect_reference(kp_.pk, ws_.form,
                                       it->second.preprocessed,
                                       cfg_.scale_bits, rng_, &pool_,
                                       &he_counters_);
    offline_seconds_ += seconds_since(t0);
  }
  return it->second;
}

const ProtectedTemplate &TrialRunner::cohort_template(size_t index) {
  if (!cohort_tpl_[index]) {
    const auto t0 = std::chrono::steady_clock::now();
    cohort_tpl_[index] =
        protect_reference(kp_.pk, ws_.form, cohort_emb_[index],
                          cfg_.scale_bits, rng_, &pool_, &he_counters_);
    offline_seconds_ += seconds_since(t0);
  }
  return *cohort_tpl_[index];
}

TrialRunner::SideOutcome TrialRunner::protected_prune_and_score(
    int side, const BinaryKey &sample_bk, const SampleCache &ref_state,
    const Vec &probe_emb, TrialRecord *rec) {
  const auto &store = side_store(side);
  const size_t entries = store.size();
  const size_t n_eff = std::min(cfg_.top_n, entries);
  if (n_eff < cfg_.top_n) rec->cohort_smaller_than_n = true;

  // Dealer role: input-independent triple blocks, one per server.
  const PhasePlan plan = plan_prune(ws_.bk_bits(), entries,
                                    ws_.options.bk_set_bits, n_eff);
  Rng dealer_rng =
      Rng(cfg_.seed).split(0xd3a1 + 2 * trial_counter_ + side);
  auto blocks = deal_triples(plan.and_gates, dealer_rng);

  ChannelPair dealer0 = make_inproc_pair();
  ChannelPair dealer1 = make_inproc_pair();
  ChannelPair client0 = make_inproc_pair();
  ChannelPair client1 = make_inproc_pair();
  ChannelPair servers = connect_pair(cfg_.net, cfg_.net_mode);
  if (transcript_) {
    dealer0.first->set_transcript(transcript_, 2);
    dealer1.first->set_transcript(transcript_, 2);
    client0.first->set_transcript(transcript_, 3);
    client1.first->set_transcript(transcript_, 3);
    servers.first->set_transcript(transcript_, 0);
    servers.second->set_transcript(transcript_, 1);
    client0.second->set_transcript(transcript_, 0);
    client1.second->set_transcript(transcript_, 1);
  }
  dealer0.first->send_frame(MsgType::kTripleBlock,
                            encode_triple_block(blocks.first));
  dealer1.first->send_frame(MsgType::kTripleBlock,
                            encode_triple_block(blocks.second));
  TriplePool pool0(decode_triple_block(dealer0.second->recv_frame().payload));
  TriplePool pool1(decode_triple_block(dealer1.second->recv_frame().payload));

  // Client role: fresh sharing of the sample BK, uploaded to the servers.
  auto sample_shares =
      share_bits(sample_bk.bits, rng_, 1000 + trial_counter_);
  client0.first->send_frame(MsgType::kShareUpload,
                            sample_shares.first.bits.to_bytes());
  client1.first->send_frame(MsgType::kShareUpload,
                            sample_shares.second.bits.to_bytes());
  const Frame up0 = client0.second->recv_frame();
  const Frame up1 = client1.second->recv_frame();
  BitVec share0 = BitVec::from_bytes(up0.payload.data(), ws_.bk_bits());
  BitVec share1 = BitVec::from_bytes(up1.payload.data(), ws_.bk_bits());

  std::vector<BitVec> side_shares0, side_shares1;
  std::vector<uint64_t> ids;
  side_shares0.reserve(entries);
  for (size_t idx : store) {
    side_shares0.push_back(cohort_share0_[idx]);
    side_shares1.push_back(cohort_share1_[idx]);
    ids.push_back(idx);
  }

  PruneMachine m0(0, &pool0, share0, side_shares0, ids,
                  ws_.options.bk_set_bits, n_eff);
  PruneMachine m1(1, &pool1, share1, side_shares1, ids,
                  ws_.options.bk_set_bits, n_eff);
  ProtocolRun run = run_pair(&m0, &m1, servers.first.get(),
                             servers.second.get(), cfg_.exec);
  VCN_CHECK(m0.revealed_ids() == m1.revealed_ids(), kProtocol)
      << "servers disagree on revealed ids";
  VCN_CHECK(pool0.consumed() == plan.and_gates &&
                pool1.consumed() == plan.and_gates,
            kProtocol)
      << "triple consumption deviates from the circuit plan";

  rec->gmw_compute_seconds += run.wall_seconds;
  rec->gmw_network_seconds += simulated_time(run.stats0, cfg_.net);
  rec->gmw_rounds += run.stats0.rounds;
  rec->gmw_bytes_sent0 += run.stats0.bytes_sent;
  rec->gmw_bytes_sent1 += run.stats1.bytes_sent;

  // Servers report the revealed identifiers back to the client.
  std::vector<uint8_t> result_payload;
  for (uint64_t id : m0.revealed_ids()) {
    put_be32(result_payload, static_cast<uint32_t>(id >> 32));
    put_be32(result_payload, static_cast<uint32_t>(id));
  }
  client0.second->send_frame(MsgType::kResult, result_payload);
  const Frame result = client0.first->recv_frame();
  SideOutcome out;
  for (size_t off = 0; off + 8 <= result.payload.size(); off += 8) {
    const uint64_t hi = get_be32(result.payload.data() + off);
    const uint64_t lo = get_be32(result.payload.data() + off + 4);
    out.pruned.push_back((hi << 32) | lo);
  }

  // HE-PLDA on the pruned entries (client/authentication-server role).
  const auto t0 = std::chrono::steady_clock::now();
  for (uint64_t idx : out.pruned) {
    Ciphertext enc =
        side == 0
            ? he_plda_score(kp_.pk, ws_.form, *ref_state.tpl,
                            cohort_emb_[idx], cfg_.scale_bits, rng_, &pool_,
                            &he_counters_)
            : he_plda_score(kp_.pk, ws_.form, cohort_template(idx), probe_emb,
                            cfg_.scale_bits, rng_, &pool_, &he_counters_);
    out.scores.push_back(decrypt_score(kp_, enc, cfg_.scale_bits,
                                       &he_counters_));
    rec->he_comparisons += 1;
  }
  rec->he_seconds += seconds_since(t0);
  return out;
}

TrialRecord TrialRunner::run_trial(const Trial &trial) {
  TrialRecord rec;
  rec.ref_id = trial.ref_id;
  rec.probe_id = trial.probe_id;
  rec.target = trial.target;
  ++trial_counter_;

  const bool protected_mode = cfg_.mode == TrialMode::kProtected;
  SampleCache &ref = sample_state(trial.ref_id, protected_mode);
  SampleCache &probe = sample_state(trial.probe_id, false);
  rec.bk_seconds = ref.bk_seconds + probe.bk_seconds;

  const size_t n_eff_ref = std::min(cfg_.top_n, store_ref_.size());
  const size_t n_eff_probe = std::min(cfg_.top_n, store_probe_.size());
  if (n_eff_ref < cfg_.top_n || n_eff_probe < cfg_.top_n)
    rec.cohort_smaller_than_n = true;

  switch (cfg_.mode) {
    case TrialMode::kPlaintextScores: {
      rec.raw_score = plda_score(ws_.form, ref.preprocessed,
                                 probe.preprocessed);
      for (size_t idx : store_ref_)
        rec.ref_scores.push_back(
            plda_score(ws_.form, ref.preprocessed, cohort_emb_[idx]));
      for (size_t idx : store_probe_)
        rec.probe_scores.push_back(
            plda_score(ws_.form, cohort_emb_[idx], probe.preprocessed));
      rec.ref_stats = norm_stats(rec.ref_scores, n_eff_ref,
                                 StatsMode::kAdaptiveTopN, trial.ref_id, 'z');
      rec.probe_stats =
          norm_stats(rec.probe_scores, n_eff_probe, StatsMode::kAdaptiveTopN,
                     trial.probe_id, 't');
      break;
    }
    case TrialMode::kPlaintextBk: {
      rec.raw_score = plda_score(ws_.form, ref.preprocessed,
                                 probe.preprocessed);
      for (int side = 0; side < 2; ++side) {
        const auto &store = side_store(side);
        const BinaryKey &bk = side == 0 ? ref.bk : probe.bk;
        std::vector<size_t> sims;
        std::vector<uint64_t> ids;
        for (size_t idx : store) {
          sims.push_back(bk_similarity(bk, cohort_bk_[idx]));
          ids.push_back(idx);
        }
        const size_t n_eff = side == 0 ? n_eff_ref : n_eff_probe;
        auto pruned = plaintext_prune_order(sims, ids, n_eff);
        std::vector<double> scores;
        for (uint64_t idx : pruned)
          scores.push_back(side == 0 ? plda_score(ws_.form, ref.preprocessed,
                                                  cohort_emb_[idx])
                                     : plda_score(ws_.form, cohort_emb_[idx],
                                                  probe.preprocessed));
        if (side == 0) {
          rec.pruned_ref = std::move(pruned);
          rec.ref_scores = std::move(scores);
        } else {
          rec.pruned_probe = std::move(pruned);
          rec.probe_scores = std::move(scores);
        }
      }
      rec.ref_stats = norm_stats(rec.ref_scores, n_eff_ref, StatsMode::kAll,
                                 trial.ref_id, 'z');
      rec.probe_stats = norm_stats(rec.probe_scores, n_eff_probe,
                                   StatsMode::kAll, trial.probe_id, 't');
      break;
    }
    case TrialMode::kProtected: {
      const auto t0 = std::chrono::steady_clock::now();
      Ciphertext enc_s =
          he_plda_score(kp_.pk, ws_.form, *ref.tpl, probe.preprocessed,
                        cfg_.scale_bits, rng_, &pool_, &he_counters_);
      rec.raw_score = decrypt_score(kp_, enc_s, cfg_.scale_bits,
                                    &he_counters_);
      rec.he_comparisons += 1;
      rec.he_seconds += seconds_since(t0);

      SideOutcome r = protected_prune_and_score(0, ref.bk, ref,
                                                probe.preprocessed, &rec);
      SideOutcome p = protected_prune_and_score(1, probe.bk, ref,
                                                probe.preprocessed, &rec);
      rec.pruned_ref = std::move(r.pruned);
      rec.ref_scores = std::move(r.scores);
      rec.pruned_probe = std::move(p.pruned);
      rec.probe_scores = std::move(p.scores);
      rec.ref_stats = norm_stats(rec.ref_scores, n_eff_ref, StatsMode::kAll,
                                 trial.ref_id, 'z');
      rec.probe_stats = norm_stats(rec.probe_scores, n_eff_probe,
                                   StatsMode::kAll, trial.probe_id, 't');
      break;
    }
  }
  rec.normalized = s_norm(rec.raw_score, rec.ref_stats, rec.probe_stats);
  return rec;
}

std::vector<TrialRecord> TrialRunner::run_trials(
    const std::vector<Trial> &trials) {
  std::vector<TrialRecord> out;
  out.reserve(trials.size());
  for (const auto &t : trials) out.push_back(run_trial(t));
  return out;
}

std::vector<Trial> read_trial_list(const std::string &path) {
  auto is = open_in(path, false);
  std::vector<Trial> trials;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split_fields(line, '\t');
    VCN_CHECK(f.size() == 3, kIo) << "bad trial line: " << line;
    trials.push_back({f[0], f[1], f[2] == "target"});
  }
  return trials;
}

void write_trial_list(const std::string &path,
                      const std::vector<Trial> &trials) {
  auto os = open_out(path, false);
  for (const auto &t : trials)
    os << t.ref_id << "\t" << t.probe_id << "\t"
       << (t.target ? "target" : "nontarget") << "\n";
}

void write_score_file(const std::string &path,
                      const std::vector<TrialRecord> &records) {
  auto os = open_out(path, false);
  char buf[64];
  for (const auto &r : records) {
    os << r.ref_id << "\t" << r.probe_id << "\t";
    std::snprintf(buf, sizeof(buf), "%.9g", r.raw_score);
    os << buf << "\t";
    std::snprintf(buf, sizeof(buf), "%.9g", r.normalized);
    os << buf << "\t" << (r.target ? "target" : "nontarget") << "\n";
  }
  VCN_CHECK(os.good(), kIo) << "score file write failed: " << path;
}

std::vector<ScoreRow> read_score_file(const std::string &path) {
  auto is = open_in(path, false);
  std::vector<ScoreRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split_fields(line, '\t');
    VCN_CHECK(f.size() == 5, kIo) << "bad score line: " << line;
    rows.push_back({f[0], f[1], std::stod(f[2]), std::stod(f[3]),
                    f[4] == "target"});
  }
  return rows;
}

}  // namespace vcn
