// tests/test_binarykey.cpp

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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "binarykey/binarykey.hpp"
#include "binarykey/kbm.hpp"
#include "common/error.hpp"
#include "synthcorpus/corpus.hpp"

using namespace vcn;

namespace {

// Independent re-implementation of the MAP statistics for the oracle check:
// accumulates responsibilities directly from weighted densities without the
// log-sum-exp path used by the library.
Gmm map_adapt_oracle(const Gmm &ubm, const Matrix &frames, double relevance) {
  const size_t c = ubm.num_components(), f = ubm.feature_dim();
  Vec occ(c, 0.0);
  Matrix first(c, f);
  for (size_t t = 0; t < frames.rows(); ++t) {
    const double *x = frames.row(t);
    Vec lik(c);
    double total = 0.0;
    for (size_t i = 0; i < c; ++i) {
      double dens = 1.0;
      for (size_t j = 0; j < f; ++j) {
        const double var = ubm.variances.at(i, j);
        const double d = x[j] - ubm.means.at(i, j);
        dens *= std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * M_PI * var);
      }
      lik[i] = ubm.weights[i] * dens;
      total += lik[i];
    }
    for (size_t i = 0; i < c; ++i) {
      const double gamma = lik[i] / total;
      occ[i] += gamma;
      for (size_t j = 0; j < f; ++j) first.at(i, j) += gamma * x[j];
    }
  }
  Gmm out = ubm;
  for (size_t i = 0; i < c; ++i)
    for (size_t j = 0; j < f; ++j)
      out.means.at(i, j) =
          (first.at(i, j) + relevance * ubm.means.at(i, j)) / (occ[i] + relevance);
  return out;
}

}  // namespace

TEST_CASE("map_adapt limit cases") {
  Gmm ubm = gen_ubm(3, 4, 3);
  auto spk = gen_speakers(ubm, 1, Matrix::identity(4), 5);
  Matrix frames = gen_frames(spk[0], 40, 6);

  Gmm huge = map_adapt(ubm, frames, 1e12);
  for (size_t i = 0; i < ubm.means.data().size(); ++i)
    CHECK(huge.means.data()[i] ==
          doctest::Approx(ubm.means.data()[i]).epsilon(1e-9));

  // relevance -> 0+ with a single component: adapted mean = frame mean
  Gmm single = gen_ubm(9, 1, 3);
  Matrix sf = gen_frames(spk[0], 25, 7);
  Gmm low = map_adapt(single, sf, 1e-9);
  for (size_t j = 0; j < 3; ++j) {
    double mean = 0;
    for (size_t t = 0; t < sf.rows(); ++t) mean += sf.at(t, j);
    mean /= sf.rows();
    CHECK(low.means.at(0, j) == doctest::Approx(mean).epsilon(1e-7));
  }
}

TEST_CASE("map_adapt matches the responsibility oracle") {
  Gmm ubm = gen_ubm(13, 2, 3);
  auto spk = gen_speakers(ubm, 1, Matrix::identity(4), 5);
  Matrix frames = gen_frames(spk[0], 30, 8);
  Gmm ours = map_adapt(ubm, frames, 16.0);
  Gmm oracle = map_adapt_oracle(ubm, frames, 16.0);
  for (size_t i = 0; i < ours.means.data().size(); ++i)
    CHECK(std::abs(ours.means.data()[i] - oracle.means.data()[i]) < 1e-10);
  CHECK(ours.weights == ubm.weights);
  CHECK(ours.variances.data() == ubm.variances.data());
}

TEST_CASE("build_kbm ordering and shapes") {
  Gmm ubm = gen_ubm(21, 3, 2);
  auto spk = gen_speakers(ubm, 2, Matrix::identity(4), 5);
  std::vector<Matrix> frames{gen_frames(spk[0], 20, 1),
                             gen_frames(spk[1], 20, 2)};

  SUBCASE("single anchor equals the adapted model") {
    Kbm kbm = build_kbm(ubm, {frames[0]}, 16.0);
    CHECK(kbm.size() == 3);
    Gmm adapted = map_adapt(ubm, frames[0], 16.0);
    for (size_t c = 0; c < 3; ++c)
      for (size_t j = 0; j < 2; ++j)
        CHECK(kbm.means().at(c, j) == adapted.means.at(c, j));
  }

  SUBCASE("anchor-major ordering") {
    Kbm kbm = build_kbm(ubm, frames, 16.0);
    CHECK(kbm.size() == 6);
    const size_t expect[6] = {0, 0, 0, 1, 1, 1};
    for (size_t p = 0; p < 6; ++p) CHECK(kbm.anchor_of(p) == expect[p]);
  }

  SUBCASE("wrong feature dimension is rejected") {
    Matrix bad(10, 5);
    CHECK_THROWS_AS(build_kbm(ubm, {bad}, 16.0), Error);
  }
}

TEST_CASE("kbm at production scale has A*C positions") {
  // A = 20 anchors on a 2048-component UBM: N = 40960 bit positions.
  Gmm ubm = gen_ubm(1, 2048, 2);
  std::vector<Matrix> frames;
  auto spk = gen_speakers(ubm, 20, Matrix::identity(2), 5);
  for (int a = 0; a < 20; ++a) frames.push_back(gen_frames(spk[a], 2, a));
  Kbm kbm = build_kbm(ubm, frames, 16.0);
  CHECK(kbm.size() == 40960);
  CHECK(kbm.anchor_of(2047) == 0);
  CHECK(kbm.anchor_of(2048) == 1);
  CHECK(kbm.anchor_of(40959) == 19);
}

TEST_CASE("frame_activations contracts") {
  Gmm ubm = gen_ubm(31, 4, 2);
  auto spk = gen_speakers(ubm, 2, Matrix::identity(3), 5);
  Kbm kbm = build_kbm(ubm, {gen_frames(spk[0], 15, 1),
                            gen_frames(spk[1], 15, 2)}, 16.0);
  const size_t n = kbm.size();

  SUBCASE("M = N selects everything") {
    Matrix frames = gen_frames(spk[0], 7, 3);
    auto act = frame_activations(kbm, frames, n);
    for (double c : act.counts) CHECK(c == doctest::Approx(1.0));
  }

  SUBCASE("single frame, M = 1") {
    Matrix frames = gen_frames(spk[0], 1, 4);
    auto act = frame_activations(kbm, frames, 1);
    size_t nonzero = 0;
    for (double c : act.counts)
      if (c != 0.0) {
        ++nonzero;
        CHECK(c == doctest::Approx(1.0));
      }
    CHECK(nonzero == 1);
  }

  SUBCASE("matches the per-frame sort oracle") {
    Matrix frames = gen_frames(spk[0], 5, 5);
    const size_t m = 2;
    auto act = frame_activations(kbm, frames, m);
    Vec expected(n, 0.0);
    for (size_t t = 0; t < frames.rows(); ++t) {
      std::vector<std::pair<double, size_t>> ll;
      for (size_t p = 0; p < n; ++p)
        ll.push_back({kbm.position_log_density(p, frames.row(t)), p});
      std::sort(ll.begin(), ll.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      for (size_t k = 0; k < m; ++k) expected[ll[k].second] += 1.0 / 5.0;
    }
    for (size_t p = 0; p < n; ++p)
      CHECK(act.counts[p] == doctest::Approx(expected[p]));
  }

  SUBCASE("counts sum to M") {
    Matrix frames = gen_frames(spk[1], 11, 6);
    for (size_t m : {1ul, 3ul}) {
      auto act = frame_activations(kbm, frames, m);
      double sum = 0;
      for (double c : act.counts) sum += c;
      CHECK(sum == doctest::Approx(static_cast<double>(m)).epsilon(1e-9));
    }
  }
}

TEST_CASE("frame_activations anchor permutation equivariance") {
  Gmm ubm = gen_ubm(41, 3, 2);
  auto spk = gen_speakers(ubm, 2, Matrix::identity(3), 5);
  Matrix fa = gen_frames(spk[0], 12, 1);
  Matrix fb = gen_frames(spk[1], 12, 2);
  Matrix probe = gen_frames(spk[0], 9, 3);
  Kbm ab = build_kbm(ubm, {fa, fb}, 16.0);
  Kbm ba = build_kbm(ubm, {fb, fa}, 16.0);
  auto act_ab = frame_activations(ab, probe, 2);
  auto act_ba = frame_activations(ba, probe, 2);
  const size_t c = 3;
  for (size_t p = 0; p < 6; ++p) {
    const size_t swapped = p < c ? p + c : p - c;
    CHECK(act_ab.counts[p] == doctest::Approx(act_ba.counts[swapped]));
  }
}

TEST_CASE("extract_bk selection and ties") {
  ActivationCounts counts;
  counts.counts = {5, 2, 7, 1};
  counts.frame_count = 1;
  counts.per_frame_selection = 1;
  BinaryKey bk = extract_bk(counts, 2);
  CHECK(bk.bits.get(0));
  CHECK_FALSE(bk.bits.get(1));
  CHECK(bk.bits.get(2));
  CHECK_FALSE(bk.bits.get(3));
  CHECK(bk.bits.popcount() == 2);

  counts.counts = {3, 3, 3, 3, 3};
  BinaryKey tie = extract_bk(counts, 3);
  CHECK(tie.bits.get(0));
  CHECK(tie.bits.get(1));
  CHECK(tie.bits.get(2));
  CHECK(tie.bits.popcount() == 3);
}

TEST_CASE("extract_bk always sets exactly K bits") {
  Rng rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    ActivationCounts counts;
    const size_t n = 16 + rng.below(48);
    counts.counts.resize(n);
    for (auto &c : counts.counts)
      c = static_cast<double>(rng.below(4));  // heavy ties
    const size_t k = 1 + rng.below(n);
    CHECK(extract_bk(counts, k).bits.popcount() == k);
  }
}

TEST_CASE("bk_similarity oracle and properties") {
  Rng rng(9);
  SUBCASE("self similarity is K, disjoint is 0") {
    BinaryKey a, b;
    a.bits = BitVec(16);
    b.bits = BitVec(16);
    for (size_t i = 0; i < 4; ++i) a.bits.set(i, true);
    for (size_t i = 8; i < 12; ++i) b.bits.set(i, true);
    a.set_bits = b.set_bits = 4;
    CHECK(bk_similarity(a, a) == 4);
    CHECK(bk_similarity(a, b) == 0);
  }
  SUBCASE("random pairs match the naive bit loop") {
    for (int iter = 0; iter < 30; ++iter) {
      BinaryKey a, b;
      a.bits = BitVec::random(64, rng);
      b.bits = BitVec::random(64, rng);
      a.set_bits = a.bits.popcount();
      b.set_bits = b.bits.popcount();
      size_t expect = 0;
      for (size_t i = 0; i < 64; ++i)
        expect += (a.bits.get(i) && b.bits.get(i)) ? 1 : 0;
      CHECK(bk_similarity(a, b) == expect);
      CHECK(bk_similarity(a, b) == bk_similarity(b, a));
    }
  }
  SUBCASE("length mismatch is rejected") {
    BinaryKey a, b;
    a.bits = BitVec(8);
    b.bits = BitVec(16);
    CHECK_THROWS_AS(bk_similarity(a, b), Error);
  }
}

TEST_CASE("bk store round trip") {
  namespace fs = std::filesystem;
  Rng rng(3);
  BkStore store(24, 5);
  for (int i = 0; i < 6; ++i) {
    ActivationCounts counts;
    counts.counts.resize(24);
    for (auto &c : counts.counts) c = rng.next_double();
    store.add("sample-" + std::to_string(i), extract_bk(counts, 5));
  }
  const auto path = fs::temp_directory_path() / "vcn_bk_store.bkdb";
  store.save(path.string());
  BkStore loaded = BkStore::load(path.string());
  REQUIRE(loaded.size() == 6);
  CHECK(loaded.dimension() == 24);
  CHECK(loaded.set_bits() == 5);
  for (size_t i = 0; i < 6; ++i) {
    CHECK(loaded.record(i).id_hash == store.record(i).id_hash);
    CHECK(loaded.record(i).key.bits == store.record(i).key.bits);
  }
  fs::remove(path);
}

TEST_CASE("same-speaker binary keys are more similar on average") {
  CorpusConfig cfg;
  cfg.seed = 5;
  cfg.embedding_dim = 8;
  cfg.feature_dim = 6;
  cfg.ubm_components = 16;
  cfg.anchors = 4;
  cfg.frames_per_sample = 120;
  cfg.train_speakers = 2;
  cfg.train_sessions = 1;
  cfg.cohort_speakers = 12;
  cfg.cohort_sessions = 3;
  cfg.trial_speakers = 2;
  cfg.target_trials = 1;
  cfg.nontarget_trials = 1;
  Corpus corpus = build_corpus(cfg);
  Gmm ubm = gen_ubm(cfg.seed, cfg.ubm_components, cfg.feature_dim);
  std::vector<Matrix> anchor_frames;
  for (const auto &a : corpus.anchors) anchor_frames.push_back(a.frames);
  Kbm kbm = build_kbm(ubm, anchor_frames, 16.0);
  const size_t k = 12;
  std::vector<BinaryKey> bks;
  for (const auto &s : corpus.cohort)
    bks.push_back(extract_bk(kbm, s.frames, 1, k));
  double same = 0, diff = 0;
  size_t same_n = 0, diff_n = 0;
  for (size_t i = 0; i < bks.size(); ++i)
    for (size_t j = i + 1; j < bks.size(); ++j) {
      const bool same_spk =
          corpus.cohort[i].speaker_id == corpus.cohort[j].speaker_id;
      const double sim = static_cast<double>(bk_similarity(bks[i], bks[j]));
      if (same_spk) {
        same += sim;
        ++same_n;
      } else {
        diff += sim;
        ++diff_n;
      }
    }
  REQUIRE(same_n > 0);
  REQUIRE(diff_n > 0);
  CHECK(same / same_n > diff / diff_n);
}
