// tests/acceptance_main.cpp

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

// Integration acceptance suite: runs every release gate end to end at its
// stated size and tolerance, one PASS/FAIL line per criterion.  The process
// exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "bench/metrics.hpp"
#include "bench/ratio.hpp"
#include "common/error.hpp"
#include "metric_oracles.hpp"
#include "paillier/heplda.hpp"
#include "paillier/paillier.hpp"
#include "pipeline/norm.hpp"
#include "pipeline/pipeline.hpp"
#include "plda/plda.hpp"
#include "smpc/circuit.hpp"
#include "smpc/runner.hpp"

using namespace vcn;

namespace {

int g_failures = 0;

void report(int index, const char *name, bool ok, const std::string &detail) {
  std::printf("%-4s criterion %2d: %-38s %s\n", ok ? "PASS" : "FAIL", index,
              name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<uint64_t> sort_oracle(const std::vector<uint64_t> &weights,
                                  size_t n) {
  std::vector<uint64_t> order(weights.size());
  std::iota(order.begin(), order.end(), uint64_t{0});
  std::stable_sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
  order.resize(n);
  return order;
}

BitVec random_bk(size_t bits, size_t k, Rng &rng) {
  BitVec v(bits);
  size_t set = 0;
  while (set < k) {
    const size_t pos = rng.below(bits);
    if (!v.get(pos)) {
      v.set(pos, true);
      ++set;
    }
  }
  return v;
}

// --------------------------------------------------------------------------
// 1. Secure pruning oracle equivalence: 1000 instances, N=1024, K=64,
//    cohort=256, n in {1, 8, 32}; ids bit-exact against the plaintext sort.

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const size_t bits = 1024, k = 64, cohort = 256;
  const size_t n_grid[3] = {1, 8, 32};
  size_t matches = 0;
  const size_t instances = 1000;
  Rng rng(0xace1);
  for (size_t inst = 0; inst < instances; ++inst) {
    const size_t n = n_grid[inst % 3];
    BitVec sample = random_bk(bits, k, rng);
    std::vector<BitVec> cohort_bits(cohort);
    for (auto &c : cohort_bits) c = random_bk(bits, k, rng);

    const PhasePlan plan = plan_prune(bits, cohort, k, n);
    SecureSession s = make_session(plan.and_gates, 0xbeef + inst);
    auto [s0, s1] = share_bits(sample, rng);
    std::vector<BitVec> c0(cohort), c1(cohort);
    for (size_t i = 0; i < cohort; ++i) {
      auto [a, b] = share_bits(cohort_bits[i], rng);
      c0[i] = a.bits;
      c1[i] = b.bits;
    }
    std::vector<uint64_t> ids(cohort);
    std::iota(ids.begin(), ids.end(), uint64_t{0});
    PruneResult res = secure_prune(&s, s0.bits, s1.bits, c0, c1, ids, k, n);

    std::vector<uint64_t> sims(cohort);
    for (size_t i = 0; i < cohort; ++i)
      sims[i] = (sample & cohort_bits[i]).popcount();
    if (res.ids == sort_oracle(sims, n)) ++matches;
  }
  const double secs = elapsed_since(t0);
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%zu/%zu exact, %.1f s", matches,
                instances, secs);
  report(1, "secure pruning oracle equivalence", matches == instances && secs < 600.0,
         detail);
}

// --------------------------------------------------------------------------
// 2. HE-PLDA correctness: 200 random trials (D=32, scale 24, 512-bit keys)
//    within 1e-3 absolute, plus the D=1 analytic case.

void criterion_2() {
  Rng rng(0xace2);
  PaillierKeypair kp = paillier_keygen(512, 0x51ead);
  RandomizerPool pool(kp.pk, Rng(0x9001));

  const size_t d = 32;
  Matrix r(d, d);
  for (auto &v : r.data()) v = rng.gaussian() * 0.5;
  PldaModel model;
  model.mean.assign(d, 0.0);
  for (auto &v : model.mean) v = 0.05 * rng.gaussian();
  model.between = r * r.transposed();
  for (size_t i = 0; i < d; ++i) model.between.at(i, i) += 0.2;
  model.between.symmetrize();
  model.within = Matrix::identity(d, 0.7);
  ScoringForm form = scoring_form(model);

  auto unit_vec = [&](Rng &g) {
    Vec v(d);
    for (auto &x : v) x = g.gaussian();
    const double nrm = norm2(v);
    for (auto &x : v) x /= nrm;
    return v;
  };

  size_t ok = 0;
  double worst = 0.0;
  const size_t trials = 200;
  for (size_t i = 0; i < trials; ++i) {
    Vec ref = unit_vec(rng), probe = unit_vec(rng);
    ProtectedTemplate tpl = protect_reference(kp.pk, form, ref, 24, rng, &pool);
    Ciphertext enc = he_plda_score(kp.pk, form, tpl, probe, 24, rng, &pool);
    const double he = decrypt_score(kp, enc, 24);
    const double plain = plda_score(form, ref, probe);
    const double err = std::abs(he - plain);
    worst = std::max(worst, err);
    if (err <= 1e-3) ++ok;
  }

  PldaModel m1;
  m1.mean = {0.0};
  m1.between = Matrix::identity(1);
  m1.within = Matrix::identity(1);
  ScoringForm f1 = scoring_form(m1);
  const Vec zero{0.0};
  ProtectedTemplate tpl1 = protect_reference(kp.pk, f1, zero, 24, rng, &pool);
  const double analytic =
      decrypt_score(kp, he_plda_score(kp.pk, f1, tpl1, zero, 24, rng, &pool),
                    24);
  const bool analytic_ok =
      std::abs(analytic - 0.5 * std::log(4.0 / 3.0)) <= 1e-3;

  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "%zu/%zu within 1e-3 (worst %.2e), D=1 case %.6f", ok, trials,
                worst, analytic);
  report(2, "HE-PLDA matches plaintext scoring", ok == trials && analytic_ok,
         detail);
}

// --------------------------------------------------------------------------
// 3. Paillier algebra: 1000 random (a, b, k) at 512 bits exact, toy keypair
//    p=5, q=7 passes the textbook roundtrip.

void criterion_3() {
  Rng rng(0xace3);
  PaillierKeypair kp = paillier_keygen(512, 0xfeed);
  size_t ok = 0;
  const size_t cases = 1000;
  for (size_t i = 0; i < cases; ++i) {
    Bigint a = Bigint::random_below(kp.pk.n, rng);
    Bigint b = Bigint::random_below(kp.pk.n, rng);
    Bigint k = Bigint::random_below(kp.pk.n, rng);
    Ciphertext ea = encrypt(kp.pk, a, rng);
    Ciphertext eb = encrypt(kp.pk, b, rng);
    const bool add_ok =
        decrypt(kp, hom_add(kp.pk, ea, eb)) == (a + b) % kp.pk.n;
    const bool mul_ok =
        decrypt(kp, hom_scalar_mul(kp.pk, ea, k)) == (k * a) % kp.pk.n;
    if (add_ok && mul_ok) ++ok;
  }

  PaillierKeypair toy = paillier_from_primes(Bigint(5), Bigint(7));
  bool toy_ok = toy.pk.n == Bigint(35);
  for (unsigned long m = 0; m < 35 && toy_ok; ++m)
    toy_ok = decrypt(toy, encrypt(toy.pk, Bigint(m), rng)) == Bigint(m);

  char detail[96];
  std::snprintf(detail, sizeof(detail), "%zu/%zu identities exact, toy n=35 %s",
                ok, cases, toy_ok ? "ok" : "broken");
  report(3, "Paillier homomorphic algebra", ok == cases && toy_ok, detail);
}

// --------------------------------------------------------------------------
// 4. Circuit correctness: Hamming weight exhaustive for N <= 8 plus 1000
//    random N=1024 vectors; comparator exhaustive width <= 4; Beaver AND
//    exhaustive over 1-bit inputs x 100 sharings.

void criterion_4() {
  Rng rng(0xace4);
  size_t hw_cases = 0, hw_ok = 0;
  for (size_t n = 1; n <= 8; ++n)
    for (uint64_t v = 0; v < (uint64_t{1} << n); ++v) {
      SecureSession s = make_session(n, 41000 + 257 * n + v);
      BitVec x = BitVec::from_uint(v, n);
      auto [s0, s1] = share_bits(x, rng);
      auto [h0, h1] = hamming_weight_circuit(&s, s0.bits, s1.bits);
      ++hw_cases;
      if ((h0.bits ^ h1.bits).to_uint() == x.popcount()) ++hw_ok;
    }
  for (size_t rep = 0; rep < 1000; ++rep) {
    SecureSession s = make_session(1024, 42000 + rep);
    BitVec x = BitVec::random(1024, rng);
    auto [s0, s1] = share_bits(x, rng);
    auto [h0, h1] = hamming_weight_circuit(&s, s0.bits, s1.bits);
    ++hw_cases;
    if ((h0.bits ^ h1.bits).to_uint() == x.popcount()) ++hw_ok;
  }

  size_t cmp_cases = 0, cmp_ok = 0;
  for (size_t w = 1; w <= 4; ++w)
    for (uint64_t a = 0; a < (uint64_t{1} << w); ++a)
      for (uint64_t b = 0; b < (uint64_t{1} << w); ++b) {
        SecureSession s = make_session(w, 43000 + (w << 12) + (a << 6) + b);
        auto [as0, as1] = share_bits(BitVec::from_uint(a, w), rng);
        auto [bs0, bs1] = share_bits(BitVec::from_uint(b, w), rng);
        SharedInteger a0{as0.bits}, a1{as1.bits}, b0{bs0.bits}, b1{bs1.bits};
        auto [g0, g1] = greater_than_circuit(&s, a0, a1, b0, b1);
        ++cmp_cases;
        if ((g0 ^ g1).to_uint() == static_cast<uint64_t>(a > b ? 1 : 0))
          ++cmp_ok;
      }

  size_t and_cases = 0, and_ok = 0;
  for (int xv = 0; xv < 2; ++xv)
    for (int yv = 0; yv < 2; ++yv)
      for (int rep = 0; rep < 100; ++rep) {
        SecureSession s = make_session(1, 44000 + 100 * (2 * xv + yv) + rep);
        auto [xs0, xs1] = share_bits(BitVec::from_uint(xv, 1), rng);
        auto [ys0, ys1] = share_bits(BitVec::from_uint(yv, 1), rng);
        auto [r0, r1] =
            secure_and(&s, xs0.bits, xs1.bits, ys0.bits, ys1.bits);
        ++and_cases;
        if ((r0 ^ r1).to_uint() == static_cast<uint64_t>(xv & yv)) ++and_ok;
      }

  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "hamming %zu/%zu, comparator %zu/%zu, AND %zu/%zu", hw_ok,
                hw_cases, cmp_ok, cmp_cases, and_ok, and_cases);
  report(4, "boolean circuit correctness",
         hw_ok == hw_cases && cmp_ok == cmp_cases && and_ok == and_cases,
         detail);
}

// --------------------------------------------------------------------------
// 5. Communication accounting: 40960-bit AND gives exactly 10240 payload
//    bytes per party plus framing; measured rounds/bytes/gates equal the
//    circuit plans across all protocol phases.

void criterion_5() {
  Rng rng(0xace5);
  bool ok = true;
  std::string note;

  {
    SecureSession s = make_session(40960, 0x40960);
    BitVec x = BitVec::random(40960, rng), y = BitVec::random(40960, rng);
    auto [xs0, xs1] = share_bits(x, rng);
    auto [ys0, ys1] = share_bits(y, rng);
    secure_and(&s, xs0.bits, xs1.bits, ys0.bits, ys1.bits);
    const PhasePlan plan = plan_and_batch(40960);
    ok &= plan.payload_bytes == 10240;
    ok &= s.last_run.stats0.bytes_sent == 10245;
    ok &= s.last_run.stats1.bytes_sent == 10245;
    ok &= s.last_run.stats0.rounds == plan.rounds;
    note += "and=10240+5B";
  }

  for (size_t n : {17ul, 256ul, 1024ul}) {
    SecureSession s = make_session(n, 0x5000 + n);
    BitVec x = BitVec::random(n, rng);
    auto [s0, s1] = share_bits(x, rng);
    hamming_weight_circuit(&s, s0.bits, s1.bits);
    const PhasePlan plan = plan_hamming(n, 1);
    ok &= s.pool0.consumed() == plan.and_gates;
    ok &= s.last_run.stats0.rounds == plan.rounds;
    ok &= s.last_run.stats0.bytes_sent == plan.wire_bytes();
  }
  note += ", hamming ok";

  {
    const size_t bits = 512, k = 48, cohort = 64, n = 9;
    const PhasePlan plan = plan_prune(bits, cohort, k, n);
    SecureSession s = make_session(plan.and_gates, 0x6001);
    Rng local(5);
    BitVec sample = random_bk(bits, k, local);
    auto [s0, s1] = share_bits(sample, local);
    std::vector<BitVec> c0, c1;
    std::vector<uint64_t> ids;
    for (size_t i = 0; i < cohort; ++i) {
      auto [a, b] = share_bits(random_bk(bits, k, local), local);
      c0.push_back(a.bits);
      c1.push_back(b.bits);
      ids.push_back(i);
    }
    PruneResult res = secure_prune(&s, s0.bits, s1.bits, c0, c1, ids, k, n);
    ok &= s.pool0.consumed() == plan.and_gates;
    ok &= s.pool1.consumed() == plan.and_gates;
    ok &= res.rounds == plan.rounds;
    ok &= res.bytes_sent0 == plan.wire_bytes();
    ok &= res.bytes_sent1 == plan.wire_bytes();
    char buf[64];
    std::snprintf(buf, sizeof(buf), ", prune %llu rounds %llu bytes",
                  static_cast<unsigned long long>(res.rounds),
                  static_cast<unsigned long long>(res.bytes_sent0));
    note += buf;
  }

  report(5, "communication accounting", ok, note);
}

// --------------------------------------------------------------------------
// 6. Normalisation: self-z-norm standardises exactly; symmetric norm with
//    equal sides collapses to the z-norm; sigma = 0 errors out.

void criterion_6() {
  Rng rng(0xace6);
  bool ok = true;

  std::vector<double> scores;
  for (int i = 0; i < 257; ++i) scores.push_back(2.5 * rng.gaussian() - 0.75);
  NormStats st = norm_stats(scores, 0, StatsMode::kAll);
  double mean = 0.0;
  for (double s : scores) mean += normalize(s, st);
  mean /= scores.size();
  double var = 0.0;
  for (double s : scores) {
    const double z = normalize(s, st) - mean;
    var += z * z;
  }
  var /= scores.size();
  ok &= std::abs(mean) <= 1e-12;
  ok &= std::abs(std::sqrt(var) - 1.0) <= 1e-12;

  bool snorm_exact = true;
  for (double s : scores)
    snorm_exact &= s_norm(s, st, st) == normalize(s, st);
  ok &= snorm_exact;

  bool raised = false;
  try {
    norm_stats({4.0, 4.0, 4.0, 4.0}, 0, StatsMode::kAll);
  } catch (const Error &e) {
    raised = e.code() == ErrorCode::kDegenerate;
  }
  ok &= raised;

  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "self-z mean %.1e sd-1 %.1e, s=z %s, sigma=0 raises %s", mean,
                std::sqrt(var) - 1.0, snorm_exact ? "exact" : "broken",
                raised ? "yes" : "no");
  report(6, "score normalisation contracts", ok, detail);
}

// --------------------------------------------------------------------------
// 7. PLDA validity: the quadratic form equals the joint-Gaussian oracle on
//    1000 random model/pair draws across D in {1,2,4,8,16}; EM recovers the
//    generative covariances at 2000 speakers x 8 sessions, D=16.

void criterion_7() {
  Rng rng(0xace7);
  auto random_spd = [&](size_t d, double scale) {
    Matrix r(d, d);
    for (auto &v : r.data()) v = rng.gaussian() * scale;
    Matrix spd = r * r.transposed();
    for (size_t i = 0; i < d; ++i) spd.at(i, i) += 0.1 * scale * scale + 1e-6;
    spd.symmetrize();
    return spd;
  };

  size_t form_ok = 0;
  const size_t per_dim = 200;
  for (size_t d : {1ul, 2ul, 4ul, 8ul, 16ul}) {
    for (size_t i = 0; i < per_dim; ++i) {
      PldaModel m;
      m.mean.resize(d);
      for (auto &v : m.mean) v = rng.gaussian();
      m.between = random_spd(d, 1.0);
      m.within = random_spd(d, 0.8);
      ScoringForm f = scoring_form(m);
      Vec x(d), y(d);
      for (auto &v : x) v = rng.gaussian();
      for (auto &v : y) v = rng.gaussian();
      const double a = plda_score(f, x, y);
      const double b = joint_llr_oracle(m, x, y);
      if (std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b))) ++form_ok;
    }
  }

  const size_t d = 16, speakers = 2000, sessions = 8;
  Matrix between = random_spd(d, 1.0);
  Matrix within = random_spd(d, 0.7);
  Cholesky lb(between), lw(within);
  std::vector<Vec> xs;
  std::vector<std::string> labels;
  xs.reserve(speakers * sessions);
  for (size_t s = 0; s < speakers; ++s) {
    Vec y(d);
    for (auto &v : y) v = rng.gaussian();
    y = lb.lower().apply(y);
    for (size_t k = 0; k < sessions; ++k) {
      Vec e(d);
      for (auto &v : e) v = rng.gaussian();
      xs.push_back(add(y, lw.lower().apply(e)));
      labels.push_back("spk" + std::to_string(s));
    }
  }
  PldaFitReport rep;
  PldaModel fit = fit_plda(xs, labels, PldaFitOptions{}, &rep);
  const double b_err =
      fit.between.frobenius_distance(between) / between.frobenius_norm();
  const double w_err =
      fit.within.frobenius_distance(within) / within.frobenius_norm();

  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "form %zu/%zu at 1e-9, EM err B %.3f W %.3f (%zu iters)",
                form_ok, 5 * per_dim, b_err, w_err, rep.iterations);
  report(7, "PLDA form and EM recovery",
         form_ok == 5 * per_dim && b_err < 0.10 && w_err < 0.10, detail);
}

// --------------------------------------------------------------------------
// 8. Reference ratio reproduction: recomputing from the stored timing
//    constants lands within 0.1 of every stored improvement factor.

void criterion_8() {
  size_t ok = 0, total = 0;
  double worst = 0.0;
  for (const auto &row : reference_timing_table()) {
    const double rz = improvement_ratio(
        kReferenceCohortZ, {kReferenceBkZ, row.gmw_z,
                            kReferenceHePerComparison, kReferenceCohortZ,
                            row.n});
    const double rt = improvement_ratio(
        kReferenceCohortT, {kReferenceBkT, row.gmw_t,
                            kReferenceHePerComparison, kReferenceCohortT,
                            row.n});
    for (double err : {std::abs(rz - row.ratio_z), std::abs(rt - row.ratio_t)}) {
      worst = std::max(worst, err);
      ++total;
      if (err <= 0.1) ++ok;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "%zu/%zu ratios within 0.1 (worst %.4f)",
                ok, total, worst);
  report(8, "reference improvement-ratio table", ok == total, detail);
}

// --------------------------------------------------------------------------
// 9 + 10. Desk-scale benchmark: >= 2000 channel-shift trials, protected
//     as-norm at least as good as the raw baseline in EER, protected and
//     plaintext-BK pruning identical per trial; metric implementations match
//     the brute-force oracles and stay inside [0, 1].

struct BenchmarkScores {
  std::vector<double> raw, protected_norm;
  std::vector<bool> labels;
  bool ran = false;
};

BenchmarkScores criterion_9() {
  BenchmarkScores out;
  const auto t0 = std::chrono::steady_clock::now();

  CorpusConfig cfg;  // desk-scale defaults: D=32, F=8, C=64, cohort 512
  cfg.seed = 90;
  cfg.channel_shift_norm = 10.0;  // strong pooled-condition mismatch
  Workspace ws = build_workspace(build_corpus(cfg));
  PaillierKeypair kp = paillier_keygen(512, 0x90);

  PipelineConfig run_cfg;
  run_cfg.top_n = 32;
  run_cfg.seed = 9;
  run_cfg.scale_bits = 24;

  run_cfg.mode = TrialMode::kPlaintextBk;
  TrialRunner plain(ws, kp, run_cfg);
  run_cfg.mode = TrialMode::kProtected;
  TrialRunner prot(ws, kp, run_cfg);

  const auto &trials = ws.corpus.trials;
  size_t id_matches = 0, score_matches = 0;
  double worst_delta = 0.0;
  for (const auto &t : trials) {
    TrialRecord a = plain.run_trial(t);
    TrialRecord b = prot.run_trial(t);
    if (a.pruned_ref == b.pruned_ref && a.pruned_probe == b.pruned_probe)
      ++id_matches;
    const double delta = std::abs(a.normalized - b.normalized);
    worst_delta = std::max(worst_delta, delta);
    if (delta <= 1e-3) ++score_matches;
    out.raw.push_back(b.raw_score);
    out.protected_norm.push_back(b.normalized);
    out.labels.push_back(t.target);
  }
  out.ran = true;
  const double eer_baseline = eer(out.raw, out.labels);
  const double eer_protected = eer(out.protected_norm, out.labels);
  const bool ok = trials.size() >= 2000 && id_matches == trials.size() &&
                  score_matches == trials.size() &&
                  eer_protected <= eer_baseline;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%zu trials, ids %zu/%zu, |dS'| max %.1e, EER %.3f%% -> "
                "%.3f%%, %.0f s",
                trials.size(), id_matches, trials.size(), worst_delta,
                100.0 * eer_baseline, 100.0 * eer_protected,
                elapsed_since(t0));
  report(9, "end-to-end protected as-norm benchmark", ok, detail);
  return out;
}

void criterion_10(const BenchmarkScores &bench) {
  Rng rng(0xacea);
  size_t ok = 0;
  const size_t instances = 100;
  for (size_t rep = 0; rep < instances; ++rep) {
    const size_t n = 6 + rng.below(45);  // <= 50 trials
    std::vector<double> scores;
    std::vector<bool> labels;
    bool has_t = false, has_n = false;
    for (size_t i = 0; i < n; ++i) {
      const bool tar = rng.next_double() < 0.4;
      scores.push_back(std::floor(rng.gaussian() * 4.0 + (tar ? 3.0 : 0.0)) /
                       4.0);
      labels.push_back(tar);
      (tar ? has_t : has_n) = true;
    }
    if (!has_t) labels[0] = true;
    if (!has_n) labels[n - 1] = false;
    const bool match =
        std::abs(eer(scores, labels) - oracle::eer(scores, labels)) <= 1e-12 &&
        std::abs(min_dcf(scores, labels) -
                 oracle::min_dcf(scores, labels, 0.01)) <= 1e-12 &&
        std::abs(cllr_min(scores, labels) -
                 oracle::cllr_min(scores, labels)) <= 1e-12;
    if (match) ++ok;
  }

  bool bounds_ok = bench.ran;
  if (bench.ran) {
    for (const auto *scores : {&bench.raw, &bench.protected_norm}) {
      const MetricTriple m = compute_metrics(*scores, bench.labels);
      bounds_ok &= m.err >= 0.0 && m.err <= 1.0;
      bounds_ok &= m.dcf >= 0.0 && m.dcf <= 1.0 + 1e-12;
      bounds_ok &= m.cllr >= 0.0 && m.cllr <= 1.0 + 1e-12;
    }
  }

  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "%zu/%zu oracle matches, benchmark bounds %s", ok, instances,
                bounds_ok ? "in [0,1]" : "violated");
  report(10, "metric oracles and bounds", ok == instances && bounds_ok,
         detail);
}

}  // namespace

int main() {
  std::printf("vcnorm acceptance suite\n");
  const auto t0 = std::chrono::steady_clock::now();
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    BenchmarkScores bench = criterion_9();
    criterion_10(bench);
  } catch (const std::exception &e) {
    std::printf("FAIL suite aborted: %s\n", e.what());
    return 99;
  }
  std::printf("%d criterion(s) failed, total %.1f s\n", g_failures,
              elapsed_since(t0));
  return g_failures;
}
