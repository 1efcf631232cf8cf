// src/bench/bench.cpp

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

#include "bench/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "common/error.hpp"

namespace vcn {

namespace {

std::vector<Trial> pick_trials(const Corpus &corpus, size_t max_trials,
                               uint64_t seed) {
  std::vector<Trial> trials = corpus.trials;
  Rng rng = Rng(seed).split(0xbe9c);
  for (size_t i = trials.size(); i > 1; --i)
    std::swap(trials[i - 1], trials[rng.below(i)]);
  if (max_trials && trials.size() > max_trials) trials.resize(max_trials);
  bool has_tar = false, has_non = false;
  for (const auto &t : trials) (t.target ? has_tar : has_non) = true;
  VCN_CHECK(has_tar && has_non, kInvalidArgument)
      << "benchmark trial subset lost one of the classes; raise max_trials";
  return trials;
}

void collect(const std::vector<TrialRecord> &records,
             std::vector<double> *raw, std::vector<double> *normalized,
             std::vector<bool> *labels) {
  raw->clear();
  normalized->clear();
  labels->clear();
  for (const auto &r : records) {
    raw->push_back(r.raw_score);
    normalized->push_back(r.normalized);
    labels->push_back(r.target);
  }
}

}  // namespace

BenchReport bench_run(const Workspace &ws, const PaillierKeypair &kp,
                      const BenchOptions &opts) {
  VCN_CHECK(!opts.n_grid.empty(), kInvalidArgument) << "empty n grid";
  BenchReport report;
  report.cohort_size = ws.corpus.cohort.size();
  const std::vector<Trial> trials =
      pick_trials(ws.corpus, opts.max_trials, opts.seed);
  report.trials_used = trials.size();

  std::vector<double> raw, normalized;
  std::vector<bool> labels;
  bool have_baseline = false;

  for (size_t n : opts.n_grid) {
    BenchRow row;
    row.n = n;

    PipelineConfig cfg;
    cfg.top_n = n;
    cfg.scale_bits = opts.scale_bits;
    cfg.net = opts.net;
    cfg.net_mode = opts.net_mode;
    cfg.exec = opts.exec;
    cfg.seed = opts.seed;

    {
      cfg.mode = TrialMode::kPlaintextScores;
      TrialRunner runner(ws, kp, cfg);
      auto records = runner.run_trials(trials);
      collect(records, &raw, &normalized, &labels);
      row.conventional = compute_metrics(normalized, labels, opts.metric);
      if (!have_baseline) {
        report.baseline = compute_metrics(raw, labels, opts.metric);
        have_baseline = true;
      }
    }
    {
      cfg.mode = opts.dry_run ? TrialMode::kPlaintextBk : TrialMode::kProtected;
      TrialRunner runner(ws, kp, cfg);
      auto records = runner.run_trials(trials);
      collect(records, &raw, &normalized, &labels);
      row.protected_asnorm = compute_metrics(normalized, labels, opts.metric);
      if (!opts.dry_run) {
        double bk = 0, gmw_c = 0, gmw_n = 0, he = 0;
        uint64_t cmp = 0;
        for (const auto &r : records) {
          bk += r.bk_seconds;
          gmw_c += r.gmw_compute_seconds;
          gmw_n += r.gmw_network_seconds;
          he += r.he_seconds;
          cmp += r.he_comparisons;
          row.rounds += r.gmw_rounds;
          row.bytes_sent0 += r.gmw_bytes_sent0;
          row.bytes_sent1 += r.gmw_bytes_sent1;
        }
        const double per_trial = 1.0 / static_cast<double>(records.size());
        row.t_bk = bk * per_trial;
        row.t_gmw_compute = gmw_c * per_trial;
        row.t_gmw_network = gmw_n * per_trial;
        row.t_he_per_cmp = cmp ? he / static_cast<double>(cmp) : 0.0;
        report.offline_seconds = runner.offline_seconds();
        // Both normalisation sides are pruned per trial, so the full-cohort
        // reference is two passes over the cohort.
        TimingLedger ledger{row.t_bk, row.t_gmw_compute + row.t_gmw_network,
                            row.t_he_per_cmp, report.cohort_size, 2 * n};
        if (row.t_he_per_cmp > 0.0)
          row.improvement = improvement_ratio(2 * report.cohort_size, ledger);
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string bench_table_text(const BenchReport &report) {
  std::ostringstream os;
  os << "cohort " << report.cohort_size << ", trials " << report.trials_used
     << " (Cllr_min / minDCF / EER)\n";
  char line[220];
  std::snprintf(line, sizeof(line),
                "%10s %7s %7s %7s | %7s %7s %7s | %9s %9s %9s %9s %8s\n",
                "row", "cllr", "mindcf", "eer", "cllr", "mindcf", "eer",
                "t_bk[s]", "t_gmw[s]", "t_net[s]", "t_he[s]", "improve");
  os << line;
  std::snprintf(line, sizeof(line),
                "%10s %7.3f %7.3f %7.3f | %7s %7s %7s | %9s %9s %9s %9s %8s\n",
                "baseline", report.baseline.cllr, report.baseline.dcf,
                report.baseline.err, "-", "-", "-", "-", "-", "-", "-", "-");
  os << line;
  for (const auto &r : report.rows) {
    char label[32];
    std::snprintf(label, sizeof(label), "n=%zu", r.n);
    std::snprintf(line, sizeof(line),
                  "%10s %7.3f %7.3f %7.3f | %7.3f %7.3f %7.3f | %9.4f %9.4f "
                  "%9.4f %9.5f %8.2f\n",
                  label, r.conventional.cllr, r.conventional.dcf,
                  r.conventional.err, r.protected_asnorm.cllr,
                  r.protected_asnorm.dcf, r.protected_asnorm.err, r.t_bk,
                  r.t_gmw_compute, r.t_gmw_network, r.t_he_per_cmp,
                  r.improvement);
    os << line;
  }
  os << "(left metric block: conventional as-norm; right: privacy-preserving "
        "as-norm)\n";
  return os.str();
}

std::string bench_records(const BenchReport &report) {
  std::ostringstream os;
  os << "row\tn\tcllr_conv\tmindcf_conv\teer_conv\tcllr_prot\tmindcf_prot"
        "\teer_prot\tt_bk\tt_gmw_compute\tt_gmw_network\tt_he_per_cmp"
        "\trounds\tbytes0\tbytes1\timprovement\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  os << "baseline\t0\t" << num(report.baseline.cllr) << "\t"
     << num(report.baseline.dcf) << "\t" << num(report.baseline.err)
     << "\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\t0\n";
  for (const auto &r : report.rows) {
    os << "grid\t" << r.n << "\t" << num(r.conventional.cllr) << "\t"
       << num(r.conventional.dcf) << "\t" << num(r.conventional.err) << "\t"
       << num(r.protected_asnorm.cllr) << "\t" << num(r.protected_asnorm.dcf)
       << "\t" << num(r.protected_asnorm.err) << "\t" << num(r.t_bk) << "\t"
       << num(r.t_gmw_compute) << "\t" << num(r.t_gmw_network) << "\t"
       << num(r.t_he_per_cmp) << "\t" << r.rounds << "\t" << r.bytes_sent0
       << "\t" << r.bytes_sent1 << "\t" << num(r.improvement) << "\n";
  }
  return os.str();
}

}  // namespace vcn
