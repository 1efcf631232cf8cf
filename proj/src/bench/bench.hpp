// src/bench/bench.hpp

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

#ifndef VCNORM_BENCH_BENCH_HPP_
#define VCNORM_BENCH_BENCH_HPP_

#include <string>
#include <vector>

#include "bench/metrics.hpp"
#include "bench/ratio.hpp"
#include "paillier/paillier.hpp"
#include "pipeline/pipeline.hpp"

namespace vcn {

struct BenchOptions {
  std::vector<size_t> n_grid = {8, 16, 32, 64};
  size_t max_trials = 200;  // cap for the protected timing runs
  unsigned scale_bits = 24;
  NetConfig net;
  NetMode net_mode = NetMode::kInproc;
  ExecMode exec = ExecMode::kInterleaved;
  uint64_t seed = 7;
  bool dry_run = false;  // zero timings; metrics via the plaintext-BK route
  MetricConfig metric;
};

struct BenchRow {
  size_t n = 0;
  MetricTriple conventional;  // plaintext_scores as-norm
  MetricTriple protected_asnorm;
  double t_bk = 0.0;
  double t_gmw_compute = 0.0;
  double t_gmw_network = 0.0;
  double t_he_per_cmp = 0.0;
  uint64_t rounds = 0;
  uint64_t bytes_sent0 = 0;
  uint64_t bytes_sent1 = 0;
  double improvement = 0.0;
};

struct BenchReport {
  size_t cohort_size = 0;
  size_t trials_used = 0;
  MetricTriple baseline;  // raw scores, no normalisation
  std::vector<BenchRow> rows;
  double offline_seconds = 0.0;
};

BenchReport bench_run(const Workspace &ws, const PaillierKeypair &kp,
                      const BenchOptions &opts);

// Aligned text table: one baseline row plus one row per grid entry.
std::string bench_table_text(const BenchReport &report);
// Machine-readable line-delimited records (TAB separated, header line).
std::string bench_records(const BenchReport &report);

}  // namespace vcn

#endif  // VCNORM_BENCH_BENCH_HPP_
