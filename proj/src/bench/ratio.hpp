// src/bench/ratio.hpp

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

#ifndef VCNORM_BENCH_RATIO_HPP_
#define VCNORM_BENCH_RATIO_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace vcn {

// Online-time components of one pruned normalisation side.
struct TimingLedger {
  double t_bk = 0.0;          // binary-key extraction, seconds
  double t_gmw = 0.0;         // pruning incl. top-n sorting, seconds
  double t_he_per_cmp = 0.0;  // one HE comparison, seconds
  size_t cohort_size = 0;
  size_t n = 0;
};

// Runtime gained by pruning: time of scoring the full cohort with HE
// comparisons divided by the pruned pipeline time,
//   (cohort * t_he) / (t_bk + t_gmw + n * t_he).
double improvement_ratio(size_t full_cohort_size, const TimingLedger &ledger);

// Reference timing dataset: per-comparison HE cost 0.32 s, BK extraction
// 28.2975 s (z side) / 16.8592 s (t side), GMW pruning times and the
// reference improvement factors over the n grid.
struct ReferenceTimingRow {
  size_t n;
  double gmw_z, ratio_z;
  double gmw_t, ratio_t;
};

extern const double kReferenceHePerComparison;
extern const double kReferenceBkZ;
extern const double kReferenceBkT;
extern const size_t kReferenceCohortZ;
extern const size_t kReferenceCohortT;
const std::vector<ReferenceTimingRow> &reference_timing_table();

// Recomputes both ratio columns from the reference constants; rendered as an
// aligned text table next to the stored reference values.
std::string reference_ratio_report();

}  // namespace vcn

#endif  // VCNORM_BENCH_RATIO_HPP_
