// src/bench/metrics.hpp

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

#ifndef VCNORM_BENCH_METRICS_HPP_
#define VCNORM_BENCH_METRICS_HPP_

#include <cstddef>
#include <vector>

namespace vcn {

struct MetricConfig {
  double effective_prior = 0.01;
  double cost_miss = 1.0;
  double cost_fa = 1.0;
};

// Equal-error rate: the rate where the miss and false-accept staircases
// cross, linearly interpolated between the two adjacent operating points.
// Decisions are accept iff score >= threshold.
double eer(const std::vector<double> &scores, const std::vector<bool> &labels);

// Minimum normalized detection cost over all thresholds (score midpoints
// plus the accept-all / reject-all extremes).
double min_dcf(const std::vector<double> &scores,
               const std::vector<bool> &labels, const MetricConfig &cfg = {});

// Minimum Cllr in bits: PAV isotonic calibration of the scores to LLRs
// (clamped to +-35 nats), then
//   Cllr = (mean_tar softplus(-llr) + mean_non softplus(llr)) / (2 ln 2).
double cllr_min(const std::vector<double> &scores,
                const std::vector<bool> &labels);

struct MetricTriple {
  double cllr = 0.0;
  double dcf = 0.0;
  double err = 0.0;
};

MetricTriple compute_metrics(const std::vector<double> &scores,
                             const std::vector<bool> &labels,
                             const MetricConfig &cfg = {});

// PAV-calibrated LLR per trial, in score order of the inputs (exposed for
// the calibration tests).
std::vector<double> pav_llrs(const std::vector<double> &scores,
                             const std::vector<bool> &labels);

}  // namespace vcn

#endif  // VCNORM_BENCH_METRICS_HPP_
