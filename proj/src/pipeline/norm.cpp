// src/pipeline/norm.cpp

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

#include "pipeline/norm.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace vcn {

NormStats norm_stats(const std::vector<double> &scores, size_t top_n,
                     StatsMode mode, const std::string &context, char source) {
  VCN_CHECK(scores.size() >= 2, kDegenerate)
      << "need at least two cohort scores (" << context << ")";
  std::vector<double> used = scores;
  if (mode == StatsMode::kAdaptiveTopN) {
    VCN_CHECK(top_n >= 2, kInvalidArgument)
        << "adaptive top-n needs n >= 2 (" << context << ")";
    if (top_n < used.size()) {
      std::partial_sort(used.begin(), used.begin() + top_n, used.end(),
                        std::greater<double>());
      used.resize(top_n);
    }
  }
  NormStats st;
  st.source = source;
  st.n_used = used.size();
  double sum = 0.0;
  for (double v : used) sum += v;
  st.mu = sum / static_cast<double>(used.size());
  double acc = 0.0;
  for (double v : used) acc += (v - st.mu) * (v - st.mu);
  st.sigma = std::sqrt(acc / static_cast<double>(used.size()));
  VCN_CHECK(st.sigma > 0.0, kDegenerate)
      << "constant cohort scores give sigma = 0 (" << context << ")";
  return st;
}

double normalize(double score, const NormStats &stats) {
  VCN_CHECK(stats.sigma > 0.0, kDegenerate)
      << "normalisation with sigma = " << stats.sigma;
  return (score - stats.mu) / stats.sigma;
}

double s_norm(double score, const NormStats &ref_stats,
              const NormStats &probe_stats) {
  return 0.5 * (normalize(score, ref_stats) + normalize(score, probe_stats));
}

}  // namespace vcn
