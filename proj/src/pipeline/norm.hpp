// src/pipeline/norm.hpp

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

#ifndef VCNORM_PIPELINE_NORM_HPP_
#define VCNORM_PIPELINE_NORM_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace vcn {

// Cohort score statistics for one normalisation side.
struct NormStats {
  double mu = 0.0;
  double sigma = 0.0;  // population standard deviation
  size_t n_used = 0;
  char source = 'z';  // 'z' (reference side) or 't' (probe side)
};

enum class StatsMode { kAdaptiveTopN, kAll };

// Adaptive mode keeps the top-n scores (descending) before computing mu and
// sigma.  Degenerate inputs (fewer than two scores, or sigma == 0 from a
// constant cohort) raise errors carrying `context`.
NormStats norm_stats(const std::vector<double> &scores, size_t top_n,
                     StatsMode mode, const std::string &context = "",
                     char source = 'z');

// S' = (S - mu) / sigma
double normalize(double score, const NormStats &stats);

// Symmetric combination: S' = ((S - mu_R)/sigma_R + (S - mu_P)/sigma_P) / 2
double s_norm(double score, const NormStats &ref_stats,
              const NormStats &probe_stats);

}  // namespace vcn

#endif  // VCNORM_PIPELINE_NORM_HPP_
