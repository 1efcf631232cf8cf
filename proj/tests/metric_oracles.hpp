// tests/metric_oracles.hpp

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

// Test-only brute-force detection-metric oracles: exhaustive threshold
// sweeps and a direct PAV, independent of the library implementations.

#ifndef VCNORM_TESTS_METRIC_ORACLES_HPP_
#define VCNORM_TESTS_METRIC_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace vcn::oracle {

inline void rates_at(const std::vector<double> &scores,
                     const std::vector<bool> &labels, double threshold,
                     double *pmiss, double *pfa) {
  size_t miss = 0, fa = 0, t = 0, n = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i]) {
      ++t;
      if (scores[i] < threshold) ++miss;
    } else {
      ++n;
      if (scores[i] >= threshold) ++fa;
    }
  }
  *pmiss = static_cast<double>(miss) / t;
  *pfa = static_cast<double>(fa) / n;
}

inline std::vector<double> thresholds(const std::vector<double> &scores) {
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<double> out{sorted.front() - 1.0};
  for (size_t i = 0; i + 1 < sorted.size(); ++i)
    out.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  out.push_back(sorted.back() + 1.0);
  return out;
}

inline double eer(const std::vector<double> &scores,
                  const std::vector<bool> &labels) {
  double prev_miss = 0.0, prev_fa = 1.0;
  for (double t : thresholds(scores)) {
    double miss, fa;
    rates_at(scores, labels, t, &miss, &fa);
    const double diff = miss - fa;
    if (diff >= 0.0) {
      if (diff == 0.0) return miss;
      const double prev_diff = prev_miss - prev_fa;
      const double alpha = -prev_diff / (diff - prev_diff);
      return prev_miss + alpha * (miss - prev_miss);
    }
    prev_miss = miss;
    prev_fa = fa;
  }
  return 1.0;
}

inline double min_dcf(const std::vector<double> &scores,
                      const std::vector<bool> &labels, double prior) {
  double best = 1e300;
  for (double t : thresholds(scores)) {
    double miss, fa;
    rates_at(scores, labels, t, &miss, &fa);
    best = std::min(best, prior * miss + (1.0 - prior) * fa);
  }
  return best / std::min(prior, 1.0 - prior);
}

inline double cllr_min(const std::vector<double> &scores,
                       const std::vector<bool> &labels) {
  std::map<double, std::pair<double, double>> hist;  // score -> (tar, non)
  double tar_total = 0, non_total = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    auto &c = hist[scores[i]];
    if (labels[i]) {
      c.first += 1;
      tar_total += 1;
    } else {
      c.second += 1;
      non_total += 1;
    }
  }
  std::vector<std::pair<double, double>> blocks;
  for (const auto &[s, c] : hist) {
    blocks.push_back(c);
    while (blocks.size() >= 2) {
      auto &hi = blocks[blocks.size() - 1];
      auto &lo = blocks[blocks.size() - 2];
      if (hi.first * (lo.first + lo.second) >=
          lo.first * (hi.first + hi.second))
        break;
      lo.first += hi.first;
      lo.second += hi.second;
      blocks.pop_back();
    }
  }
  std::vector<double> llr_per_block;
  for (const auto &b : blocks) {
    double llr;
    if (b.first == 0)
      llr = -35.0;
    else if (b.second == 0)
      llr = 35.0;
    else
      llr = std::log(b.first / b.second) - std::log(tar_total / non_total);
    llr_per_block.push_back(std::clamp(llr, -35.0, 35.0));
  }
  auto softplus = [](double x) {
    return x > 30.0 ? x : std::log1p(std::exp(x));
  };
  double sum_tar = 0, sum_non = 0;
  size_t block_idx = 0;
  double consumed = 0;
  for (const auto &[s, c] : hist) {
    const double llr = llr_per_block[block_idx];
    sum_tar += c.first * softplus(-llr);
    sum_non += c.second * softplus(llr);
    consumed += c.first + c.second;
    if (consumed >= blocks[block_idx].first + blocks[block_idx].second) {
      consumed -= blocks[block_idx].first + blocks[block_idx].second;
      ++block_idx;
    }
  }
  return (sum_tar / tar_total + sum_non / non_total) / (2.0 * std::log(2.0));
}

}  // namespace vcn::oracle

#endif  // VCNORM_TESTS_METRIC_ORACLES_HPP_
