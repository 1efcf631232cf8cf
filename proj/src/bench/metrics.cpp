// src/bench/metrics.cpp

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

#include "bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "common/error.hpp"

namespace vcn {

namespace {

struct Counts {
  size_t targets = 0;
  size_t nontargets = 0;
};

// Distinct score values ascending with per-value class counts.
std::map<double, Counts> histogram(const std::vector<double> &scores,
                                   const std::vector<bool> &labels,
                                   size_t *targets, size_t *nontargets) {
  VCN_CHECK(scores.size() == labels.size() && !scores.empty(),
            kInvalidArgument)
      << "metrics input";
  std::map<double, Counts> hist;
  *targets = *nontargets = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    VCN_CHECK(std::isfinite(scores[i]), kInvalidArgument)
        << "non-finite score";
    auto &c = hist[scores[i]];
    if (labels[i]) {
      ++c.targets;
      ++*targets;
    } else {
      ++c.nontargets;
      ++*nontargets;
    }
  }
  VCN_CHECK(*targets > 0 && *nontargets > 0, kInvalidArgument)
      << "both classes must be present";
  return hist;
}

struct OperatingPoint {
  double pmiss = 0.0;
  double pfa = 0.0;
};

// Staircase of (Pmiss, Pfa), from accept-everything to reject-everything.
std::vector<OperatingPoint> roc_points(const std::vector<double> &scores,
                                       const std::vector<bool> &labels) {
  size_t t = 0, n = 0;
  auto hist = histogram(scores, labels, &t, &n);
  std::vector<OperatingPoint> pts;
  pts.reserve(hist.size() + 1);
  size_t missed = 0, accepted_non = n;
  pts.push_back({0.0, 1.0});
  for (const auto &[score, c] : hist) {
    missed += c.targets;
    accepted_non -= c.nontargets;
    pts.push_back({static_cast<double>(missed) / t,
                   static_cast<double>(accepted_non) / n});
  }
  return pts;
}

}  // namespace

double eer(const std::vector<double> &scores,
           const std::vector<bool> &labels) {
  const auto pts = roc_points(scores, labels);
  // diff = Pmiss - Pfa runs from -1 to +1 and is non-decreasing.
  for (size_t k = 0; k < pts.size(); ++k) {
    const double diff = pts[k].pmiss - pts[k].pfa;
    if (diff < 0.0) continue;
    if (diff == 0.0 || k == 0) return pts[k].pmiss;
    const double prev_diff = pts[k - 1].pmiss - pts[k - 1].pfa;
    const double alpha = -prev_diff / (diff - prev_diff);
    return pts[k - 1].pmiss + alpha * (pts[k].pmiss - pts[k - 1].pmiss);
  }
  return 1.0;  // unreachable: the final point has diff = 1
}

double min_dcf(const std::vector<double> &scores,
               const std::vector<bool> &labels, const MetricConfig &cfg) {
  VCN_CHECK(cfg.effective_prior > 0.0 && cfg.effective_prior < 1.0,
            kInvalidArgument)
      << "effective prior";
  const double p = cfg.effective_prior;
  const double w_miss = p * cfg.cost_miss;
  const double w_fa = (1.0 - p) * cfg.cost_fa;
  const double denom = std::min(w_miss, w_fa);
  double best = 1e300;
  for (const auto &pt : roc_points(scores, labels))
    best = std::min(best, w_miss * pt.pmiss + w_fa * pt.pfa);
  return best / denom;
}

std::vector<double> pav_llrs(const std::vector<double> &scores,
                             const std::vector<bool> &labels) {
  size_t t = 0, n = 0;
  auto hist = histogram(scores, labels, &t, &n);

  // Pool-adjacent-violators on the per-score target fractions; equal scores
  // are pre-merged so monotone transforms leave the blocks unchanged.
  struct Block {
    double tar, non;
  };
  std::vector<Block> stack;
  for (const auto &[score, c] : hist) {
    Block b{static_cast<double>(c.targets), static_cast<double>(c.nontargets)};
    stack.push_back(b);
    while (stack.size() >= 2) {
      const Block &hi = stack[stack.size() - 1];
      const Block &lo = stack[stack.size() - 2];
      // posterior of the later block must not fall below the earlier one
      const double p_hi = hi.tar / (hi.tar + hi.non);
      const double p_lo = lo.tar / (lo.tar + lo.non);
      if (p_hi >= p_lo) break;
      Block merged{lo.tar + hi.tar, lo.non + hi.non};
      stack.pop_back();
      stack.back() = merged;
    }
  }

  constexpr double kClamp = 35.0;  // nats; see the Cllr quantisation note
  const double prior_log_odds =
      std::log(static_cast<double>(t) / static_cast<double>(n));
  std::vector<double> block_llr;
  block_llr.reserve(stack.size());
  for (const auto &b : stack) {
    double llr;
    if (b.tar == 0.0)
      llr = -kClamp;
    else if (b.non == 0.0)
      llr = kClamp;
    else
      llr = std::log(b.tar / b.non) - prior_log_odds;
    block_llr.push_back(std::clamp(llr, -kClamp, kClamp));
  }

  // Map each input score to its block's LLR.
  std::vector<std::pair<double, double>> score_to_llr;  // (score, llr)
  {
    size_t bi = 0;
    double consumed = 0.0;
    for (const auto &[score, c] : hist) {
      score_to_llr.emplace_back(score, block_llr[bi]);
      consumed += c.targets + c.nontargets;
      if (consumed >=
          stack[bi].tar + stack[bi].non) {  // block exhausted, advance
        consumed -= stack[bi].tar + stack[bi].non;
        ++bi;
      }
    }
  }
  std::vector<double> out(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    const auto it = std::lower_bound(
        score_to_llr.begin(), score_to_llr.end(),
        std::make_pair(scores[i], -1e300));
    out[i] = it->second;
  }
  return out;
}

double cllr_min(const std::vector<double> &scores,
                const std::vector<bool> &labels) {
  const std::vector<double> llrs = pav_llrs(scores, labels);
  auto softplus = [](double x) {
    return x > 30.0 ? x : std::log1p(std::exp(x));
  };
  double sum_tar = 0.0, sum_non = 0.0;
  size_t t = 0, n = 0;
  for (size_t i = 0; i < llrs.size(); ++i) {
    if (labels[i]) {
      sum_tar += softplus(-llrs[i]);
      ++t;
    } else {
      sum_non += softplus(llrs[i]);
      ++n;
    }
  }
  return (sum_tar / t + sum_non / n) / (2.0 * std::log(2.0));
}

MetricTriple compute_metrics(const std::vector<double> &scores,
                             const std::vector<bool> &labels,
                             const MetricConfig &cfg) {
  return {cllr_min(scores, labels), min_dcf(scores, labels, cfg),
          eer(scores, labels)};
}

}  // namespace vcn
