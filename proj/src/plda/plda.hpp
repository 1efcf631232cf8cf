// src/plda/plda.hpp

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

#ifndef VCNORM_PLDA_PLDA_HPP_
#define VCNORM_PLDA_PLDA_HPP_

#include <string>
#include <vector>

#include "common/matrix.hpp"

namespace vcn {

// Two-covariance PLDA:  x = mean + y + eps,  y ~ N(0, between),
// eps ~ N(0, within).
struct PldaModel {
  Vec mean;        // D
  Matrix between;  // D x D SPD
  Matrix within;   // D x D SPD

  size_t dim() const { return mean.size(); }
  void validate() const;  // symmetry within 1e-12 and SPD via Cholesky
};

// Mean/length normalisation stats captured at fit time.
struct PreprocessStats {
  Vec mean;
};

PreprocessStats compute_preprocess_stats(const std::vector<Vec> &embeddings);
// (x - mean) / ||x - mean||; degenerate-input error on a ~zero residual.
Vec preprocess(const Vec &x, const PreprocessStats &stats);
std::vector<Vec> preprocess_all(const std::vector<Vec> &xs,
                                const PreprocessStats &stats);

struct PldaFitOptions {
  size_t max_iterations = 50;
  double tolerance = 1e-7;  // relative log-likelihood change
};

struct PldaFitReport {
  size_t iterations = 0;
  std::vector<double> log_likelihoods;  // one per completed iteration
  bool identifiability_warning = false; // no speaker with >= 2 sessions
  size_t regularisations = 0;
};

// EM for the two-covariance model.  Labels pair one-to-one with embeddings.
PldaModel fit_plda(const std::vector<Vec> &embeddings,
                   const std::vector<std::string> &labels,
                   const PldaFitOptions &opts = {},
                   PldaFitReport *report = nullptr);

// Precomputed quadratic comparison form.  For any inputs x1, x2:
//   llr(x1, x2) = x1'Q x1 + x2'Q x2 + 2 x1'P x2 + c'(x1 + x2) + k0
// equals the joint-Gaussian log-likelihood ratio of same-speaker vs
// different-speaker origin.  The model mean is absorbed into c and k0.
struct ScoringForm {
  Matrix q;  // per-side quadratic term
  Matrix p;  // cross term
  Vec c;     // linear term
  double k0 = 0.0;

  size_t dim() const { return c.size(); }
};

ScoringForm scoring_form(const PldaModel &model);

double plda_score(const ScoringForm &form, const Vec &x1, const Vec &x2);

// Brute-force oracle: direct 2D-dimensional Gaussian density evaluation of
//   log N([x1;x2]; [mu;mu], [[T,B],[B,T]]) - log N(.; [[T,0],[0,T]])
// with T = between + within.  Independent of the quadratic-form route.
double joint_llr_oracle(const PldaModel &model, const Vec &x1, const Vec &x2);

// Model file: textual header (dim, iterations, tolerance), then VCDB blocks:
// preprocess mean, model mean, between, within.
void save_plda(const std::string &path, const PldaModel &model,
               const PreprocessStats &pre, const PldaFitReport &report);
void load_plda(const std::string &path, PldaModel *model,
               PreprocessStats *pre);

}  // namespace vcn

#endif  // VCNORM_PLDA_PLDA_HPP_
