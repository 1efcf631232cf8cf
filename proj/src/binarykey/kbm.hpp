// src/binarykey/kbm.hpp

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

#ifndef VCNORM_BINARYKEY_KBM_HPP_
#define VCNORM_BINARYKEY_KBM_HPP_

#include <string>
#include <vector>

#include "synthcorpus/gmm.hpp"

namespace vcn {

// Mean-only MAP adaptation of the UBM towards `frames`:
//   mean_c = (n_c * xbar_c + relevance * ubm_mean_c) / (n_c + relevance)
// with n_c the soft occupancy.  Weights and variances are copied.
Gmm map_adapt(const Gmm &ubm, const Matrix &frames, double relevance);

// Binary key background model: concatenation of A speaker-adapted copies of
// the UBM, anchor-major (anchor a occupies positions [a*C, (a+1)*C)).  The
// component order is fixed and serialised so bit positions are stable.
class Kbm {
 public:
  Kbm() = default;
  Kbm(std::vector<Gmm> anchor_models, double relevance);

  size_t size() const { return anchor_count_ * components_per_anchor_; }  // N
  size_t anchor_count() const { return anchor_count_; }                   // A
  size_t components_per_anchor() const { return components_per_anchor_; } // C
  size_t feature_dim() const { return feature_dim_; }
  size_t anchor_of(size_t position) const {
    return position / components_per_anchor_;
  }
  double relevance() const { return relevance_; }

  // Unweighted diagonal-Gaussian log density of KBM position `pos` for one
  // frame; components compete as anchors, not as a mixture.
  double position_log_density(size_t pos, const double *x) const;

  const Matrix &means() const { return means_; }
  const Matrix &variances() const { return variances_; }

  friend void save_kbm(const std::string &path, const Kbm &kbm);
  friend Kbm load_kbm(const std::string &path);

 private:
  size_t anchor_count_ = 0;
  size_t components_per_anchor_ = 0;
  size_t feature_dim_ = 0;
  double relevance_ = 0.0;
  Matrix means_;      // N x F, anchor-major
  Matrix variances_;  // N x F
  Vec log_norm_;      // per-position -(1/2) sum log(2 pi var)
  void precompute();
};

// MAP-adapts the UBM to each anchor's frames and concatenates.
Kbm build_kbm(const Gmm &ubm, const std::vector<Matrix> &anchor_frames,
              double relevance);

void save_kbm(const std::string &path, const Kbm &kbm);
Kbm load_kbm(const std::string &path);

}  // namespace vcn

#endif  // VCNORM_BINARYKEY_KBM_HPP_
