// src/synthcorpus/gmm.hpp

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

#ifndef VCNORM_SYNTHCORPUS_GMM_HPP_
#define VCNORM_SYNTHCORPUS_GMM_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "common/matrix.hpp"
#include "common/rng.hpp"

namespace vcn {

// Diagonal-covariance Gaussian mixture.  Weights sum to 1 (within 1e-12),
// variances strictly positive.
struct Gmm {
  Vec weights;      // C
  Matrix means;     // C x F
  Matrix variances; // C x F

  size_t num_components() const { return weights.size(); }
  size_t feature_dim() const { return means.cols(); }

  void validate() const;  // throws on broken invariants

  // Log density of one diagonal component (no mixture weight).
  double component_log_density(size_t c, const double *x) const;
  // log p(x) under the full mixture.
  double log_density(const double *x) const;
  // Posterior responsibilities gamma_c(x); returns log p(x).
  double responsibilities(const double *x, Vec *gamma) const;

  Vec sample(Rng &rng) const;
  Matrix sample_frames(size_t count, Rng &rng) const;
};

// Deterministic synthetic UBM: normalized random weights, means spread
// uniformly in a fixed box, variances in [0.5, 2).
Gmm gen_ubm(uint64_t seed, size_t num_components, size_t feature_dim);

void write_gmm(std::ostream &os, const Gmm &g);
Gmm read_gmm(std::istream &is);
void save_gmm(const std::string &path, const Gmm &g);
Gmm load_gmm(const std::string &path);

}  // namespace vcn

#endif  // VCNORM_SYNTHCORPUS_GMM_HPP_
