// src/synthcorpus/gmm.cpp

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

#include "synthcorpus/gmm.hpp"

#include <cmath>
#include <fstream>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
}

void Gmm::validate() const {
  const size_t c = num_components();
  VCN_CHECK(c >= 1, kInvalidArgument) << "empty mixture";
  VCN_CHECK(means.rows() == c && variances.rows() == c &&
                means.cols() == variances.cols(),
            kDimension)
      << "gmm shape mismatch";
  double sum = 0.0;
  for (double w : weights) {
    VCN_CHECK(w >= 0.0, kInvalidArgument) << "negative weight";
    sum += w;
  }
  VCN_CHECK(std::abs(sum - 1.0) <= 1e-12, kInvalidArgument)
      << "weights sum to " << sum;
  for (double v : variances.data())
    VCN_CHECK(v > 0.0, kInvalidArgument) << "non-positive variance";
}

double Gmm::component_log_density(size_t c, const double *x) const {
  const double *mu = means.row(c);
  const double *var = variances.row(c);
  const size_t f = feature_dim();
  double acc = 0.0;
  for (size_t j = 0; j < f; ++j) {
    const double d = x[j] - mu[j];
    acc += kLog2Pi + std::log(var[j]) + d * d / var[j];
  }
  return -0.5 * acc;
}

double Gmm::log_density(const double *x) const {
  // log-sum-exp over weighted component densities
  const size_t c = num_components();
  double max_l = -1e300;
  Vec l(c);
  for (size_t i = 0; i < c; ++i) {
    l[i] = (weights[i] > 0.0 ? std::log(weights[i]) : -1e300) +
           component_log_density(i, x);
    if (l[i] > max_l) max_l = l[i];
  }
  double s = 0.0;
  for (size_t i = 0; i < c; ++i) s += std::exp(l[i] - max_l);
  return max_l + std::log(s);
}

double Gmm::responsibilities(const double *x, Vec *gamma) const {
  const size_t c = num_components();
  gamma->assign(c, 0.0);
  double max_l = -1e300;
  Vec l(c);
  for (size_t i = 0; i < c; ++i) {
    l[i] = (weights[i] > 0.0 ? std::log(weights[i]) : -1e300) +
           component_log_density(i, x);
    if (l[i] > max_l) max_l = l[i];
  }
  double s = 0.0;
  for (size_t i = 0; i < c; ++i) s += std::exp(l[i] - max_l);
  const double log_px = max_l + std::log(s);
  for (size_t i = 0; i < c; ++i) (*gamma)[i] = std::exp(l[i] - log_px);
  return log_px;
}

Vec Gmm::sample(Rng &rng) const {
  const double u = rng.next_double();
  size_t c = 0;
  double cdf = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    cdf += weights[i];
    if (u < cdf) {
      c = i;
      break;
    }
    c = i;  // falls through to the last component on rounding
  }
  const size_t f = feature_dim();
  Vec x(f);
  for (size_t j = 0; j < f; ++j)
    x[j] = means.at(c, j) + std::sqrt(variances.at(c, j)) * rng.gaussian();
  return x;
}

Matrix Gmm::sample_frames(size_t count, Rng &rng) const {
  Matrix out(count, feature_dim());
  for (size_t t = 0; t < count; ++t) {
    Vec x = sample(rng);
    for (size_t j = 0; j < x.size(); ++j) out.at(t, j) = x[j];
  }
  return out;
}

Gmm gen_ubm(uint64_t seed, size_t num_components, size_t feature_dim) {
  VCN_CHECK(num_components >= 1 && feature_dim >= 1, kInvalidArgument)
      << "gen_ubm C=" << num_components << " F=" << feature_dim;
  Rng rng = Rng(seed).split(0x75626d);  // distinct stream per artifact kind
  Gmm g;
  g.weights.resize(num_components);
  g.means = Matrix(num_components, feature_dim);
  g.variances = Matrix(num_components, feature_dim);
  double sum = 0.0;
  for (auto &w : g.weights) {
    w = 0.5 + rng.next_double();
    sum += w;
  }
  for (auto &w : g.weights) w /= sum;
  // Renormalize once more so the sum is 1 at double precision even after
  // the division rounding.
  double sum2 = 0.0;
  for (double w : g.weights) sum2 += w;
  g.weights[0] += 1.0 - sum2;

  for (size_t c = 0; c < num_components; ++c)
    for (size_t j = 0; j < feature_dim; ++j) {
      g.means.at(c, j) = (rng.next_double() * 2.0 - 1.0) * 5.0;
      g.variances.at(c, j) = 0.5 + 1.5 * rng.next_double();
    }
  g.validate();
  return g;
}

void write_gmm(std::ostream &os, const Gmm &g) {
  os << "vcnorm-gmm v1\n";
  os << "components: " << g.num_components() << "\n";
  os << "dim: " << g.feature_dim() << "\n";
  write_vcdb_vec(os, g.weights);
  write_vcdb(os, g.means);
  write_vcdb(os, g.variances);
}

Gmm read_gmm(std::istream &is) {
  std::string line;
  std::getline(is, line);
  VCN_CHECK(line.rfind("vcnorm-gmm", 0) == 0, kIo) << "bad gmm header";
  std::getline(is, line);
  std::getline(is, line);
  Gmm g;
  g.weights = read_vcdb_vec(is);
  g.means = read_vcdb(is);
  g.variances = read_vcdb(is);
  g.validate();
  return g;
}

void save_gmm(const std::string &path, const Gmm &g) {
  auto os = open_out(path);
  write_gmm(os, g);
}

Gmm load_gmm(const std::string &path) {
  auto is = open_in(path);
  return read_gmm(is);
}

}  // namespace vcn
