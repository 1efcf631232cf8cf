// src/binarykey/kbm.cpp

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

#include "binarykey/kbm.hpp"

#include <cmath>
#include <fstream>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

Gmm map_adapt(const Gmm &ubm, const Matrix &frames, double relevance) {
  VCN_CHECK(frames.rows() >= 1, kInvalidArgument) << "no adaptation frames";
  VCN_CHECK(frames.cols() == ubm.feature_dim(), kDimension)
      << "frame dim " << frames.cols() << " vs UBM dim " << ubm.feature_dim();
  VCN_CHECK(relevance > 0.0, kInvalidArgument) << "relevance factor";
  const size_t c = ubm.num_components();
  const size_t f = ubm.feature_dim();

  Vec occupancy(c, 0.0);
  Matrix first_order(c, f);  // sum_t gamma_tc * x_t
  Vec gamma;
  for (size_t t = 0; t < frames.rows(); ++t) {
    const double *x = frames.row(t);
    ubm.responsibilities(x, &gamma);
    for (size_t i = 0; i < c; ++i) {
      if (gamma[i] == 0.0) continue;
      occupancy[i] += gamma[i];
      double *row = first_order.row(i);
      for (size_t j = 0; j < f; ++j) row[j] += gamma[i] * x[j];
    }
  }

  Gmm out = ubm;
  for (size_t i = 0; i < c; ++i) {
    const double n = occupancy[i];
    const double denom = n + relevance;
    for (size_t j = 0; j < f; ++j) {
      // n * xbar = first_order; the n==0 case falls back to the UBM mean.
      out.means.at(i, j) =
          (first_order.at(i, j) + relevance * ubm.means.at(i, j)) / denom;
    }
  }
  return out;
}

Kbm::Kbm(std::vector<Gmm> anchor_models, double relevance)
    : relevance_(relevance) {
  VCN_CHECK(!anchor_models.empty(), kInvalidArgument) << "no anchor models";
  anchor_count_ = anchor_models.size();
  components_per_anchor_ = anchor_models[0].num_components();
  feature_dim_ = anchor_models[0].feature_dim();
  means_ = Matrix(size(), feature_dim_);
  variances_ = Matrix(size(), feature_dim_);
  for (size_t a = 0; a < anchor_count_; ++a) {
    const Gmm &g = anchor_models[a];
    VCN_CHECK(g.num_components() == components_per_anchor_ &&
                  g.feature_dim() == feature_dim_,
              kDimension)
        << "anchor model " << a << " shape differs";
    for (size_t c = 0; c < components_per_anchor_; ++c) {
      const size_t pos = a * components_per_anchor_ + c;
      for (size_t j = 0; j < feature_dim_; ++j) {
        means_.at(pos, j) = g.means.at(c, j);
        variances_.at(pos, j) = g.variances.at(c, j);
      }
    }
  }
  precompute();
}

void Kbm::precompute() {
  constexpr double kLog2Pi = 1.8378770664093453;
  log_norm_.assign(size(), 0.0);
  for (size_t p = 0; p < size(); ++p) {
    double acc = 0.0;
    for (size_t j = 0; j < feature_dim_; ++j)
      acc += kLog2Pi + std::log(variances_.at(p, j));
    log_norm_[p] = -0.5 * acc;
  }
}

double Kbm::position_log_density(size_t pos, const double *x) const {
  const double *mu = means_.row(pos);
  const double *var = variances_.row(pos);
  double acc = 0.0;
  for (size_t j = 0; j < feature_dim_; ++j) {
    const double d = x[j] - mu[j];
    acc += d * d / var[j];
  }
  return log_norm_[pos] - 0.5 * acc;
}

Kbm build_kbm(const Gmm &ubm, const std::vector<Matrix> &anchor_frames,
              double relevance) {
  VCN_CHECK(!anchor_frames.empty(), kInvalidArgument) << "A must be >= 1";
  std::vector<Gmm> models;
  models.reserve(anchor_frames.size());
  for (const auto &frames : anchor_frames)
    models.push_back(map_adapt(ubm, frames, relevance));
  return Kbm(std::move(models), relevance);
}

void save_kbm(const std::string &path, const Kbm &kbm) {
  auto os = open_out(path);
  os << "vcnorm-kbm v1\n";
  os << "anchors: " << kbm.anchor_count() << "\n";
  os << "components: " << kbm.components_per_anchor() << "\n";
  os << "dim: " << kbm.feature_dim() << "\n";
  os << "relevance: " << kbm.relevance() << "\n";
  write_vcdb(os, kbm.means_);
  write_vcdb(os, kbm.variances_);
}

Kbm load_kbm(const std::string &path) {
  auto is = open_in(path);
  std::string line;
  std::getline(is, line);
  VCN_CHECK(line.rfind("vcnorm-kbm", 0) == 0, kIo) << "bad kbm header";
  auto field = [&](const char *name) {
    std::getline(is, line);
    const auto pos = line.find(':');
    VCN_CHECK(pos != std::string::npos && line.rfind(name, 0) == 0, kIo)
        << "bad kbm field, expected " << name;
    return line.substr(pos + 1);
  };
  Kbm kbm;
  kbm.anchor_count_ = std::stoull(field("anchors"));
  kbm.components_per_anchor_ = std::stoull(field("components"));
  kbm.feature_dim_ = std::stoull(field("dim"));
  kbm.relevance_ = std::stod(field("relevance"));
  kbm.means_ = read_vcdb(is);
  kbm.variances_ = read_vcdb(is);
  VCN_CHECK(kbm.means_.rows() == kbm.size() &&
                kbm.means_.cols() == kbm.feature_dim_,
            kIo)
      << "kbm matrix shape mismatch";
  kbm.precompute();
  return kbm;
}

}  // namespace vcn
