// tests/test_plda.cpp

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

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "common/error.hpp"
#include "common/rng.hpp"
#include "plda/plda.hpp"

using namespace vcn;

namespace {

Matrix random_spd(size_t d, Rng &rng, double scale = 1.0) {
  Matrix r(d, d);
  for (auto &v : r.data()) v = rng.gaussian() * scale;
  Matrix spd = r * r.transposed();
  for (size_t i = 0; i < d; ++i) spd.at(i, i) += 0.1 * scale * scale + 1e-6;
  spd.symmetrize();
  return spd;
}

PldaModel random_model(size_t d, Rng &rng) {
  PldaModel m;
  m.mean.resize(d);
  for (auto &v : m.mean) v = rng.gaussian();
  m.between = random_spd(d, rng);
  m.within = random_spd(d, rng);
  return m;
}

Vec random_vec(size_t d, Rng &rng) {
  Vec v(d);
  for (auto &x : v) x = rng.gaussian();
  return v;
}

}  // namespace

TEST_CASE("preprocess mean and length normalisation") {
  std::vector<Vec> data = {{1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}, {2.0, 2.0, 2.0}};
  PreprocessStats stats = compute_preprocess_stats(data);
  CHECK(stats.mean == Vec{2.0, 2.0, 2.0});

  // x = mean + e1 maps to e1
  Vec x = {3.0, 2.0, 2.0};
  Vec p = preprocess(x, stats);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));
  CHECK(p[2] == doctest::Approx(0.0));

  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    Vec v = random_vec(3, rng);
    v = add(v, stats.mean);
    CHECK(norm2(preprocess(v, stats)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // scaling the whole set by 10 (stats refit) leaves outputs unchanged
  std::vector<Vec> scaled_set;
  for (const auto &v : data) scaled_set.push_back(scaled(v, 10.0));
  PreprocessStats stats10 = compute_preprocess_stats(scaled_set);
  Vec a = preprocess(Vec{4.0, 1.0, 2.5}, stats);
  Vec b = preprocess(scaled(Vec{4.0, 1.0, 2.5}, 10.0), stats10);
  for (size_t i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]));

  CHECK_THROWS_AS(preprocess(stats.mean, stats), Error);
}

TEST_CASE("scoring form D=1 analytic value") {
  PldaModel m;
  m.mean = {0.0};
  m.between = Matrix::identity(1);
  m.within = Matrix::identity(1);
  ScoringForm f = scoring_form(m);
  const Vec zero{0.0};
  const double expected = 0.5 * std::log(4.0 / 3.0);  // 0.143841...
  CHECK(plda_score(f, zero, zero) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(joint_llr_oracle(m, zero, zero) ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("vanishing between-speaker variance kills the score") {
  PldaModel m;
  m.mean = {0.0, 0.0};
  m.between = Matrix::identity(2, 1e-12);
  m.within = Matrix::identity(2);
  ScoringForm f = scoring_form(m);
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    Vec x = random_vec(2, rng), y = random_vec(2, rng);
    CHECK(std::abs(plda_score(f, x, y)) < 1e-9);
  }
}

TEST_CASE("zero form scores zero") {
  ScoringForm f;
  f.q = Matrix(3, 3);
  f.p = Matrix(3, 3);
  f.c = Vec(3, 0.0);
  f.k0 = 0.0;
  Rng rng(7);
  CHECK(plda_score(f, random_vec(3, rng), random_vec(3, rng)) == 0.0);
}

TEST_CASE("form equals the joint-Gaussian oracle") {
  Rng rng(11);
  for (size_t d : {1ul, 2ul, 4ul, 8ul, 16ul}) {
    for (int iter = 0; iter < 40; ++iter) {
      PldaModel m = random_model(d, rng);
      ScoringForm f = scoring_form(m);
      Vec x = random_vec(d, rng), y = random_vec(d, rng);
      const double a = plda_score(f, x, y);
      const double b = joint_llr_oracle(m, x, y);
      CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)));
    }
  }
}

TEST_CASE("plda_score is exactly symmetric") {
  Rng rng(13);
  PldaModel m = random_model(6, rng);
  ScoringForm f = scoring_form(m);
  for (int iter = 0; iter < 50; ++iter) {
    Vec x = random_vec(6, rng), y = random_vec(6, rng);
    CHECK(plda_score(f, x, y) == plda_score(f, y, x));  // bitwise
  }
}

TEST_CASE("oracle with zero between matrix is identically zero") {
  PldaModel m;
  m.mean = {0.5, -0.5};
  m.between = Matrix(2, 2);  // zero: same and different covariances coincide
  m.within = Matrix::identity(2);
  Rng rng(17);
  for (int i = 0; i < 10; ++i)
    CHECK(joint_llr_oracle(m, random_vec(2, rng), random_vec(2, rng)) ==
          doctest::Approx(0.0));
}

TEST_CASE("em recovers the generative covariances") {
  Rng rng(19);
  const size_t d = 4, speakers = 800, sessions = 6;
  Matrix between = random_spd(d, rng, 0.8);
  Matrix within = random_spd(d, rng, 0.6);
  Cholesky lb(between), lw(within);
  std::vector<Vec> xs;
  std::vector<std::string> labels;
  for (size_t s = 0; s < speakers; ++s) {
    Vec y = lb.lower().apply(random_vec(d, rng));
    for (size_t k = 0; k < sessions; ++k) {
      Vec x = add(y, lw.lower().apply(random_vec(d, rng)));
      xs.push_back(x);
      labels.push_back("spk" + std::to_string(s));
    }
  }
  PldaFitReport report;
  PldaModel fit = fit_plda(xs, labels, PldaFitOptions{}, &report);
  CHECK_FALSE(report.identifiability_warning);
  CHECK(fit.between.frobenius_distance(between) / between.frobenius_norm() <
        0.10);
  CHECK(fit.within.frobenius_distance(within) / within.frobenius_norm() <
        0.10);
  for (double v : fit.mean) CHECK(std::abs(v) < 0.1);
}

TEST_CASE("em log-likelihood is monotone") {
  Rng rng(23);
  const size_t d = 3;
  std::vector<Vec> xs;
  std::vector<std::string> labels;
  for (size_t s = 0; s < 40; ++s) {
    Vec y = random_vec(d, rng);
    for (size_t k = 0; k < 3; ++k) {
      xs.push_back(add(y, scaled(random_vec(d, rng), 0.7)));
      labels.push_back("s" + std::to_string(s));
    }
  }
  PldaFitOptions opts;
  opts.max_iterations = 50;
  opts.tolerance = 0.0;  // run all iterations
  PldaFitReport report;
  fit_plda(xs, labels, opts, &report);
  REQUIRE(report.log_likelihoods.size() == 50);
  for (size_t i = 1; i < report.log_likelihoods.size(); ++i)
    CHECK(report.log_likelihoods[i] >=
          report.log_likelihoods[i - 1] -
              1e-8 * (1.0 + std::abs(report.log_likelihoods[i - 1])));
}

TEST_CASE("single-session training flags identifiability") {
  Rng rng(29);
  std::vector<Vec> xs;
  std::vector<std::string> labels;
  for (size_t s = 0; s < 30; ++s) {
    xs.push_back(random_vec(3, rng));
    labels.push_back("s" + std::to_string(s));
  }
  PldaFitReport report;
  fit_plda(xs, labels, PldaFitOptions{}, &report);
  CHECK(report.identifiability_warning);
}

TEST_CASE("calibration sanity on generative data") {
  Rng rng(31);
  const size_t d = 8;
  PldaModel truth;
  truth.mean = Vec(d, 0.0);
  truth.between = Matrix::identity(d);
  truth.within = Matrix::identity(d, 0.5);
  ScoringForm f = scoring_form(truth);
  Cholesky lw(truth.within);
  double target_sum = 0, nontarget_sum = 0;
  const int trials = 300;
  for (int i = 0; i < trials; ++i) {
    Vec y1 = random_vec(d, rng);
    Vec y2 = random_vec(d, rng);
    Vec a = add(y1, lw.lower().apply(random_vec(d, rng)));
    Vec b = add(y1, lw.lower().apply(random_vec(d, rng)));
    Vec c = add(y2, lw.lower().apply(random_vec(d, rng)));
    target_sum += plda_score(f, a, b);
    nontarget_sum += plda_score(f, a, c);
  }
  CHECK(target_sum / trials > 0.0);
  CHECK(nontarget_sum / trials < 0.0);
}

TEST_CASE("plda model file round trip") {
  Rng rng(37);
  PldaModel m = random_model(5, rng);
  PreprocessStats pre;
  pre.mean = random_vec(5, rng);
  PldaFitReport report;
  report.iterations = 12;
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "vcn_plda.mdl";
  save_plda(path.string(), m, pre, report);
  PldaModel r;
  PreprocessStats rpre;
  load_plda(path.string(), &r, &rpre);
  CHECK(r.mean == m.mean);
  CHECK(r.between.data() == m.between.data());
  CHECK(r.within.data() == m.within.data());
  CHECK(rpre.mean == pre.mean);
  fs::remove(path);
}

TEST_CASE("fit_plda input validation") {
  std::vector<Vec> xs = {{1.0}, {2.0}};
  std::vector<std::string> labels = {"a"};
  CHECK_THROWS_AS(fit_plda(xs, labels), Error);
  labels = {"a", "a"};
  CHECK_THROWS_AS(fit_plda(xs, labels), Error);  // needs >= 2 speakers
}
