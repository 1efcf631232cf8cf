// src/plda/plda.cpp

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

#include "plda/plda.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <unordered_map>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
}

void PldaModel::validate() const {
  const size_t d = dim();
  VCN_CHECK(between.rows() == d && between.cols() == d && within.rows() == d &&
                within.cols() == d,
            kDimension)
      << "plda model shape";
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j) {
      VCN_CHECK(std::abs(between.at(i, j) - between.at(j, i)) <= 1e-12,
                kInvalidArgument)
          << "between not symmetric";
      VCN_CHECK(std::abs(within.at(i, j) - within.at(j, i)) <= 1e-12,
                kInvalidArgument)
          << "within not symmetric";
    }
  Cholesky bt(between);  // throws kDegenerate if not SPD
  Cholesky wt(within);
}

PreprocessStats compute_preprocess_stats(const std::vector<Vec> &embeddings) {
  VCN_CHECK(!embeddings.empty(), kInvalidArgument) << "no embeddings";
  const size_t d = embeddings[0].size();
  PreprocessStats stats;
  stats.mean.assign(d, 0.0);
  for (const auto &x : embeddings) axpy(stats.mean, 1.0, x);
  for (auto &v : stats.mean) v /= static_cast<double>(embeddings.size());
  return stats;
}

Vec preprocess(const Vec &x, const PreprocessStats &stats) {
  Vec r = sub(x, stats.mean);
  const double n = norm2(r);
  VCN_CHECK(n > 1e-12, kDegenerate) << "zero vector after centering";
  for (auto &v : r) v /= n;
  return r;
}

std::vector<Vec> preprocess_all(const std::vector<Vec> &xs,
                                const PreprocessStats &stats) {
  std::vector<Vec> out;
  out.reserve(xs.size());
  for (const auto &x : xs) out.push_back(preprocess(x, stats));
  return out;
}

namespace {

// Adds ridge when a covariance update loses positive definiteness.
bool regularize_spd(Matrix *m) {
  Matrix l;
  if (Cholesky::try_factor(*m, &l)) return false;
  const double ridge =
      1e-6 * m->trace() / static_cast<double>(m->rows());
  for (size_t i = 0; i < m->rows(); ++i)
    m->at(i, i) += (ridge > 0 ? ridge : 1e-12);
  return true;
}

struct SpeakerBlock {
  std::vector<size_t> items;  // indices into the embedding list
};

}  // namespace

PldaModel fit_plda(const std::vector<Vec> &embeddings,
                   const std::vector<std::string> &labels,
                   const PldaFitOptions &opts, PldaFitReport *report) {
  VCN_CHECK(embeddings.size() == labels.size(), kDimension)
      << "labels/embeddings size mismatch";
  VCN_CHECK(!embeddings.empty(), kInvalidArgument) << "no training data";
  const size_t d = embeddings[0].size();
  const size_t n_total = embeddings.size();

  std::map<std::string, SpeakerBlock> speakers;
  for (size_t i = 0; i < n_total; ++i) speakers[labels[i]].items.push_back(i);
  VCN_CHECK(speakers.size() >= 2, kInvalidArgument)
      << "need >= 2 speakers, got " << speakers.size();

  PldaFitReport local_report;
  PldaFitReport &rep = report ? *report : local_report;
  rep = PldaFitReport{};
  bool any_multi = false;
  for (const auto &[id, blk] : speakers)
    if (blk.items.size() >= 2) any_multi = true;
  rep.identifiability_warning = !any_multi;

  // Init: mean of the data; half the total covariance for each of B, W.
  Vec mu(d, 0.0);
  for (const auto &x : embeddings) axpy(mu, 1.0, x);
  for (auto &v : mu) v /= static_cast<double>(n_total);
  Matrix total(d, d);
  for (const auto &x : embeddings) total.add_outer(sub(x, mu), 1.0);
  total *= 1.0 / static_cast<double>(n_total);
  Matrix b = total, w = total;
  b *= 0.5;
  w *= 0.5;
  for (size_t i = 0; i < d; ++i) {
    b.at(i, i) += 1e-6;
    w.at(i, i) += 1e-6;
  }

  double prev_ll = -1e300;
  for (size_t iter = 0; iter < opts.max_iterations; ++iter) {
    if (regularize_spd(&b)) ++rep.regularisations;
    if (regularize_spd(&w)) ++rep.regularisations;
    Cholesky chol_b(b), chol_w(w);
    Matrix w_inv = chol_w.inverse();
    Matrix b_inv = chol_b.inverse();
    const double logdet_b = chol_b.log_det();
    const double logdet_w = chol_w.log_det();

    // Posterior precision depends only on the session count; cache per m.
    std::unordered_map<size_t, std::pair<Matrix, double>> lam_inv_cache;
    auto posterior_of = [&](size_t m) -> const std::pair<Matrix, double> & {
      auto it = lam_inv_cache.find(m);
      if (it == lam_inv_cache.end()) {
        Matrix lam = b_inv;
        Matrix mw = w_inv;
        mw *= static_cast<double>(m);
        lam += mw;
        lam.symmetrize();
        Cholesky cl(lam);
        it = lam_inv_cache.emplace(m, std::make_pair(cl.inverse(),
                                                     cl.log_det()))
                 .first;
      }
      return it->second;
    };

    double ll = 0.0;
    Matrix b_acc(d, d);
    Matrix w_acc(d, d);
    Vec mu_shift(d, 0.0);  // sum over items of (d_ij - m_i)
    for (const auto &[id, blk] : speakers) {
      const size_t m = blk.items.size();
      const auto &[lam_inv, logdet_lam] = posterior_of(m);
      Vec sum_d(d, 0.0);
      double qw = 0.0;  // sum_j d' W^-1 d
      for (size_t idx : blk.items) {
        Vec dv = sub(embeddings[idx], mu);
        axpy(sum_d, 1.0, dv);
        qw += dot(dv, w_inv.apply(dv));
      }
      Vec h = w_inv.apply(sum_d);
      Vec post_mean = lam_inv.apply(h);

      ll += -0.5 * static_cast<double>(m) *
                (static_cast<double>(d) * kLog2Pi + logdet_w) -
            0.5 * (logdet_b + logdet_lam) - 0.5 * qw +
            0.5 * dot(h, post_mean);

      // M-step accumulators.
      b_acc += lam_inv;
      b_acc.add_outer(post_mean, 1.0);
      Matrix mlam = lam_inv;
      mlam *= static_cast<double>(m);
      w_acc += mlam;
      for (size_t idx : blk.items) {
        Vec dv = sub(embeddings[idx], mu);
        Vec resid = sub(dv, post_mean);
        w_acc.add_outer(resid, 1.0);
        axpy(mu_shift, 1.0, resid);
      }
    }
    rep.log_likelihoods.push_back(ll);
    rep.iterations = iter + 1;

    b = b_acc;
    b *= 1.0 / static_cast<double>(speakers.size());
    b.symmetrize();
    w = w_acc;
    w *= 1.0 / static_cast<double>(n_total);
    w.symmetrize();
    for (size_t i = 0; i < d; ++i) mu[i] += mu_shift[i] / n_total;

    if (iter > 0 && opts.tolerance > 0.0 &&
        std::abs(ll - prev_ll) <= opts.tolerance * (1.0 + std::abs(ll)))
      break;
    prev_ll = ll;
  }

  if (regularize_spd(&b)) ++rep.regularisations;
  if (regularize_spd(&w)) ++rep.regularisations;
  PldaModel model{mu, b, w};
  model.between.symmetrize();
  model.within.symmetrize();
  model.validate();
  return model;
}

ScoringForm scoring_form(const PldaModel &model) {
  model.validate();
  const size_t d = model.dim();
  Matrix t = model.between;
  t += model.within;
  t.symmetrize();
  Cholesky chol_t(t);
  Matrix t_inv = chol_t.inverse();
  t_inv.symmetrize();

  // Schur complement of the same-speaker block covariance [[T, B], [B, T]]:
  //   M = T - B T^-1 B,  E = M^-1
  // whose inverse blocks are [[E, F], [F, E]] with F = -E B T^-1.  Then for
  // centered u, v:
  //   llr = 1/2 u'(T^-1 - E)u + 1/2 v'(T^-1 - E)v - u'F v
  //         + 1/2 (log|T| - log|M|)
  // and the mean is absorbed into the linear/constant terms below.
  Matrix bt_inv = model.between * t_inv;        // B T^-1
  Matrix m = t - bt_inv * model.between;        // T - B T^-1 B
  m.symmetrize();
  Cholesky chol_m(m);
  Matrix e = chol_m.inverse();
  e.symmetrize();

  ScoringForm form;
  form.q = t_inv - e;
  form.q *= 0.5;
  form.q.symmetrize();
  form.p = e * bt_inv;
  form.p *= 0.5;
  form.p.symmetrize();
  const double k0_centered = 0.5 * (chol_t.log_det() - chol_m.log_det());

  Matrix qp = form.q;
  qp += form.p;
  Vec qp_mu = qp.apply(model.mean);
  form.c = scaled(qp_mu, -2.0);
  form.k0 = 2.0 * dot(model.mean, qp_mu) + k0_centered;
  (void)d;
  return form;
}

double plda_score(const ScoringForm &form, const Vec &x1, const Vec &x2) {
  VCN_CHECK(x1.size() == form.dim() && x2.size() == form.dim(), kDimension)
      << "plda_score dims " << x1.size() << "/" << x2.size() << " vs form "
      << form.dim();
  // Every reduction below is invariant under swapping (x1, x2) at IEEE
  // level, so the score is exactly symmetric: 2 x1'P x2 is evaluated as
  // x1'P x2 + x2'P x1, and the per-side terms meet in a commutative sum.
  const double side = quad_form(form.q, x1, x1) + quad_form(form.q, x2, x2);
  const double cross = quad_form(form.p, x1, x2) + quad_form(form.p, x2, x1);
  return side + cross + dot(form.c, add(x1, x2)) + form.k0;
}

double joint_llr_oracle(const PldaModel &model, const Vec &x1, const Vec &x2) {
  const size_t d = model.dim();
  VCN_CHECK(x1.size() == d && x2.size() == d, kDimension) << "oracle dims";
  Matrix t = model.between;
  t += model.within;

  Matrix sigma_same(2 * d, 2 * d);
  Matrix sigma_diff(2 * d, 2 * d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      sigma_same.at(i, j) = t.at(i, j);
      sigma_same.at(d + i, d + j) = t.at(i, j);
      sigma_same.at(i, d + j) = model.between.at(i, j);
      sigma_same.at(d + i, j) = model.between.at(i, j);
      sigma_diff.at(i, j) = t.at(i, j);
      sigma_diff.at(d + i, d + j) = t.at(i, j);
    }
  Vec xc(2 * d);
  for (size_t i = 0; i < d; ++i) {
    xc[i] = x1[i] - model.mean[i];
    xc[d + i] = x2[i] - model.mean[i];
  }
  Cholesky cs(sigma_same), cd(sigma_diff);
  const double q_same = dot(xc, cs.solve(xc));
  const double q_diff = dot(xc, cd.solve(xc));
  return -0.5 * (cs.log_det() - cd.log_det()) - 0.5 * (q_same - q_diff);
}

void save_plda(const std::string &path, const PldaModel &model,
               const PreprocessStats &pre, const PldaFitReport &report) {
  auto os = open_out(path);
  os << "vcnorm-plda v1\n";
  os << "dim: " << model.dim() << "\n";
  os << "iterations: " << report.iterations << "\n";
  os << "tolerance: " << 1e-7 << "\n";
  write_vcdb_vec(os, pre.mean);
  write_vcdb_vec(os, model.mean);
  write_vcdb(os, model.between);
  write_vcdb(os, model.within);
}

void load_plda(const std::string &path, PldaModel *model,
               PreprocessStats *pre) {
  auto is = open_in(path);
  std::string line;
  std::getline(is, line);
  VCN_CHECK(line.rfind("vcnorm-plda", 0) == 0, kIo) << "bad plda header";
  std::getline(is, line);  // dim
  std::getline(is, line);  // iterations
  std::getline(is, line);  // tolerance
  pre->mean = read_vcdb_vec(is);
  model->mean = read_vcdb_vec(is);
  model->between = read_vcdb(is);
  model->within = read_vcdb(is);
  model->validate();
}

}  // namespace vcn
