// src/common/matrix.cpp

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

#include "common/matrix.hpp"

#include <cmath>

#include "common/error.hpp"

namespace vcn {

Matrix Matrix::identity(size_t n, double scale) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = scale;
  return m;
}

Matrix Matrix::diag(const Vec &v) {
  Matrix m(v.size(), v.size());
  for (size_t i = 0; i < v.size(); ++i) m.at(i, i) = v[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix &o) const {
  VCN_CHECK(c_ == o.r_, kDimension) << "matmul " << c_ << " vs " << o.r_;
  Matrix out(r_, o.c_);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t k = 0; k < c_; ++k) {
      const double v = at(i, k);
      if (v == 0.0) continue;
      const double *orow = o.row(k);
      double *dst = out.row(i);
      for (size_t j = 0; j < o.c_; ++j) dst[j] += v * orow[j];
    }
  }
  return out;
}

Matrix &Matrix::operator+=(const Matrix &o) {
  VCN_CHECK(r_ == o.r_ && c_ == o.c_, kDimension) << "matrix add";
  for (size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
  return *this;
}

Matrix &Matrix::operator-=(const Matrix &o) {
  VCN_CHECK(r_ == o.r_ && c_ == o.c_, kDimension) << "matrix sub";
  for (size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
  return *this;
}

Matrix &Matrix::operator*=(double s) {
  for (auto &v : d_) v *= s;
  return *this;
}

Vec Matrix::apply(const Vec &x) const {
  VCN_CHECK(x.size() == c_, kDimension) << "matvec";
  Vec y(r_, 0.0);
  for (size_t i = 0; i < r_; ++i) {
    const double *ri = row(i);
    double acc = 0.0;
    for (size_t j = 0; j < c_; ++j) acc += ri[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Vec Matrix::apply_transposed(const Vec &x) const {
  VCN_CHECK(x.size() == r_, kDimension) << "matvec^T";
  Vec y(c_, 0.0);
  for (size_t i = 0; i < r_; ++i) {
    const double *ri = row(i);
    for (size_t j = 0; j < c_; ++j) y[j] += ri[j] * x[i];
  }
  return y;
}

void Matrix::add_outer(const Vec &x, double w) {
  VCN_CHECK(x.size() == r_ && r_ == c_, kDimension) << "add_outer";
  for (size_t i = 0; i < r_; ++i) {
    double *ri = row(i);
    const double wx = w * x[i];
    for (size_t j = 0; j < c_; ++j) ri[j] += wx * x[j];
  }
}

void Matrix::symmetrize() {
  VCN_CHECK(r_ == c_, kDimension) << "symmetrize";
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = i + 1; j < c_; ++j) {
      const double v = 0.5 * (at(i, j) + at(j, i));
      at(i, j) = v;
      at(j, i) = v;
    }
}

double Matrix::frobenius_distance(const Matrix &o) const {
  VCN_CHECK(r_ == o.r_ && c_ == o.c_, kDimension) << "frobenius_distance";
  double acc = 0.0;
  for (size_t i = 0; i < d_.size(); ++i) {
    const double d = d_[i] - o.d_[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double Matrix::frobenius_norm() const {
  double acc = 0.0;
  for (double v : d_) acc += v * v;
  return std::sqrt(acc);
}

double Matrix::trace() const {
  double acc = 0.0;
  for (size_t i = 0; i < std::min(r_, c_); ++i) acc += at(i, i);
  return acc;
}

bool Cholesky::try_factor(const Matrix &a, Matrix *lower_out) {
  const size_t n = a.rows();
  if (a.cols() != n) return false;
  Matrix l(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      double s = a.at(i, j);
      for (size_t k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
      if (i == j) {
        if (s <= 0.0 || !std::isfinite(s)) return false;
        l.at(i, i) = std::sqrt(s);
      } else {
        l.at(i, j) = s / l.at(j, j);
      }
    }
  }
  *lower_out = std::move(l);
  return true;
}

Cholesky::Cholesky(const Matrix &a) {
  VCN_CHECK(a.rows() == a.cols(), kDimension) << "cholesky of non-square";
  if (!try_factor(a, &l_))
    VCN_THROW(kDegenerate) << "matrix not positive definite (dim "
                           << a.rows() << ")";
}

double Cholesky::log_det() const {
  double acc = 0.0;
  for (size_t i = 0; i < l_.rows(); ++i) acc += std::log(l_.at(i, i));
  return 2.0 * acc;
}

Vec Cholesky::solve(const Vec &b) const {
  const size_t n = l_.rows();
  VCN_CHECK(b.size() == n, kDimension) << "cholesky solve";
  Vec y(n);
  for (size_t i = 0; i < n; ++i) {  // L y = b
    double s = b[i];
    for (size_t k = 0; k < i; ++k) s -= l_.at(i, k) * y[k];
    y[i] = s / l_.at(i, i);
  }
  Vec x(n);
  for (size_t ii = n; ii-- > 0;) {  // L^T x = y
    double s = y[ii];
    for (size_t k = ii + 1; k < n; ++k) s -= l_.at(k, ii) * x[k];
    x[ii] = s / l_.at(ii, ii);
  }
  return x;
}

Matrix Cholesky::solve(const Matrix &b) const {
  Matrix out(b.rows(), b.cols());
  // Solve column by column.
  for (size_t j = 0; j < b.cols(); ++j) {
    Vec col(b.rows());
    for (size_t i = 0; i < b.rows(); ++i) col[i] = b.at(i, j);
    Vec x = solve(col);
    for (size_t i = 0; i < b.rows(); ++i) out.at(i, j) = x[i];
  }
  return out;
}

Matrix Cholesky::inverse() const {
  return solve(Matrix::identity(l_.rows()));
}

double dot(const Vec &a, const Vec &b) {
  VCN_CHECK(a.size() == b.size(), kDimension) << "dot";
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec &a) { return std::sqrt(dot(a, a)); }

Vec &axpy(Vec &y, double a, const Vec &x) {
  VCN_CHECK(y.size() == x.size(), kDimension) << "axpy";
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

Vec scaled(const Vec &x, double a) {
  Vec y(x);
  for (auto &v : y) v *= a;
  return y;
}

Vec sub(const Vec &a, const Vec &b) {
  VCN_CHECK(a.size() == b.size(), kDimension) << "vec sub";
  Vec y(a.size());
  for (size_t i = 0; i < a.size(); ++i) y[i] = a[i] - b[i];
  return y;
}

Vec add(const Vec &a, const Vec &b) {
  VCN_CHECK(a.size() == b.size(), kDimension) << "vec add";
  Vec y(a.size());
  for (size_t i = 0; i < a.size(); ++i) y[i] = a[i] + b[i];
  return y;
}

double quad_form(const Matrix &a, const Vec &x, const Vec &y) {
  return dot(x, a.apply(y));
}

}  // namespace vcn
