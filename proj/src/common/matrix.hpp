// src/common/matrix.hpp

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

#ifndef VCNORM_COMMON_MATRIX_HPP_
#define VCNORM_COMMON_MATRIX_HPP_

#include <cstddef>
#include <vector>

namespace vcn {

using Vec = std::vector<double>;

// Row-major dense matrix.  Small-dimension use only (the embedding spaces
// here are D <= a few hundred); no attempt at blocking or vectorisation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : r_(rows), c_(cols), d_(rows * cols, fill) {}

  static Matrix identity(size_t n, double scale = 1.0);
  static Matrix diag(const Vec &v);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  double &at(size_t r, size_t c) { return d_[r * c_ + c]; }
  double at(size_t r, size_t c) const { return d_[r * c_ + c]; }
  double *row(size_t r) { return d_.data() + r * c_; }
  const double *row(size_t r) const { return d_.data() + r * c_; }
  const std::vector<double> &data() const { return d_; }
  std::vector<double> &data() { return d_; }

  Matrix transposed() const;
  Matrix operator*(const Matrix &o) const;
  Matrix &operator+=(const Matrix &o);
  Matrix &operator-=(const Matrix &o);
  Matrix &operator*=(double s);
  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }

  Vec apply(const Vec &x) const;          // A x
  Vec apply_transposed(const Vec &x) const;  // A^T x
  void add_outer(const Vec &x, double w);  // A += w * x x^T
  void symmetrize();

  // Frobenius norm of (this - o).
  double frobenius_distance(const Matrix &o) const;
  double frobenius_norm() const;
  double trace() const;

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<double> d_;
};

// Lower-triangular Cholesky factorisation of an SPD matrix.  Construction
// throws vcn::Error(kDegenerate) when the matrix is not positive definite.
class Cholesky {
 public:
  explicit Cholesky(const Matrix &a);
  // Factorisation attempt that reports failure instead of throwing.
  static bool try_factor(const Matrix &a, Matrix *lower_out);

  const Matrix &lower() const { return l_; }
  double log_det() const;          // of the factored matrix
  Vec solve(const Vec &b) const;   // A x = b
  Matrix solve(const Matrix &b) const;
  Matrix inverse() const;

 private:
  Matrix l_;
};

double dot(const Vec &a, const Vec &b);
double norm2(const Vec &a);
Vec &axpy(Vec &y, double a, const Vec &x);  // y += a x
Vec scaled(const Vec &x, double a);
Vec sub(const Vec &a, const Vec &b);
Vec add(const Vec &a, const Vec &b);

// x^T A y (A square).
double quad_form(const Matrix &a, const Vec &x, const Vec &y);

}  // namespace vcn

#endif  // VCNORM_COMMON_MATRIX_HPP_
