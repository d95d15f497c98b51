// Copyright 2026 The qpkkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPKKT_NUMERICS_HPP_
#define QPKKT_NUMERICS_HPP_

#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "qpkkt/error.hpp"
#include "qpkkt/scalar.hpp"

namespace qpkkt {

template <Scalar T>
using Vec = std::vector<T>;

// Read-only view parameter. Non-deduced, so a Vec<T> argument binds whenever
// T is fixed by another argument.
template <Scalar T>
using VecView = std::type_identity_t<std::span<const T>>;

// Dense row-major rows x cols grid.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  // Throws kDimensionMismatch for ragged input.
  explicit Matrix(const std::vector<std::vector<T>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Matrix Transposed() const;
  std::vector<std::vector<T>> ToRows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

  static Matrix Identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Square matrix whose symmetry is checked once, at construction.
template <Scalar T>
class SymMatrix {
 public:
  SymMatrix() = default;
  // Throws kNotSquare or kNotSymmetric. Symmetry is exact equality on both
  // carriers.
  explicit SymMatrix(Matrix<T> m);
  explicit SymMatrix(const std::vector<std::vector<T>>& rows)
      : SymMatrix(Matrix<T>(rows)) {}

  static SymMatrix Zero(std::size_t n) { return SymMatrix(Matrix<T>(n, n)); }

  std::size_t size() const { return m_.rows(); }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  std::span<const T> row(std::size_t i) const { return m_.row(i); }
  const Matrix<T>& matrix() const { return m_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix<T> m_;
};

template <Scalar T>
T Dot(VecView<T> a, VecView<T> b);

template <Scalar T>
T Sum(VecView<T> v);

// (M v)_i for an arbitrary rectangular grid.
template <Scalar T>
Vec<T> MatVec(const Matrix<T>& m, VecView<T> v);

// (v^T M)_j.
template <Scalar T>
Vec<T> VecMat(VecView<T> v, const Matrix<T>& m);

// Per-coordinate clamp into [0, 1].
template <Scalar T>
Vec<T> ProjectBox(VecView<T> v);

// Euclidean projection onto {x >= 0, sum x = s} by sort-and-threshold.
// Sorting is descending by value, ties broken by coordinate index. Exact on
// the rational carrier. Throws kInvalidScale when s <= 0.
template <Scalar T>
Vec<T> ProjectSimplex(VecView<T> v, const T& s);

// g = A x + b. Throws kDimensionMismatch.
template <Scalar T>
Vec<T> QpGradient(const SymMatrix<T>& a, VecView<T> b,
                  VecView<T> x);

// f(x) = 1/2 x^T A x + b^T x.
template <Scalar T>
T QpObjective(const SymMatrix<T>& a, VecView<T> b,
              VecView<T> x);

// Largest absolute row sum, an upper bound on the spectral norm.
template <Scalar T>
T MaxAbsRowSum(const Matrix<T>& m);

template <Scalar T>
T Dot(const Vec<T>& a, const Vec<T>& b) {
  return Dot<T>(VecView<T>(a), VecView<T>(b));
}

template <Scalar T>
T Sum(const Vec<T>& v) {
  return Sum<T>(VecView<T>(v));
}

template <Scalar T>
Vec<T> ProjectBox(const Vec<T>& v) {
  return ProjectBox<T>(VecView<T>(v));
}

Vec<double> ToDouble(std::span<const Rational> v);
Vec<Rational> ExactRational(std::span<const double> v);
Matrix<double> ToDouble(const Matrix<Rational>& m);
SymMatrix<double> ToDouble(const SymMatrix<Rational>& m);

// Snaps every coordinate with SnapRational, then restores sum == s exactly by
// recomputing the largest coordinate (lowest index on ties) from the others.
// Coordinates that are exactly zero stay zero.
Vec<Rational> SnapToSimplex(std::span<const double> x, const Rational& s);

// Snaps and clamps into [0, 1].
Vec<Rational> SnapToBox(std::span<const double> x);

}  // namespace qpkkt

#endif  // QPKKT_NUMERICS_HPP_
