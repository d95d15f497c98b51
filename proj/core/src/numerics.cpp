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

#include "qpkkt/numerics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace qpkkt {

namespace {

void RequireSameLength(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": lengths " + std::to_string(a) +
                    " and " + std::to_string(b) + " differ");
  }
}

}  // namespace

template <Scalar T>
Matrix<T>::Matrix(const std::vector<std::vector<T>>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    RequireSameLength(r.size(), cols_, "ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <Scalar T>
Matrix<T> Matrix<T>::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

template <Scalar T>
std::vector<std::vector<T>> Matrix<T>::ToRows() const {
  std::vector<std::vector<T>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out[i].assign(row(i).begin(), row(i).end());
  }
  return out;
}

template <Scalar T>
Matrix<T> Matrix<T>::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

template <Scalar T>
SymMatrix<T>::SymMatrix(Matrix<T> m) : m_(std::move(m)) {
  if (!m_.square()) {
    throw Error(ErrorKind::kNotSquare,
                "expected a square matrix, got " + std::to_string(m_.rows()) +
                    "x" + std::to_string(m_.cols()));
  }
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      if (m_(i, j) != m_(j, i)) {
        throw Error(ErrorKind::kNotSymmetric,
                    "entries (" + std::to_string(i) + "," + std::to_string(j) +
                        ") and (" + std::to_string(j) + "," +
                        std::to_string(i) + ") differ");
      }
    }
  }
}

template <Scalar T>
T Dot(VecView<T> a, VecView<T> b) {
  RequireSameLength(a.size(), b.size(), "dot product");
  T acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <Scalar T>
T Sum(VecView<T> v) {
  T acc(0);
  for (const T& x : v) acc += x;
  return acc;
}

template <Scalar T>
Vec<T> MatVec(const Matrix<T>& m, VecView<T> v) {
  RequireSameLength(m.cols(), v.size(), "matrix-vector product");
  Vec<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T acc(0);
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

template <Scalar T>
Vec<T> VecMat(VecView<T> v, const Matrix<T>& m) {
  RequireSameLength(m.rows(), v.size(), "vector-matrix product");
  Vec<T> out(m.cols(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out[j] += v[i] * r[j];
  }
  return out;
}

template <Scalar T>
Vec<T> ProjectBox(VecView<T> v) {
  Vec<T> out(v.begin(), v.end());
  for (T& x : out) {
    if (x < 0) {
      x = T(0);
    } else if (x > 1) {
      x = T(1);
    }
  }
  return out;
}

template <Scalar T>
Vec<T> ProjectSimplex(VecView<T> v, const T& s) {
  if (!(s > 0)) {
    throw Error(ErrorKind::kInvalidScale, "simplex scale must be positive");
  }
  if (v.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "cannot project onto an empty "
                "simplex");
  }
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });

  // Largest k with u_k - (sum_{j<=k} u_j - s) / k > 0; k = 1 always qualifies.
  T prefix(0);
  T threshold(0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    prefix += v[order[k]];
    T candidate = (prefix - s) / T(static_cast<long>(k + 1));
    if (k == 0 || v[order[k]] - candidate > 0) {
      threshold = candidate;
    } else {
      break;
    }
  }
  Vec<T> out(v.size(), T(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    T shifted = v[i] - threshold;
    if (shifted > 0) out[i] = shifted;
  }
  return out;
}

template <Scalar T>
Vec<T> QpGradient(const SymMatrix<T>& a, VecView<T> b,
                  VecView<T> x) {
  RequireSameLength(a.size(), b.size(), "gradient: A and b");
  RequireSameLength(a.size(), x.size(), "gradient: A and x");
  Vec<T> g = MatVec(a.matrix(), x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += b[i];
  return g;
}

template <Scalar T>
T QpObjective(const SymMatrix<T>& a, VecView<T> b,
              VecView<T> x) {
  RequireSameLength(a.size(), b.size(), "objective: A and b");
  const Vec<T> ax = MatVec(a.matrix(), x);
  return Dot<T>(x, ax) / T(2) + Dot<T>(b, x);
}

template <Scalar T>
T MaxAbsRowSum(const Matrix<T>& m) {
  T best(0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T acc(0);
    for (const T& e : m.row(i)) acc += Abs(e);
    if (acc > best) best = acc;
  }
  return best;
}

Vec<double> ToDouble(std::span<const Rational> v) {
  Vec<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

Vec<Rational> ExactRational(std::span<const double> v) {
  Vec<Rational> out;
  out.reserve(v.size());
  for (double d : v) out.push_back(ExactRational(d));
  return out;
}

Matrix<double> ToDouble(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  }
  return out;
}

SymMatrix<double> ToDouble(const SymMatrix<Rational>& m) {
  return SymMatrix<double>(ToDouble(m.matrix()));
}

Vec<Rational> SnapToSimplex(std::span<const double> x, const Rational& s) {
  if (x.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "empty point");
  }
  Vec<Rational> out;
  out.reserve(x.size());
  std::size_t largest = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(x[i] > 0 ? SnapRational(x[i]) : Rational(0));
    if (x[i] > x[largest]) largest = i;
  }
  Rational rest(0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i != largest) rest += out[i];
  }
  out[largest] = s - rest;
  if (sgn(out[largest]) < 0) {
    throw Error(ErrorKind::kInfeasible, "point is too far from the simplex to "
                "snap");
  }
  return out;
}

Vec<Rational> SnapToBox(std::span<const double> x) {
  Vec<Rational> out;
  out.reserve(x.size());
  for (double d : x) {
    if (d <= 0) {
      out.emplace_back(0);
    } else if (d >= 1) {
      out.emplace_back(1);
    } else {
      out.push_back(SnapRational(d));
    }
  }
  return out;
}

#define QPKKT_INSTANTIATE(T)                                               \
  template class Matrix<T>;                                                \
  template class SymMatrix<T>;                                             \
  template T Dot<T>(VecView<T>, VecView<T>);               \
  template T Sum<T>(VecView<T>);                                   \
  template Vec<T> MatVec<T>(const Matrix<T>&, VecView<T>);         \
  template Vec<T> VecMat<T>(VecView<T>, const Matrix<T>&);         \
  template Vec<T> ProjectBox<T>(VecView<T>);                       \
  template Vec<T> ProjectSimplex<T>(VecView<T>, const T&);         \
  template Vec<T> QpGradient<T>(const SymMatrix<T>&, VecView<T>,   \
                                VecView<T>);                       \
  template T QpObjective<T>(const SymMatrix<T>&, VecView<T>,       \
                            VecView<T>);                           \
  template T MaxAbsRowSum<T>(const Matrix<T>&);

QPKKT_INSTANTIATE(double)
QPKKT_INSTANTIATE(Rational)

#undef QPKKT_INSTANTIATE

}  // namespace qpkkt
