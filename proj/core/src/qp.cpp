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

#include "qpkkt/qp.hpp"

#include <string>

namespace qpkkt {

namespace {

void RequireDimension(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": expected length " +
                    std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace

template <Scalar T>
BoxQP<T>::BoxQP(SymMatrix<T> a, Vec<T> b) : a_(std::move(a)), b_(std::move(b)) {
  RequireDimension(b_.size(), a_.size(), "box QP linear term");
}

template <Scalar T>
SimplexQP<T>::SimplexQP(SymMatrix<T> a, Vec<T> b, T scale)
    : a_(std::move(a)), b_(std::move(b)), scale_(std::move(scale)) {
  RequireDimension(b_.size(), a_.size(), "simplex QP linear term");
  if (a_.size() == 0) {
    throw Error(ErrorKind::kDimensionMismatch, "simplex QP needs n >= 1");
  }
  if (!(scale_ > 0)) {
    throw Error(ErrorKind::kInvalidScale, "simplex scale must be positive");
  }
}

template <Scalar T>
bool SimplexQP<T>::homogeneous() const {
  for (const T& e : b_) {
    if (e != 0) return false;
  }
  return true;
}

template <Scalar T>
std::size_t KKTReport<T>::WorstIndex() const {
  std::size_t worst = residuals.size();
  T best(0);
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    const T mag = Abs(residuals[i]);
    if (mag > best) {
      best = mag;
      worst = i;
    }
  }
  return worst;
}

template <Scalar T>
T KKTReport<T>::WorstResidual() const {
  const std::size_t i = WorstIndex();
  return i == residuals.size() ? T(0) : residuals[i];
}

template <Scalar T>
Vec<T> RequireBoxFeasible(VecView<T> x, std::size_t n) {
  RequireDimension(x.size(), n, "box point");
  T slack(0);
  if constexpr (!kIsExact<T>) slack = kCoordinateTolerance;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -slack || x[i] > T(1) + slack) {
      throw Error(ErrorKind::kInfeasible,
                  "coordinate " + std::to_string(i) + " outside [0, 1]");
    }
  }
  return ProjectBox<T>(x);
}

template <Scalar T>
Vec<T> RequireSimplexFeasible(VecView<T> x, std::size_t n, const T& s) {
  RequireDimension(x.size(), n, "simplex point");
  T slack(0);
  T sum_slack(0);
  if constexpr (!kIsExact<T>) {
    slack = kCoordinateTolerance;
    sum_slack = kSimplexSumRelTolerance * s;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -slack) {
      throw Error(ErrorKind::kInfeasible,
                  "coordinate " + std::to_string(i) + " is negative");
    }
  }
  if (Abs(T(Sum<T>(x) - s)) > sum_slack) {
    throw Error(ErrorKind::kInfeasible, "coordinates do not sum to the scale");
  }
  if constexpr (kIsExact<T>) {
    return Vec<T>(x.begin(), x.end());
  } else {
    return ProjectSimplex<T>(x, s);
  }
}

template <Scalar T>
KKTReport<T> VerifyBoxKkt(const BoxQP<T>& qp, VecView<T> x, const T& eps) {
  if (eps < 0) {
    throw Error(ErrorKind::kOutOfRange, "tolerance must be nonnegative");
  }
  const Vec<T> point = RequireBoxFeasible<T>(x, qp.size());
  KKTReport<T> report;
  report.tolerance = eps;
  report.gradient = QpGradient<T>(qp.quadratic(), qp.linear(), point);
  report.residuals.assign(point.size(), T(0));
  report.verdict = true;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const T& g = report.gradient[i];
    T& r = report.residuals[i];
    const bool at_lower = point[i] == 0;
    const bool at_upper = point[i] == 1;
    // Lower face tolerates any g >= -eps, upper face any g <= eps.
    if (!at_upper && g < -eps) r = g + eps;
    if (!at_lower && g > eps) r = g - eps;
    if (r != 0) report.verdict = false;
  }
  return report;
}

template <Scalar T>
KKTReport<T> VerifySimplexKkt(const SimplexQP<T>& qp, VecView<T> x,
                              const T& eps) {
  if (eps < 0) {
    throw Error(ErrorKind::kOutOfRange, "tolerance must be nonnegative");
  }
  const Vec<T> point = RequireSimplexFeasible<T>(x, qp.size(), qp.scale());
  KKTReport<T> report;
  report.tolerance = eps;
  report.gradient = QpGradient<T>(qp.quadratic(), qp.linear(), point);
  const Vec<T>& g = report.gradient;

  bool any_support = false;
  T support_max(0);
  T overall_min = g.front();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < overall_min) overall_min = g[i];
    if (point[i] > 0 && (!any_support || g[i] > support_max)) {
      support_max = g[i];
      any_support = true;
    }
  }
  if (!any_support) {
    throw Error(ErrorKind::kInfeasible, "point has empty support");
  }

  // Each support coordinate needs g_i - min_j g_j <= 2 eps.
  report.residuals.assign(g.size(), T(0));
  const T allowed = overall_min + T(2) * eps;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (point[i] > 0 && g[i] > allowed) report.residuals[i] = g[i] - allowed;
  }
  T lo = support_max - eps;
  T hi = overall_min + eps;
  report.verdict = lo <= hi;
  if (report.verdict) report.dual_value = T((lo + hi) / T(2));
  report.dual_interval.emplace(std::move(lo), std::move(hi));
  return report;
}

template <Scalar T>
SymMatrix<T> Symmetrize(const Matrix<T>& m) {
  if (!m.square()) {
    throw Error(ErrorKind::kNotSquare, "symmetrize needs a square matrix");
  }
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = (m(i, j) + m(j, i)) / T(2);
    }
  }
  return SymMatrix<T>(std::move(out));
}

template <Scalar T>
SimplexQP<T> Homogenize(const SimplexQP<T>& qp) {
  const std::size_t n = qp.size();
  const auto& b = qp.linear();
  Matrix<T> out = qp.quadratic().matrix();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) += (b[i] + b[j]) / qp.scale();
    }
  }
  return SimplexQP<T>(SymMatrix<T>(std::move(out)), Vec<T>(n, T(0)),
                      qp.scale());
}

template <Scalar T>
Vec<T> ScaleNormalization<T>::Forward(VecView<T> x) const {
  Vec<T> out(x.begin(), x.end());
  for (T& e : out) e /= scale;
  return out;
}

template <Scalar T>
Vec<T> ScaleNormalization<T>::Inverse(VecView<T> x) const {
  Vec<T> out(x.begin(), x.end());
  for (T& e : out) e *= scale;
  return out;
}

template <Scalar T>
ScaleNormalization<T> NormalizeScale(const SimplexQP<T>& qp) {
  const T& s = qp.scale();
  const T s2 = s * s;
  const std::size_t n = qp.size();
  Matrix<T> a = qp.quadratic().matrix();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) *= s2;
  }
  Vec<T> b = qp.linear();
  for (T& e : b) e *= s;
  return ScaleNormalization<T>{
      SimplexQP<T>(SymMatrix<T>(std::move(a)), std::move(b), T(1)), s};
}

#define QPKKT_INSTANTIATE(T)                                                 \
  template class BoxQP<T>;                                                   \
  template class SimplexQP<T>;                                               \
  template struct KKTReport<T>;                                              \
  template struct ScaleNormalization<T>;                                     \
  template Vec<T> RequireBoxFeasible<T>(VecView<T>, std::size_t);            \
  template Vec<T> RequireSimplexFeasible<T>(VecView<T>, std::size_t,         \
                                            const T&);                      \
  template KKTReport<T> VerifyBoxKkt<T>(const BoxQP<T>&, VecView<T>,         \
                                        const T&);                          \
  template KKTReport<T> VerifySimplexKkt<T>(const SimplexQP<T>&, VecView<T>, \
                                            const T&);                      \
  template SymMatrix<T> Symmetrize<T>(const Matrix<T>&);                     \
  template SimplexQP<T> Homogenize<T>(const SimplexQP<T>&);                  \
  template ScaleNormalization<T> NormalizeScale<T>(const SimplexQP<T>&);

QPKKT_INSTANTIATE(double)
QPKKT_INSTANTIATE(Rational)

#undef QPKKT_INSTANTIATE

}  // namespace qpkkt
