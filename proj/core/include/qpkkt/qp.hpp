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

#ifndef QPKKT_QP_HPP_
#define QPKKT_QP_HPP_

#include <cstddef>
#include <optional>
#include <utility>

#include "qpkkt/numerics.hpp"

namespace qpkkt {

// min 1/2 x^T A x + b^T x  subject to  0 <= x_i <= 1.
template <Scalar T>
class BoxQP {
 public:
  BoxQP(SymMatrix<T> a, Vec<T> b);

  std::size_t size() const { return b_.size(); }
  const SymMatrix<T>& quadratic() const { return a_; }
  const Vec<T>& linear() const { return b_; }

  friend bool operator==(const BoxQP&, const BoxQP&) = default;

 private:
  SymMatrix<T> a_;
  Vec<T> b_;
};

// min 1/2 x^T A x + b^T x  subject to  x >= 0, sum x = s  (s > 0).
template <Scalar T>
class SimplexQP {
 public:
  SimplexQP(SymMatrix<T> a, Vec<T> b, T scale = T(1));

  std::size_t size() const { return b_.size(); }
  const SymMatrix<T>& quadratic() const { return a_; }
  const Vec<T>& linear() const { return b_; }
  const T& scale() const { return scale_; }
  bool homogeneous() const;

  friend bool operator==(const SimplexQP&, const SimplexQP&) = default;

 private:
  SymMatrix<T> a_;
  Vec<T> b_;
  T scale_;
};

// Outcome of an eps-KKT check. Residuals are signed distances to the violated
// bound, zero where the coordinate's condition holds.
template <Scalar T>
struct KKTReport {
  bool verdict = false;
  Vec<T> residuals;
  Vec<T> gradient;
  // Simplex only: [max_{x_i>0} g_i - eps, min_i g_i + eps]; may be empty
  // (first > second) when the verdict is false.
  std::optional<std::pair<T, T>> dual_interval;
  // Midpoint of dual_interval when it is nonempty.
  std::optional<T> dual_value;
  T tolerance = T(0);

  // Index of the largest |residual|, or size() when every residual is zero.
  std::size_t WorstIndex() const;
  T WorstResidual() const;
};

template <Scalar T>
KKTReport<T> VerifyBoxKkt(const BoxQP<T>& qp, VecView<T> x, const T& eps);

template <Scalar T>
KKTReport<T> VerifySimplexKkt(const SimplexQP<T>& qp, VecView<T> x,
                              const T& eps);

// Feasibility tolerances of the float path. The rational path is exact.
inline constexpr double kSimplexSumRelTolerance = 1e-9;
inline constexpr double kCoordinateTolerance = 1e-12;

// Throws kInfeasible unless x lies in [0,1]^n (within kCoordinateTolerance on
// the float carrier); returns the clamped point.
template <Scalar T>
Vec<T> RequireBoxFeasible(VecView<T> x, std::size_t n);

// Throws kInfeasible unless x >= 0 and sum x = s (within the float
// tolerances); returns the re-projected point on the float carrier and x
// unchanged on the rational one.
template <Scalar T>
Vec<T> RequireSimplexFeasible(VecView<T> x, std::size_t n, const T& s);

// (M + M^T) / 2. Preserves 1/2 x^T M x for every x.
template <Scalar T>
SymMatrix<T> Symmetrize(const Matrix<T>& m);

// Folds the linear term into the quadratic one using sum x = s:
// A' = A + (b 1^T + 1 b^T) / s, b' = 0.
template <Scalar T>
SimplexQP<T> Homogenize(const SimplexQP<T>& qp);

// Change of variables x' = x / s onto the unit simplex.
template <Scalar T>
struct ScaleNormalization {
  SimplexQP<T> canonical;
  T scale;

  Vec<T> Forward(VecView<T> x) const;
  Vec<T> Inverse(VecView<T> x) const;
  // x is eps-KKT for the source iff Forward(x) is (s * eps)-KKT for canonical.
  T ForwardTolerance(const T& eps) const { return scale * eps; }
};

template <Scalar T>
ScaleNormalization<T> NormalizeScale(const SimplexQP<T>& qp);

}  // namespace qpkkt

#endif  // QPKKT_QP_HPP_
