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

#ifndef QPKKT_GAMES_HPP_
#define QPKKT_GAMES_HPP_

#include <cstddef>

#include "qpkkt/numerics.hpp"

namespace qpkkt {

// Two-player normal-form game with payoffs in [0, 1]. The row player receives
// A(i, j), the column player B(i, j).
template <Scalar T>
class BimatrixGame {
 public:
  // Throws kDimensionMismatch when shapes differ and kOutOfRange when an
  // entry leaves [0, 1].
  BimatrixGame(Matrix<T> a, Matrix<T> b);

  std::size_t rows() const { return a_.rows(); }
  std::size_t cols() const { return a_.cols(); }
  const Matrix<T>& row_payoffs() const { return a_; }
  const Matrix<T>& col_payoffs() const { return b_; }

  friend bool operator==(const BimatrixGame&, const BimatrixGame&) = default;

 private:
  Matrix<T> a_;
  Matrix<T> b_;
};

template <Scalar T>
struct MixedProfile {
  Vec<T> x;
  Vec<T> y;

  bool symmetric() const { return x == y; }
  friend bool operator==(const MixedProfile&, const MixedProfile&) = default;
};

struct GameClass {
  bool symmetric = false;
  bool common_payoff = false;
  bool imitation = false;

  friend bool operator==(const GameClass&, const GameClass&) = default;
};

template <Scalar T>
GameClass Classify(const BimatrixGame<T>& game);

// (B^T, A^T): the same game with the player labels exchanged.
template <Scalar T>
BimatrixGame<T> SwapPlayers(const BimatrixGame<T>& game);

// Throws kDimensionMismatch or kInfeasible unless x and y are probability
// vectors of the right lengths (exact on rationals; on floats within
// kSimplexSumRelTolerance / kCoordinateTolerance).
template <Scalar T>
void ValidateProfile(const BimatrixGame<T>& game, const MixedProfile<T>& p);

// Payoff vectors and per-player gaps of a profile.
template <Scalar T>
struct DeviationGaps {
  Vec<T> row_payoffs;   // (A y)_i
  Vec<T> col_payoffs;   // (x^T B)_j
  T row_regret;         // max_i (A y)_i - x^T A y
  T col_regret;         // max_j (x^T B)_j - x^T B y
  T row_support_lag;    // max over i in supp(x) of max(A y) - (A y)_i
  T col_support_lag;    // same for the column player
};

template <Scalar T>
DeviationGaps<T> ComputeGaps(const BimatrixGame<T>& game,
                             const MixedProfile<T>& p);

// eps-Nash: neither player gains more than eps by a pure deviation.
template <Scalar T>
bool VerifyNash(const BimatrixGame<T>& game, const MixedProfile<T>& p,
                const T& eps);

// eps-well-supported: every played strategy is within eps of a best response.
template <Scalar T>
bool VerifyWsne(const BimatrixGame<T>& game, const MixedProfile<T>& p,
                const T& eps);

// Turns an (eps^2/8)-Nash equilibrium into an eps-WSNE by dropping every
// played strategy whose payoff lags the best response by more than eps/2 and
// renormalizing. Symmetric profiles of symmetric games stay symmetric.
// Throws kOutOfRange unless 0 < eps <= 1, kHypothesisFailed when p is not an
// (eps^2/8)-NE.
template <Scalar T>
MixedProfile<T> NashToWsne(const BimatrixGame<T>& game,
                           const MixedProfile<T>& p, const T& eps);

// From a symmetric eps-WSNE (y, y) of (A, A^T) to an eps-WSNE (x, y) of the
// imitation game (A, I), with x uniform on supp(y). Throws kHypothesisFailed
// when (y, y) is not an eps-WSNE.
template <Scalar T>
MixedProfile<T> ImitationForward(const Matrix<T>& a, VecView<T> y,
                                 const T& eps);

// From an eps-WSNE (x, y) of (A, I) back to the symmetric eps-WSNE (y, y) of
// (A, A^T). Requires eps < 1/n (kOutOfRange otherwise); throws
// kHypothesisFailed when (x, y) is not an eps-WSNE of (A, I).
template <Scalar T>
Vec<T> ImitationBackward(const Matrix<T>& a, const MixedProfile<T>& p,
                         const T& eps);

}  // namespace qpkkt

#endif  // QPKKT_GAMES_HPP_
