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

#include "qpkkt/games.hpp"

#include <stdexcept>
#include <string>

#include "qpkkt/qp.hpp"

namespace qpkkt {

namespace {

template <Scalar T>
void ValidateDistribution(VecView<T> v, std::size_t n, const char* who) {
  if (v.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(who) + " strategy has length " +
                    std::to_string(v.size()) + ", expected " +
                    std::to_string(n));
  }
  T slack(0);
  T sum_slack(0);
  if constexpr (!kIsExact<T>) {
    slack = kCoordinateTolerance;
    sum_slack = kSimplexSumRelTolerance;
  }
  for (const T& e : v) {
    if (e < -slack) {
      throw Error(ErrorKind::kInfeasible,
                  std::string(who) + " strategy has a negative probability");
    }
  }
  if (Abs(T(Sum<T>(v) - T(1))) > sum_slack) {
    throw Error(ErrorKind::kInfeasible,
                std::string(who) + " strategy does not sum to 1");
  }
}

template <Scalar T>
T MaxEntry(const Vec<T>& v) {
  T best = v.front();
  for (const T& e : v) {
    if (e > best) best = e;
  }
  return best;
}

// max over supp(weights) of (max(payoffs) - payoffs_i).
template <Scalar T>
T SupportLag(const Vec<T>& payoffs, VecView<T> weights) {
  const T best = MaxEntry(payoffs);
  T lag(0);
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    if (weights[i] > 0 && best - payoffs[i] > lag) lag = best - payoffs[i];
  }
  return lag;
}

// Drops played strategies lagging the best payoff by more than `cutoff`.
template <Scalar T>
Vec<T> DropLaggards(VecView<T> weights, const Vec<T>& payoffs,
                    const T& cutoff) {
  const T best = MaxEntry(payoffs);
  Vec<T> kept(weights.begin(), weights.end());
  T mass(0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] > 0 && best - payoffs[i] > cutoff) kept[i] = T(0);
    mass += kept[i];
  }
  for (T& e : kept) e /= mass;
  return kept;
}

}  // namespace

template <Scalar T>
BimatrixGame<T>::BimatrixGame(Matrix<T> a, Matrix<T> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.rows() || a_.cols() != b_.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "payoff matrices have different shapes");
  }
  if (a_.rows() == 0 || a_.cols() == 0) {
    throw Error(ErrorKind::kDimensionMismatch,
                "each player needs at least one strategy");
  }
  for (const Matrix<T>* m : {&a_, &b_}) {
    for (std::size_t i = 0; i < m->rows(); ++i) {
      for (std::size_t j = 0; j < m->cols(); ++j) {
        const T& e = (*m)(i, j);
        if (e < 0 || e > 1) {
          throw Error(ErrorKind::kOutOfRange,
                      "payoff (" + std::to_string(i) + "," +
                          std::to_string(j) + ") outside [0, 1]");
        }
      }
    }
  }
}

template <Scalar T>
GameClass Classify(const BimatrixGame<T>& game) {
  const auto& a = game.row_payoffs();
  const auto& b = game.col_payoffs();
  GameClass c;
  c.symmetric = a.square() && b == a.Transposed();
  c.common_payoff = b == a;
  c.imitation = a.square() && b == Matrix<T>::Identity(a.rows());
  return c;
}

template <Scalar T>
BimatrixGame<T> SwapPlayers(const BimatrixGame<T>& game) {
  return BimatrixGame<T>(game.col_payoffs().Transposed(),
                         game.row_payoffs().Transposed());
}

template <Scalar T>
void ValidateProfile(const BimatrixGame<T>& game, const MixedProfile<T>& p) {
  ValidateDistribution<T>(p.x, game.rows(), "row");
  ValidateDistribution<T>(p.y, game.cols(), "column");
}

template <Scalar T>
DeviationGaps<T> ComputeGaps(const BimatrixGame<T>& game,
                             const MixedProfile<T>& p) {
  ValidateProfile(game, p);
  DeviationGaps<T> gaps;
  gaps.row_payoffs = MatVec<T>(game.row_payoffs(), p.y);
  gaps.col_payoffs = VecMat<T>(p.x, game.col_payoffs());
  gaps.row_regret = MaxEntry(gaps.row_payoffs) - Dot(p.x, gaps.row_payoffs);
  gaps.col_regret = MaxEntry(gaps.col_payoffs) - Dot(p.y, gaps.col_payoffs);
  gaps.row_support_lag = SupportLag<T>(gaps.row_payoffs, p.x);
  gaps.col_support_lag = SupportLag<T>(gaps.col_payoffs, p.y);
  return gaps;
}

template <Scalar T>
bool VerifyNash(const BimatrixGame<T>& game, const MixedProfile<T>& p,
                const T& eps) {
  const auto gaps = ComputeGaps(game, p);
  return gaps.row_regret <= eps && gaps.col_regret <= eps;
}

template <Scalar T>
bool VerifyWsne(const BimatrixGame<T>& game, const MixedProfile<T>& p,
                const T& eps) {
  const auto gaps = ComputeGaps(game, p);
  return gaps.row_support_lag <= eps && gaps.col_support_lag <= eps;
}

template <Scalar T>
MixedProfile<T> NashToWsne(const BimatrixGame<T>& game,
                           const MixedProfile<T>& p, const T& eps) {
  if (!(eps > 0) || eps > 1) {
    throw Error(ErrorKind::kOutOfRange, "tolerance must lie in (0, 1]");
  }
  const T nash_eps = eps * eps / T(8);
  const auto gaps = ComputeGaps(game, p);
  if (gaps.row_regret > nash_eps || gaps.col_regret > nash_eps) {
    throw Error(ErrorKind::kHypothesisFailed,
                "input is not an (eps^2/8)-Nash equilibrium");
  }
  // Dropped mass is below eps/4 per player, so each payoff gap moves by less
  // than eps/2 after renormalization.
  const T cutoff = eps / T(2);
  MixedProfile<T> out{DropLaggards<T>(p.x, gaps.row_payoffs, cutoff),
                      DropLaggards<T>(p.y, gaps.col_payoffs, cutoff)};
  if (!VerifyWsne(game, out, eps)) {
    throw std::logic_error("NashToWsne produced a profile that is not an "
                           "eps-WSNE");
  }
  return out;
}

template <Scalar T>
MixedProfile<T> ImitationForward(const Matrix<T>& a, VecView<T> y,
                                 const T& eps) {
  if (!a.square()) {
    throw Error(ErrorKind::kNotSquare, "imitation needs a square matrix");
  }
  const BimatrixGame<T> symmetric(a, a.Transposed());
  MixedProfile<T> sym{Vec<T>(y.begin(), y.end()), Vec<T>(y.begin(), y.end())};
  if (!VerifyWsne(symmetric, sym, eps)) {
    throw Error(ErrorKind::kHypothesisFailed,
                "(y, y) is not an eps-WSNE of (A, A^T)");
  }
  long support = 0;
  for (const T& e : y) support += e > 0 ? 1 : 0;
  MixedProfile<T> out{Vec<T>(y.size(), T(0)), Vec<T>(y.begin(), y.end())};
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > 0) out.x[i] = T(1) / T(support);
  }
  const BimatrixGame<T> imitation(a, Matrix<T>::Identity(a.rows()));
  if (!VerifyWsne(imitation, out, eps)) {
    throw std::logic_error("ImitationForward produced a profile that is not "
                           "an eps-WSNE of (A, I)");
  }
  return out;
}

template <Scalar T>
Vec<T> ImitationBackward(const Matrix<T>& a, const MixedProfile<T>& p,
                         const T& eps) {
  if (!a.square()) {
    throw Error(ErrorKind::kNotSquare, "imitation needs a square matrix");
  }
  const std::size_t n = a.rows();
  if (!(eps * T(static_cast<long>(n)) < T(1))) {
    throw Error(ErrorKind::kOutOfRange,
                "imitation backward needs eps < 1/n (n = " +
                    std::to_string(n) + ")");
  }
  const BimatrixGame<T> imitation(a, Matrix<T>::Identity(n));
  if (!VerifyWsne(imitation, p, eps)) {
    throw Error(ErrorKind::kHypothesisFailed,
                "(x, y) is not an eps-WSNE of (A, I)");
  }
  const BimatrixGame<T> symmetric(a, a.Transposed());
  if (!VerifyWsne(symmetric, MixedProfile<T>{p.y, p.y}, eps)) {
    throw std::logic_error("ImitationBackward produced a profile that is not "
                           "an eps-WSNE of (A, A^T)");
  }
  return p.y;
}

#define QPKKT_INSTANTIATE(T)                                                 \
  template class BimatrixGame<T>;                                            \
  template struct MixedProfile<T>;                                           \
  template struct DeviationGaps<T>;                                          \
  template GameClass Classify<T>(const BimatrixGame<T>&);                    \
  template BimatrixGame<T> SwapPlayers<T>(const BimatrixGame<T>&);           \
  template void ValidateProfile<T>(const BimatrixGame<T>&,                   \
                                   const MixedProfile<T>&);                  \
  template DeviationGaps<T> ComputeGaps<T>(const BimatrixGame<T>&,           \
                                           const MixedProfile<T>&);          \
  template bool VerifyNash<T>(const BimatrixGame<T>&, const MixedProfile<T>&, \
                              const T&);                                     \
  template bool VerifyWsne<T>(const BimatrixGame<T>&, const MixedProfile<T>&, \
                              const T&);                                     \
  template MixedProfile<T> NashToWsne<T>(                                    \
      const BimatrixGame<T>&, const MixedProfile<T>&, const T&);             \
  template MixedProfile<T> ImitationForward<T>(const Matrix<T>&, VecView<T>, \
                                               const T&);                    \
  template Vec<T> ImitationBackward<T>(const Matrix<T>&,                     \
                                       const MixedProfile<T>&, const T&);

QPKKT_INSTANTIATE(double)
QPKKT_INSTANTIATE(Rational)

#undef QPKKT_INSTANTIATE

}  // namespace qpkkt
