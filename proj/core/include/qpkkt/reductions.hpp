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

#ifndef QPKKT_REDUCTIONS_HPP_
#define QPKKT_REDUCTIONS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "qpkkt/games.hpp"
#include "qpkkt/qp.hpp"

namespace qpkkt {

// Common-payoff symmetric game (A, A) to min -x^T A x over the unit simplex,
// i.e. quadratic term Q = -2A, b = 0, s = 1. (x, x) is an eps-WSNE of (A, A)
// exactly when x is an eps-KKT point of the result. Throws kNotSymmetric.
template <Scalar T>
SimplexQP<T> GameToSimplexQp(const Matrix<T>& a);

// game payoff = (Abar - offset) / scale, where Abar = -Q/2.
template <Scalar T>
struct PayoffMap {
  T offset;
  T scale;
};

template <Scalar T>
struct GameEmbedding {
  BimatrixGame<T> game;
  PayoffMap<T> map;

  // x is eps-KKT for the source QP iff (x, x) is an (eps/scale)-WSNE here.
  T GameTolerance(const T& eps) const { return eps / map.scale; }
};

// Requires b = 0 and s = 1 (kInvalidParameter otherwise). A constant Abar
// gets scale 1.
template <Scalar T>
GameEmbedding<T> SimplexQpToGame(const SimplexQP<T>& qp);

// Coordinates of the constructed (2n+1)-variable program: the x block, then
// the y block, then z.
struct IndexMap {
  std::size_t n = 0;

  std::size_t x(std::size_t i) const { return i; }
  std::size_t y(std::size_t i) const { return n + i; }
  std::size_t z() const { return 2 * n; }
  std::size_t size() const { return 2 * n + 1; }
};

// Everything needed to pull a point of the constructed simplex program back
// to the source box program and to audit the soundness invariants.
struct ReductionCertificate {
  std::size_t n = 0;
  Rational eps;
  Rational big_m;
  Rational delta;
  Rational scale;
  IndexMap index_map;
  BoxQP<Rational> source;

  // M / delta, the coefficient of (x_i + y_i - 1) in the x- and y-gradients.
  Rational PenaltySlope() const { return big_m / delta; }
  // n M / (2 delta): the constant the matrix encoding drops.
  Rational ObjectiveConstant() const;
};

struct BoxReduction {
  SimplexQP<Rational> qp;
  ReductionCertificate certificate;
};

// max(1, max_i (|b_i| + sum_j |a_ij|)).
Rational ReductionBigM(const BoxQP<Rational>& qp);

// eps / (4 + 4 n M).
Rational ReductionDelta(const Rational& eps, std::size_t n,
                        const Rational& big_m);

// Builds the penalized program over (x, y, z) with sum = 2n:
//   sum_{i<j} a_ij x_i x_j + sum_i a_ii/2 x_i^2 + b^T x
//     + M/(2 delta) sum_i (x_i + y_i - 1)^2.
// Throws kOutOfRange when eps <= 0.
BoxReduction BoxToSimplex(const BoxQP<Rational>& qp, const Rational& eps);

// The penalized program described by a certificate, whether or not the
// certificate is internally consistent.
SimplexQP<Rational> BuildPenalizedQp(const ReductionCertificate& cert);

// Empty when the certificate agrees with its own source and tolerance;
// otherwise one message per broken invariant.
std::vector<std::string> CertificateProblems(const ReductionCertificate& cert);

// The penalized objective evaluated term by term (constant included).
Rational PenalizedObjective(const ReductionCertificate& cert,
                            VecView<Rational> point);

// x'_i = min(1, x_i) over the x block. Throws kDimensionMismatch or
// kInfeasible.
Vec<Rational> PullBack(const ReductionCertificate& cert,
                       VecView<Rational> point);

// Candidate lift of a box point: y = 1 - x, z = n.
Vec<Rational> LiftBoxPoint(const ReductionCertificate& cert,
                           VecView<Rational> x);

struct AuditCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AuditRecord {
  std::vector<AuditCheck> checks;

  bool passed() const;
  const AuditCheck* Find(const std::string& name) const;
};

// Audit names, in report order.
inline constexpr const char* kAuditCertificate = "certificate";
inline constexpr const char* kAuditPairSums = "pair_sums_below_two";
inline constexpr const char* kAuditZPositive = "z_positive";
inline constexpr const char* kAuditDualBand = "dual_within_delta";
inline constexpr const char* kAuditBoxConditions = "box_conditions_4delta";
inline constexpr const char* kAuditOvershoot = "overshoot_bound";

// Checks at a point the caller reports as delta-KKT:
//   x_i + y_i < 2, z > 0, u in [-delta, delta],
//   source gradient h = A x + b with h_i >= -4 delta (x_i = 0),
//   |h_i| <= 4 delta (0 < x_i < 1), h_i + (M/delta)(x_i - 1) <= 2 delta
//   (x_i >= 1), and x_i <= 1 + 4 delta,
// plus certificate consistency. Never throws on a failed check.
AuditRecord AuditTheoremInvariants(const ReductionCertificate& cert,
                                   VecView<Rational> point,
                                   const KKTReport<Rational>& report);

}  // namespace qpkkt

#endif  // QPKKT_REDUCTIONS_HPP_
