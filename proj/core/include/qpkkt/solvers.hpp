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

#ifndef QPKKT_SOLVERS_HPP_
#define QPKKT_SOLVERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpkkt/qp.hpp"

namespace qpkkt {

enum class StepRule { kFixed, kBacktracking };
enum class FrankWolfeRule { kExactLineSearch, kOpenLoop };

struct SolverParams {
  StepRule step_rule = StepRule::kFixed;
  // Defaults to 1 + the largest absolute row sum of the quadratic matrix.
  std::optional<double> lipschitz;
  std::size_t max_iters = 1'000'000;  // per attempt
  std::size_t check_every = 100;
  Rational eps{1, 1000};
  std::uint64_t rng_seed = 0;
  // Extra attempts from random starts when an attempt fails to converge.
  std::size_t restarts = 10;
  // First-attempt start; the box center or the simplex barycenter otherwise.
  std::optional<Vec<double>> start;
  bool record_trace = false;
  FrankWolfeRule frank_wolfe_rule = FrankWolfeRule::kExactLineSearch;
  // Also consider moving mass away from the worst support vertex, which lets
  // Frank-Wolfe drop coordinates from the support before reaching a vertex.
  bool frank_wolfe_away_steps = false;

  // Throws kInvalidParameter.
  void Validate() const;
};

struct TraceEntry {
  std::size_t attempt = 0;
  std::size_t iteration = 0;
  double objective = 0.0;
  // Largest float KKT residual at the iterate.
  double worst_residual = 0.0;
  // Frank-Wolfe gap <g, x - v>; zero for the projected-gradient solvers.
  double gap = 0.0;
};

struct SolveResult {
  Vec<double> point;
  // Snapped to rationals (denominators <= kSnapDenominatorBound) and
  // re-verified exactly; `report` refers to this point.
  Vec<Rational> exact_point;
  KKTReport<Rational> report;
  std::size_t iterations = 0;  // steps over all attempts
  std::size_t attempts = 0;
  bool converged = false;
  std::vector<TraceEntry> trace;
};

// 1 + max_i sum_j |a_ij|.
double DefaultLipschitz(const SymMatrix<double>& a);

// x <- clamp(x - g(x)/L). Stops once the exact verifier accepts the snapped
// iterate at eps, checked every check_every steps.
SolveResult PgdBox(const BoxQP<Rational>& qp, const SolverParams& params);

// x <- simplex projection of (x - g(x)/L) onto sum x = s.
SolveResult PgdSimplex(const SimplexQP<Rational>& qp,
                       const SolverParams& params);

// Conditional gradient with vertex oracle s * e_k, k = argmin g (lowest
// index on ties). The gap is traced but never used as the stopping test.
SolveResult FrankWolfe(const SimplexQP<Rational>& qp,
                       const SolverParams& params);

// One Frank-Wolfe update from x with the given rule and iteration counter.
// With away_steps the update may instead shift mass off the support vertex
// with the largest gradient entry.
Vec<double> FrankWolfeStep(const SimplexQP<double>& qp, VecView<double> x,
                           FrankWolfeRule rule, std::size_t iteration,
                           bool away_steps = false);

}  // namespace qpkkt

#endif  // QPKKT_SOLVERS_HPP_
