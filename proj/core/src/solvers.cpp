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

#include "qpkkt/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "qpkkt/rng.hpp"

namespace qpkkt {

namespace {

struct FloatQp {
  SymMatrix<double> a;
  Vec<double> b;
  double scale = 1.0;

  Vec<double> Gradient(VecView<double> x) const {
    return QpGradient<double>(a, b, x);
  }
  // 1/2 x^T A x + b^T x from an already computed gradient.
  double ObjectiveFromGradient(VecView<double> x, VecView<double> g) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * (g[i] + b[i]);
    return 0.5 * acc;
  }
};

class BoxGeometry {
 public:
  explicit BoxGeometry(const BoxQP<Rational>& qp)
      : exact_(qp), float_{ToDouble(qp.quadratic()), ToDouble(qp.linear())} {}

  const FloatQp& problem() const { return float_; }
  std::size_t size() const { return exact_.size(); }

  Vec<double> Project(VecView<double> v) const { return ProjectBox<double>(v); }
  Vec<double> Center() const { return Vec<double>(size(), 0.5); }
  Vec<double> RandomStart(Rng& rng) const {
    Vec<double> x(size());
    for (double& e : x) e = rng.UniformDouble();
    return x;
  }

  double WorstResidual(VecView<double> x, VecView<double> g,
                       double eps) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < 1.0 && g[i] < -eps) worst = std::max(worst, -eps - g[i]);
      if (x[i] > 0.0 && g[i] > eps) worst = std::max(worst, g[i] - eps);
    }
    return worst;
  }

  std::pair<Vec<Rational>, KKTReport<Rational>> Exact(
      VecView<double> x, const Rational& eps) const {
    Vec<Rational> snapped = SnapToBox(x);
    KKTReport<Rational> report = VerifyBoxKkt<Rational>(exact_, snapped, eps);
    return {std::move(snapped), std::move(report)};
  }

 private:
  const BoxQP<Rational>& exact_;
  FloatQp float_;
};

class SimplexGeometry {
 public:
  explicit SimplexGeometry(const SimplexQP<Rational>& qp)
      : exact_(qp),
        float_{ToDouble(qp.quadratic()), ToDouble(qp.linear()),
               qp.scale().get_d()} {}

  const FloatQp& problem() const { return float_; }
  std::size_t size() const { return exact_.size(); }

  Vec<double> Project(VecView<double> v) const {
    return ProjectSimplex<double>(v, float_.scale);
  }
  Vec<double> Center() const {
    return Vec<double>(size(), float_.scale / static_cast<double>(size()));
  }
  Vec<double> RandomStart(Rng& rng) const {
    return Project(rng.Dirichlet(size(), float_.scale));
  }

  double WorstResidual(VecView<double> x, VecView<double> g,
                       double eps) const {
    const double lowest = *std::min_element(g.begin(), g.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0.0) worst = std::max(worst, g[i] - lowest - 2.0 * eps);
    }
    return worst;
  }

  std::pair<Vec<Rational>, KKTReport<Rational>> Exact(
      VecView<double> x, const Rational& eps) const {
    Vec<Rational> snapped = SnapToSimplex(x, exact_.scale());
    KKTReport<Rational> report =
        VerifySimplexKkt<Rational>(exact_, snapped, eps);
    return {std::move(snapped), std::move(report)};
  }

 private:
  const SimplexQP<Rational>& exact_;
  FloatQp float_;
};

using StepFn = std::function<Vec<double>(const Vec<double>& x,
                                         const Vec<double>& g,
                                         double objective,
                                         std::size_t iteration)>;

template <class Geometry>
SolveResult Drive(const Geometry& geo, const SolverParams& params,
                  const StepFn& step, bool frank_wolfe) {
  params.Validate();
  const double eps = params.eps.get_d();
  const FloatQp& fqp = geo.problem();
  Rng rng(params.rng_seed);

  SolveResult result;
  for (std::size_t attempt = 0; attempt <= params.restarts; ++attempt) {
    Vec<double> x;
    if (attempt == 0) {
      if (params.start) {
        if (params.start->size() != geo.size()) {
          throw Error(ErrorKind::kDimensionMismatch,
                      "start point has the wrong length");
        }
        x = geo.Project(*params.start);
      } else {
        x = geo.Center();
      }
    } else {
      x = geo.RandomStart(rng);
    }
    result.attempts = attempt + 1;

    bool verified_last = false;
    for (std::size_t k = 0;; ++k) {
      const Vec<double> g = fqp.Gradient(x);
      const double f = fqp.ObjectiveFromGradient(x, g);
      const double residual = geo.WorstResidual(x, g, eps);
      if (params.record_trace) {
        double gap = 0.0;
        if (frank_wolfe) {
          const auto best = std::min_element(g.begin(), g.end());
          gap = Dot<double>(g, x) - *best * fqp.scale;
        }
        result.trace.push_back(TraceEntry{attempt, k, f, residual, gap});
      }
      const bool last = k == params.max_iters;
      if ((last || k % params.check_every == 0) && residual <= 0.0) {
        auto [snapped, report] = geo.Exact(x, params.eps);
        verified_last = last;
        if (report.verdict) {
          result.point = std::move(x);
          result.exact_point = std::move(snapped);
          result.report = std::move(report);
          result.converged = true;
          return result;
        }
        if (last) {
          result.point = x;
          result.exact_point = std::move(snapped);
          result.report = std::move(report);
        }
      }
      if (last) break;
      x = step(x, g, f, k);
      ++result.iterations;
    }
    if (!verified_last) {
      auto [snapped, report] = geo.Exact(x, params.eps);
      result.point = std::move(x);
      result.exact_point = std::move(snapped);
      result.report = std::move(report);
    }
  }
  return result;
}

template <class Geometry>
StepFn ProjectedGradientStep(const Geometry& geo, const SolverParams& params) {
  const FloatQp& fqp = geo.problem();
  const double lipschitz = params.lipschitz.value_or(DefaultLipschitz(fqp.a));
  if (params.step_rule == StepRule::kFixed) {
    return [&geo, lipschitz](const Vec<double>& x, const Vec<double>& g,
                             double, std::size_t) {
      Vec<double> v(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i] - g[i] / lipschitz;
      return geo.Project(v);
    };
  }
  // Backtracking on the sufficient-decrease condition
  //   f(x+) <= f(x) + <g, x+ - x> + |x+ - x|^2 / (2t),
  // warm-started from twice the previous accepted step.
  auto step_size = std::make_shared<double>(1.0 / lipschitz);
  return [&geo, &fqp, step_size](const Vec<double>& x, const Vec<double>& g,
                                 double f, std::size_t) {
    double t = *step_size * 2.0;
    Vec<double> v(x.size());
    for (int tries = 0; tries < 200; ++tries) {
      for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i] - t * g[i];
      Vec<double> next = geo.Project(v);
      double lin = 0.0;
      double sq = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = next[i] - x[i];
        lin += g[i] * d;
        sq += d * d;
      }
      const Vec<double> gn = fqp.Gradient(next);
      const double fn = fqp.ObjectiveFromGradient(next, gn);
      if (fn <= f + lin + sq / (2.0 * t)) {
        *step_size = t;
        return next;
      }
      t *= 0.5;
    }
    return x;
  };
}

}  // namespace

void SolverParams::Validate() const {
  if (max_iters < 1) {
    throw Error(ErrorKind::kInvalidParameter, "max_iters must be at least 1");
  }
  if (check_every < 1) {
    throw Error(ErrorKind::kInvalidParameter,
                "check_every must be at least 1");
  }
  if (sgn(eps) <= 0) {
    throw Error(ErrorKind::kInvalidParameter, "eps must be positive");
  }
  if (lipschitz && !(*lipschitz > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter,
                "Lipschitz estimate must be positive");
  }
}

double DefaultLipschitz(const SymMatrix<double>& a) {
  return 1.0 + MaxAbsRowSum(a.matrix());
}

SolveResult PgdBox(const BoxQP<Rational>& qp, const SolverParams& params) {
  const BoxGeometry geo(qp);
  return Drive(geo, params, ProjectedGradientStep(geo, params), false);
}

SolveResult PgdSimplex(const SimplexQP<Rational>& qp,
                       const SolverParams& params) {
  const SimplexGeometry geo(qp);
  return Drive(geo, params, ProjectedGradientStep(geo, params), false);
}

Vec<double> FrankWolfeStep(const SimplexQP<double>& qp, VecView<double> x,
                           FrankWolfeRule rule, std::size_t iteration,
                           bool away_steps) {
  const std::size_t n = qp.size();
  const Vec<double> ax = MatVec<double>(qp.quadratic().matrix(), x);
  Vec<double> g = ax;
  for (std::size_t i = 0; i < n; ++i) g[i] += qp.linear()[i];
  const std::size_t k = static_cast<std::size_t>(
      std::min_element(g.begin(), g.end()) - g.begin());
  const double s = qp.scale();
  const double gx = Dot<double>(g, x);
  const double xax = Dot<double>(x, ax);

  // Toward vertex k: d = s e_k - x. Away from vertex a: d = x - s e_a.
  std::size_t vertex = k;
  double sign = 1.0;
  double slope = s * g[k] - gx;
  double max_gamma = 1.0;
  if (away_steps) {
    std::size_t a = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] > 0.0 && (a == n || g[i] > g[a])) a = i;
    }
    const double away_slope = a == n ? 0.0 : gx - s * g[a];
    if (a != n && away_slope < slope && x[a] < s) {
      vertex = a;
      sign = -1.0;
      slope = away_slope;
      max_gamma = x[a] / (s - x[a]);
    }
  }
  const double curvature = s * s * qp.quadratic()(vertex, vertex) -
                           2.0 * s * ax[vertex] + xax;

  double gamma = 0.0;
  if (rule == FrankWolfeRule::kOpenLoop) {
    gamma = std::min(2.0 / (static_cast<double>(iteration) + 2.0), max_gamma);
  } else if (curvature > 0.0) {
    gamma = std::clamp(-slope / curvature, 0.0, max_gamma);
  } else {
    // Concave along d: the minimum sits at an endpoint.
    const double end = max_gamma;
    gamma = slope * end + 0.5 * curvature * end * end < 0.0 ? end : 0.0;
  }
  Vec<double> next(x.begin(), x.end());
  for (std::size_t i = 0; i < n; ++i) next[i] -= sign * gamma * x[i];
  next[vertex] += sign * gamma * s;
  if (sign < 0.0 && gamma == max_gamma) next[vertex] = 0.0;
  // Rescale rather than project so coordinates at zero stay exactly zero.
  double total = 0.0;
  for (double& e : next) {
    e = std::max(e, 0.0);
    total += e;
  }
  if (!(total > 0.0)) return ProjectSimplex<double>(next, s);
  for (double& e : next) e *= s / total;
  return next;
}

SolveResult FrankWolfe(const SimplexQP<Rational>& qp,
                       const SolverParams& params) {
  const SimplexGeometry geo(qp);
  const SimplexQP<double> fqp(geo.problem().a, geo.problem().b,
                              geo.problem().scale);
  const FrankWolfeRule rule = params.frank_wolfe_rule;
  const bool away = params.frank_wolfe_away_steps;
  StepFn step = [&fqp, rule, away](const Vec<double>& x, const Vec<double>&,
                                   double, std::size_t k) {
    return FrankWolfeStep(fqp, x, rule, k, away);
  };
  return Drive(geo, params, step, true);
}

}  // namespace qpkkt
