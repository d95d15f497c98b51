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

#include "qpkkt/reductions.hpp"

#include <algorithm>

namespace qpkkt {

template <Scalar T>
SimplexQP<T> GameToSimplexQp(const Matrix<T>& a) {
  Matrix<T> q(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = T(-2) * a(i, j);
  }
  SymMatrix<T> sym(std::move(q));
  const std::size_t n = sym.size();
  return SimplexQP<T>(std::move(sym), Vec<T>(n, T(0)), T(1));
}

template <Scalar T>
GameEmbedding<T> SimplexQpToGame(const SimplexQP<T>& qp) {
  if (!qp.homogeneous()) {
    throw Error(ErrorKind::kInvalidParameter,
                "game embedding needs b = 0; homogenize first");
  }
  if (qp.scale() != 1) {
    throw Error(ErrorKind::kInvalidParameter,
                "game embedding needs s = 1; normalize the scale first");
  }
  const std::size_t n = qp.size();
  Matrix<T> abar(n, n);
  T lo = -qp.quadratic()(0, 0) / T(2);
  T hi = lo;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      abar(i, j) = -qp.quadratic()(i, j) / T(2);
      lo = std::min(lo, abar(i, j));
      hi = std::max(hi, abar(i, j));
    }
  }
  PayoffMap<T> map{lo, hi == lo ? T(1) : T(hi - lo)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      abar(i, j) = (abar(i, j) - map.offset) / map.scale;
    }
  }
  Matrix<T> b = abar;
  return GameEmbedding<T>{BimatrixGame<T>(std::move(abar), std::move(b)),
                          std::move(map)};
}

Rational ReductionCertificate::ObjectiveConstant() const {
  return Rational(static_cast<long>(n)) * big_m / (Rational(2) * delta);
}

Rational ReductionBigM(const BoxQP<Rational>& qp) {
  Rational best(1);
  for (std::size_t i = 0; i < qp.size(); ++i) {
    Rational row = abs(qp.linear()[i]);
    for (const Rational& e : qp.quadratic().row(i)) row += abs(e);
    if (row > best) best = row;
  }
  return best;
}

Rational ReductionDelta(const Rational& eps, std::size_t n,
                        const Rational& big_m) {
  return eps / (Rational(4) + Rational(4) * Rational(static_cast<long>(n)) *
                                  big_m);
}

SimplexQP<Rational> BuildPenalizedQp(const ReductionCertificate& cert) {
  const std::size_t n = cert.n;
  const IndexMap& idx = cert.index_map;
  if (cert.source.size() != n || idx.n != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "certificate dimensions disagree with its source");
  }
  if (sgn(cert.delta) <= 0) {
    throw Error(ErrorKind::kOutOfRange, "certificate delta must be positive");
  }
  const Rational slope = cert.PenaltySlope();
  const auto& a = cert.source.quadratic();
  const auto& b = cert.source.linear();

  Matrix<Rational> q(idx.size(), idx.size());
  Vec<Rational> lin(idx.size(), Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q(idx.x(i), idx.x(j)) = a(i, j);
    q(idx.x(i), idx.x(i)) += slope;
    q(idx.y(i), idx.y(i)) = slope;
    q(idx.x(i), idx.y(i)) = slope;
    q(idx.y(i), idx.x(i)) = slope;
    lin[idx.x(i)] = b[i] - slope;
    lin[idx.y(i)] = -slope;
  }
  return SimplexQP<Rational>(SymMatrix<Rational>(std::move(q)), std::move(lin),
                             cert.scale);
}

BoxReduction BoxToSimplex(const BoxQP<Rational>& qp, const Rational& eps) {
  if (sgn(eps) <= 0) {
    throw Error(ErrorKind::kOutOfRange, "reduction tolerance must be positive");
  }
  const std::size_t n = qp.size();
  const Rational big_m = ReductionBigM(qp);
  ReductionCertificate cert{n,
                            eps,
                            big_m,
                            ReductionDelta(eps, n, big_m),
                            Rational(2 * static_cast<long>(n)),
                            IndexMap{n},
                            qp};
  SimplexQP<Rational> constructed = BuildPenalizedQp(cert);
  return BoxReduction{std::move(constructed), std::move(cert)};
}

std::vector<std::string> CertificateProblems(const ReductionCertificate& cert) {
  std::vector<std::string> problems;
  if (cert.n != cert.source.size()) {
    problems.push_back("n does not match the source dimension");
  }
  if (cert.index_map.n != cert.n) {
    problems.push_back("index map does not match n");
  }
  if (sgn(cert.eps) <= 0) problems.push_back("eps must be positive");
  if (cert.big_m < 1) problems.push_back("M must be at least 1");
  if (cert.big_m != ReductionBigM(cert.source)) {
    problems.push_back("M differs from max(1, max_i |b_i| + sum_j |a_ij|)");
  }
  if (sgn(cert.eps) > 0 &&
      cert.delta != ReductionDelta(cert.eps, cert.n, cert.big_m)) {
    problems.push_back("delta differs from eps / (4 + 4 n M)");
  }
  if (cert.scale != Rational(2 * static_cast<long>(cert.n))) {
    problems.push_back("scale differs from 2n");
  }
  return problems;
}

Rational PenalizedObjective(const ReductionCertificate& cert,
                            VecView<Rational> point) {
  const IndexMap& idx = cert.index_map;
  if (point.size() != idx.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "point length does not match 2n + 1");
  }
  const auto& a = cert.source.quadratic();
  const auto& b = cert.source.linear();
  Rational total(0);
  for (std::size_t i = 0; i < cert.n; ++i) {
    const Rational& xi = point[idx.x(i)];
    for (std::size_t j = i + 1; j < cert.n; ++j) {
      total += a(i, j) * xi * point[idx.x(j)];
    }
    total += a(i, i) / 2 * xi * xi;
    total += b[i] * xi;
    const Rational pair = xi + point[idx.y(i)] - 1;
    total += cert.big_m / (2 * cert.delta) * pair * pair;
  }
  return total;
}

Vec<Rational> PullBack(const ReductionCertificate& cert,
                       VecView<Rational> point) {
  const IndexMap& idx = cert.index_map;
  const Vec<Rational> feasible =
      RequireSimplexFeasible<Rational>(point, idx.size(), cert.scale);
  Vec<Rational> out(cert.n);
  for (std::size_t i = 0; i < cert.n; ++i) {
    const Rational& xi = feasible[idx.x(i)];
    out[i] = xi > 1 ? Rational(1) : xi;
  }
  return out;
}

Vec<Rational> LiftBoxPoint(const ReductionCertificate& cert,
                           VecView<Rational> x) {
  const Vec<Rational> box = RequireBoxFeasible<Rational>(x, cert.n);
  const IndexMap& idx = cert.index_map;
  Vec<Rational> out(idx.size(), Rational(0));
  for (std::size_t i = 0; i < cert.n; ++i) {
    out[idx.x(i)] = box[i];
    out[idx.y(i)] = 1 - box[i];
  }
  out[idx.z()] = Rational(static_cast<long>(cert.n));
  return out;
}

bool AuditRecord::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AuditCheck& c) { return c.passed; });
}

const AuditCheck* AuditRecord::Find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

AuditRecord AuditTheoremInvariants(const ReductionCertificate& cert,
                                   VecView<Rational> point,
                                   const KKTReport<Rational>& report) {
  AuditRecord record;
  auto add = [&record](const char* name, bool ok, std::string detail) {
    record.checks.push_back(AuditCheck{name, ok, ok ? "" : std::move(detail)});
  };

  std::vector<std::string> problems = CertificateProblems(cert);
  if (!report.verdict) problems.push_back("report is not a passing verdict");
  if (report.tolerance != cert.delta) {
    problems.push_back("report tolerance differs from delta");
  }
  const IndexMap& idx = cert.index_map;
  if (point.size() != idx.size()) {
    problems.push_back("point length does not match 2n + 1");
    add(kAuditCertificate, false, problems.back());
    return record;
  }
  {
    std::string joined;
    for (const auto& p : problems) joined += (joined.empty() ? "" : "; ") + p;
    add(kAuditCertificate, problems.empty(), joined);
  }

  const Rational& delta = cert.delta;
  const Rational four_delta = 4 * delta;

  std::string pair_failure;
  std::string overshoot_failure;
  Vec<Rational> x_block(cert.n);
  for (std::size_t i = 0; i < cert.n; ++i) {
    const Rational& xi = point[idx.x(i)];
    x_block[i] = xi;
    if (!(xi + point[idx.y(i)] < 2) && pair_failure.empty()) {
      pair_failure = "x + y >= 2 at coordinate " + std::to_string(i);
    }
    if (xi > 1 + four_delta && overshoot_failure.empty()) {
      overshoot_failure = "x > 1 + 4 delta at coordinate " + std::to_string(i);
    }
  }
  add(kAuditPairSums, pair_failure.empty(), pair_failure);
  add(kAuditZPositive, sgn(point[idx.z()]) > 0, "z is not positive");

  const bool dual_ok = report.dual_value.has_value() &&
                       *report.dual_value >= -delta &&
                       *report.dual_value <= delta;
  add(kAuditDualBand, dual_ok, "dual value outside [-delta, delta]");

  const Vec<Rational> h = QpGradient<Rational>(
      cert.source.quadratic(), cert.source.linear(), x_block);
  std::string box_failure;
  const Rational slope = cert.PenaltySlope();
  for (std::size_t i = 0; i < cert.n && box_failure.empty(); ++i) {
    const Rational& xi = x_block[i];
    bool ok = true;
    if (sgn(xi) == 0) {
      ok = h[i] >= -four_delta;
    } else if (xi < 1) {
      ok = abs(h[i]) <= four_delta;
    } else {
      ok = h[i] + slope * (xi - 1) <= 2 * delta;
    }
    if (!ok) box_failure = "coordinate " + std::to_string(i);
  }
  add(kAuditBoxConditions, box_failure.empty(), box_failure);
  add(kAuditOvershoot, overshoot_failure.empty(), overshoot_failure);
  return record;
}

#define QPKKT_INSTANTIATE(T)                                          \
  template SimplexQP<T> GameToSimplexQp<T>(const Matrix<T>&);         \
  template struct PayoffMap<T>;                                       \
  template struct GameEmbedding<T>;                                   \
  template GameEmbedding<T> SimplexQpToGame<T>(const SimplexQP<T>&);

QPKKT_INSTANTIATE(double)
QPKKT_INSTANTIATE(Rational)

#undef QPKKT_INSTANTIATE

}  // namespace qpkkt
