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

#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpkkt::testing {

namespace {

template <class T>
std::vector<T> ProjectBySupports(const std::vector<T>& v, const T& s) {
  const std::size_t n = v.size();
  if (n == 0 || n > 20) throw std::invalid_argument("brute force needs n <= 20");
  std::optional<std::vector<T>> best;
  T best_dist{};
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    T total = T(0);
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) total += v[i];
    }
    const T tau = (total - s) / T(std::popcount(mask));
    std::vector<T> x(n, T(0));
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if ((mask >> i) & 1u) {
        x[i] = v[i] - tau;
        ok = x[i] >= T(0);
      }
    }
    if (!ok) continue;
    T dist = T(0);
    for (std::size_t i = 0; i < n; ++i) dist += (x[i] - v[i]) * (x[i] - v[i]);
    if (!best || dist < best_dist) {
      best = std::move(x);
      best_dist = dist;
    }
  }
  return *best;
}

std::vector<std::vector<std::size_t>> SubsetsBySize(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) s.push_back(i);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Mixed strategy on `support` making every opponent strategy in `against`
// indifferent under `payoff(i, j)` (i over `against`, j over `support`).
// Returns the strategy (full length n) and the common value.
template <class Payoff>
std::optional<std::pair<RVec, Rational>> Indifference(
    const std::vector<std::size_t>& support,
    const std::vector<std::size_t>& against, std::size_t n, Payoff payoff) {
  const std::size_t k = support.size();
  RMat m(k + 1, RVec(k + 1));
  RVec r(k + 1);
  for (std::size_t row = 0; row < k; ++row) {
    for (std::size_t col = 0; col < k; ++col) {
      m[row][col] = payoff(against[row], support[col]);
    }
    m[row][k] = -1;
  }
  for (std::size_t col = 0; col < k; ++col) m[k][col] = 1;
  r[k] = 1;
  auto z = SolveExact(std::move(m), std::move(r));
  if (!z) return std::nullopt;
  RVec strategy(n);
  for (std::size_t col = 0; col < k; ++col) {
    if (sgn((*z)[col]) < 0) return std::nullopt;
    strategy[support[col]] = (*z)[col];
  }
  return std::make_pair(std::move(strategy), (*z)[k]);
}

}  // namespace

RVec BruteProjectSimplex(const RVec& v, const Rational& s) {
  return ProjectBySupports(v, s);
}

DVec BruteProjectSimplex(const DVec& v, double s) {
  return ProjectBySupports(v, s);
}

double DirectObjective(const DMat& a, const DVec& b, const DVec& x) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) f += 0.5 * a[i][j] * x[i] * x[j];
    f += b[i] * x[i];
  }
  return f;
}

Rational DirectObjective(const RMat& a, const RVec& b, const RVec& x) {
  Rational f = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) f += a[i][j] * x[i] * x[j] / 2;
    f += b[i] * x[i];
  }
  return f;
}

DVec FiniteDifferenceGradient(const DMat& a, const DVec& b, const DVec& x,
                              double h) {
  DVec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    DVec up = x;
    DVec down = x;
    up[i] += h;
    down[i] -= h;
    g[i] = (DirectObjective(a, b, up) - DirectObjective(a, b, down)) /
           (2.0 * h);
  }
  return g;
}

RVec DirectGradient(const RMat& a, const RVec& b, const RVec& x) {
  RVec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = b[i];
    for (std::size_t j = 0; j < x.size(); ++j) g[i] += a[i][j] * x[j];
  }
  return g;
}

bool NaiveGridDualExists(const std::vector<std::int64_t>& g,
                         const std::vector<bool>& support, std::int64_t eps,
                         std::int64_t step) {
  const auto [lo_it, hi_it] = std::minmax_element(g.begin(), g.end());
  const std::int64_t lo = *lo_it - 2 * eps;
  const std::int64_t hi = *hi_it + 2 * eps;
  auto accepts = [&](std::int64_t u) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] < u - eps) return false;
      if (support[i] && g[i] > u + eps) return false;
    }
    return true;
  };
  // Any admissible u lies within eps of g at the first support coordinate,
  // so only the grid points in that window need testing.
  std::size_t first = 0;
  while (!support[first]) ++first;
  const std::int64_t k_min = (g[first] - eps - lo + step - 1) / step;
  const std::int64_t k_max = (g[first] + eps - lo) / step;
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    const std::int64_t u = lo + k * step;
    if (u > hi) break;
    if (accepts(u)) return true;
  }
  return false;
}

GameGaps DirectGaps(const RMat& a, const RMat& b, const RVec& x,
                    const RVec& y) {
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  RVec row(n);
  RVec col(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      row[i] += a[i][j] * y[j];
      col[j] += x[i] * b[i][j];
    }
  }
  GameGaps gaps;
  const Rational row_best = *std::max_element(row.begin(), row.end());
  const Rational col_best = *std::max_element(col.begin(), col.end());
  Rational row_value = 0;
  Rational col_value = 0;
  for (std::size_t i = 0; i < n; ++i) {
    row_value += x[i] * row[i];
    if (sgn(x[i]) > 0) gaps.row_lag = std::max(gaps.row_lag, Rational(row_best - row[i]));
  }
  for (std::size_t j = 0; j < m; ++j) {
    col_value += y[j] * col[j];
    if (sgn(y[j]) > 0) gaps.col_lag = std::max(gaps.col_lag, Rational(col_best - col[j]));
  }
  gaps.row_regret = row_best - row_value;
  gaps.col_regret = col_best - col_value;
  return gaps;
}

std::optional<RVec> SolveExact(RMat m, RVec r) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[c]);
    std::swap(r[pivot], r[c]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == c || sgn(m[row][c]) == 0) continue;
      const Rational f = m[row][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[row][k] -= f * m[c][k];
      r[row] -= f * r[c];
    }
  }
  RVec z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / m[i][i];
  return z;
}

std::vector<RVec> SymmetricEquilibria(const RMat& a, std::size_t limit) {
  const std::size_t n = a.size();
  std::vector<RVec> found;
  for (const auto& s : SubsetsBySize(n)) {
    auto sol = Indifference(s, s, n, [&](std::size_t i, std::size_t j) {
      return a[i][j];
    });
    if (!sol) continue;
    const auto& [y, v] = *sol;
    bool best = true;
    for (std::size_t i = 0; i < n && best; ++i) {
      Rational p = 0;
      for (std::size_t j = 0; j < n; ++j) p += a[i][j] * y[j];
      best = p <= v;
    }
    if (!best) continue;
    found.push_back(y);
    if (found.size() >= limit) break;
  }
  return found;
}

std::vector<std::pair<RVec, RVec>> BimatrixEquilibria(const RMat& a,
                                                      const RMat& b,
                                                      std::size_t limit) {
  const std::size_t n = a.size();
  const std::size_t m = a.front().size();
  std::vector<std::pair<RVec, RVec>> found;
  const auto rows = SubsetsBySize(n);
  const auto cols = SubsetsBySize(m);
  for (std::size_t k = 1; k <= std::min(n, m); ++k) {
    for (const auto& s : rows) {
      if (s.size() != k) continue;
      for (const auto& t : cols) {
        if (t.size() != k) continue;
        auto ys = Indifference(t, s, m, [&](std::size_t i, std::size_t j) {
          return a[i][j];
        });
        if (!ys) continue;
        auto xs = Indifference(s, t, n, [&](std::size_t j, std::size_t i) {
          return b[i][j];
        });
        if (!xs) continue;
        const auto& [y, v] = *ys;
        const auto& [x, w] = *xs;
        bool best = true;
        for (std::size_t i = 0; i < n && best; ++i) {
          Rational p = 0;
          for (std::size_t j = 0; j < m; ++j) p += a[i][j] * y[j];
          best = p <= v;
        }
        for (std::size_t j = 0; j < m && best; ++j) {
          Rational p = 0;
          for (std::size_t i = 0; i < n; ++i) p += x[i] * b[i][j];
          best = p <= w;
        }
        if (!best) continue;
        found.emplace_back(x, y);
        if (found.size() >= limit) return found;
      }
    }
  }
  return found;
}

std::pair<RVec, RVec> PerturbWithinRegret(Rng& rng, const RMat& a,
                                          const RMat& b, const RVec& x,
                                          const RVec& y, const Rational& bound,
                                          bool symmetric) {
  auto interior = [&](std::size_t n) {
    RVec w(n);
    Rational total = 0;
    for (auto& e : w) {
      e = 1 + static_cast<long>(rng.UniformInt(100));
      total += e;
    }
    for (auto& e : w) e /= total;
    return w;
  };
  const RVec rx = interior(x.size());
  const RVec ry = symmetric ? rx : interior(y.size());
  for (Rational t(1, 2); t > Rational(1, 1 << 30); t /= 2) {
    RVec px(x.size());
    RVec py(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) px[i] = (1 - t) * x[i] + t * rx[i];
    for (std::size_t j = 0; j < y.size(); ++j) py[j] = (1 - t) * y[j] + t * ry[j];
    const GameGaps gaps = DirectGaps(a, b, px, py);
    if (gaps.row_regret <= bound && gaps.col_regret <= bound) {
      return {std::move(px), std::move(py)};
    }
  }
  return {x, y};
}

RMat RandomRationalMatrix(Rng& rng, std::size_t rows, std::size_t cols,
                          std::int64_t lo, std::int64_t hi, bool symmetric,
                          std::int64_t max_den) {
  RMat m(rows, RVec(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = symmetric ? i : 0; j < cols; ++j) {
      m[i][j] = rng.UniformRational(lo, hi, max_den);
      if (symmetric) m[j][i] = m[i][j];
    }
  }
  return m;
}

RVec RandomRationalVector(Rng& rng, std::size_t n, std::int64_t lo,
                          std::int64_t hi, std::int64_t max_den) {
  RVec v(n);
  for (auto& e : v) e = rng.UniformRational(lo, hi, max_den);
  return v;
}

RVec RandomSimplexPoint(Rng& rng, std::size_t n, const Rational& s) {
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& e : w) {
    e = rng.UniformInt(4) == 0 ? 0 : 1 + static_cast<std::int64_t>(
                                             rng.UniformInt(1000));
    total += e;
  }
  if (total == 0) {
    w[rng.UniformInt(n)] = 1;
    total = 1;
  }
  RVec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = s * Rational(w[i], total);
    x[i].canonicalize();
  }
  return x;
}

DMat RandomDoubleMatrix(Rng& rng, std::size_t n, double lo, double hi,
                        bool symmetric) {
  DMat m(n, DVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
      m[i][j] = lo + (hi - lo) * rng.UniformDouble();
      if (symmetric) m[j][i] = m[i][j];
    }
  }
  return m;
}

DVec RandomDoubleVector(Rng& rng, std::size_t n, double lo, double hi) {
  DVec v(n);
  for (auto& e : v) e = lo + (hi - lo) * rng.UniformDouble();
  return v;
}

RVec Rationals(std::initializer_list<const char*> values) {
  RVec out;
  for (const char* v : values) out.push_back(ParseRational(v));
  return out;
}

RMat Transpose(const RMat& m) {
  RMat t(m.front().size(), RVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

}  // namespace qpkkt::testing
