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

#include "qpkkt/rng.hpp"

#include <cmath>
#include <limits>

namespace qpkkt {

std::uint64_t Rng::UniformInt(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorKind::kInvalidParameter, "empty integer range");
  }
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = Next();
  while (v >= limit) v = Next();
  return v % bound;
}

std::int64_t Rng::UniformInt(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) {
    throw Error(ErrorKind::kInvalidParameter, "empty integer range");
  }
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(UniformInt(span));
}

double Rng::UniformDouble() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

Rational Rng::UniformRational(std::int64_t lo, std::int64_t hi,
                              std::int64_t max_den) {
  const std::int64_t q = UniformInt(1, max_den);
  const std::int64_t p = UniformInt(lo * q, hi * q);
  Rational r(static_cast<long>(p), static_cast<unsigned long>(q));
  r.canonicalize();
  return r;
}

Vec<double> Rng::Dirichlet(std::size_t n, double scale) {
  Vec<double> out(n);
  double total = 0.0;
  for (double& e : out) {
    e = -std::log1p(-UniformDouble());
    total += e;
  }
  if (total <= 0.0) {
    for (double& e : out) e = scale / static_cast<double>(n);
    return out;
  }
  for (double& e : out) e = e / total * scale;
  return out;
}

}  // namespace qpkkt
