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

#ifndef QPKKT_RNG_HPP_
#define QPKKT_RNG_HPP_

#include <cstdint>
#include <random>

#include "qpkkt/numerics.hpp"

namespace qpkkt {

// Seeded generator whose derived draws do not depend on the standard
// library's distribution implementations, so seeds reproduce across
// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  // Uniform in [0, 1) with 53 random bits.
  double UniformDouble();
  // Denominator q uniform in [1, max_den], then numerator uniform over the
  // multiples of 1/q inside [lo, hi]. lo and hi are integers.
  Rational UniformRational(std::int64_t lo, std::int64_t hi,
                           std::int64_t max_den);
  // Flat Dirichlet sample scaled to sum to `scale` (up to rounding).
  Vec<double> Dirichlet(std::size_t n, double scale = 1.0);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qpkkt

#endif  // QPKKT_RNG_HPP_
