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

#ifndef QPKKT_SCALAR_HPP_
#define QPKKT_SCALAR_HPP_

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace qpkkt {

// Exact carrier. Verifiers default to it.
using Rational = mpq_class;

// The two interchangeable arithmetic carriers. Every templated operation in
// the library is instantiated for exactly these.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool kIsExact = std::same_as<T, Rational>;

// Denominator bound used when snapping float solver output to rationals.
inline constexpr std::int64_t kSnapDenominatorBound = 1'000'000'000;

double ToDouble(const Rational& q);
inline double ToDouble(double d) { return d; }

// Exact value of a finite double (binary expansion, no rounding).
Rational ExactRational(double d);

// Best rational approximation of d with denominator <= max_den, via
// continued-fraction convergents and the last admissible semiconvergent.
Rational SnapRational(double d,
                      std::int64_t max_den = kSnapDenominatorBound);

// Accepts "p/q" (integer p, q > 0), integers, and decimals with optional
// exponent ("0.25", "-1.5e-3"). Decimals convert exactly. Throws kParse.
Rational ParseRational(std::string_view text);

// Canonical form: "p" for integers, otherwise "p/q" in lowest terms.
std::string FormatRational(const Rational& q);

template <Scalar T>
T FromRational(const Rational& q) {
  if constexpr (kIsExact<T>) {
    return q;
  } else {
    return q.get_d();
  }
}

template <Scalar T>
T Abs(const T& v) {
  if constexpr (kIsExact<T>) {
    return abs(v);
  } else {
    return v < 0 ? -v : v;
  }
}

template <Scalar T>
int Sign(const T& v) {
  if constexpr (kIsExact<T>) {
    return sgn(v);
  } else {
    return (v > 0) - (v < 0);
  }
}

}  // namespace qpkkt

#endif  // QPKKT_SCALAR_HPP_
