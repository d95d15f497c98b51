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

#include "qpkkt/scalar.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "qpkkt/error.hpp"

namespace qpkkt {

namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void ParseFailure(std::string_view text) {
  throw Error(ErrorKind::kParse,
              "malformed number '" + std::string(text) + "'");
}

mpz_class PowerOfTen(unsigned long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

}  // namespace

double ToDouble(const Rational& q) { return q.get_d(); }

Rational ExactRational(double d) {
  if (!std::isfinite(d)) {
    throw Error(ErrorKind::kOutOfRange, "non-finite value has no rational");
  }
  Rational q(d);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

Rational SnapRational(double d, std::int64_t max_den) {
  if (max_den < 1) {
    throw Error(ErrorKind::kInvalidParameter, "denominator bound must be >= 1");
  }
  const Rational exact = ExactRational(d);
  const mpz_class bound(static_cast<long>(max_den));
  if (exact.get_den() <= bound) return exact;

  const int sign = sgn(exact);
  mpz_class n = abs(exact.get_num());
  mpz_class den = exact.get_den();
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (true) {
    mpz_class a = n / den;
    mpz_class q2 = q0 + a * q1;
    if (q2 > bound) break;
    mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpz_class rem = n - a * den;
    n = den;
    den = rem;
    if (den == 0) break;
  }
  const mpz_class k = (bound - q0) / q1;
  Rational semi(p0 + k * p1, q0 + k * q1);
  Rational convergent(p1, q1);
  semi.canonicalize();
  convergent.canonicalize();
  const Rational target = abs(exact);
  Rational best = abs(convergent - target) <= abs(semi - target) ? convergent
                                                                 : semi;
  return sign < 0 ? Rational(-best) : best;
}

Rational ParseRational(std::string_view text) {
  if (text.empty()) ParseFailure(text);
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) ParseFailure(text);
    mpz_class q(std::string(den), 10);
    if (q == 0) ParseFailure(text);
    value = Rational(mpz_class(std::string(num), 10), q);
    value.canonicalize();
  } else {
    std::string_view mantissa = body;
    long exponent = 0;
    if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = body.substr(0, e);
      std::string_view exp_text = body.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' ||
                                exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!AllDigits(exp_text) || exp_text.size() > 6) ParseFailure(text);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      int_part = mantissa.substr(0, dot);
      frac_part = mantissa.substr(dot + 1);
      if (!frac_part.empty() && !AllDigits(frac_part)) ParseFailure(text);
    }
    if (int_part.empty() && frac_part.empty()) ParseFailure(text);
    if (!int_part.empty() && !AllDigits(int_part)) ParseFailure(text);
    const std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num(digits, 10);
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0) {
      value = Rational(num * PowerOfTen(static_cast<unsigned long>(exponent)));
    } else {
      value = Rational(num, PowerOfTen(static_cast<unsigned long>(-exponent)));
      value.canonicalize();
    }
  }
  if (negative) value = -value;
  return value;
}

std::string FormatRational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kNotSymmetric: return "matrix not symmetric";
    case ErrorKind::kNotSquare: return "matrix not square";
    case ErrorKind::kInfeasible: return "infeasible point";
    case ErrorKind::kInvalidScale: return "invalid scale";
    case ErrorKind::kOutOfRange: return "value out of range";
    case ErrorKind::kHypothesisFailed: return "hypothesis failed";
    case ErrorKind::kInvalidParameter: return "invalid parameter";
    case ErrorKind::kParse: return "parse error";
  }
  return "unknown error";
}

}  // namespace qpkkt
