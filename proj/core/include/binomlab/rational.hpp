// Copyright 2026 The binomlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BINOMLAB_RATIONAL_HPP
#define BINOMLAB_RATIONAL_HPP

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "binomlab/bigint.hpp"

namespace binomlab {

/// Exact rational number: the ground-truth value domain for every closed-form
/// expression in the identity family.
///
/// Invariants, maintained after every operation:
///   - denominator > 0
///   - gcd(|numerator|, denominator) = 1
///
/// Text form is "p/q" with the sign on the numerator, or just "p" when q = 1;
/// Rational::parse reads the same grammar back losslessly.
class Rational {
 public:
  Rational() noexcept { mpq_init(q_); }  // 0/1

  Rational(long long value) noexcept {
    mpq_init(q_);
    mpq_set_si(q_, static_cast<long>(value), 1u);
  }

  /// num/den, canonicalized. Throws std::domain_error when den = 0.
  Rational(long long num, long long den);
  Rational(const BigInt& num, const BigInt& den);

  Rational(const Rational& other) noexcept {
    mpq_init(q_);
    mpq_set(q_, other.q_);
  }
  Rational(Rational&& other) noexcept {
    mpq_init(q_);
    mpq_swap(q_, other.q_);
  }
  Rational& operator=(const Rational& other) noexcept {
    if (this != &other) mpq_set(q_, other.q_);
    return *this;
  }
  Rational& operator=(Rational&& other) noexcept {
    mpq_swap(q_, other.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  /// Exact conversion: every finite double is a rational p/2^e.
  /// Throws std::invalid_argument for NaN or infinity.
  static Rational from_double(double value);

  /// Parses "p/q" or "p" (optional leading sign on p, q positive).
  /// Decimal literals are rejected: they would silently change the instance.
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& rhs) {
    mpq_add(q_, q_, rhs.q_);
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    mpq_sub(q_, q_, rhs.q_);
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    mpq_mul(q_, q_, rhs.q_);
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  Rational abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
  }

  /// Nonnegative integer power; canonical in, canonical out.
  Rational pow(std::uint64_t exponent) const;

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1u) == 0; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) <=> 0;
  }

  BigInt numerator() const;
  BigInt denominator() const;

  std::string to_string() const;

  /// Round-to-nearest-even conversion (mpq_get_d truncates, which would leak
  /// double-rounding artifacts into the error reports). Overflows to +-inf.
  double to_double() const;

  mpq_srcptr raw() const { return q_; }
  mpq_ptr raw() { return q_; }

 private:
  mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace binomlab

#endif  // BINOMLAB_RATIONAL_HPP
