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

#ifndef BINOMLAB_BIGINT_HPP
#define BINOMLAB_BIGINT_HPP

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace binomlab {

/// Signed integer of unbounded magnitude. Thin value-type wrapper over GMP's
/// mpz_t; immutable from the caller's point of view except through the
/// arithmetic operators.
class BigInt {
 public:
  BigInt() noexcept { mpz_init(z_); }

  BigInt(long long value) noexcept {
    static_assert(sizeof(long) == sizeof(long long),
                  "LP64 assumed: mpz_set_si takes the full 64-bit value");
    mpz_init_set_si(z_, static_cast<long>(value));
  }

  /// Parses a base-10 literal with optional leading '-'.
  explicit BigInt(const std::string& decimal);

  BigInt(const BigInt& other) noexcept { mpz_init_set(z_, other.z_); }
  BigInt(BigInt&& other) noexcept {
    mpz_init(z_);
    mpz_swap(z_, other.z_);
  }
  BigInt& operator=(const BigInt& other) noexcept {
    if (this != &other) mpz_set(z_, other.z_);
    return *this;
  }
  BigInt& operator=(BigInt&& other) noexcept {
    mpz_swap(z_, other.z_);
    return *this;
  }
  ~BigInt() { mpz_clear(z_); }

  BigInt& operator+=(const BigInt& rhs) {
    mpz_add(z_, z_, rhs.z_);
    return *this;
  }
  BigInt& operator-=(const BigInt& rhs) {
    mpz_sub(z_, z_, rhs.z_);
    return *this;
  }
  BigInt& operator*=(const BigInt& rhs) {
    mpz_mul(z_, z_, rhs.z_);
    return *this;
  }

  friend BigInt operator+(BigInt lhs, const BigInt& rhs) { return lhs += rhs; }
  friend BigInt operator-(BigInt lhs, const BigInt& rhs) { return lhs -= rhs; }
  friend BigInt operator*(BigInt lhs, const BigInt& rhs) { return lhs *= rhs; }

  BigInt operator-() const {
    BigInt r;
    mpz_neg(r.z_, z_);
    return r;
  }

  BigInt abs() const {
    BigInt r;
    mpz_abs(r.z_, z_);
    return r;
  }

  /// 2^exponent.
  static BigInt pow2(unsigned long exponent) {
    BigInt r(1);
    mpz_mul_2exp(r.z_, r.z_, exponent);
    return r;
  }

  static BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return mpz_cmp(a.z_, b.z_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    const int c = mpz_cmp(a.z_, b.z_);
    return c <=> 0;
  }

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return mpz_sgn(z_) == 0; }

  /// Number of bits in the binary representation of |value|; 1 for zero.
  std::size_t bit_length() const { return mpz_sizeinbase(z_, 2); }

  bool fits_u64() const { return mpz_fits_ulong_p(z_); }
  std::uint64_t to_u64() const { return mpz_get_ui(z_); }

  std::string to_string() const;

  mpz_srcptr raw() const { return z_; }
  mpz_ptr raw() { return z_; }

 private:
  mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const BigInt& value);

}  // namespace binomlab

#endif  // BINOMLAB_BIGINT_HPP
