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

#include "binomlab/rational.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "binomlab/errors.hpp"

namespace binomlab {

namespace {

// Smallest positive real that rounds to +inf under round-to-nearest-even:
// the midpoint between DBL_MAX = (2 - 2^-52)*2^1023 and 2^1024.
const Rational& overflow_threshold() {
  static const Rational t(BigInt::pow2(1024) - BigInt::pow2(970), BigInt(1));
  return t;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  mpq_init(q_);
  mpq_set_si(q_, static_cast<long>(num), 1u);
  mpq_t d;
  mpq_init(d);
  mpq_set_si(d, static_cast<long>(den), 1u);
  mpq_div(q_, q_, d);
  mpq_clear(d);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw std::domain_error("rational with zero denominator");
  mpq_init(q_);
  mpz_set(mpq_numref(q_), num.raw());
  mpz_set(mpq_denref(q_), den.raw());
  if (den.sign() < 0) {
    mpz_neg(mpq_numref(q_), mpq_numref(q_));
    mpz_neg(mpq_denref(q_), mpq_denref(q_));
  }
  mpq_canonicalize(q_);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("from_double requires a finite value");
  }
  Rational r;
  mpq_set_d(r.q_, value);
  return r;
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos) {
    throw ParseError("\"" + s +
                     "\" is not an exact rational; decimal literals like 0.1 "
                     "change the instance — write p/q (for example 1/10)");
  }
  auto is_int = [](std::string_view v, bool allow_sign) {
    if (allow_sign && !v.empty() && (v[0] == '+' || v[0] == '-')) v.remove_prefix(1);
    if (v.empty()) return false;
    for (char c : v) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false)) {
    throw ParseError("\"" + s + "\" is not a rational literal \"p/q\" or \"p\"");
  }
  if (num[0] == '+') num.erase(0, 1);  // mpz_set_str takes '-' but not '+'
  Rational r;
  if (mpz_set_str(mpq_numref(r.q_), num.c_str(), 10) != 0 ||
      mpz_set_str(mpq_denref(r.q_), den.c_str(), 10) != 0) {
    throw ParseError("\"" + s + "\" is not a rational literal \"p/q\" or \"p\"");
  }
  if (mpz_sgn(mpq_denref(r.q_)) == 0) {
    throw ParseError("\"" + s + "\" has a zero denominator");
  }
  mpq_canonicalize(r.q_);
  return r;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  mpq_div(q_, q_, rhs.q_);
  return *this;
}

Rational Rational::pow(std::uint64_t exponent) const {
  Rational r(1);
  mpz_pow_ui(mpq_numref(r.q_), mpq_numref(q_), exponent);
  mpz_pow_ui(mpq_denref(r.q_), mpq_denref(q_), exponent);
  return r;  // powers of a canonical fraction stay canonical
}

BigInt Rational::numerator() const {
  BigInt n;
  mpz_set(n.raw(), mpq_numref(q_));
  return n;
}

BigInt Rational::denominator() const {
  BigInt d;
  mpz_set(d.raw(), mpq_denref(q_));
  return d;
}

std::string Rational::to_string() const {
  std::string s = numerator().to_string();
  if (!is_integer()) {
    s += '/';
    s += denominator().to_string();
  }
  return s;
}

double Rational::to_double() const {
  const int s = sign();
  if (s == 0) return 0.0;
  const Rational mag = abs();

  if (mag >= overflow_threshold()) {
    return s > 0 ? std::numeric_limits<double>::infinity()
                 : -std::numeric_limits<double>::infinity();
  }

  // mpq_get_d truncates toward zero, so the correctly rounded result is
  // either lo or the next float above it; the exact midpoint decides.
  double lo = mpq_get_d(mag.q_);
  if (!std::isfinite(lo) || lo > std::numeric_limits<double>::max()) {
    lo = std::numeric_limits<double>::max();
  }
  const double hi = std::nextafter(lo, std::numeric_limits<double>::infinity());
  double chosen;
  if (!std::isfinite(hi)) {
    chosen = lo;  // mag < overflow threshold, so it rounds to DBL_MAX
  } else {
    const Rational mid = (from_double(lo) + from_double(hi)) * Rational(1, 2);
    const auto cmp = mag <=> mid;
    if (cmp > 0) {
      chosen = hi;
    } else if (cmp < 0) {
      chosen = lo;
    } else {
      chosen = (std::bit_cast<std::uint64_t>(lo) & 1u) == 0 ? lo : hi;
    }
  }
  return s > 0 ? chosen : -chosen;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.to_string();
}

}  // namespace binomlab
