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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "binomlab/bigint.hpp"
#include "binomlab/errors.hpp"
#include "binomlab/identity.hpp"
#include "binomlab/rational.hpp"
#include "binomlab/rng.hpp"

using namespace binomlab;

namespace {

// Independent binomial oracle: Pascal's triangle built with additions only.
// Kept deliberately ignorant of how binomial() computes its answer.
std::vector<std::vector<BigInt>> pascal_triangle(std::int64_t max_n) {
  std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(max_n) + 1);
  for (std::int64_t n = 0; n <= max_n; ++n) {
    auto& row = rows[static_cast<std::size_t>(n)];
    row.resize(static_cast<std::size_t>(n) + 1, BigInt(1));
    for (std::int64_t k = 1; k < n; ++k) {
      row[static_cast<std::size_t>(k)] =
          rows[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
          rows[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
    }
  }
  return rows;
}

bool canonical(const Rational& r) {
  const BigInt num = r.numerator();
  const BigInt den = r.denominator();
  if (!(den > BigInt(0))) return false;
  return BigInt::gcd(num.abs(), den) == BigInt(1);
}

}  // namespace

TEST_CASE("bigint basics") {
  CHECK(BigInt(0).is_zero());
  CHECK(BigInt(-7).sign() == -1);
  CHECK(BigInt("123456789012345678901234567890").to_string() ==
        "123456789012345678901234567890");
  CHECK(BigInt(-3) + BigInt(5) == BigInt(2));
  CHECK(BigInt(6) * BigInt(-7) == BigInt(-42));
  CHECK(BigInt(10) - BigInt(3) == BigInt(7));
  CHECK(BigInt(5) < BigInt(6));
  CHECK(BigInt::pow2(10) == BigInt(1024));
  CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
  CHECK((-BigInt(4)).abs() == BigInt(4));
  CHECK_THROWS_AS(BigInt("12a"), ParseError);
}

TEST_CASE("binomial against the Pascal oracle") {
  const auto oracle = pascal_triangle(64);
  for (std::int64_t n = 0; n <= 64; ++n) {
    for (std::int64_t k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      REQUIRE(binomial(n, k) ==
              oracle[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
    }
  }
  // frozen value, first computed by the oracle above
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
  CHECK(binomial(0, 0) == BigInt(1));
  CHECK(binomial(4, 2) == BigInt(6));
  CHECK(binomial(3, 7) == BigInt(0));  // k > n allowed
  CHECK_THROWS_AS(binomial(-1, 0), InvalidInstanceError);
}

TEST_CASE("binomial matches the oracle at n = 200") {
  const auto oracle = pascal_triangle(200);
  for (std::int64_t k : {0, 1, 13, 100, 163, 200}) {
    CHECK(binomial(200, k) ==
          oracle[200][static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4).to_string() == "1/2");
  CHECK(Rational(-3, -6).to_string() == "1/2");
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(0, 5).to_string() == "0");
  CHECK(Rational(7, 1).to_string() == "7");
  CHECK(Rational(7).is_integer());
  CHECK_FALSE(Rational(7, 2).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);

  CHECK(Rational(BigInt(10), BigInt(-4)).to_string() == "-5/2");
}

TEST_CASE("rational parse/print round-trip and rejections") {
  for (const char* text : {"0", "7", "-7", "8/15", "-1/2", "12345678901234567890/7"}) {
    CAPTURE(text);
    CHECK(Rational::parse(text).to_string() == text);
  }
  CHECK(Rational::parse("+3/4") == Rational(3, 4));
  CHECK(Rational::parse("2/4") == Rational(1, 2));  // canonicalized on input

  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1e3"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("2/-3"), ParseError);  // sign lives on the numerator
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), ParseError);

  // the decimal rejection explains itself
  try {
    Rational::parse("0.1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("p/q") != std::string::npos);
  }
}

TEST_CASE("rational arithmetic properties") {
  RandomStream stream(7);
  for (int i = 0; i < 500; ++i) {
    const long long an = static_cast<long long>(stream.next_u64() % 2001) - 1000;
    const long long bn = static_cast<long long>(stream.next_u64() % 2001) - 1000;
    const long long ad = 1 + static_cast<long long>(stream.next_u64() % 999);
    const long long bd = 1 + static_cast<long long>(stream.next_u64() % 999);
    const Rational a(an, ad);
    const Rational b(bn, bd);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) - b == a);
    CHECK(canonical(a + b));
    CHECK(canonical(a * b));
    if (!b.is_zero()) {
      CHECK((a / b) * b == a);
      CHECK(canonical(a / b));
    }
  }
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(-2, 3).pow(2) == Rational(4, 9));
  CHECK(Rational(5, 7).pow(0) == Rational(1));
}

TEST_CASE("to_double rounds to nearest even") {
  CHECK(Rational(1, 3).to_double() == 1.0 / 3.0);
  CHECK(Rational(2, 3).to_double() == 2.0 / 3.0);
  CHECK(Rational(1, 10).to_double() == 0.1);
  CHECK(Rational(-1, 10).to_double() == -0.1);
  CHECK(Rational(1, 61).to_double() == 1.0 / 61.0);
  CHECK(Rational(0).to_double() == 0.0);

  // exactly representable values come back bit-exact
  CHECK(Rational(BigInt::pow2(1023), BigInt(1)).to_double() == std::ldexp(1.0, 1023));
  CHECK(Rational(1, 4).to_double() == 0.25);

  // overflow boundary: DBL_MAX = 2^1024 - 2^971; the rounding boundary to
  // infinity is 2^1024 - 2^970
  const BigInt two_1024 = BigInt::pow2(1024);
  CHECK(Rational(two_1024 - BigInt::pow2(971), BigInt(1)).to_double() ==
        std::numeric_limits<double>::max());
  CHECK(Rational(two_1024 - BigInt::pow2(970) - BigInt(1), BigInt(1)).to_double() ==
        std::numeric_limits<double>::max());
  CHECK(Rational(two_1024 - BigInt::pow2(970), BigInt(1)).to_double() ==
        std::numeric_limits<double>::infinity());
  CHECK(Rational(-(two_1024), BigInt(1)).to_double() ==
        -std::numeric_limits<double>::infinity());

  // subnormal boundary: 2^-1074 is the smallest positive double; the
  // midpoint 2^-1075 rounds to even (zero)
  CHECK(Rational(BigInt(1), BigInt::pow2(1074)).to_double() ==
        std::numeric_limits<double>::denorm_min());
  CHECK(Rational(BigInt(1), BigInt::pow2(1075)).to_double() == 0.0);
  CHECK(Rational(BigInt(3), BigInt::pow2(1076)).to_double() ==
        std::numeric_limits<double>::denorm_min());

  // ties round to the even mantissa: 2^53 + 1 is exactly between 2^53 and
  // 2^53 + 2
  CHECK(Rational(BigInt::pow2(53) + BigInt(1), BigInt(1)).to_double() ==
        std::ldexp(1.0, 53));
  CHECK(Rational(BigInt::pow2(53) + BigInt(3), BigInt(1)).to_double() ==
        std::ldexp(1.0, 53) + 4.0);
}

TEST_CASE("from_double/to_double is the identity on finite doubles") {
  RandomStream stream(11);
  int tested = 0;
  while (tested < 1000) {
    const double d = std::bit_cast<double>(stream.next_u64());
    if (!std::isfinite(d)) continue;
    ++tested;
    const Rational r = Rational::from_double(d);
    CHECK(canonical(r));
    CHECK(std::bit_cast<std::uint64_t>(r.to_double()) ==
          std::bit_cast<std::uint64_t>(d));
  }
  CHECK_THROWS_AS(Rational::from_double(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_double(std::nan("")), std::invalid_argument);
}
