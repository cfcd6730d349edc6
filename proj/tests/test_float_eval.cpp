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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "binomlab/errors.hpp"
#include "binomlab/float_eval.hpp"
#include "binomlab/identity.hpp"

using namespace binomlab;

namespace {

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

TEST_CASE("strategy tags") {
  for (EvalStrategy s : {EvalStrategy::NaiveSum, EvalStrategy::CompensatedSum,
                         EvalStrategy::PairwiseSum, EvalStrategy::ProductForm,
                         EvalStrategy::SymmetricDP}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
  CHECK(parse_strategy("kahan") == EvalStrategy::CompensatedSum);
  CHECK_THROWS_AS(parse_strategy("zigzag"), ParseError);
}

TEST_CASE("benign product: n=2, m=1, theta=1") {
  const IdentityInstance inst{2, 1, Rational(1)};
  const auto r = eval_float(inst, EvalStrategy::ProductForm);
  CHECK(r.value == 0.3333333333333333);  // two exact divisions and a multiply
  CHECK(r.rel_error <= std::ldexp(1.0, -50));
  CHECK(r.cancellation_index >= 1.0);
}

TEST_CASE("error_report shape and benign accuracy") {
  const auto rows_m1 = error_report({2, 1, Rational(1)});
  REQUIRE(rows_m1.size() == 4);  // three sums + ProductForm
  CHECK(rows_m1[0].strategy == EvalStrategy::NaiveSum);
  CHECK(rows_m1[1].strategy == EvalStrategy::CompensatedSum);
  CHECK(rows_m1[2].strategy == EvalStrategy::PairwiseSum);
  CHECK(rows_m1[3].strategy == EvalStrategy::ProductForm);
  for (const auto& r : rows_m1) {
    CAPTURE(to_string(r.strategy));
    CHECK(r.rel_error <= 1e-15);
  }

  const auto rows_m2 = error_report({2, 2, Rational(1)});
  REQUIRE(rows_m2.size() == 4);  // ProductForm replaced by SymmetricDP
  CHECK(rows_m2[3].strategy == EvalStrategy::SymmetricDP);
  CHECK(std::abs(rows_m2[3].value - 11.0 / 18.0) <= 1e-15);
}

TEST_CASE("cancellation demonstration at n=60") {
  const IdentityInstance inst{60, 1, Rational(1)};
  const auto naive = eval_float(inst, EvalStrategy::NaiveSum);
  const auto compensated = eval_float(inst, EvalStrategy::CompensatedSum);
  const auto product = eval_float(inst, EvalStrategy::ProductForm);

  CHECK(naive.rel_error >= 1e-2);
  CHECK(product.rel_error <= 1e-13);
  CHECK(compensated.rel_error <= naive.rel_error + 1e-15);

  const Rational index = cancellation_index(inst);
  CHECK(index == Rational(BigInt::pow2(61) - BigInt(1), BigInt(1)));
  CHECK(naive.cancellation_index == index.to_double());
}

TEST_CASE("cancellation index small values and growth") {
  CHECK(cancellation_index({0, 1, Rational(3)}) == Rational(1));
  CHECK(cancellation_index({0, 3, Rational(7, 5)}) == Rational(1));
  // (1 + 1/2)/(1/2) = 3
  CHECK(cancellation_index({1, 1, Rational(1)}) == Rational(3));

  Rational previous(1);
  for (std::int64_t n = 1; n <= 100; ++n) {
    const Rational index = cancellation_index({n, 1, Rational(1)});
    CHECK(index > previous);  // strictly increasing in n
    CHECK(index > Rational(1));
    previous = index;
  }
  CHECK_THROWS_AS(cancellation_index({3, 1, Rational(-1, 2)}), InvalidInstanceError);
}

TEST_CASE("stability split: product beats naive on the whole grid") {
  for (std::int64_t n : {40, 50, 60}) {
    for (const Rational& theta : {Rational(1, 2), Rational(1), Rational(2)}) {
      const IdentityInstance inst{n, 1, theta};
      const double naive = eval_float(inst, EvalStrategy::NaiveSum).rel_error;
      const double product = eval_float(inst, EvalStrategy::ProductForm).rel_error;
      CAPTURE(n);
      CAPTURE(theta.to_string());
      CHECK(product < naive);
    }
  }
}

TEST_CASE("all-positive strategies stay near machine precision") {
  for (std::int64_t n : {0, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 200}) {
    for (std::int64_t m : {1, 2, 3, 4}) {
      for (const Rational& theta : {Rational(1, 2), Rational(1), Rational(2)}) {
        const IdentityInstance inst{n, m, theta};
        const EvalStrategy s =
            m == 1 ? EvalStrategy::ProductForm : EvalStrategy::SymmetricDP;
        const auto r = eval_float(inst, s);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(theta.to_string());
        CHECK(r.rel_error <= 1e-12);
      }
    }
  }
}

TEST_CASE("compensation never hurts on the pinned grid") {
  std::vector<IdentityInstance> cells;
  for (std::int64_t n = 0; n <= 10; ++n) {
    for (std::int64_t m : {1, 2, 3}) {
      for (const Rational& theta : {Rational(1, 2), Rational(1), Rational(2)}) {
        cells.push_back({n, m, theta});
      }
    }
  }
  for (std::int64_t n : {40, 50, 60}) {
    for (const Rational& theta : {Rational(1, 2), Rational(1), Rational(2)}) {
      cells.push_back({n, 1, theta});
    }
  }
  cells.push_back({30, 2, Rational(2)});
  for (const auto& inst : cells) {
    const double naive = eval_float(inst, EvalStrategy::NaiveSum).rel_error;
    const double compensated =
        eval_float(inst, EvalStrategy::CompensatedSum).rel_error;
    CAPTURE(inst.to_string());
    CHECK(compensated <= naive + 1e-15);
  }
}

TEST_CASE("symdp stays accurate at m=2") {
  const auto r = eval_float({30, 2, Rational(2)}, EvalStrategy::SymmetricDP);
  CHECK(r.rel_error <= 1e-12);
}

TEST_CASE("reported errors are self-consistent") {
  for (const auto& inst :
       {IdentityInstance{17, 2, Rational(3, 2)}, IdentityInstance{60, 1, Rational(1)},
        IdentityInstance{5, 3, Rational(1, 2)}}) {
    const Rational oracle_rounded =
        Rational::from_double(rhs_general(inst).to_double());
    for (const auto& r : error_report(inst)) {
      const Rational diff =
          (Rational::from_double(r.value) - oracle_rounded).abs();
      CHECK(bits_equal(r.abs_error, diff.to_double()));
      CHECK(bits_equal(r.rel_error, (diff / oracle_rounded.abs()).to_double()));
    }
  }
}

TEST_CASE("symdp reduces to the product form at m=1, bit for bit") {
  for (std::int64_t n : {0, 1, 7, 60, 200}) {
    const IdentityInstance inst{n, 1, Rational(5, 3)};
    const auto dp = eval_float(inst, EvalStrategy::SymmetricDP);
    const auto prod = eval_float(inst, EvalStrategy::ProductForm);
    CHECK(bits_equal(dp.value, prod.value));
  }
}

TEST_CASE("domain enforcement") {
  CHECK_THROWS_AS(eval_float({5000, 1, Rational(1)}, EvalStrategy::NaiveSum),
                  InvalidInstanceError);
  CHECK_THROWS_AS(eval_float({5, 1, Rational(-1, 2)}, EvalStrategy::NaiveSum),
                  InvalidInstanceError);
  CHECK_THROWS_AS(eval_float({5, 2, Rational(1)}, EvalStrategy::ProductForm),
                  InvalidInstanceError);
  CHECK_THROWS_AS(eval_float({3, 1, Rational(-2)}, EvalStrategy::NaiveSum), PoleError);

  // the cap itself is fine and stays finite: 2^1000 of headroom, no more
  const auto at_cap = eval_float({1000, 1, Rational(1)}, EvalStrategy::NaiveSum);
  CHECK(std::isfinite(at_cap.value));
  const auto cap_product = eval_float({1000, 1, Rational(1)}, EvalStrategy::ProductForm);
  CHECK(cap_product.rel_error <= 1e-12);
  CHECK(cap_product.cancellation_index == std::ldexp(1.0, 1001));  // 2^1001 - 1 rounded

  // at theta = 20 the exact index (~1e339) overflows the report field
  const auto huge = eval_float({1000, 1, Rational(20)}, EvalStrategy::ProductForm);
  CHECK(huge.cancellation_index == std::numeric_limits<double>::infinity());
}

TEST_CASE("csv row shape") {
  const IdentityInstance inst{2, 1, Rational(1, 2)};
  const auto r = eval_float(inst, EvalStrategy::ProductForm);
  const std::string header = float_result_csv_header();
  const std::string row = float_result_csv_row(inst, r);
  CHECK(std::count(header.begin(), header.end(), ',') == 7);
  CHECK(std::count(row.begin(), row.end(), ',') == 7);
  CHECK(row.find("1/2") != std::string::npos);
  CHECK(row.find("product") != std::string::npos);
}
