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

#ifndef BINOMLAB_FLOAT_EVAL_HPP
#define BINOMLAB_FLOAT_EVAL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "binomlab/identity.hpp"
#include "binomlab/rational.hpp"

namespace binomlab {

/// How to evaluate an instance in IEEE-754 binary64.
///
/// The three sum strategies evaluate the alternating sum (the left side);
/// they differ only in how the rounded terms are accumulated. ProductForm
/// evaluates the m = 1 product right side; SymmetricDP evaluates the general
/// right side via the all-positive symmetric-polynomial recurrence and
/// reduces to ProductForm when m = 1. The two sides are algebraically equal,
/// so any spread between strategies is pure rounding behavior.
enum class EvalStrategy {
  NaiveSum,        // terms added left to right, k = 0..n
  CompensatedSum,  // Kahan compensation on the same term order
  PairwiseSum,     // balanced binary tree over the terms
  ProductForm,     // prod k/(theta+k); m = 1 only
  SymmetricDP,     // prod * (1 + sum h_j), all operands nonnegative
};

std::string_view to_string(EvalStrategy strategy);

/// Accepts the canonical tags "naive", "compensated", "pairwise", "product",
/// "symdp" (plus "kahan" as an alias for "compensated").
EvalStrategy parse_strategy(std::string_view tag);

/// One floating-point evaluation measured against the exact oracle.
///
/// Error convention: the reference is the exact value rounded to the nearest
/// double; abs/rel errors are computed in exact rational arithmetic against
/// that reference and only then rounded, so the report itself adds no
/// double-rounding noise. cancellation_index is the condition number of the
/// alternating sum for this instance (same value on every strategy row; it
/// is what the sum strategies are up against). It is >= 1, and may round to
/// +inf for large n.
struct FloatEvalResult {
  EvalStrategy strategy = EvalStrategy::NaiveSum;
  double value = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double cancellation_index = 1.0;
};

/// eval_float refuses n above this: past it C(n, n/2) leaves double range
/// and every sum row would be a silent pair of infinities.
inline constexpr std::int64_t kMaxFloatEvalN = 1000;

/// Evaluates one instance under one strategy, entirely in binary64
/// (binomial coefficients by the running-ratio recurrence, never exact).
/// Requires theta > 0 and n <= kMaxFloatEvalN; ProductForm requires m = 1.
FloatEvalResult eval_float(const IdentityInstance& inst, EvalStrategy strategy);

/// The strategies eval_float accepts for this m, in report order.
std::vector<EvalStrategy> applicable_strategies(std::int64_t m);

/// One row per applicable strategy, all against the same oracle,
/// ordered by strategy tag.
std::vector<FloatEvalResult> error_report(const IdentityInstance& inst);

/// Exact condition number of the alternating sum:
/// (sum of term magnitudes) / (the sum itself). Requires theta > 0.
/// Equals 1 exactly when n = 0 and grows like 2^n for theta = 1, m = 1.
Rational cancellation_index(const IdentityInstance& inst);

/// CSV serialization: instance fields, strategy tag, value (17 significant
/// digits), then errors and index in scientific notation (6 significant
/// digits).
std::string float_result_csv_header();
std::string float_result_csv_row(const IdentityInstance& inst,
                                 const FloatEvalResult& result);

}  // namespace binomlab

#endif  // BINOMLAB_FLOAT_EVAL_HPP
