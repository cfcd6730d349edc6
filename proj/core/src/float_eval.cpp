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

#include "binomlab/float_eval.hpp"

#include <cmath>
#include <limits>
#include <span>

#include "binomlab/detail/format.hpp"
#include "binomlab/errors.hpp"

namespace binomlab {

namespace {

// The alternating-sum terms exactly as a straightforward float
// implementation would produce them: binomial coefficients by running
// ratio, theta rounded once, term order k ascending.
std::vector<double> sum_terms(std::int64_t n, std::int64_t m, double theta) {
  std::vector<double> terms(static_cast<std::size_t>(n) + 1);
  double coeff = 1.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double x = theta / (theta + static_cast<double>(k));
    double p = 1.0;
    for (std::int64_t i = 0; i < m; ++i) p *= x;
    terms[static_cast<std::size_t>(k)] = (k % 2 == 0) ? coeff * p : -coeff * p;
    coeff = coeff * (static_cast<double>(n - k) / static_cast<double>(k + 1));
  }
  return terms;
}

double naive_sum(std::span<const double> terms) {
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

double kahan_sum(std::span<const double> terms) {
  double sum = 0.0;
  double carry = 0.0;
  for (double t : terms) {
    const double y = t - carry;
    const double tmp = sum + y;
    carry = (tmp - sum) - y;
    sum = tmp;
  }
  return sum;
}

double pairwise_sum(std::span<const double> terms) {
  const std::size_t n = terms.size();
  if (n == 1) return terms[0];
  const std::size_t half = n / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double product_form(std::int64_t n, double theta) {
  double prod = 1.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    prod *= static_cast<double>(k) / (theta + static_cast<double>(k));
  }
  return prod;
}

double symmetric_dp(std::int64_t n, std::int64_t m, double theta) {
  const double prod = product_form(n, theta);
  if (m == 1) return prod;
  std::vector<double> h(static_cast<std::size_t>(m), 0.0);  // h[0..m-1]
  h[0] = 1.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double x = theta / (theta + static_cast<double>(k));
    for (std::int64_t j = 1; j < m; ++j) {
      h[static_cast<std::size_t>(j)] += x * h[static_cast<std::size_t>(j) - 1];
    }
  }
  double factor = 1.0;
  for (std::int64_t j = 1; j < m; ++j) factor += h[static_cast<std::size_t>(j)];
  return prod * factor;
}

double raw_value(const IdentityInstance& inst, EvalStrategy strategy) {
  const double theta = inst.theta.to_double();
  switch (strategy) {
    case EvalStrategy::NaiveSum:
      return naive_sum(sum_terms(inst.n, inst.m, theta));
    case EvalStrategy::CompensatedSum:
      return kahan_sum(sum_terms(inst.n, inst.m, theta));
    case EvalStrategy::PairwiseSum:
      return pairwise_sum(sum_terms(inst.n, inst.m, theta));
    case EvalStrategy::ProductForm:
      return product_form(inst.n, theta);
    case EvalStrategy::SymmetricDP:
      return symmetric_dp(inst.n, inst.m, theta);
  }
  throw InvalidInstanceError("unknown strategy");
}

}  // namespace

std::string_view to_string(EvalStrategy strategy) {
  switch (strategy) {
    case EvalStrategy::NaiveSum: return "naive";
    case EvalStrategy::CompensatedSum: return "compensated";
    case EvalStrategy::PairwiseSum: return "pairwise";
    case EvalStrategy::ProductForm: return "product";
    case EvalStrategy::SymmetricDP: return "symdp";
  }
  return "?";
}

EvalStrategy parse_strategy(std::string_view tag) {
  if (tag == "naive") return EvalStrategy::NaiveSum;
  if (tag == "compensated" || tag == "kahan") return EvalStrategy::CompensatedSum;
  if (tag == "pairwise") return EvalStrategy::PairwiseSum;
  if (tag == "product") return EvalStrategy::ProductForm;
  if (tag == "symdp") return EvalStrategy::SymmetricDP;
  throw ParseError("unknown strategy tag \"" + std::string(tag) +
                   "\" (expected naive|compensated|pairwise|product|symdp)");
}

FloatEvalResult eval_float(const IdentityInstance& inst, EvalStrategy strategy) {
  inst.validate();
  if (inst.theta.sign() <= 0) {
    throw InvalidInstanceError(
        "float evaluation requires theta > 0 (the error analysis is against "
        "a positive-product oracle), got theta = " + inst.theta.to_string());
  }
  if (inst.n > kMaxFloatEvalN) {
    throw InvalidInstanceError(
        "n = " + std::to_string(inst.n) + " exceeds the float-evaluation cap " +
        std::to_string(kMaxFloatEvalN) +
        "; binomial coefficients would overflow binary64");
  }
  if (strategy == EvalStrategy::ProductForm && inst.m != 1) {
    throw InvalidInstanceError(
        "ProductForm evaluates the m = 1 product; use symdp for m = " +
        std::to_string(inst.m));
  }

  FloatEvalResult r;
  r.strategy = strategy;
  r.value = raw_value(inst, strategy);

  const Rational oracle = rhs_general(inst);
  const double oracle_f = oracle.to_double();
  r.cancellation_index = cancellation_index(inst).to_double();

  if (!std::isfinite(r.value)) {
    r.abs_error = std::numeric_limits<double>::infinity();
    r.rel_error = std::numeric_limits<double>::infinity();
    return r;
  }
  const Rational diff =
      (Rational::from_double(r.value) - Rational::from_double(oracle_f)).abs();
  r.abs_error = diff.to_double();
  r.rel_error = (diff / Rational::from_double(oracle_f).abs()).to_double();
  return r;
}

std::vector<EvalStrategy> applicable_strategies(std::int64_t m) {
  if (m == 1) {
    return {EvalStrategy::NaiveSum, EvalStrategy::CompensatedSum,
            EvalStrategy::PairwiseSum, EvalStrategy::ProductForm};
  }
  return {EvalStrategy::NaiveSum, EvalStrategy::CompensatedSum,
          EvalStrategy::PairwiseSum, EvalStrategy::SymmetricDP};
}

std::vector<FloatEvalResult> error_report(const IdentityInstance& inst) {
  std::vector<FloatEvalResult> rows;
  for (EvalStrategy s : applicable_strategies(inst.m)) {
    rows.push_back(eval_float(inst, s));
  }
  return rows;
}

Rational cancellation_index(const IdentityInstance& inst) {
  inst.validate();
  if (inst.theta.sign() <= 0) {
    throw InvalidInstanceError("cancellation index requires theta > 0");
  }
  return lhs_magnitude_sum(inst) / lhs_alternating_sum(inst);
}

std::string float_result_csv_header() {
  return "n,m,theta,strategy,value,abs_error,rel_error,cancellation_index";
}

std::string float_result_csv_row(const IdentityInstance& inst,
                                 const FloatEvalResult& result) {
  std::string row;
  row += std::to_string(inst.n);
  row += ',';
  row += std::to_string(inst.m);
  row += ',';
  row += inst.theta.to_string();
  row += ',';
  row += to_string(result.strategy);
  row += ',';
  row += detail::format_full(result.value);
  row += ',';
  row += detail::format_sci6(result.abs_error);
  row += ',';
  row += detail::format_sci6(result.rel_error);
  row += ',';
  row += detail::format_sci6(result.cancellation_index);
  return row;
}

}  // namespace binomlab
