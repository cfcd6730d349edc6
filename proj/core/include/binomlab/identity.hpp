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

#ifndef BINOMLAB_IDENTITY_HPP
#define BINOMLAB_IDENTITY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "binomlab/bigint.hpp"
#include "binomlab/rational.hpp"

namespace binomlab {

/// One member of the identity family, named by the triple (n, m, theta):
///
///   sum_{k=0}^{n} C(n,k) (-1)^k (theta/(theta+k))^m
///     = prod_{k=1}^{n} k/(theta+k)
///       * (1 + sum_{j=1}^{m-1} h_j(x_1..x_n)),   x_k = theta/(theta+k)
///
/// where h_j is the complete homogeneous symmetric polynomial of degree j.
/// Probabilistically, both sides equal P(X < T) for X the maximum of n unit-
/// rate exponentials and T an independent Gamma(m, theta) deadline.
///
/// The alternating sum starts at k = 0; its k = 0 term (always 1) is required
/// for the equality and dropping it is a common transcription slip.
///
/// Domain: n >= 0 (n = 0 makes both sides an empty product, hence 1), m >= 1,
/// and theta outside the pole set {0, -1, ..., -n}. Exact evaluation accepts
/// any non-pole rational theta: both sides are rational functions of theta
/// that agree for all theta > 0, hence everywhere they are defined. Monte
/// Carlo operations additionally require theta > 0 (a rate).
struct IdentityInstance {
  std::int64_t n = 0;
  std::int64_t m = 1;
  Rational theta = Rational(1);

  /// Throws InvalidInstanceError (n < 0 or m < 1) or PoleError.
  void validate() const;

  /// Additional Monte Carlo domain: theta > 0 and n >= 1.
  void validate_for_mc() const;

  std::string to_string() const;  // "n=.. m=.. theta=.."
};

/// Exact binomial coefficient; 0 when k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Left side: sum_{k=0}^{n} C(n,k) (-1)^k (theta/(theta+k))^m, exactly.
Rational lhs_alternating_sum(const IdentityInstance& inst);

/// Same sum with every term taken positive. Divided by the signed sum this
/// is the condition number of the alternating sum (the cancellation index).
Rational lhs_magnitude_sum(const IdentityInstance& inst);

/// Right side of the m = 1 identity: prod_{k=1}^{n} k/(theta+k); 1 when n = 0.
Rational rhs_product(std::int64_t n, const Rational& theta);

/// Complete homogeneous symmetric polynomial h_j evaluated at
/// x_k = theta/(theta+k), k = 1..n: the sum of theta^j / prod_i (theta+k_i)
/// over non-decreasing index tuples 1 <= k_1 <= ... <= k_j <= n.
///
/// Computed by the O(n*j) recurrence H[j][k] = H[j][k-1] + x_k*H[j-1][k];
/// tuple enumeration is exponential in j and survives only as a test oracle.
Rational h_complete(std::int64_t j, std::int64_t n, const Rational& theta);

/// h_0 .. h_max_j in one DP pass (h_0 = 1).
std::vector<Rational> h_complete_prefix(std::int64_t max_j, std::int64_t n,
                                        const Rational& theta);

/// Right side for general m: rhs_product * (1 + sum_{j=1}^{m-1} h_j).
/// For m = 1 the inner sum is empty and this equals rhs_product.
Rational rhs_general(const IdentityInstance& inst);

/// True iff both closed forms agree exactly. Must never be false for a valid
/// instance; a false return means the arithmetic is broken, not the math.
bool verify(const IdentityInstance& inst);

}  // namespace binomlab

#endif  // BINOMLAB_IDENTITY_HPP
