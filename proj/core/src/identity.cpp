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

#include "binomlab/identity.hpp"

#include <stdexcept>

#include "binomlab/errors.hpp"

namespace binomlab {

namespace {

// theta is a pole iff it is an integer in {0, -1, ..., -n}.
bool hits_pole(const Rational& theta, std::int64_t n) {
  if (!theta.is_integer() || theta.sign() > 0) return false;
  const Rational minus_n(-n);
  return theta >= minus_n;  // 0 >= theta >= -n
}

// x_k = theta/(theta+k) = p/(p + k*q) for theta = p/q, canonicalized.
Rational x_factor(const Rational& theta, std::int64_t k) {
  BigInt den = theta.numerator();
  mpz_addmul_ui(den.raw(), theta.denominator().raw(),
                static_cast<unsigned long>(k));
  return Rational(theta.numerator(), den);
}

}  // namespace

void IdentityInstance::validate() const {
  if (n < 0) throw InvalidInstanceError("n must be >= 0, got " + std::to_string(n));
  if (m < 1) throw InvalidInstanceError("m must be >= 1, got " + std::to_string(m));
  if (hits_pole(theta, n)) {
    throw PoleError("theta = " + theta.to_string() +
                    " is a pole of the identity (theta + k = 0 for some k in 0.." +
                    std::to_string(n) + ")");
  }
}

void IdentityInstance::validate_for_mc() const {
  validate();
  if (theta.sign() <= 0) {
    throw InvalidInstanceError("Monte Carlo requires theta > 0, got theta = " +
                               theta.to_string());
  }
  if (n < 1) {
    throw InvalidInstanceError("Monte Carlo requires n >= 1 (a nonempty maximum)");
  }
}

std::string IdentityInstance::to_string() const {
  return "n=" + std::to_string(n) + " m=" + std::to_string(m) +
         " theta=" + theta.to_string();
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) throw InvalidInstanceError("binomial requires n, k >= 0");
  if (k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.raw(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

Rational lhs_alternating_sum(const IdentityInstance& inst) {
  inst.validate();
  const std::uint64_t m = static_cast<std::uint64_t>(inst.m);

  Rational acc;
  BigInt coeff(1);  // C(n,k), updated by the exact integer recurrence
  for (std::int64_t k = 0; k <= inst.n; ++k) {
    Rational term = x_factor(inst.theta, k).pow(m);
    mpz_mul(mpq_numref(term.raw()), mpq_numref(term.raw()), coeff.raw());
    mpq_canonicalize(term.raw());
    if (k % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
    // C(n,k+1) = C(n,k) * (n-k) / (k+1), exactly
    mpz_mul_ui(coeff.raw(), coeff.raw(), static_cast<unsigned long>(inst.n - k));
    mpz_divexact_ui(coeff.raw(), coeff.raw(), static_cast<unsigned long>(k + 1));
  }
  return acc;
}

Rational lhs_magnitude_sum(const IdentityInstance& inst) {
  inst.validate();
  const std::uint64_t m = static_cast<std::uint64_t>(inst.m);

  Rational acc;
  BigInt coeff(1);
  for (std::int64_t k = 0; k <= inst.n; ++k) {
    Rational term = x_factor(inst.theta, k).pow(m).abs();
    mpz_mul(mpq_numref(term.raw()), mpq_numref(term.raw()), coeff.raw());
    mpq_canonicalize(term.raw());
    acc += term;
    mpz_mul_ui(coeff.raw(), coeff.raw(), static_cast<unsigned long>(inst.n - k));
    mpz_divexact_ui(coeff.raw(), coeff.raw(), static_cast<unsigned long>(k + 1));
  }
  return acc;
}

Rational rhs_product(std::int64_t n, const Rational& theta) {
  IdentityInstance{n, 1, theta}.validate();
  Rational acc(1);
  for (std::int64_t k = 1; k <= n; ++k) {
    // k/(theta+k) = k*q / (p + k*q) for theta = p/q
    BigInt den = theta.numerator();
    mpz_addmul_ui(den.raw(), theta.denominator().raw(),
                  static_cast<unsigned long>(k));
    BigInt num = theta.denominator();
    mpz_mul_ui(num.raw(), num.raw(), static_cast<unsigned long>(k));
    acc *= Rational(num, den);
  }
  return acc;
}

std::vector<Rational> h_complete_prefix(std::int64_t max_j, std::int64_t n,
                                        const Rational& theta) {
  if (max_j < 0) throw InvalidInstanceError("h_complete requires j >= 0");
  IdentityInstance{n, 1, theta}.validate();

  std::vector<Rational> h(static_cast<std::size_t>(max_j) + 1);
  h[0] = Rational(1);
  for (std::int64_t k = 1; k <= n; ++k) {
    const Rational x = x_factor(theta, k);
    // Ascending j reuses the already-updated h[j-1]: tuples may repeat k.
    for (std::int64_t j = 1; j <= max_j; ++j) {
      h[static_cast<std::size_t>(j)] += x * h[static_cast<std::size_t>(j) - 1];
    }
  }
  return h;
}

Rational h_complete(std::int64_t j, std::int64_t n, const Rational& theta) {
  auto h = h_complete_prefix(j, n, theta);
  return h[static_cast<std::size_t>(j)];
}

Rational rhs_general(const IdentityInstance& inst) {
  inst.validate();
  Rational prod = rhs_product(inst.n, inst.theta);
  if (inst.m == 1) return prod;
  auto h = h_complete_prefix(inst.m - 1, inst.n, inst.theta);
  Rational factor(1);
  for (std::int64_t j = 1; j < inst.m; ++j) {
    factor += h[static_cast<std::size_t>(j)];
  }
  return prod * factor;
}

bool verify(const IdentityInstance& inst) {
  return lhs_alternating_sum(inst) == rhs_general(inst);
}

}  // namespace binomlab
