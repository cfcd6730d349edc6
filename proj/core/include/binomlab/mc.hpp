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

#ifndef BINOMLAB_MC_HPP
#define BINOMLAB_MC_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "binomlab/identity.hpp"
#include "binomlab/rng.hpp"

namespace binomlab {

/// A positive exponential rate (lambda, mu, theta, or the k of a min-of-k
/// law). Constructing one from a non-positive or non-finite value throws.
struct ExpRate {
  explicit ExpRate(double r);
  double rate;
};

/// Inverse-CDF exponential draw: -log(u)/rate with u uniform on (0, 1].
/// Consumes exactly one uniform.
double sample_exp(ExpRate rate, RandomStream& stream);

/// Maximum of n independent unit-rate exponentials ("time until the last of
/// n bulbs dies"). Consumes exactly n uniforms.
double sample_max_exp1(std::int64_t n, RandomStream& stream);

/// Sum of independent exponentials with rates 1, 2, ..., n: the same
/// distribution as sample_max_exp1(n), built from the opposite direction.
/// Consumes exactly n uniforms.
double sample_sum_exp(std::int64_t n, RandomStream& stream);

/// Gamma(m, theta) as the sum of m independent Exp(theta) draws.
/// Consumes exactly m uniforms.
double sample_gamma(std::int64_t m, ExpRate theta, RandomStream& stream);

/// One Monte Carlo estimate with its Wald 95% interval
/// (ci95 = p_hat +- 1.96 * std_error) and reproducibility metadata.
/// For probability estimates std_error = sqrt(p_hat*(1-p_hat)/samples);
/// for mean estimates it comes from the sample variance.
struct McEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t chunk_count = 0;
};

std::string mc_csv_header();  // p_hat,stderr,ci95_low,ci95_high,samples,seed,chunk_count
std::string mc_csv_row(const McEstimate& est);

/// Everywhere below, threads = 0 means hardware concurrency. Chunks are
/// independent work units whose substreams depend only on (seed, index), and
/// per-chunk partials are merged in index order, so the result is
/// bit-identical for every thread count.

/// P(X < T): indicator average of {max of n Exp(1)} < {Gamma(m, theta)}.
/// Float ties count as "not less"; a tie has probability 0 in the continuous
/// model and vanishingly small in floats. Requires theta > 0 and n >= 1.
McEstimate estimate_p_less(const IdentityInstance& inst, const StreamConfig& cfg,
                           int threads = 0);

/// Which representation of X feeds the Laplace-transform estimate.
enum class LaplaceForm { MaxForm, SumForm };

/// Sample mean of exp(-theta * X) where X is drawn as a max (MaxForm) or as
/// the rate-1..n sum (SumForm). Both must agree with prod k/(k+theta).
McEstimate estimate_laplace(std::int64_t n, double theta, const StreamConfig& cfg,
                            LaplaceForm form, int threads = 0);

/// P(Exp(lambda) < Exp(mu)); closed form lambda/(lambda+mu).
McEstimate two_exp_race(ExpRate lambda, ExpRate mu, const StreamConfig& cfg,
                        int threads = 0);

/// P(min of k unit exponentials > log(2)/k). The min is Exp(k), so the
/// closed form is exactly 1/2 for every k.
McEstimate min_exp_check(std::int64_t k, const StreamConfig& cfg,
                         int threads = 0);

/// Memorylessness probe: estimates P(Z > t+s | Z > s) by rejection on Z > s,
/// and P(Z > t) from an independent draw, for Z ~ Exp(1). The two should
/// agree. The conditional estimate's `samples` field records how many draws
/// survived the condition; fewer than 100 survivors throws
/// DegenerateConditioningError.
std::pair<McEstimate, McEstimate> memoryless_check(double t, double s,
                                                   const StreamConfig& cfg,
                                                   int threads = 0);

}  // namespace binomlab

#endif  // BINOMLAB_MC_HPP
