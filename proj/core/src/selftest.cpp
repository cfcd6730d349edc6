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

#include "binomlab/selftest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "binomlab/detail/format.hpp"
#include "binomlab/errors.hpp"
#include "binomlab/float_eval.hpp"
#include "binomlab/identity.hpp"
#include "binomlab/mc.hpp"
#include "binomlab/scan.hpp"

namespace binomlab {

namespace {

// Per-suite salts so every suite owns an independent seed lineage.
constexpr std::uint64_t kSaltThetaPositive = 0x01;
constexpr std::uint64_t kSaltThetaNegative = 0x02;
constexpr std::uint64_t kSaltDpOracle = 0x03;
constexpr std::uint64_t kSaltRoundtrip = 0x04;
constexpr std::uint64_t kSaltTwoRoute = 0x05;
constexpr std::uint64_t kSaltLemma1 = 0x06;
constexpr std::uint64_t kSaltSmallFacts = 0x07;
constexpr std::uint64_t kSaltDeterminism = 0x08;
constexpr std::uint64_t kSaltTelescoping = 0x09;

CheckResult run_guarded(const std::string& name,
                        const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    return CheckResult{name, false, std::string("threw: ") + e.what()};
  }
}

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// |estimate - truth| <= z * stderr, plus the unconditional estimate sanity
// bounds every estimate must satisfy.
bool within_band(const McEstimate& est, double truth, double z,
                 std::string* why) {
  if (!(est.p_hat >= 0.0 && est.p_hat <= 1.0)) {
    *why = "p_hat outside [0,1]: " + detail::format_full(est.p_hat);
    return false;
  }
  const double cap = 0.5 / std::sqrt(static_cast<double>(est.samples));
  if (!(est.std_error <= cap + 1e-18)) {
    *why = "stderr above 1/(2 sqrt(samples)): " + detail::format_full(est.std_error);
    return false;
  }
  if (!(est.ci95_low <= est.p_hat && est.p_hat <= est.ci95_high)) {
    *why = "confidence interval does not bracket p_hat";
    return false;
  }
  if (std::abs(est.p_hat - truth) > z * est.std_error) {
    *why = "estimate " + detail::format_full(est.p_hat) + " vs " +
           detail::format_full(truth) + " misses the " +
           detail::format_full(z) + "-sigma band (stderr " +
           detail::format_full(est.std_error) + ")";
    return false;
  }
  return true;
}

double sigma_distance(const McEstimate& est, double truth) {
  return std::abs(est.p_hat - truth) / est.std_error;
}

std::vector<Rational> criterion_theta_set(std::uint64_t seed, int random_count,
                                          int negative_count) {
  std::vector<Rational> thetas = {Rational(1, 2), Rational(1), Rational(2),
                                  Rational(13, 3)};
  std::set<std::string> seen;
  for (const auto& t : thetas) seen.insert(t.to_string());

  RandomStream pos(derive_stream_seed(seed, kSaltThetaPositive));
  while (static_cast<int>(thetas.size()) < 4 + random_count) {
    Rational t = random_positive_rational(pos, 48, 48);
    if (seen.insert(t.to_string()).second) thetas.push_back(t);
  }
  RandomStream neg(derive_stream_seed(seed, kSaltThetaNegative));
  int added = 0;
  while (added < negative_count) {
    Rational t = random_negative_noninteger_rational(neg);
    if (seen.insert(t.to_string()).second) {
      thetas.push_back(t);
      ++added;
    }
  }
  return thetas;
}

}  // namespace

Rational random_positive_rational(RandomStream& stream, std::uint64_t max_num,
                                  std::uint64_t max_den) {
  const std::uint64_t num = 1 + stream.next_u64() % max_num;
  const std::uint64_t den = 1 + stream.next_u64() % max_den;
  return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

Rational random_negative_noninteger_rational(RandomStream& stream) {
  for (;;) {
    const std::uint64_t num = 1 + stream.next_u64() % 60;
    const std::uint64_t den = 2 + stream.next_u64() % 11;
    Rational r(static_cast<long long>(num), static_cast<long long>(den));
    if (!r.is_integer()) return -r;
  }
}

Rational h_complete_enumeration(std::int64_t j, std::int64_t n,
                                const Rational& theta) {
  if (j < 0 || n < 0) throw InvalidInstanceError("enumeration requires j, n >= 0");
  if (j == 0) return Rational(1);
  Rational total;
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(j));
  std::function<void(std::int64_t, std::int64_t)> recurse =
      [&](std::int64_t pos, std::int64_t start) {
        for (std::int64_t k = start; k <= n; ++k) {
          tuple[static_cast<std::size_t>(pos)] = k;
          if (pos + 1 == j) {
            Rational term(1);
            for (std::int64_t i = 0; i < j; ++i) {
              const Rational k_i(tuple[static_cast<std::size_t>(i)]);
              term *= theta / (theta + k_i);
            }
            total += term;
          } else {
            recurse(pos + 1, k);
          }
        }
      };
  recurse(0, 1);
  return total;
}

CheckResult check_exact_identity_family(std::uint64_t seed, bool full) {
  const std::vector<Rational> thetas =
      full ? criterion_theta_set(seed, 25, 5) : criterion_theta_set(seed, 6, 2);

  std::vector<std::int64_t> ns;
  const std::int64_t n_max = full ? 200 : 40;
  for (std::int64_t n = 0; n <= n_max; ++n) ns.push_back(n);
  if (!full) ns.push_back(60);
  const std::int64_t m_max = full ? 6 : 4;

  std::uint64_t count = 0;
  for (std::int64_t n : ns) {
    for (std::int64_t m = 1; m <= m_max; ++m) {
      for (const Rational& theta : thetas) {
        IdentityInstance inst{n, m, theta};
        if (!verify(inst)) {
          return {"", false, "identity fails exactly at " + inst.to_string()};
        }
        ++count;
      }
    }
  }
  std::ostringstream detail;
  detail << count << " instances verified exactly (n <= " << n_max << ", m <= "
         << m_max << ", " << thetas.size() << " theta values incl. negatives)";
  return {"", true, detail.str()};
}

CheckResult check_symmetric_dp_oracle(std::uint64_t seed) {
  RandomStream stream(derive_stream_seed(seed, kSaltDpOracle));
  std::vector<Rational> thetas;
  for (int i = 0; i < 7; ++i) thetas.push_back(random_positive_rational(stream, 30, 30));
  for (int i = 0; i < 3; ++i) thetas.push_back(random_negative_noninteger_rational(stream));

  std::uint64_t count = 0;
  for (const Rational& theta : thetas) {
    for (std::int64_t n = 0; n <= 6; ++n) {
      for (std::int64_t j = 0; j <= 4; ++j) {
        const Rational dp = h_complete(j, n, theta);
        const Rational brute = h_complete_enumeration(j, n, theta);
        if (!(dp == brute)) {
          return {"", false,
                  "DP disagrees with enumeration at j=" + std::to_string(j) +
                      " n=" + std::to_string(n) + " theta=" + theta.to_string() +
                      ": " + dp.to_string() + " != " + brute.to_string()};
        }
        ++count;
      }
    }
  }
  return {"", true,
          std::to_string(count) + " (j, n, theta) cells, DP == enumeration exactly"};
}

CheckResult check_cancellation_demo() {
  const IdentityInstance inst{60, 1, Rational(1)};

  const Rational exact = rhs_general(inst);
  if (!(exact == Rational(1, 61))) {
    return {"", false, "exact value is " + exact.to_string() + ", want 1/61"};
  }
  const Rational expected_index(BigInt::pow2(61) - BigInt(1), BigInt(1));
  const Rational index = cancellation_index(inst);
  if (!(index == expected_index)) {
    return {"", false, "cancellation index " + index.to_string() +
                           " != 2^61 - 1 = " + expected_index.to_string()};
  }
  const FloatEvalResult naive = eval_float(inst, EvalStrategy::NaiveSum);
  const FloatEvalResult product = eval_float(inst, EvalStrategy::ProductForm);
  if (!(naive.rel_error >= 1e-2)) {
    return {"", false, "NaiveSum rel_error " + detail::format_sci6(naive.rel_error) +
                           " unexpectedly below 1e-2"};
  }
  if (!(product.rel_error <= 1e-13)) {
    return {"", false, "ProductForm rel_error " +
                           detail::format_sci6(product.rel_error) + " above 1e-13"};
  }
  return {"", true,
          "n=60: exact 1/61, index 2^61-1, naive rel " +
              detail::format_sci6(naive.rel_error) + ", product rel " +
              detail::format_sci6(product.rel_error)};
}

CheckResult check_stability_split() {
  const std::vector<Rational> thetas = {Rational(1, 2), Rational(1), Rational(2)};
  double worst_ratio = 0.0;
  for (std::int64_t n : {40, 50, 60}) {
    for (const Rational& theta : thetas) {
      const IdentityInstance inst{n, 1, theta};
      const double naive = eval_float(inst, EvalStrategy::NaiveSum).rel_error;
      const double product = eval_float(inst, EvalStrategy::ProductForm).rel_error;
      if (!(product < naive)) {
        return {"", false,
                "no stability split at " + inst.to_string() + ": product " +
                    detail::format_sci6(product) + " !< naive " +
                    detail::format_sci6(naive)};
      }
      worst_ratio = std::max(worst_ratio, product / naive);
    }
  }
  return {"", true,
          "product beats naive on all 9 cells (worst product/naive ratio " +
              detail::format_sci6(worst_ratio) + ")"};
}

CheckResult check_binomial_and_telescoping(std::uint64_t seed) {
  if (!(binomial(0, 0) == BigInt(1)) || !(binomial(4, 2) == BigInt(6)) ||
      !(binomial(3, 7) == BigInt(0))) {
    return {"", false, "small binomial values wrong"};
  }
  for (std::int64_t n = 1; n <= 200; ++n) {
    for (std::int64_t k = 1; k <= n; ++k) {
      if (!(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k))) {
        return {"", false,
                "Pascal's rule fails at n=" + std::to_string(n) +
                    " k=" + std::to_string(k)};
      }
    }
  }
  for (std::int64_t n = 0; n <= 100; ++n) {
    const Rational lhs = lhs_alternating_sum({n, 1, Rational(1)});
    if (!(lhs == Rational(1, n + 1))) {
      return {"", false,
              "telescoping check fails at n=" + std::to_string(n) + ": " +
                  lhs.to_string()};
    }
  }
  RandomStream stream(derive_stream_seed(seed, kSaltTelescoping));
  for (std::int64_t n : {0, 1, 5, 17, 60}) {
    for (int i = 0; i < 3; ++i) {
      const Rational pos = random_positive_rational(stream, 40, 40);
      const Rational neg = random_negative_noninteger_rational(stream);
      for (const Rational& theta : {pos, neg}) {
        if (!(rhs_general({n, 1, theta}) == rhs_product(n, theta))) {
          return {"", false,
                  "rhs_general(m=1) != rhs_product at n=" + std::to_string(n) +
                      " theta=" + theta.to_string()};
        }
      }
    }
  }
  return {"", true,
          "Pascal's rule to n=200, telescoping to n=100, rhs_general(m=1) == "
          "rhs_product on random thetas"};
}

CheckResult check_report_roundtrip(std::uint64_t seed) {
  RandomStream stream(derive_stream_seed(seed, kSaltRoundtrip));
  for (int i = 0; i < 200; ++i) {
    Rational r = random_positive_rational(stream, 1000000, 1000000);
    if (stream.next_u64() % 2 == 0) r = -r;
    if (!(Rational::parse(r.to_string()) == r)) {
      return {"", false, "rational string round-trip fails for " + r.to_string()};
    }
  }
  for (int i = 0; i < 200; ++i) {
    const double d = std::bit_cast<double>(stream.next_u64());
    if (!std::isfinite(d)) continue;
    if (!bits_equal(Rational::from_double(d).to_double(), d)) {
      return {"", false,
              "double -> rational -> double not identity for " +
                  detail::format_full(d)};
    }
  }

  ScanGrid grid;
  grid.n_values = {0, 2, 60};
  grid.m_values = {1, 2};
  grid.theta_values = {Rational(1), Rational(1, 2)};
  grid.strategies = {EvalStrategy::NaiveSum, EvalStrategy::CompensatedSum,
                     EvalStrategy::PairwiseSum, EvalStrategy::ProductForm,
                     EvalStrategy::SymmetricDP};
  const auto rows = run_scan(grid, 1);
  if (rows.size() != 12) {
    return {"", false, "expected 12 rows, got " + std::to_string(rows.size())};
  }
  const std::string csv_a = emit(rows, ReportFormat::Csv);
  const std::string csv_b = emit(rows, ReportFormat::Csv);
  if (csv_a != csv_b) return {"", false, "CSV emission is not byte-stable"};
  std::size_t lines = 0;
  std::size_t field_count = 0;
  std::string line;
  std::istringstream csv_in(csv_a);
  while (std::getline(csv_in, line)) {
    const std::size_t commas =
        static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    if (lines == 0) {
      field_count = commas;
    } else if (commas != field_count) {
      return {"", false, "CSV line " + std::to_string(lines) +
                             " has a different field count"};
    }
    ++lines;
  }
  const std::string json_a = emit(rows, ReportFormat::Json);
  if (json_a != emit(rows, ReportFormat::Json)) {
    return {"", false, "JSON emission is not byte-stable"};
  }
  return {"", true,
          "rational/double round-trips, byte-stable CSV (" +
              std::to_string(lines) + " lines) and JSON"};
}

CheckResult check_mc_two_route(std::uint64_t seed, int threads) {
  const std::uint64_t base = derive_stream_seed(seed, kSaltTwoRoute);
  const std::vector<Rational> thetas = {Rational(1, 2), Rational(1), Rational(2)};
  std::uint64_t cell = 0;
  double worst_sigma = 0.0;
  for (std::int64_t n : {1, 2, 5, 10}) {
    for (std::int64_t m : {1, 2, 3}) {
      for (const Rational& theta : thetas) {
        const IdentityInstance inst{n, m, theta};
        const Rational lhs = lhs_alternating_sum(inst);
        const Rational rhs = rhs_general(inst);
        if (!(lhs == rhs)) {
          return {"", false, "closed forms disagree at " + inst.to_string()};
        }
        const double exact = rhs.to_double();
        const StreamConfig cfg{derive_stream_seed(base, cell), 64, 15625};
        const McEstimate est = estimate_p_less(inst, cfg, threads);
        std::string why;
        if (!within_band(est, exact, 4.0, &why)) {
          return {"", false, inst.to_string() + ": " + why};
        }
        worst_sigma = std::max(worst_sigma, sigma_distance(est, exact));
        ++cell;
      }
    }
  }
  return {"", true,
          std::to_string(cell) + " cells at 1e6 samples, all inside 4 sigma "
          "of both closed forms (worst " + detail::format_sci6(worst_sigma) +
          " sigma)"};
}

CheckResult check_mc_lemma1(std::uint64_t seed, int threads) {
  const std::uint64_t base = derive_stream_seed(seed, kSaltLemma1);
  const std::vector<Rational> thetas = {Rational(1, 2), Rational(1), Rational(2)};
  std::uint64_t cell = 0;
  double worst_sigma = 0.0;
  for (std::int64_t n : {1, 3, 5, 10}) {
    for (const Rational& theta : thetas) {
      const double exact = rhs_product(n, theta).to_double();
      const double theta_d = theta.to_double();
      const StreamConfig cfg_max{derive_stream_seed(base, 2 * cell), 64, 15625};
      const StreamConfig cfg_sum{derive_stream_seed(base, 2 * cell + 1), 64, 15625};
      const McEstimate max_est =
          estimate_laplace(n, theta_d, cfg_max, LaplaceForm::MaxForm, threads);
      const McEstimate sum_est =
          estimate_laplace(n, theta_d, cfg_sum, LaplaceForm::SumForm, threads);
      std::string why;
      if (!within_band(max_est, exact, 4.0, &why)) {
        return {"", false,
                "MaxForm at n=" + std::to_string(n) + " theta=" +
                    theta.to_string() + ": " + why};
      }
      if (!within_band(sum_est, exact, 4.0, &why)) {
        return {"", false,
                "SumForm at n=" + std::to_string(n) + " theta=" +
                    theta.to_string() + ": " + why};
      }
      const double joint =
          std::sqrt(max_est.std_error * max_est.std_error +
                    sum_est.std_error * sum_est.std_error);
      if (std::abs(max_est.p_hat - sum_est.p_hat) > 5.0 * joint) {
        return {"", false,
                "max and sum forms disagree beyond 5 joint sigma at n=" +
                    std::to_string(n) + " theta=" + theta.to_string()};
      }
      worst_sigma = std::max({worst_sigma, sigma_distance(max_est, exact),
                              sigma_distance(sum_est, exact)});
      ++cell;
    }
  }
  return {"", true,
          std::to_string(2 * cell) + " Laplace estimates at 1e6 samples match "
          "prod k/(k+theta) and each other (worst " +
              detail::format_sci6(worst_sigma) + " sigma)"};
}

CheckResult check_mc_small_facts(std::uint64_t seed, int threads) {
  const std::uint64_t base = derive_stream_seed(seed, kSaltSmallFacts);
  std::uint64_t idx = 0;
  auto next_cfg = [&] {
    return StreamConfig{derive_stream_seed(base, idx++), 64, 15625};
  };
  std::string why;

  const struct {
    double lambda, mu, truth;
  } races[] = {{1, 1, 0.5}, {1, 3, 0.25}, {2, 1, 2.0 / 3.0}};
  for (const auto& race : races) {
    const McEstimate est =
        two_exp_race(ExpRate(race.lambda), ExpRate(race.mu), next_cfg(), threads);
    if (!within_band(est, race.truth, 4.0, &why)) {
      return {"", false,
              "race lambda=" + detail::format_full(race.lambda) + " mu=" +
                  detail::format_full(race.mu) + ": " + why};
    }
  }

  for (std::int64_t k : {1, 4, 10}) {
    const McEstimate est = min_exp_check(k, next_cfg(), threads);
    if (!within_band(est, 0.5, 4.0, &why)) {
      return {"", false, "min-of-" + std::to_string(k) + " check: " + why};
    }
  }

  const auto [cond, uncond] = memoryless_check(1.0, 1.0, next_cfg(), threads);
  const double joint = std::sqrt(cond.std_error * cond.std_error +
                                 uncond.std_error * uncond.std_error);
  const double e_inv = std::exp(-1.0);
  if (std::abs(cond.p_hat - uncond.p_hat) > 5.0 * joint ||
      std::abs(cond.p_hat - e_inv) > 5.0 * joint ||
      std::abs(uncond.p_hat - e_inv) > 5.0 * joint) {
    return {"", false, "memorylessness estimates stray beyond 5 joint sigma"};
  }

  bool degenerate_raised = false;
  try {
    memoryless_check(1.0, 50.0, StreamConfig{derive_stream_seed(base, idx++), 10, 1000},
                     threads);
  } catch (const DegenerateConditioningError&) {
    degenerate_raised = true;
  }
  if (!degenerate_raised) {
    return {"", false,
            "conditioning on Z > 50 with 1e4 samples should be degenerate"};
  }
  return {"", true,
          "races, min-of-k, and memorylessness all inside their bands; "
          "degenerate conditioning detected"};
}

CheckResult check_mc_determinism(std::uint64_t seed, int threads) {
  (void)threads;  // the whole point is comparing thread counts
  const std::uint64_t base = derive_stream_seed(seed, kSaltDeterminism);
  const IdentityInstance inst{5, 1, Rational(2)};
  const StreamConfig cfg{base, 64, 4096};

  const McEstimate a = estimate_p_less(inst, cfg, 0);
  const McEstimate b = estimate_p_less(inst, cfg, 0);
  const McEstimate one = estimate_p_less(inst, cfg, 1);
  const McEstimate four = estimate_p_less(inst, cfg, 4);
  if (!bits_equal(a.p_hat, b.p_hat) || !bits_equal(a.std_error, b.std_error)) {
    return {"", false, "repeated run is not bit-identical"};
  }
  if (!bits_equal(a.p_hat, one.p_hat) || !bits_equal(a.p_hat, four.p_hat) ||
      !bits_equal(a.std_error, one.std_error) ||
      !bits_equal(a.std_error, four.std_error)) {
    return {"", false, "thread count changes the estimate"};
  }

  const McEstimate la = estimate_laplace(7, 1.0, cfg, LaplaceForm::MaxForm, 1);
  const McEstimate lb = estimate_laplace(7, 1.0, cfg, LaplaceForm::MaxForm, 4);
  if (!bits_equal(la.p_hat, lb.p_hat) || !bits_equal(la.std_error, lb.std_error)) {
    return {"", false, "mean-estimate merge depends on thread count"};
  }

  RandomStream stream(base);
  sample_max_exp1(7, stream);
  if (stream.draws() != 7) return {"", false, "max sampler consumed != n uniforms"};
  sample_sum_exp(5, stream);
  if (stream.draws() != 12) return {"", false, "sum sampler consumed != n uniforms"};
  sample_gamma(3, ExpRate(2.0), stream);
  if (stream.draws() != 15) return {"", false, "gamma sampler consumed != m uniforms"};

  return {"", true,
          "bit-identical across repeats and thread counts; samplers consume "
          "exactly their contracted uniforms"};
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options,
                                      std::ostream* log) {
  std::vector<std::pair<std::string, std::function<CheckResult()>>> suites;
  const std::uint64_t seed = options.seed;
  const bool full = options.full;
  const int threads = options.threads;

  suites.emplace_back("exact-identity-family",
                      [=] { return check_exact_identity_family(seed, full); });
  suites.emplace_back("symmetric-dp-oracle",
                      [=] { return check_symmetric_dp_oracle(seed); });
  suites.emplace_back("cancellation-demo", [] { return check_cancellation_demo(); });
  suites.emplace_back("stability-split", [] { return check_stability_split(); });
  suites.emplace_back("binomial-telescoping",
                      [=] { return check_binomial_and_telescoping(seed); });
  suites.emplace_back("report-roundtrip",
                      [=] { return check_report_roundtrip(seed); });
  if (full) {
    suites.emplace_back("mc-two-route",
                        [=] { return check_mc_two_route(seed, threads); });
    suites.emplace_back("mc-lemma1", [=] { return check_mc_lemma1(seed, threads); });
    suites.emplace_back("mc-small-facts",
                        [=] { return check_mc_small_facts(seed, threads); });
    suites.emplace_back("mc-determinism",
                        [=] { return check_mc_determinism(seed, threads); });
  }

  std::vector<CheckResult> results;
  results.reserve(suites.size());
  for (const auto& [name, body] : suites) {
    CheckResult r = run_guarded(name, body);
    if (log != nullptr) {
      *log << (r.passed ? "[ok]   " : "[FAIL] ") << r.name << ": " << r.detail
           << '\n'
           << std::flush;
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace binomlab
