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

#include "binomlab/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "binomlab/detail/format.hpp"
#include "binomlab/errors.hpp"

namespace binomlab {

namespace {

constexpr double kZ95 = 1.96;

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(chunk_index, stream) once per chunk and returns the per-chunk
// results indexed by chunk. Work-stealing over an atomic counter; the slot
// layout makes the merge order independent of which thread ran what.
template <typename T, typename Fn>
std::vector<T> run_chunks(const StreamConfig& cfg, int threads, Fn&& fn) {
  cfg.validate();
  const std::uint64_t chunks = cfg.chunk_count;
  std::vector<T> slots(chunks);
  const int workers =
      static_cast<int>(std::min<std::uint64_t>(chunks, resolve_threads(threads)));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < chunks; ++i) {
      RandomStream stream = RandomStream::for_chunk(cfg.seed, i);
      slots[i] = fn(i, stream);
    }
    return slots;
  }
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t i = next.fetch_add(1); i < chunks; i = next.fetch_add(1)) {
      RandomStream stream = RandomStream::for_chunk(cfg.seed, i);
      slots[i] = fn(i, stream);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return slots;
}

McEstimate proportion_estimate(std::uint64_t hits, std::uint64_t samples,
                               const StreamConfig& cfg) {
  McEstimate est;
  est.samples = samples;
  est.seed = cfg.seed;
  est.chunk_count = cfg.chunk_count;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error =
      std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
  est.ci95_low = est.p_hat - kZ95 * est.std_error;
  est.ci95_high = est.p_hat + kZ95 * est.std_error;
  return est;
}

struct MeanAccum {
  double sum = 0.0;
  double sum_sq = 0.0;
};

McEstimate mean_estimate(const std::vector<MeanAccum>& parts,
                         const StreamConfig& cfg) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& p : parts) {  // chunk order: the merge is deterministic
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const double n = static_cast<double>(cfg.total_samples());
  McEstimate est;
  est.samples = cfg.total_samples();
  est.seed = cfg.seed;
  est.chunk_count = cfg.chunk_count;
  est.p_hat = sum / n;
  const double variance = std::max(0.0, (sum_sq - n * est.p_hat * est.p_hat) / (n - 1.0));
  est.std_error = std::sqrt(variance / n);
  est.ci95_low = est.p_hat - kZ95 * est.std_error;
  est.ci95_high = est.p_hat + kZ95 * est.std_error;
  return est;
}

}  // namespace

ExpRate::ExpRate(double r) : rate(r) {
  if (!(std::isfinite(r) && r > 0.0)) {
    throw InvalidInstanceError("exponential rate must be a positive finite real");
  }
}

double sample_exp(ExpRate rate, RandomStream& stream) {
  return -std::log(stream.next_unit()) / rate.rate;
}

double sample_max_exp1(std::int64_t n, RandomStream& stream) {
  if (n < 1) throw InvalidInstanceError("sample_max_exp1 requires n >= 1");
  double max = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    max = std::max(max, -std::log(stream.next_unit()));
  }
  return max;
}

double sample_sum_exp(std::int64_t n, RandomStream& stream) {
  if (n < 1) throw InvalidInstanceError("sample_sum_exp requires n >= 1");
  double sum = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    sum += -std::log(stream.next_unit()) / static_cast<double>(k);
  }
  return sum;
}

double sample_gamma(std::int64_t m, ExpRate theta, RandomStream& stream) {
  if (m < 1) throw InvalidInstanceError("sample_gamma requires m >= 1");
  double sum = 0.0;
  for (std::int64_t i = 0; i < m; ++i) {
    sum += -std::log(stream.next_unit());
  }
  return sum / theta.rate;
}

McEstimate estimate_p_less(const IdentityInstance& inst, const StreamConfig& cfg,
                           int threads) {
  inst.validate_for_mc();
  const ExpRate theta(inst.theta.to_double());
  const std::int64_t n = inst.n;
  const std::int64_t m = inst.m;
  auto hits = run_chunks<std::uint64_t>(cfg, threads,
      [&](std::uint64_t, RandomStream& stream) {
        std::uint64_t count = 0;
        for (std::uint64_t s = 0; s < cfg.samples_per_chunk; ++s) {
          const double x = sample_max_exp1(n, stream);
          const double deadline = sample_gamma(m, theta, stream);
          count += x < deadline ? 1u : 0u;
        }
        return count;
      });
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  return proportion_estimate(total, cfg.total_samples(), cfg);
}

McEstimate estimate_laplace(std::int64_t n, double theta, const StreamConfig& cfg,
                            LaplaceForm form, int threads) {
  if (n < 1) throw InvalidInstanceError("estimate_laplace requires n >= 1");
  if (!(std::isfinite(theta) && theta > 0.0)) {
    throw InvalidInstanceError("estimate_laplace requires theta > 0");
  }
  auto parts = run_chunks<MeanAccum>(cfg, threads,
      [&](std::uint64_t, RandomStream& stream) {
        MeanAccum acc;
        for (std::uint64_t s = 0; s < cfg.samples_per_chunk; ++s) {
          const double x = form == LaplaceForm::MaxForm
                               ? sample_max_exp1(n, stream)
                               : sample_sum_exp(n, stream);
          const double v = std::exp(-theta * x);
          acc.sum += v;
          acc.sum_sq += v * v;
        }
        return acc;
      });
  return mean_estimate(parts, cfg);
}

McEstimate two_exp_race(ExpRate lambda, ExpRate mu, const StreamConfig& cfg,
                        int threads) {
  auto hits = run_chunks<std::uint64_t>(cfg, threads,
      [&](std::uint64_t, RandomStream& stream) {
        std::uint64_t count = 0;
        for (std::uint64_t s = 0; s < cfg.samples_per_chunk; ++s) {
          const double y = sample_exp(lambda, stream);
          const double z = sample_exp(mu, stream);
          count += y < z ? 1u : 0u;
        }
        return count;
      });
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  return proportion_estimate(total, cfg.total_samples(), cfg);
}

McEstimate min_exp_check(std::int64_t k, const StreamConfig& cfg, int threads) {
  if (k < 1) throw InvalidInstanceError("min_exp_check requires k >= 1");
  const double threshold = std::log(2.0) / static_cast<double>(k);
  auto hits = run_chunks<std::uint64_t>(cfg, threads,
      [&](std::uint64_t, RandomStream& stream) {
        std::uint64_t count = 0;
        for (std::uint64_t s = 0; s < cfg.samples_per_chunk; ++s) {
          double min = std::numeric_limits<double>::infinity();
          for (std::int64_t i = 0; i < k; ++i) {
            min = std::min(min, -std::log(stream.next_unit()));
          }
          count += min > threshold ? 1u : 0u;
        }
        return count;
      });
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  return proportion_estimate(total, cfg.total_samples(), cfg);
}

std::pair<McEstimate, McEstimate> memoryless_check(double t, double s,
                                                   const StreamConfig& cfg,
                                                   int threads) {
  if (!(std::isfinite(t) && t > 0.0 && std::isfinite(s) && s > 0.0)) {
    throw InvalidInstanceError("memoryless_check requires t, s > 0");
  }
  struct Accum {
    std::uint64_t survived = 0;
    std::uint64_t cond_hits = 0;
    std::uint64_t uncond_hits = 0;
  };
  const ExpRate unit(1.0);
  auto parts = run_chunks<Accum>(cfg, threads,
      [&](std::uint64_t, RandomStream& stream) {
        Accum acc;
        for (std::uint64_t i = 0; i < cfg.samples_per_chunk; ++i) {
          const double z = sample_exp(unit, stream);
          if (z > s) {
            ++acc.survived;
            if (z > s + t) ++acc.cond_hits;
          }
          const double z2 = sample_exp(unit, stream);
          if (z2 > t) ++acc.uncond_hits;
        }
        return acc;
      });
  Accum total;
  for (const auto& p : parts) {
    total.survived += p.survived;
    total.cond_hits += p.cond_hits;
    total.uncond_hits += p.uncond_hits;
  }
  if (total.survived < 100) {
    throw DegenerateConditioningError(
        "only " + std::to_string(total.survived) + " of " +
        std::to_string(cfg.total_samples()) + " samples survived Z > " +
        detail::format_full(s) + "; the conditional estimate is meaningless");
  }
  McEstimate conditional = proportion_estimate(total.cond_hits, total.survived, cfg);
  McEstimate unconditional =
      proportion_estimate(total.uncond_hits, cfg.total_samples(), cfg);
  return {conditional, unconditional};
}

std::string mc_csv_header() {
  return "p_hat,stderr,ci95_low,ci95_high,samples,seed,chunk_count";
}

std::string mc_csv_row(const McEstimate& est) {
  std::string row;
  row += detail::format_full(est.p_hat);
  row += ',';
  row += detail::format_full(est.std_error);
  row += ',';
  row += detail::format_full(est.ci95_low);
  row += ',';
  row += detail::format_full(est.ci95_high);
  row += ',';
  row += std::to_string(est.samples);
  row += ',';
  row += std::to_string(est.seed);
  row += ',';
  row += std::to_string(est.chunk_count);
  return row;
}

}  // namespace binomlab
