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

#ifndef BINOMLAB_RNG_HPP
#define BINOMLAB_RNG_HPP

#include <array>
#include <cstdint>

namespace binomlab {

// The generator identity is part of the reproducibility contract and is
// pinned here: xoshiro256++ (period 2^256 - 1), with its state expanded from
// a 64-bit stream seed by SplitMix64, and substreams derived from
// (seed, index) by derive_stream_seed below. Changing any of these constants
// changes every archived estimate.

inline constexpr std::uint64_t kSeedMixGamma = 0x9E3779B97F4A7C15ull;

/// One SplitMix64 step: advances state, returns the mixed output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kSeedMixGamma;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// The fixed mixing function making parallel sampling deterministic: the
/// substream for index i depends on (seed, i) alone, never on execution
/// order. Used for Monte Carlo chunks and for per-row scan seeds.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (kSeedMixGamma * (index + 1));
  return splitmix64_next(s);
}

/// A single deterministic random stream (xoshiro256++), counting how many
/// uniforms it has handed out. Not shareable across threads; each chunk of
/// work owns its own.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t stream_seed) {
    std::uint64_t sm = stream_seed;
    for (auto& word : state_) word = splitmix64_next(sm);
    // SplitMix64's output function is a bijection, so four consecutive
    // outputs are distinct and the all-zero state cannot occur.
  }

  static RandomStream for_chunk(std::uint64_t seed, std::uint64_t chunk_index) {
    return RandomStream(derive_stream_seed(seed, chunk_index));
  }

  std::uint64_t next_u64() {
    ++draws_;
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on the half-open-at-zero interval (0, 1]: ((x >> 11) + 1) * 2^-53.
  /// Zero is excluded so -log(u) is always finite.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniforms consumed so far; each sampler's footprint is part of its
  /// contract.
  std::uint64_t draws() const { return draws_; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t draws_ = 0;
};

/// Seed plus chunk layout. Identical (seed, chunk_count, samples_per_chunk)
/// means bit-identical estimates, whatever the thread count.
struct StreamConfig {
  std::uint64_t seed = 42;
  std::uint64_t chunk_count = 64;
  std::uint64_t samples_per_chunk = 15625;

  std::uint64_t total_samples() const { return chunk_count * samples_per_chunk; }

  void validate() const;
};

}  // namespace binomlab

#endif  // BINOMLAB_RNG_HPP
