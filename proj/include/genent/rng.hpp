// Copyright 2026 The genent Authors
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

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace genent::rng {

/// Identifies one reproducible random stream. Streams for distinct
/// trial indices are statistically independent, and the draw sequence
/// of a stream never depends on which thread consumes it.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// Philox4x32-10 block function (counter-based, bijective per key).
/// Counter words 0-1 hold the trial index, words 2-3 the draw index,
/// so every 32-bit output is a pure function of
/// (master_seed, trial_index, draw_index).
struct Philox4x32 {
  static constexpr std::uint32_t kMult0 = 0xD2511F53u;
  static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(kMult0) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(kMult1) * ctr[2];
      const std::array<std::uint32_t, 4> next = {
          std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
          std::uint32_t(p1),
          std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
          std::uint32_t(p0),
      };
      ctr = next;
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

/// Buffered stream of Philox outputs with uniform and Gaussian views.
class CounterRng {
 public:
  explicit CounterRng(SeedSpec seed)
      : key_{std::uint32_t(seed.master_seed),
             std::uint32_t(seed.master_seed >> 32)},
        trial_lo_(std::uint32_t(seed.trial_index)),
        trial_hi_(std::uint32_t(seed.trial_index >> 32)) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  /// Uniform double in (0, 1].
  double uniform01() {
    return double((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; second member of each pair cached.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  /// Complex Gaussian with independent standard-normal parts.
  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

 private:
  void refill() {
    buf_ = Philox4x32::block(
        {trial_lo_, trial_hi_, std::uint32_t(block_index_),
         std::uint32_t(block_index_ >> 32)},
        key_);
    ++block_index_;
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint32_t trial_lo_;
  std::uint32_t trial_hi_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

/// Derives an independent sub-stream, e.g. one per optimizer restart.
inline SeedSpec substream(SeedSpec seed, std::uint64_t salt) {
  const auto out = Philox4x32::block(
      {std::uint32_t(seed.trial_index), std::uint32_t(seed.trial_index >> 32),
       std::uint32_t(salt), std::uint32_t(salt >> 32)},
      {std::uint32_t(seed.master_seed) ^ 0x243F6A88u,
       std::uint32_t(seed.master_seed >> 32) ^ 0x85A308D3u});
  return {(std::uint64_t(out[1]) << 32) | out[0],
          (std::uint64_t(out[3]) << 32) | out[2]};
}

}  // namespace genent::rng
