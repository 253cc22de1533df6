/* Copyright 2026 The mapcs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

namespace mapcs {

/// SplitMix64 finalizer. Used to derive independent stream keys from a
/// master seed so every trial owns its own generator.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Key for stream `stream` under `seed`. Pure function; the same pair always
/// yields the same key regardless of the order streams are requested in.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept;

// Stream tags so the matrix, signal and noise draws of one trial never share
// a generator.
inline constexpr std::uint64_t kStreamMatrix = 0x4d41545249580001ULL;
inline constexpr std::uint64_t kStreamSignal = 0x5349474e414c0002ULL;
inline constexpr std::uint64_t kStreamNoise = 0x4e4f495345000003ULL;

/// mt19937_64 plus portable uniform/normal/bounded draws. The standard
/// distributions are implementation-defined, so these are spelled out here
/// to keep streams bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller (pairs cached).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mapcs
