// Copyright 2026 The qrc-ipc Authors
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

#include <cstdint>
#include <random>
#include <string_view>

namespace qrc {

/// Stream tags for seed derivation. Every consumer of randomness draws from
/// its own stream so that, e.g., changing the input length never changes
/// the couplings.
enum class SeedStream : std::uint64_t {
  kCouplings = 1,
  kInputs = 2,
  kSurrogates = 3,
  kTargetSample = 4,
  kRealization = 5,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based derivation: the same (seed, stream, counter) always maps to
/// the same child seed, independent of how many other children exist.
std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream, std::uint64_t counter = 0) noexcept;

/// FNV-1a over bytes; used to key seeds on textual values.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// mt19937_64 with a portable uniform mapping (53 high bits), so draws are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qrc
