// Copyright 2026 The circlaw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CIRCLAW_RANDOM_HPP
#define CIRCLAW_RANDOM_HPP

#include <cstdint>

namespace circlaw {

// SplitMix64 finalizer; a bijection on 64-bit words with good avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Combines a parent seed with child coordinates into an independent seed.
/// Used to give every (dimension, replicate, ...) cell of an experiment its
/// own stream, so results never depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
  return mix64(mix64(parent ^ mix64(a + 0x632be59bd9b4e019ULL)) + mix64(b));
}

/// Counter-based generator: every output word is a pure function of
/// (seed, stream, row, col, counter). Entry (row, col) of a matrix sample
/// can be produced in isolation, in any order, on any thread.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream ^ 0xd1b54a32d192ed03ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t row, std::uint64_t col,
                               std::uint64_t counter) const noexcept {
    const std::uint64_t cell = mix64(key_ ^ mix64(row * 0xa0761d6478bd642fULL + col));
    return mix64(cell + counter * 0xe7037ed1a0b428dbULL);
  }

  /// Uniform on the open interval (0, 1), 53 random bits.
  constexpr double uniform(std::uint64_t row, std::uint64_t col,
                           std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(row, col, counter) >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

}  // namespace circlaw

#endif  // CIRCLAW_RANDOM_HPP
