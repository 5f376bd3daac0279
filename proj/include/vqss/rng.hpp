// Copyright 2026 The vqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "vqss/gf.hpp"

namespace vqss {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Seedable deterministic generator for simulation randomness.
///
/// Not a cryptographic source: a deployment of the protocol would draw the
/// masking values p_j from a CSPRNG. Output is bit-identical across
/// platforms because both std::mt19937_64 and the bounded sampling below
/// are fully specified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream for trial `index` of an experiment seeded with `master`:
  ///   seed(index) = splitmix64(master ^ splitmix64(index))
  /// Adding trials never changes the streams of earlier trials.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(detail::splitmix64(master ^ detail::splitmix64(index)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Largest multiple of bound representable, exclusive.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  FieldElement field(PrimeModulus d) { return FieldElement(d, below(d.value())); }

  FieldElement nonzero(PrimeModulus d) {
    return FieldElement(d, 1 + below(d.value() - 1));
  }

  /// Uniform over GF(d) minus one value.
  FieldElement field_except(FieldElement excluded) {
    PrimeModulus d = excluded.modulus();
    std::uint64_t r = below(d.value() - 1);
    return FieldElement(d, r >= excluded.value() ? r + 1 : r);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vqss
