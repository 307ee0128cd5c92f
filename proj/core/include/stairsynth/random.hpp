// Copyright 2026 The stairsynth Authors
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

#include <complex>
#include <cstdint>
#include <random>

namespace stairsynth {

/// Counter-based 64-bit generator: the n-th output is a SplitMix64 finalizer
/// applied to (key + n * golden). Two generators built from the same
/// (seed, stream) produce identical sequences, and streams are decorrelated
/// through the key derivation. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(finalize(seed ^ finalize(stream + kGolden))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return finalize(key_ + kGolden * ++counter_); }

  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Draws complex numbers whose real and imaginary parts are i.i.d. N(0, 1).
class ComplexNormalSampler {
 public:
  explicit ComplexNormalSampler(std::uint64_t seed, std::uint64_t stream = 0)
      : rng_(seed, stream) {}

  std::complex<double> operator()() {
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    return {re, im};
  }

  double real() { return normal_(rng_); }

 private:
  CounterRng rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace stairsynth
