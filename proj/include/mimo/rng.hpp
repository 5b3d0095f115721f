// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>

namespace mimo {

// Deterministic counter-based generator: the SplitMix64 finalizer applied in
// counter mode. A stream is keyed by a list of 64-bit words (seed, matrix
// size, model id, ...); draw i of a stream is the pure function
//
//   word(i) = mix64(key + (i+1) * 0x9E3779B97F4A7C15)
//   key     = fold of mix64 over the key words starting from 0
//
// with mix64 the standard SplitMix64 finalizer
//
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31;
//
// so streams are splittable, order-independent and reproducible across
// platforms and languages.
class CounterRng {
  public:
    explicit CounterRng(std::initializer_list<std::uint64_t> key_words);

    static std::uint64_t mix64(std::uint64_t z);

    std::uint64_t word(std::uint64_t counter) const;

    // uniform on the open interval (0,1): ((word >> 11) + 0.5) * 2^-53
    double uniform01(std::uint64_t counter) const;
    double uniform(std::uint64_t counter, double lo, double hi) const;

    // standard normal pair via Box-Muller from counters (2i, 2i+1)
    std::pair<double, double> normal_pair(std::uint64_t i) const;

    std::uint64_t key() const { return key_; }

  private:
    std::uint64_t key_ = 0;
};

}  // namespace mimo
