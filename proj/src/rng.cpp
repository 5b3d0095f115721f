// SPDX-License-Identifier: Apache-2.0

#include "mimo/rng.hpp"

#include <cmath>

namespace mimo {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

CounterRng::CounterRng(std::initializer_list<std::uint64_t> key_words) {
    std::uint64_t k = 0;
    for (std::uint64_t w : key_words)
        k = mix64(k + kGolden + w);
    key_ = k;
}

std::uint64_t CounterRng::mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

std::uint64_t CounterRng::word(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGolden);
}

double CounterRng::uniform01(std::uint64_t counter) const {
    return (static_cast<double>(word(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform01(counter);
}

std::pair<double, double> CounterRng::normal_pair(std::uint64_t i) const {
    const double u1 = uniform01(2 * i);
    const double u2 = uniform01(2 * i + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

}  // namespace mimo
