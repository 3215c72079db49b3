// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace datchain {

/// xoshiro256** seeded through splitmix64. Every random choice in the
/// engines and the simulator goes through this generator so that a 64-bit
/// seed reproduces a run byte for byte. Helpers below are defined in terms
/// of next() only; no std:: distributions (their output is not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform in [0, bound). bound must be non-zero. Rejection sampling on
    /// the low end keeps it unbiased.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) from the top 53 bits.
    double unit();

    /// Uniform double in [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool chance(double p) { return unit() < p; }

    /// Independent generator for a named sub-stream.
    Rng fork(std::uint64_t stream);

    /// Fisher-Yates from the back.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // UniformRandomBitGenerator surface.
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next(); }

private:
    std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace datchain
