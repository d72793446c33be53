/**
 * Portable random helpers. The standard distributions are implementation
 * defined, so generators and heuristics draw through these instead to keep
 * seeded output identical across standard libraries.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <vector>

namespace tcp {

using Rng = std::mt19937_64;

/// Engine for a (seed, stream...) tuple; distinct tuples give decorrelated streams.
inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {}) {
    std::vector<std::uint32_t> words;
    words.push_back(static_cast<std::uint32_t>(seed));
    words.push_back(static_cast<std::uint32_t>(seed >> 32));
    for (std::uint64_t s : stream) {
        words.push_back(static_cast<std::uint32_t>(s));
        words.push_back(static_cast<std::uint32_t>(s >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

/// Uniform integer in [0, bound), bound > 0, unbiased by rejection.
template <class URBG>
std::uint64_t uniform_below(URBG& rng, std::uint64_t bound) {
    static_assert(URBG::min() == 0, "engine must start at zero");
    constexpr std::uint64_t engine_max = URBG::max();
    if (bound <= 1) return 0;
    if (engine_max == std::numeric_limits<std::uint64_t>::max()) {
        const std::uint64_t limit = engine_max - engine_max % bound;
        for (;;) {
            std::uint64_t draw = static_cast<std::uint64_t>(rng());
            if (draw < limit) return draw % bound;
        }
    }
    const std::uint64_t range = engine_max + 1;
    const std::uint64_t limit = range - range % bound;
    for (;;) {
        std::uint64_t draw = static_cast<std::uint64_t>(rng());
        if (draw < limit) return draw % bound;
    }
}

/// Uniform integer in [lo, hi].
template <class URBG>
std::int64_t uniform_int(URBG& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace tcp
