#pragma once

#include <cstdint>

namespace coarse {

// All randomness in the project flows through splitmix64 so that runs are
// bit-reproducible across platforms (std::uniform_int_distribution is not
// pinned by the standard).

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a fresh key from (key, v); used for counter-based seeding.
constexpr std::uint64_t chain(std::uint64_t key, std::uint64_t v) {
    return mix64(key ^ mix64(v + kGolden));
}

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += kGolden;
        return mix64(state);
    }

    // Unbiased draw from [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            std::uint64_t v = next();
            if (v < limit) return v % bound;
        }
    }

    // Inclusive range draw.
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    bool coin() { return (next() >> 63) != 0; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace coarse
