#pragma once

#include <cstdint>

namespace rsv {

// Seeded 64-bit generator with the splitmix64 update (constants from the
// reference implementation: increment 0x9E3779B97F4A7C15, mix multipliers
// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).  The exact update rule is part
// of the external contract: generated formulas and datasets must be
// reproducible bit-for-bit from the seed alone, independent of platform or
// standard-library implementation.
class split_mix64 {
public:
    explicit split_mix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, n) by rejection; unbiased and portable.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~0ULL - (~0ULL % n + 1ULL) % n;
        std::uint64_t draw = next();
        while (draw > limit) draw = next();
        return draw % n;
    }

    bool coin() { return (next() & 1ULL) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace rsv
