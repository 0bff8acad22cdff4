#pragma once

#include <cstdint>
#include <random>

#include "taydom/rational.hpp"

namespace taydom {

/// Seeded RNG with platform-independent helpers (std distributions are
/// implementation-defined; reports must be reproducible bit-for-bit).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform-ish integer in [lo, hi] (modulo bias is irrelevant here).
    long integer(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool coin(double p = 0.5) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

    /// Random rational with numerator in [-num_max, num_max] and denominator
    /// in [1, den_max].
    Rat rational(long num_max, long den_max) {
        return Rat(integer(-num_max, num_max), integer(1, den_max));
    }

    /// Nonzero variant.
    Rat rational_nonzero(long num_max, long den_max) {
        Rat r = rational(num_max, den_max);
        while (r.is_zero()) r = rational(num_max, den_max);
        return r;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace taydom
