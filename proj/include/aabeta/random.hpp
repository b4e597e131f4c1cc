#pragma once

#include <cstdint>
#include <random>

#include "aabeta/bigint.hpp"
#include "aabeta/errors.hpp"

namespace aabeta {

// Deterministic randomness source. Same seed, same stream. Range sampling
// is rejection-based, so there is no modulo bias.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, 2^bits).
    BigInt raw_bits(unsigned bits) {
        if (bits == 0)
            return 0;
        unsigned words = (bits + 63) / 64;
        BigInt r = 0;
        for (unsigned i = 0; i < words; ++i) {
            r <<= 64;
            r |= BigInt(next_u64());
        }
        unsigned excess = words * 64 - bits;
        if (excess > 0)
            r >>= excess;
        return r;
    }

    /// Uniform integer in [0, bound) by rejection.
    BigInt below(const BigInt& bound) {
        if (bound <= 0)
            throw std::invalid_argument("RandomSource::below: bound must be positive");
        if (bound == 1)
            return 0;
        unsigned k = bit_length(bound - 1);
        for (;;) {
            BigInt r = raw_bits(k);
            if (r < bound)
                return r;
        }
    }

    /// Uniform integer in [lo, hi], inclusive.
    BigInt in_range(const BigInt& lo, const BigInt& hi) {
        if (lo > hi)
            throw std::invalid_argument("RandomSource::in_range: empty range");
        return lo + below(hi - lo + 1);
    }

private:
    std::mt19937_64 engine_;
};

/// Uniform integer with the top bit set: 2^(bits-1) <= r < 2^bits.
inline BigInt random_exact_bits(RandomSource& rng, unsigned bits) {
    if (bits < 1)
        throw std::invalid_argument("random_exact_bits: bits must be >= 1");
    BigInt r = rng.raw_bits(bits);
    boost::multiprecision::bit_set(r, bits - 1);
    return r;
}

} // namespace aabeta
