#pragma once

#include <array>
#include <cstdint>

#include "aabeta/bigint.hpp"
#include "aabeta/errors.hpp"
#include "aabeta/random.hpp"

namespace aabeta {

namespace detail {

inline constexpr std::array<std::uint32_t, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

// Strong-pseudoprime witnesses proving primality for all n < 3.317e24
// (the least composite passing all thirteen sits exactly at that limit).
inline constexpr std::array<std::uint32_t, 13> kDeterministicBases = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

inline const BigInt& deterministic_witness_limit() {
    static const BigInt limit("3317044064679887385961981");
    return limit;
}

/// One Miller-Rabin round; n odd, n > 2, 1 < a < n - 1 (a reduced mod n).
inline bool miller_rabin_round(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
    BigInt x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace detail

/// Miller-Rabin probable-prime test. Below 3.317e24 a fixed witness set is
/// used and the answer is exact; above, `rounds` random bases are drawn
/// from `rng` (error probability <= 4^-rounds).
inline bool is_probable_prime(const BigInt& n, RandomSource& rng, unsigned rounds = 64) {
    if (n < 2)
        return false;
    for (std::uint32_t p : detail::kSmallPrimes) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    // n > 251 and odd here
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    if (n < detail::deterministic_witness_limit()) {
        for (std::uint32_t a : detail::kDeterministicBases) {
            if (!detail::miller_rabin_round(n, BigInt(a), d, s))
                return false;
        }
        return true;
    }
    for (unsigned i = 0; i < rounds; ++i) {
        BigInt a = 2 + rng.below(n - 3); // uniform in [2, n-2]
        if (!detail::miller_rabin_round(n, a, d, s))
            return false;
    }
    return true;
}

/// Convenience overload for inputs below the deterministic-witness limit
/// (no randomness consulted there; larger inputs get a fixed-seed source).
inline bool is_probable_prime(const BigInt& n, unsigned rounds = 64) {
    RandomSource rng(0x9e3779b97f4a7c15ULL);
    return is_probable_prime(n, rng, rounds);
}

/// Exact-bit-length probable prime: result in [2^(bits-1), 2^bits).
/// Gives up after 10*bits^2 candidates, which signals broken randomness.
inline BigInt generate_prime(RandomSource& rng, unsigned bits) {
    if (bits < 2)
        throw size_error("generate_prime: bits must be >= 2");
    const unsigned long budget = 10ul * bits * bits;
    for (unsigned long attempt = 0; attempt < budget; ++attempt) {
        BigInt c = random_exact_bits(rng, bits);
        if (bits >= 3)
            c |= 1; // even candidates > 2 are never prime
        if (is_probable_prime(c, rng))
            return c;
    }
    throw retry_exhausted("generate_prime: retry budget exhausted");
}

} // namespace aabeta
