#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "aabeta/errors.hpp"

namespace aabeta {

// All integer quantities in the scheme (keys, session keys, messages,
// ciphertexts) are exact arbitrary-precision integers; lattice reduction
// additionally needs exact rationals for the Gram-Schmidt data.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^k as a BigInt.
inline BigInt pow2(unsigned k) {
    return BigInt(1) << k;
}

/// Smallest L with x < 2^L; bit_length(0) = 0. Negative input rejected.
inline unsigned bit_length(const BigInt& x) {
    if (x < 0)
        throw std::invalid_argument("bit_length: negative input");
    if (x == 0)
        return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
}

/// log2(x) to better than 1e-6, from the top 64 bits plus the bit-length
/// offset. Exact on powers of two up to the double mantissa.
inline double approx_log2(const BigInt& x) {
    if (x <= 0)
        throw std::invalid_argument("approx_log2: input must be positive");
    unsigned len = bit_length(x);
    if (len <= 64) {
        return std::log2(x.convert_to<double>());
    }
    auto top = BigInt(x >> (len - 64)).convert_to<std::uint64_t>();
    return std::log2(static_cast<double>(top)) + static_cast<double>(len - 64);
}

/// Nonnegative residue of a mod m, m > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0)
        r += m;
    return r;
}

/// Floor division for b > 0 (cpp_int's operator/ truncates toward zero).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/// Ceiling division for b > 0.
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    return -floor_div(-a, b);
}

} // namespace aabeta
