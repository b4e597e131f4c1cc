#pragma once

#include "aabeta/errors.hpp"

namespace aabeta {

/// Bit-length budget for one security parameter n. All widths are exact
/// targets except m_bits which is the ceiling for message blocks.
struct SizeProfile {
    unsigned n = 0;
    unsigned v_bits = 0;   // ceil(13n/16)
    unsigned k_bits = 0;   // ceil(n/6), session multipliers
    unsigned m_bits = 0;   // ceil(4n/5), message ceiling
    unsigned key_bits = 0; // 2n, the ephemeral secrets

    /// Sizes that make the decryption guard k2*v + m < p automatic for any
    /// top-bit-set v: messages stay below v, and the worst-case k2*v + m
    /// stays strictly under 2^(n-1) <= p. Holds for every n >= 128.
    bool strict_admissible() const {
        return m_bits + 1 <= v_bits && k_bits + v_bits + 1 <= n;
    }
};

inline SizeProfile derive_size_profile(unsigned n) {
    if (n < 8)
        throw size_error("derive_size_profile: n must be >= 8");
    SizeProfile s;
    s.n = n;
    s.v_bits = (13u * n + 15u) / 16u;
    s.k_bits = (n + 5u) / 6u;
    s.m_bits = (4u * n + 4u) / 5u;
    s.key_bits = 2u * n;
    return s;
}

} // namespace aabeta
