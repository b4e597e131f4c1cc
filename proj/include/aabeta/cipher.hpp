#pragma once

#include "aabeta/bigint.hpp"
#include "aabeta/errors.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/random.hpp"
#include "aabeta/sizes.hpp"

namespace aabeta {

struct SessionKeys {
    BigInt k1, k2;
};

struct Ciphertext {
    BigInt c;
    unsigned n = 0;
};

/// The two arithmetic cores, templated so instrumented integer types can
/// count exactly the work a real encryption/decryption performs.
template <typename Int>
Int ciphertext_combine(const Int& k1, const Int& e1, const Int& k2, const Int& e2,
                       const Int& m) {
    return k1 * e1 + k2 * e2 + m;
}

template <typename Int>
Int plaintext_reduce(const Int& c, const Int& p, const Int& v) {
    return (c % p) % v;
}

inline Ciphertext encrypt_with_keys(const PublicKey& pub, const BigInt& m,
                                    const SessionKeys& keys,
                                    bool allow_zero_session_keys = false) {
    SizeProfile s = derive_size_profile(pub.n);
    if (m < 0 || bit_length(m) > s.m_bits)
        throw size_error("encrypt: message exceeds m_bits");
    const BigInt k_cap = pow2(s.k_bits);
    const BigInt k_floor = allow_zero_session_keys ? 0 : 1;
    if (keys.k1 < k_floor || keys.k1 >= k_cap || keys.k2 < k_floor || keys.k2 >= k_cap)
        throw size_error("encrypt: session keys out of range");
    return {ciphertext_combine(keys.k1, pub.e1, keys.k2, pub.e2, m), pub.n};
}

inline Ciphertext encrypt(RandomSource& rng, const PublicKey& pub, const BigInt& m) {
    SizeProfile s = derive_size_profile(pub.n);
    SessionKeys keys;
    keys.k1 = rng.in_range(1, pow2(s.k_bits) - 1);
    keys.k2 = rng.in_range(1, pow2(s.k_bits) - 1);
    return encrypt_with_keys(pub, m, keys);
}

inline BigInt decrypt(const PrivateKey& priv, const Ciphertext& ct) {
    if (priv.n != ct.n)
        throw size_error("decrypt: parameter mismatch between key and ciphertext");
    if (priv.p <= 0 || priv.v <= 0)
        throw size_error("decrypt: degenerate private key");
    return plaintext_reduce(ct.c, priv.p, priv.v);
}

} // namespace aabeta
