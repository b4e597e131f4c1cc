#pragma once

#include <optional>

#include "aabeta/bigint.hpp"
#include "aabeta/errors.hpp"
#include "aabeta/prime.hpp"
#include "aabeta/random.hpp"
#include "aabeta/sizes.hpp"

namespace aabeta {

enum class KeyMode { strict, toy };

/// The three one-shot secrets. a1 - a2 = p and a1 + a2 = pq by
/// construction; a3 carries v via a2 + a3 = v (mod p).
struct EphemeralSecrets {
    BigInt a1, a2, a3;
};

struct PublicKey {
    BigInt e1, e2; // e1 = a1 + a2, e2 = a1 + a3
    unsigned n = 0;
};

struct PrivateKey {
    BigInt p, v; // p = a1 - a2
    unsigned n = 0;
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;
    std::optional<EphemeralSecrets> secrets;
    KeyMode mode = KeyMode::strict;
    // Worst-case decryption guard: max k2 * v + max m < p and max m < v.
    // Always true for strict keys; usually false for toy sizes, where only
    // small enough plaintexts survive the round trip.
    bool guard_ok = false;
};

inline bool decrypt_guard_holds(const BigInt& p, const BigInt& v, const SizeProfile& s) {
    const BigInt max_k = pow2(s.k_bits) - 1;
    const BigInt max_m = pow2(s.m_bits) - 1;
    return max_m < v && max_k * v + max_m < p;
}

namespace detail {

/// Lift v into a3 = ((v - a2) mod p) + t*p, t uniform over the choices
/// that make a3 exactly 2n bits and e2 = a1 + a3 exactly 2n bits. Empty
/// ranges happen (the window can be narrower than p); caller retries with
/// a fresh v.
inline std::optional<BigInt> lift_a3(RandomSource& rng, const BigInt& v, const BigInt& a1,
                                     const BigInt& a2, const BigInt& p, unsigned n) {
    const BigInt lo = pow2(2 * n - 1);
    const BigInt hi = pow2(2 * n) - 1 - a1; // keep e2 under 2^2n
    if (hi < lo)
        return std::nullopt;
    const BigInt base = mod_floor(v - a2, p);
    const BigInt t_lo = ceil_div(lo - base, p);
    const BigInt t_hi = floor_div(hi - base, p);
    if (t_lo > t_hi)
        return std::nullopt;
    return base + rng.in_range(t_lo, t_hi) * p;
}

} // namespace detail

/// Build a key pair from explicit parts. p and q drive the secrets via
/// a1 = p(q+1)/2, a2 = p(q-1)/2; a3 must already satisfy a2 + a3 = v (mod p).
inline KeyPair assemble_keypair(const BigInt& p, const BigInt& q, const BigInt& v,
                                const BigInt& a3, unsigned n, KeyMode mode = KeyMode::toy) {
    if (p <= 2 || q <= 2)
        throw size_error("assemble_keypair: p and q must be odd primes");
    SizeProfile s = derive_size_profile(n);
    EphemeralSecrets sec;
    sec.a1 = p * (q + 1) / 2;
    sec.a2 = p * (q - 1) / 2;
    sec.a3 = a3;
    if (mod_floor(sec.a2 + a3, p) != mod_floor(v, p))
        throw size_error("assemble_keypair: a3 does not embed v");
    KeyPair kp;
    kp.pub = {sec.a1 + sec.a2, sec.a1 + sec.a3, n};
    kp.priv = {p, v, n};
    kp.secrets = sec;
    kp.mode = mode;
    kp.guard_ok = decrypt_guard_holds(p, v, s);
    return kp;
}

/// Fresh key pair. Strict mode (n >= 128, where the decryption guard is
/// automatic) guarantees round-trip correctness; toy mode takes any n >= 8
/// and reports via guard_ok whether the guard happened to hold.
inline KeyPair keygen(RandomSource& rng, unsigned n, KeyMode mode = KeyMode::strict) {
    SizeProfile s = derive_size_profile(n);
    if (mode == KeyMode::strict && (n < 128 || !s.strict_admissible()))
        throw size_error("keygen: strict mode requires n >= 128");

    const BigInt p = generate_prime(rng, n);
    BigInt q = generate_prime(rng, n);
    for (int i = 0; q == p && i < 16; ++i)
        q = generate_prime(rng, n);
    if (q == p)
        throw retry_exhausted("keygen: cannot find distinct q");

    const BigInt a1 = p * (q + 1) / 2;
    const BigInt a2 = p * (q - 1) / 2;

    auto finish = [&](const BigInt& v, const BigInt& a3, bool guard) {
        KeyPair kp;
        kp.pub = {a1 + a2, a1 + a3, n};
        kp.priv = {p, v, n};
        kp.secrets = EphemeralSecrets{a1, a2, a3};
        kp.mode = mode;
        kp.guard_ok = guard;
        return kp;
    };

    // Guard-satisfying v needs m headroom below v_bits at all.
    const bool guard_feasible = s.m_bits < s.v_bits;
    if (guard_feasible) {
        for (int tries = 0; tries < 48; ++tries) {
            BigInt v = random_exact_bits(rng, s.v_bits);
            if (!decrypt_guard_holds(p, v, s))
                continue;
            if (auto a3 = detail::lift_a3(rng, v, a1, a2, p, n))
                return finish(v, *a3, true);
        }
    }
    if (mode == KeyMode::toy) {
        for (int tries = 0; tries < 48; ++tries) {
            BigInt v = random_exact_bits(rng, s.v_bits);
            if (auto a3 = detail::lift_a3(rng, v, a1, a2, p, n))
                return finish(v, *a3, decrypt_guard_holds(p, v, s));
        }
    }
    throw retry_exhausted("keygen: no admissible v found");
}

/// Rebuild the secrets a dishonest party could compute from p, q, e2
/// (the factoring route): a1, a2 follow from the pair construction and
/// v falls out of e2 mod p.
struct ReconstructedSecrets {
    EphemeralSecrets secrets;
    BigInt v;
};

inline ReconstructedSecrets reconstruct_from_factors(const BigInt& p, const BigInt& q,
                                                     const BigInt& e2) {
    if (p <= 2 || q <= 2)
        throw size_error("reconstruct_from_factors: factors must be odd primes");
    if (!is_probable_prime(p) || !is_probable_prime(q))
        throw size_error("reconstruct_from_factors: factors must be prime");
    ReconstructedSecrets r;
    r.secrets.a1 = p * (q + 1) / 2;
    r.secrets.a2 = p * (q - 1) / 2;
    if (e2 <= r.secrets.a1)
        throw size_error("reconstruct_from_factors: e2 too small for these factors");
    r.secrets.a3 = e2 - r.secrets.a1;
    r.v = mod_floor(r.secrets.a2 + r.secrets.a3, p);
    return r;
}

/// Inverse direction: secrets leak the factorization of e1.
inline std::pair<BigInt, BigInt> recover_factors(const BigInt& a1, const BigInt& a2,
                                                 const BigInt& e1) {
    if (a1 <= a2)
        throw size_error("recover_factors: need a1 > a2");
    const BigInt p = a1 - a2;
    if (p < 2 || !is_probable_prime(p))
        throw size_error("recover_factors: a1 - a2 is not prime");
    if (e1 % p != 0)
        throw size_error("recover_factors: a1 - a2 does not divide e1");
    return {p, e1 / p};
}

struct ValidationReport {
    bool eq1 = false;           // a1 + a2 = 0 (mod p), with e1 = a1 + a2
    bool eq2 = false;           // a2 + a3 = v (mod p), with e2 = a1 + a3
    bool p_prime = false;
    bool e1_eq_pq = false;      // e1 = p * q with q prime
    bool bit_lengths = false;   // p, q, v, e1, e2 hit their nominal widths
    bool decrypt_guard = false; // worst-case k2 * v + m < p and m < v
    bool has_secrets = false;

    bool all_passed() const {
        return eq1 && eq2 && p_prime && e1_eq_pq && bit_lengths && decrypt_guard;
    }
};

inline ValidationReport validate_keypair(const KeyPair& kp) {
    ValidationReport r;
    const SizeProfile s = derive_size_profile(kp.pub.n);
    const BigInt& p = kp.priv.p;
    const BigInt& v = kp.priv.v;

    r.has_secrets = kp.secrets.has_value();
    if (kp.secrets) {
        const auto& sec = *kp.secrets;
        r.eq1 = sec.a1 > sec.a2 && sec.a1 - sec.a2 == p &&
                kp.pub.e1 == sec.a1 + sec.a2 && (sec.a1 + sec.a2) % p == 0;
        r.eq2 = kp.pub.e2 == sec.a1 + sec.a3 &&
                mod_floor(sec.a2 + sec.a3, p) == mod_floor(v, p);
    } else {
        // Observable residues of the two congruences.
        r.eq1 = p > 0 && kp.pub.e1 % p == 0;
        r.eq2 = p > 0 && mod_floor(kp.pub.e2, p) == mod_floor(v, p);
    }

    r.p_prime = is_probable_prime(p);
    BigInt q = 0;
    if (p > 0 && kp.pub.e1 % p == 0) {
        q = kp.pub.e1 / p;
        r.e1_eq_pq = is_probable_prime(q);
    }

    const unsigned e1_bits = bit_length(kp.pub.e1);
    r.bit_lengths = bit_length(p) == s.n && q > 0 && bit_length(q) == s.n &&
                    bit_length(v) == s.v_bits &&
                    (e1_bits == 2 * s.n || e1_bits == 2 * s.n - 1) &&
                    bit_length(kp.pub.e2) == 2 * s.n;

    r.decrypt_guard = decrypt_guard_holds(p, v, s);
    return r;
}

} // namespace aabeta
