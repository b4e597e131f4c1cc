#pragma once

#include <sstream>
#include <string>

#include "aabeta/attacks.hpp"
#include "aabeta/bigint.hpp"
#include "aabeta/cipher.hpp"
#include "aabeta/errors.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/pitfalls.hpp"
#include "aabeta/random.hpp"

namespace aabeta {

/// The published n=32 worked example, kept as one fixture: inject the
/// secrets, reproduce every downstream value exactly.
struct WorkedExample {
    unsigned n = 32;
    BigInt p = BigInt("3471523427");
    BigInt q = BigInt("3539633039");
    BigInt v = BigInt("66857602");
    BigInt a3 = BigInt("5113460585870913605");
    BigInt k1 = 33, k2 = 32;
    BigInt m = BigInt("39152991");
    // expected downstream values
    BigInt a1 = BigInt("6143959510671614040");
    BigInt a2 = BigInt("6143959507200090613");
    BigInt e1 = BigInt("12287919017871704653");
    BigInt e2 = BigInt("11257420096542527645");
    BigInt C = BigInt("765738770679166291180");
    BigInt c_mod_p = BigInt("2178596255");
};

inline const WorkedExample& worked_example() {
    static const WorkedExample we;
    return we;
}

inline KeyPair worked_example_keypair() {
    const WorkedExample& we = worked_example();
    return assemble_keypair(we.p, we.q, we.v, we.a3, we.n, KeyMode::toy);
}

/// End-to-end replay of the worked example. Throws if any reproduced value
/// drifts from the fixture, so the transcript doubles as a self-check.
inline std::string worked_example_transcript() {
    const WorkedExample& we = worked_example();
    std::ostringstream os;
    auto expect = [&](const char* name, const BigInt& got, const BigInt& want) {
        os << name << " = " << got << "\n";
        if (got != want)
            throw error(std::string("worked example: mismatch at ") + name);
    };

    os << "worked example, n = " << we.n << "\n\n";
    os << "p = " << we.p << "\nq = " << we.q << "\nv = " << we.v << "\n";

    const KeyPair kp = worked_example_keypair();
    expect("a1", kp.secrets->a1, we.a1);
    expect("a2", kp.secrets->a2, we.a2);
    os << "a3 = " << kp.secrets->a3 << "\n";
    expect("e1", kp.pub.e1, we.e1);
    expect("e2", kp.pub.e2, we.e2);

    os << "\nsession keys k1 = " << we.k1 << ", k2 = " << we.k2 << "\n";
    os << "message m = " << we.m << "\n";
    const Ciphertext ct = encrypt_with_keys(kp.pub, we.m, SessionKeys{we.k1, we.k2});
    expect("C", ct.c, we.C);
    expect("C mod p", mod_floor(ct.c, kp.priv.p), we.c_mod_p);
    expect("decrypt(C)", decrypt(kp.priv, ct), we.m);

    const ValidationReport vr = validate_keypair(kp);
    os << "\nvalidation: eq1 " << (vr.eq1 ? "ok" : "FAIL") << ", eq2 "
       << (vr.eq2 ? "ok" : "FAIL") << ", p prime " << (vr.p_prime ? "ok" : "FAIL")
       << ", e1 = p*q " << (vr.e1_eq_pq ? "ok" : "FAIL") << ", bit lengths "
       << (vr.bit_lengths ? "ok" : "FAIL") << "\n";
    os << "worst-case decrypt guard: " << (vr.decrypt_guard ? "holds" : "FAILS") << "\n";
    if (!vr.decrypt_guard)
        os << "  (this key admits k2, m with k2*v + m > p, e.g. k2 = 63: decryption"
              " of such a ciphertext would be wrong; the session keys above stay"
              " inside the safe range)\n";
    return os.str();
}

/// The broken singular-generator key exchange, replayed twice: once
/// verbatim from the published operands (whose A and E_A disagree - that
/// inconsistency is flagged), once with a corrected nonsingular A. The
/// passive forgery succeeds in both runs.
inline std::string keyexchange_transcript() {
    std::ostringstream os;
    const Matrix2 G{1, 2, 2, 4};
    const Matrix2 B{7, 8, 9, 10};
    const Matrix2 published_A{1, 3, 2, 6};
    const Matrix2 published_E_A{7, 14, 14, 28};
    const Matrix2 corrected_A{2, 3, 4, 5};

    os << "singular-generator key exchange\n";
    os << "G = " << mat_str(G) << " (singular by design)\n";
    os << "B = " << mat_str(B) << "\n\n";

    os << "published run\n";
    os << "published E_A = " << mat_str(published_E_A) << "\n";
    os << "NOTE: the published operands are inconsistent. E_A = (7,14;14,28) requires"
          " A = (1,3;2,6), which is singular and so not a valid secret; the also-published"
          " A = (2,3;4,5) gives A*G = (8,16;14,28) != E_A. The forgery below uses the"
          " published E_A as the intercepted value, which is all an attacker sees.\n";
    os << "(singular A = " << mat_str(published_A) << " would be rejected by the protocol)\n";

    const Matrix2 E_B = mat_mul(G, B);
    os << "E_B = G*B = " << mat_str(E_B) << "\n";
    const Matrix2 forged = forge_equivalent_secret(published_E_A, G);
    os << "forged secret A' = " << mat_str(forged) << " (A'*G = E_A, A' != A)\n";
    const Matrix2 forged_key = mat_mul(forged, E_B);
    const Matrix2 victim_key = mat_mul(published_E_A, B);
    os << "forged shared key A'*(G*B) = " << mat_str(forged_key) << "\n";
    os << "victim shared key E_A*B    = " << mat_str(victim_key) << "\n";
    if (forged_key != victim_key)
        throw error("keyexchange demo: forgery failed on published values");

    os << "\ncorrected run (nonsingular A)\n";
    os << "A = " << mat_str(corrected_A) << "\n";
    const KeyExchangeTranscript t = keyexchange_simulate(G, corrected_A, B);
    os << "E_A = A*G = " << mat_str(t.E_A) << "\n";
    os << "E_B = G*B = " << mat_str(t.E_B) << "\n";
    os << "shared key (A side) = " << mat_str(t.key_A) << "\n";
    os << "shared key (B side) = " << mat_str(t.key_B) << "\n";
    if (t.key_A != t.key_B)
        throw error("keyexchange demo: honest parties disagree");
    const Matrix2 forged2 = forge_equivalent_secret(t.E_A, G);
    const Matrix2 forged_key2 = mat_mul(forged2, t.E_B);
    os << "forged secret A' = " << mat_str(forged2) << "\n";
    os << "forged shared key = " << mat_str(forged_key2) << "\n";
    if (forged_key2 != t.key_A)
        throw error("keyexchange demo: forgery failed on corrected values");
    os << "the passive attacker recovers the shared key in both runs\n";
    return os.str();
}

/// Floor-division break of the oversized-coefficient design: with
/// e = a1 + a2*g1 and a1 < g1, division by the public g1 recovers both
/// private addends.
inline std::string improper_size_transcript(RandomSource& rng, unsigned n = 32) {
    std::ostringstream os;
    os << "improper-size attack (public g1 of 2n bits, private a1, a2 of n bits)\n\n";

    os << "fixed example\n";
    const BigInt g1_fixed = 1048583, a1_fixed = 123, a2_fixed = 456;
    const BigInt e_fixed = a1_fixed + a2_fixed * g1_fixed;
    os << "g1 = " << g1_fixed << ", e = a1 + a2*g1 = " << e_fixed << "\n";
    auto [r2, r1] = improper_size_attack(e_fixed, g1_fixed);
    os << "recovered a2 = " << r2 << ", a1 = " << r1 << "\n";
    if (r1 != a1_fixed || r2 != a2_fixed)
        throw error("improper-size demo: fixed example failed");

    os << "\nrandom instance, n = " << n << "\n";
    const BigInt g1 = random_exact_bits(rng, 2 * n);
    const BigInt a1 = random_exact_bits(rng, n);
    const BigInt a2 = random_exact_bits(rng, n);
    const BigInt e = a1 + a2 * g1;
    os << "g1 = " << g1 << "\na1 = " << a1 << "\na2 = " << a2 << "\ne = " << e << "\n";
    auto [s2, s1] = improper_size_attack(e, g1);
    os << "recovered a2 = " << s2 << ", a1 = " << s1 << "\n";
    if (s1 != a1 || s2 != a2)
        throw error("improper-size demo: random instance failed");
    os << "recovery exact: the n-bit addends never straddle the divisor\n";
    return os.str();
}

} // namespace aabeta
