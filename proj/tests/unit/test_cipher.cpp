#include <gtest/gtest.h>

#include <set>

#include "aabeta/cipher.hpp"
#include "aabeta/demos.hpp"
#include "aabeta/keys.hpp"

using namespace aabeta;

TEST(Cipher, WorkedExampleCiphertext) {
    const WorkedExample& we = worked_example();
    KeyPair kp = worked_example_keypair();
    Ciphertext ct = encrypt_with_keys(kp.pub, we.m, {we.k1, we.k2});
    EXPECT_EQ(ct.c, we.C);
    EXPECT_EQ(mod_floor(ct.c, we.p), we.c_mod_p);
    EXPECT_EQ(decrypt(kp.priv, ct), we.m);
}

TEST(Cipher, GuardViolationCorruptsDecryption) {
    // same key, session key at the k-cap: k2*v + m overflows p
    const WorkedExample& we = worked_example();
    KeyPair kp = worked_example_keypair();
    Ciphertext ct = encrypt_with_keys(kp.pub, we.m, {we.k1, 63});
    EXPECT_GT(BigInt(63) * we.v + we.m, we.p);
    EXPECT_NE(decrypt(kp.priv, ct), we.m);
}

TEST(Cipher, StrictRoundTrip) {
    RandomSource rng(2024);
    KeyPair kp = keygen(rng, 128, KeyMode::strict);
    SizeProfile s = derive_size_profile(128);
    for (int i = 0; i < 200; ++i) {
        BigInt m = rng.below(pow2(s.m_bits));
        Ciphertext ct = encrypt(rng, kp.pub, m);
        EXPECT_EQ(decrypt(kp.priv, ct), m);
    }
    // boundary messages
    EXPECT_EQ(decrypt(kp.priv, encrypt(rng, kp.pub, 0)), 0);
    BigInt top = pow2(s.m_bits) - 1;
    EXPECT_EQ(decrypt(kp.priv, encrypt(rng, kp.pub, top)), top);
}

TEST(Cipher, ReductionIdentity) {
    // C mod p = k2*v + m whenever the guard holds: e1 vanishes mod p and
    // e2 contributes v exactly once per k2.
    RandomSource rng(77);
    KeyPair kp = keygen(rng, 128, KeyMode::strict);
    SizeProfile s = derive_size_profile(128);
    for (int i = 0; i < 50; ++i) {
        SessionKeys keys{rng.in_range(1, pow2(s.k_bits) - 1),
                         rng.in_range(1, pow2(s.k_bits) - 1)};
        BigInt m = rng.below(pow2(s.m_bits));
        Ciphertext ct = encrypt_with_keys(kp.pub, m, keys);
        EXPECT_EQ(mod_floor(ct.c, kp.priv.p), keys.k2 * kp.priv.v + m);
    }
}

TEST(Cipher, CiphertextSizeBound) {
    RandomSource rng(5150);
    KeyPair kp = keygen(rng, 256, KeyMode::strict);
    SizeProfile s = derive_size_profile(256);
    unsigned cap = bit_length(kp.pub.e1) + s.k_bits + 2;
    for (int i = 0; i < 50; ++i) {
        Ciphertext ct = encrypt(rng, kp.pub, rng.below(pow2(s.m_bits)));
        EXPECT_LE(bit_length(ct.c), cap);
    }
}

TEST(Cipher, ZeroSessionKeysExposeMessage) {
    KeyPair kp = worked_example_keypair();
    Ciphertext ct = encrypt_with_keys(kp.pub, 12345, {0, 0}, true);
    EXPECT_EQ(ct.c, 12345);
}

TEST(Cipher, RejectsOutOfRangeInputs) {
    KeyPair kp = worked_example_keypair();
    SizeProfile s = derive_size_profile(32);
    EXPECT_THROW(encrypt_with_keys(kp.pub, pow2(s.m_bits), {3, 3}), size_error);
    EXPECT_THROW(encrypt_with_keys(kp.pub, BigInt(-1), {3, 3}), size_error);
    EXPECT_THROW(encrypt_with_keys(kp.pub, 5, {0, 3}), size_error);
    EXPECT_THROW(encrypt_with_keys(kp.pub, 5, {3, 0}), size_error);
    EXPECT_THROW(encrypt_with_keys(kp.pub, 5, {pow2(s.k_bits), 3}), size_error);
    EXPECT_THROW(encrypt_with_keys(kp.pub, 5, {3, pow2(s.k_bits)}), size_error);
    EXPECT_NO_THROW(encrypt_with_keys(kp.pub, 5, {pow2(s.k_bits) - 1, 1}));
}

TEST(Cipher, DecryptRejectsMismatchedParams) {
    KeyPair kp = worked_example_keypair();
    Ciphertext ct = encrypt_with_keys(kp.pub, 5, {3, 3});
    ct.n = 64;
    EXPECT_THROW(decrypt(kp.priv, ct), size_error);

    Ciphertext ok = encrypt_with_keys(kp.pub, 5, {3, 3});
    PrivateKey bad = kp.priv;
    bad.p = 0;
    EXPECT_THROW(decrypt(bad, ok), size_error);
    bad = kp.priv;
    bad.v = -1;
    EXPECT_THROW(decrypt(bad, ok), size_error);
}

TEST(Cipher, FreshEncryptionsDiffer) {
    RandomSource rng(31337);
    KeyPair kp = keygen(rng, 128, KeyMode::strict);
    const BigInt m = 424242;
    std::set<BigInt> seen;
    for (int i = 0; i < 100; ++i)
        seen.insert(encrypt(rng, kp.pub, m).c);
    EXPECT_EQ(seen.size(), 100u);
}
