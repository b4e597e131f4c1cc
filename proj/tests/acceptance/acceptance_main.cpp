// Acceptance gate: one line per criterion, exit code = number of failures.
// Run with --timing to add the wall-clock benchmark assertions that stay out
// of CI. Every check here recomputes its expectation from scratch — nothing
// is trusted from the unit suite.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aabeta/aabeta.hpp"

using namespace aabeta;

namespace {

struct CriterionResult {
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

// ---- 1: the worked example reproduces end to end --------------------------

CriterionResult criterion_fixture() {
    CriterionResult r;
    const WorkedExample& we = worked_example();
    try {
        (void)worked_example_transcript(); // throws on any drift
    } catch (const std::exception& e) {
        r.require(false, e.what());
        return r;
    }
    KeyPair kp = worked_example_keypair();
    r.require(kp.secrets->a1 == we.a1 && kp.secrets->a2 == we.a2, "secrets drifted");
    r.require(kp.pub.e1 == we.e1 && kp.pub.e2 == we.e2, "public key drifted");
    Ciphertext ct = encrypt_with_keys(kp.pub, we.m, {we.k1, we.k2});
    r.require(ct.c == we.C, "ciphertext drifted");
    r.require(mod_floor(ct.c, we.p) == we.c_mod_p, "partial reduction drifted");
    r.require(decrypt(kp.priv, ct) == we.m, "decryption drifted");
    return r;
}

// ---- 2: strict round trips at nominal sizes --------------------------------

CriterionResult criterion_round_trip() {
    CriterionResult r;
    for (unsigned n : {128u, 256u, 512u}) {
        RandomSource rng(1000 + n);
        KeyPair kp = keygen(rng, n, KeyMode::strict);
        SizeProfile s = derive_size_profile(n);
        unsigned bad = 0;
        for (int i = 0; i < 1000; ++i) {
            BigInt m = rng.below(pow2(s.m_bits));
            if (decrypt(kp.priv, encrypt(rng, kp.pub, m)) != m)
                ++bad;
        }
        r.require(bad == 0, "n = " + std::to_string(n) + ": " + std::to_string(bad) +
                                " of 1000 round trips failed");
    }
    return r;
}

// ---- 3: factoring e1 rebuilds the private key ------------------------------

CriterionResult criterion_factoring_reduction() {
    CriterionResult r;
    for (unsigned n : {16u, 24u, 32u}) {
        for (int k = 0; k < 50; ++k) {
            RandomSource rng(2000 + 100 * n + k);
            KeyPair kp = keygen(rng, n, KeyMode::toy);
            FactoringOutcome out;
            try {
                out = factoring_attack(kp.pub, 10000000);
            } catch (const std::exception& e) {
                r.require(false, "n = " + std::to_string(n) + ": " + e.what());
                continue;
            }
            auto hit = std::find_if(out.candidates.begin(), out.candidates.end(),
                                    [&](const PrivateKey& c) { return c.p == kp.priv.p; });
            if (hit == out.candidates.end()) {
                r.require(false, "n = " + std::to_string(n) + ": true p not among factors");
                continue;
            }
            r.require(hit->v == kp.priv.v, "n = " + std::to_string(n) + ": recovered v differs");
            SizeProfile s = derive_size_profile(n);
            for (int t = 0; t < 100; ++t) {
                Ciphertext ct = encrypt(rng, kp.pub, rng.below(pow2(s.m_bits)));
                if (decrypt(*hit, ct) != decrypt(kp.priv, ct)) {
                    r.require(false, "n = " + std::to_string(n) + ": behavioral divergence");
                    break;
                }
            }
        }
    }
    if (r.ok)
        r.note("150 keys factored, 100 plaintexts each: recovered key exact throughout");
    return r;
}

// ---- 4: the exhaustive solver matches a quadratic reference ----------------

CriterionResult criterion_bruteforce_oracle() {
    CriterionResult r;
    unsigned done = 0;
    for (unsigned n : {16u, 24u}) {
        SizeProfile s = derive_size_profile(n);
        const BigInt k_cap = pow2(s.k_bits), m_cap = pow2(s.m_bits);
        for (int k = 0; k < 50; ++k, ++done) {
            RandomSource rng(3000 + 100 * n + k);
            KeyPair kp = keygen(rng, n, KeyMode::toy);
            BigInt m = rng.below(m_cap);
            SessionKeys keys{rng.in_range(1, k_cap - 1), rng.in_range(1, k_cap - 1)};
            Ciphertext ct = encrypt_with_keys(kp.pub, m, keys);

            AttackOutcome fast = bruteforce_dehp1(kp.pub, ct, s);
            std::vector<std::array<BigInt, 3>> slow;
            for (BigInt k1 = 1; k1 < k_cap; ++k1)
                for (BigInt k2 = 1; k2 < k_cap; ++k2) {
                    BigInt mm = ct.c - k1 * kp.pub.e1 - k2 * kp.pub.e2;
                    if (mm >= 0 && mm < m_cap)
                        slow.push_back({k1, k2, mm});
                }
            r.require(fast.candidates == slow,
                      "n = " + std::to_string(n) + ": solver disagrees with reference");
            std::array<BigInt, 3> truth = {keys.k1, keys.k2, m};
            r.require(std::find(slow.begin(), slow.end(), truth) != slow.end(),
                      "n = " + std::to_string(n) + ": true triple missing");
        }
    }
    if (r.ok)
        r.note(std::to_string(done) + " instances, candidate lists identical");
    return r;
}

// ---- 5: LLL output invariants ----------------------------------------------

bool integral_member(const LatticeBasis& B, const std::vector<BigInt>& v, const BigInt& dB) {
    for (std::size_t i = 0; i < B.dim(); ++i) {
        LatticeBasis Bi = B;
        Bi.rows[i] = v;
        if (basis_determinant(Bi) % dB != 0)
            return false;
    }
    return true;
}

CriterionResult criterion_lll_invariants() {
    CriterionResult r;
    unsigned done = 0;
    for (unsigned n : {32u, 128u}) {
        SizeProfile s = derive_size_profile(n);
        for (int k = 0; k < 100; ++k, ++done) {
            RandomSource rng(4000 + 100 * n + k);
            KeyPair kp = keygen(rng, n, n >= 128 ? KeyMode::strict : KeyMode::toy);
            BigInt m = rng.below(pow2(s.m_bits));
            Ciphertext ct = encrypt(rng, kp.pub, m);
            LatticeBasis B = build_message_lattice(kp.pub, ct);
            LatticeBasis red = lll_reduce(B, Rational(99, 100));

            Gso g = compute_gso(red.rows);
            r.require(is_size_reduced(g), "not size-reduced");
            r.require(lovasz_holds(g, Rational(99, 100)), "Lovasz condition violated");
            BigInt dB = basis_determinant(B), dR = basis_determinant(red);
            r.require(dB == dR || dB == -dR, "determinant not preserved");
            r.require(first_vector_bound_holds(red), "first-vector bound violated");
            bool span_ok = true;
            for (const auto& row : red.rows)
                span_ok = span_ok && integral_member(B, row, dB);
            for (const auto& row : B.rows)
                span_ok = span_ok && integral_member(red, row, dR);
            r.require(span_ok, "reduced basis spans a different lattice");
            if (!r.ok)
                return r;
        }
    }
    r.note(std::to_string(done) + " reductions, all invariants hold");
    return r;
}

// ---- 6: the shortest-vector estimate orders the geometry -------------------

CriterionResult criterion_gaussian_ordering() {
    CriterionResult r;
    const WorkedExample& we = worked_example();
    const double sigma_fix = gaussian_heuristic(we.C);
    const double target_fix = target_vector_norm(we.k1, we.k2, we.m);
    r.require(std::abs(sigma_fix - 21.87) <= 0.05,
              "fixture sigma drifted: " + std::to_string(sigma_fix));
    r.require(std::abs(target_fix - 25.22) <= 0.05,
              "fixture target norm drifted: " + std::to_string(target_fix));
    r.require(target_fix > sigma_fix, "fixture target should dominate the estimate");

    RandomSource rng(6001);
    KeyPair kp = keygen(rng, 512, KeyMode::strict);
    SizeProfile s = derive_size_profile(512);
    double min_gap = 1e9;
    for (int i = 0; i < 100; ++i) {
        BigInt m = random_exact_bits(rng, s.m_bits);
        SessionKeys keys{rng.in_range(1, pow2(s.k_bits) - 1),
                         rng.in_range(1, pow2(s.k_bits) - 1)};
        Ciphertext ct = encrypt_with_keys(kp.pub, m, keys);
        const double gap =
            target_vector_norm(keys.k1, keys.k2, m) - gaussian_heuristic(ct.c);
        min_gap = std::min(min_gap, gap);
    }
    r.require(min_gap >= 30.0,
              "full-width targets must clear the estimate by >= 30 bits, got " +
                  std::to_string(min_gap));
    std::ostringstream os;
    os.precision(4);
    os << std::fixed << "fixture sigma " << sigma_fix << ", target " << target_fix
       << "; minimum n = 512 gap " << min_gap << " bits";
    r.note(os.str());
    return r;
}

// ---- 7: small-root bound arithmetic ----------------------------------------

CriterionResult criterion_small_root_bounds() {
    CriterionResult r;
    const WorkedExample& we = worked_example();
    const double case1 = coppersmith_bound({0.5, 2, 0.0, we.e1});
    const double case2 = coppersmith_bound({0.5, 1, 0.0, we.e1});

    // regression pins on the exact arithmetic
    r.require(std::abs(case1 - 6.9267343020182324) < 1e-9, "case-1 arithmetic drifted");
    r.require(std::abs(case2 - 14.853468604036465) < 1e-9, "case-2 arithmetic drifted");

    // published expectation windows
    r.require(std::abs(case1 - 6.97) <= 0.05,
              "case 1 outside 6.97 +/- 0.05: " + std::to_string(case1));
    r.require(std::abs(case2 - 14.94) <= 0.05,
              "case 2 outside 14.94 +/- 0.05: " + std::to_string(case2));
    if (std::abs(case2 - 14.94) > 0.05) {
        r.note("the 14.94 window encodes a rounded log2(e1) of 63.77 (63.77/4 - 1);"
               " the exact value is 63.413874, so the degree-1 bound lands at"
               " 14.853469 - the window itself is off, not the arithmetic");
        r.note("the same rounding inflates the 6.97 window center, but there the"
               " error is divided by 8 and stays inside the tolerance");
    }

    // size-parametric form: beta = 1/2 bounds track n/4 - 1 and n/2 - 1
    RandomSource rng(7001);
    for (unsigned n : {32u, 512u}) {
        KeyPair kp = keygen(rng, n, n >= 128 ? KeyMode::strict : KeyMode::toy);
        const double c1 = coppersmith_bound({0.5, 2, 0.0, kp.pub.e1});
        const double c2 = coppersmith_bound({0.5, 1, 0.0, kp.pub.e1});
        r.require(std::abs(c1 - (n / 4.0 - 1.0)) <= 1.0,
                  "n = " + std::to_string(n) + ": degree-2 bound off the n/4 - 1 track");
        r.require(std::abs(c2 - (n / 2.0 - 1.0)) <= 1.0,
                  "n = " + std::to_string(n) + ": degree-1 bound off the n/2 - 1 track");
    }
    return r;
}

// ---- 8: improper-design breaks ---------------------------------------------

CriterionResult criterion_design_pitfalls() {
    CriterionResult r;
    const Matrix2 G{1, 2, 2, 4};
    const Matrix2 B{7, 8, 9, 10};
    const Matrix2 published_E_A{7, 14, 14, 28};
    Matrix2 forged = forge_equivalent_secret(published_E_A, G);
    r.require(forged == Matrix2{7, 0, 14, 0}, "forged stand-in secret drifted");
    Matrix2 forged_key = mat_mul(forged, mat_mul(G, B));
    r.require(forged_key == Matrix2{175, 196, 350, 392}, "forged shared key drifted");
    r.require(forged_key == mat_mul(published_E_A, B), "forgery misses the victim key");

    std::string transcript;
    try {
        transcript = keyexchange_transcript();
    } catch (const std::exception& e) {
        r.require(false, e.what());
    }
    r.require(transcript.find("inconsistent") != std::string::npos,
              "operand inconsistency not flagged");

    RandomSource rng(8001);
    for (int i = 0; i < 1000; ++i) {
        const BigInt g1 = random_exact_bits(rng, 64);
        const BigInt a1 = rng.below(g1);
        const BigInt a2 = random_exact_bits(rng, 32);
        auto [r2, r1] = improper_size_attack(a1 + a2 * g1, g1);
        if (r1 != a1 || r2 != a2) {
            r.require(false, "floor-division recovery failed");
            break;
        }
    }
    if (r.ok)
        r.note("forgery fixtures exact; 1000 floor-division recoveries exact;"
               " operand inconsistency flagged in the transcript");
    return r;
}

// ---- 9: ciphertext expansion at the nominal size ---------------------------

CriterionResult criterion_expansion() {
    CriterionResult r;
    RandomSource rng(9001);
    KeyPair kp = keygen(rng, 512, KeyMode::strict);
    const double ratio = expansion_ratio(kp.pub);
    r.require(ratio >= 2.65 && ratio <= 2.75,
              "expansion at n = 512 outside [2.65, 2.75]: " + std::to_string(ratio));
    std::ostringstream os;
    os.precision(4);
    os << std::fixed << "expansion " << ratio << " at n = 512";
    r.note(os.str());
    return r;
}

// ---- 10: operation counts (and, opt-in, the timing surrogate) ---------------

CriterionResult criterion_op_counts(bool timing) {
    CriterionResult r;
    RandomSource rng(10001);
    KeyPair kp = keygen(rng, 512, KeyMode::strict);
    SizeProfile s = derive_size_profile(512);
    const BigInt m = rng.below(pow2(s.m_bits));
    const SessionKeys keys{rng.in_range(1, pow2(s.k_bits) - 1),
                           rng.in_range(1, pow2(s.k_bits) - 1)};

    BigInt c_traced = 0;
    OpCounts enc = count_encryption_ops(kp.pub, keys, m, &c_traced);
    r.require(enc.mul == 2 && enc.add == 2 && enc.mod == 0,
              "encryption must cost exactly 2 mul + 2 add");
    r.require(c_traced == encrypt_with_keys(kp.pub, m, keys).c,
              "traced encryption diverges from the production path");

    BigInt m_traced = 0;
    OpCounts dec = count_decryption_ops(kp.priv, Ciphertext{c_traced, 512}, &m_traced);
    r.require(dec.mod == 2 && dec.mul == 0 && dec.add == 0,
              "decryption must cost exactly 2 mod");
    r.require(m_traced == m, "traced decryption diverges from the production path");

    if (!timing) {
        r.note("wall-clock surrogate skipped (run with --timing to include it)");
        return r;
    }
    BenchReport rep = run_bench({256, 512}, 100, rng);
    r.require(rep.rows.size() == 2, "benchmark did not produce both rows");
    if (rep.rows.size() == 2) {
        for (const auto& row : rep.rows) {
            r.require(row.modexp_us > row.dec_us,
                      "modular exponentiation should dwarf the 2-mod decryption");
            r.require(row.enc_us > 0 && row.dec_us > 0, "degenerate timing sample");
        }
        r.require(rep.rows[1].modexp_us > rep.rows[0].modexp_us,
                  "modexp cost must grow with n");
        std::ostringstream os;
        os.precision(3);
        os << std::fixed << "timing at n = 512: enc " << rep.rows[1].enc_us << "us, dec "
           << rep.rows[1].dec_us << "us, modexp " << rep.rows[1].modexp_us << "us";
        r.note(os.str());
    }
    return r;
}

// ---- 11: encryption is randomized -------------------------------------------

CriterionResult criterion_randomized_encryption() {
    CriterionResult r;
    RandomSource rng(11001);
    KeyPair kp = keygen(rng, 512, KeyMode::strict);
    const BigInt m = 424242;
    std::set<BigInt> seen;
    for (int i = 0; i < 100; ++i)
        seen.insert(encrypt(rng, kp.pub, m).c);
    r.require(seen.size() == 100, "repeated ciphertexts under fresh session keys");
    if (r.ok)
        r.note("100 encryptions of one message, 100 distinct ciphertexts");
    return r;
}

// ---- 12: the lattice harness at working sizes -------------------------------

CriterionResult criterion_lattice_harness() {
    CriterionResult r;
    SizeProfile s = derive_size_profile(128);
    unsigned successes = 0, candidate_total = 0;
    double min_margin = 1e9;
    for (int i = 0; i < 50; ++i) {
        RandomSource rng(12000 + i);
        KeyPair kp = keygen(rng, 128, KeyMode::strict);
        BigInt m = random_exact_bits(rng, s.m_bits);
        SessionKeys keys{rng.in_range(1, pow2(s.k_bits) - 1),
                         rng.in_range(1, pow2(s.k_bits) - 1)};
        Ciphertext ct = encrypt_with_keys(kp.pub, m, keys);
        AttackOutcome out = lattice_attack(kp.pub, ct, s, 0.99,
                                           std::array<BigInt, 3>{keys.k1, keys.k2, m});
        if (!out.success.has_value()) {
            r.require(false, "harness failed to judge an instance");
            return r;
        }
        successes += *out.success ? 1 : 0;
        candidate_total += static_cast<unsigned>(out.candidates.size());
        min_margin = std::min(min_margin, *out.diagnostics.target_norm_log2 -
                                              *out.diagnostics.sigma_log2);
    }
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << "recoveries " << successes << "/50, stray candidates "
       << candidate_total << ", target sits >= " << min_margin
       << " bits above the estimate (no recovery rate is promised here)";
    r.note(os.str());
    return r;
}

} // namespace

int main(int argc, char** argv) {
    bool timing = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--timing") == 0)
            timing = true;

    struct Criterion {
        const char* name;
        std::function<CriterionResult()> run;
    };
    const std::vector<Criterion> criteria = {
        {"worked-example fixture reproduces end to end", criterion_fixture},
        {"strict round trips at n in {128, 256, 512}, 1000 messages each",
         criterion_round_trip},
        {"factoring e1 rebuilds the private key (toy sizes, 50 keys x 100 plaintexts)",
         criterion_factoring_reduction},
        {"exhaustive solver matches the quadratic reference on 100 instances",
         criterion_bruteforce_oracle},
        {"LLL invariants on 200 message lattices", criterion_lll_invariants},
        {"shortest-vector estimate orders target vs noise at n = 512",
         criterion_gaussian_ordering},
        {"small-root bound arithmetic and size tracking", criterion_small_root_bounds},
        {"improper-design breaks reproduce their fixtures", criterion_design_pitfalls},
        {"ciphertext expansion at n = 512 within [2.65, 2.75]", criterion_expansion},
        {"operation counts exact on the production path", [&] { return criterion_op_counts(timing); }},
        {"encryption is randomized (100 distinct ciphertexts)",
         criterion_randomized_encryption},
        {"lattice harness reports recovery statistics at n = 128",
         criterion_lattice_harness},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        CriterionResult res;
        try {
            res = criteria[i].run();
        } catch (const std::exception& e) {
            res.ok = false;
            res.notes.push_back(std::string("unexpected exception: ") + e.what());
        }
        std::cout << (res.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
                  << criteria[i].name << "\n";
        for (const auto& n : res.notes)
            std::cout << "    note: " << n << "\n";
        failures += res.ok ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria pass"
                                : std::to_string(failures) + " criterion(s) failing")
              << "\n";
    return failures;
}
