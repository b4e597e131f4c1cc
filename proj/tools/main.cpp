// Command-line surface: key lifecycle, file encryption, attack drivers,
// demos, and the benchmark. Exit codes: 0 ok, 2 invalid sizes, 3 retry
// exhaustion, 4 malformed key/ciphertext file, 5 padding failure, 6 work
// budget refused, 1 anything else.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aabeta/aabeta.hpp"

namespace {

using namespace aabeta;

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

KeyMode mode_from(const std::string& s) {
    return s == "toy" ? KeyMode::toy : KeyMode::strict;
}

PublicKeyFile load_public(const std::string& path) {
    return parse_public_key(read_text_file(path));
}

PrivateKeyFile load_private(const std::string& path) {
    return parse_private_key(read_text_file(path));
}

CiphertextFile load_ciphertext(const std::string& path) {
    return parse_ciphertext(read_text_file(path));
}

Ciphertext pick_block(const CiphertextFile& f, unsigned idx) {
    if (idx >= f.blocks.size())
        throw error("block index out of range");
    return Ciphertext{f.blocks[idx], f.n};
}

struct KnownTriple {
    std::int64_t k1 = -1, k2 = -1;
    std::string m;

    std::optional<std::array<BigInt, 3>> resolve() const {
        const bool any = k1 >= 0 || k2 >= 0 || !m.empty();
        if (!any)
            return std::nullopt;
        if (k1 < 0 || k2 < 0 || m.empty())
            throw error("--known-k1/--known-k2/--known-m must be given together");
        return std::array<BigInt, 3>{BigInt(k1), BigInt(k2), BigInt(m)};
    }
};

int run(int argc, char** argv) {
    CLI::App app{"AA-beta cryptosystem and cryptanalysis workbench"};
    app.require_subcommand(1);
    int rc = 0;

    unsigned n = 512;
    std::string mode = "strict";
    std::optional<std::uint64_t> seed;
    std::string in_path, out_path, pub_path, key_path;
    double delta = 0.99;
    std::uint64_t budget = 10000000;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "deterministic RNG seed");
    };

    // keygen
    auto* cmd_keygen = app.add_subcommand("keygen", "generate a key pair");
    cmd_keygen->add_option("--n", n, "security parameter (bits per prime)");
    cmd_keygen->add_option("--mode", mode, "strict|toy")
        ->check(CLI::IsMember({"strict", "toy"}));
    add_seed(cmd_keygen);
    cmd_keygen->add_option("--out", out_path, "basename for .pub/.key files")->required();
    cmd_keygen->callback([&] {
        RandomSource rng(seed.value_or(fresh_seed()));
        const KeyPair kp = keygen(rng, n, mode_from(mode));
        write_text_file(out_path + ".pub", format_public_key(kp.pub, kp.mode));
        write_text_file(out_path + ".key", format_private_key(kp.priv, kp.secrets, kp.mode));
        const ValidationReport vr = validate_keypair(kp);
        std::cout << "wrote " << out_path << ".pub and " << out_path << ".key (n=" << n
                  << ", " << mode << ")\n";
        std::cout << "validation: " << (vr.all_passed() ? "all checks pass" : "checks failed")
                  << (kp.guard_ok ? "" : " (worst-case decrypt guard does not hold)") << "\n";
    });

    // encrypt
    auto* cmd_encrypt = app.add_subcommand("encrypt", "encrypt a file");
    cmd_encrypt->add_option("--pub", pub_path, "public key file")->required();
    cmd_encrypt->add_option("--in", in_path, "plaintext file")->required();
    cmd_encrypt->add_option("--out", out_path, "ciphertext file")->required();
    add_seed(cmd_encrypt);
    cmd_encrypt->callback([&] {
        const PublicKeyFile pf = load_public(pub_path);
        const SizeProfile s = derive_size_profile(pf.key.n);
        const BlockStream stream = encode_blocks(read_binary_file(in_path), s.m_bits);
        RandomSource rng(seed.value_or(fresh_seed()));
        std::vector<BigInt> blocks;
        blocks.reserve(stream.blocks.size());
        for (const BigInt& m : stream.blocks)
            blocks.push_back(encrypt(rng, pf.key, m).c);
        write_text_file(out_path, format_ciphertext(blocks, pf.key.n));
        std::cout << "wrote " << out_path << " (" << blocks.size() << " blocks)\n";
    });

    // decrypt
    auto* cmd_decrypt = app.add_subcommand("decrypt", "decrypt a file");
    cmd_decrypt->add_option("--key", key_path, "private key file")->required();
    cmd_decrypt->add_option("--in", in_path, "ciphertext file")->required();
    cmd_decrypt->add_option("--out", out_path, "plaintext output file")->required();
    cmd_decrypt->callback([&] {
        const PrivateKeyFile kf = load_private(key_path);
        const CiphertextFile cf = load_ciphertext(in_path);
        const SizeProfile s = derive_size_profile(kf.key.n);
        std::vector<BigInt> ms;
        ms.reserve(cf.blocks.size());
        for (const BigInt& c : cf.blocks)
            ms.push_back(decrypt(kf.key, Ciphertext{c, cf.n}));
        write_binary_file(out_path, decode_blocks(ms, s.m_bits));
        std::cout << "wrote " << out_path << "\n";
    });

    // attack group
    auto* cmd_attack = app.add_subcommand("attack", "run a cryptanalysis routine");
    cmd_attack->require_subcommand(1);
    unsigned block_idx = 0;
    bool assert_success = false;
    KnownTriple known;
    std::string expect_path;

    auto add_known = [&](CLI::App* cmd) {
        cmd->add_option("--known-k1", known.k1, "true k1, for success judging");
        cmd->add_option("--known-k2", known.k2, "true k2");
        cmd->add_option("--known-m", known.m, "true m");
        cmd->add_flag("--assert-success", assert_success,
                      "exit nonzero unless the attack succeeds");
        cmd->add_option("--block", block_idx, "ciphertext block to attack (default 0)");
    };

    auto* atk_lattice = cmd_attack->add_subcommand("lattice", "reduce the message lattice");
    atk_lattice->add_option("--pub", pub_path)->required();
    atk_lattice->add_option("--in", in_path, "ciphertext file")->required();
    atk_lattice->add_option("--delta", delta, "LLL delta (default 0.99)");
    add_known(atk_lattice);
    atk_lattice->callback([&] {
        const PublicKeyFile pf = load_public(pub_path);
        const Ciphertext ct = pick_block(load_ciphertext(in_path), block_idx);
        const SizeProfile s = derive_size_profile(pf.key.n);
        const AttackOutcome out = lattice_attack(pf.key, ct, s, delta, known.resolve());
        std::cout << format_report(out);
        if (assert_success && out.success != std::optional<bool>(true))
            rc = 1;
    });

    auto* atk_brute = cmd_attack->add_subcommand("bruteforce", "exhaust the session-key space");
    atk_brute->add_option("--pub", pub_path)->required();
    atk_brute->add_option("--in", in_path, "ciphertext file")->required();
    add_known(atk_brute);
    atk_brute->callback([&] {
        const PublicKeyFile pf = load_public(pub_path);
        const Ciphertext ct = pick_block(load_ciphertext(in_path), block_idx);
        const SizeProfile s = derive_size_profile(pf.key.n);
        AttackOutcome out = bruteforce_dehp1(pf.key, ct, s);
        if (auto k = known.resolve()) {
            out.success = std::find(out.candidates.begin(), out.candidates.end(), *k) !=
                          out.candidates.end();
        }
        std::cout << format_report(out);
        if (assert_success && out.success != std::optional<bool>(true))
            rc = 1;
    });

    auto* atk_factor = cmd_attack->add_subcommand("factor", "factor e1 and rebuild the key");
    atk_factor->add_option("--pub", pub_path)->required();
    atk_factor->add_option("--budget", budget, "work budget in steps");
    atk_factor->add_option("--in", in_path, "ciphertext file for the known-plaintext probe");
    atk_factor->add_option("--expect", expect_path, "known plaintext file for the probe");
    atk_factor->add_flag("--assert-success", assert_success,
                         "exit nonzero unless a probe-confirmed key is found");
    atk_factor->callback([&] {
        const PublicKeyFile pf = load_public(pub_path);
        std::optional<KnownPlaintextProbe> probe;
        if (!in_path.empty() || !expect_path.empty()) {
            if (in_path.empty() || expect_path.empty())
                throw error("--in and --expect must be given together");
            const SizeProfile s = derive_size_profile(pf.key.n);
            const CiphertextFile cf = load_ciphertext(in_path);
            const BlockStream stream =
                encode_blocks(read_binary_file(expect_path), s.m_bits);
            probe = KnownPlaintextProbe{pick_block(cf, 0), stream.blocks.at(0)};
        }
        const FactoringOutcome out = factoring_attack(pf.key, budget, probe);
        std::cout << format_report(out, pf.key);
        if (assert_success && !(out.probed ? out.selected.has_value() : !out.candidates.empty()))
            rc = 1;
    });

    auto* atk_gauss = cmd_attack->add_subcommand("gaussian", "shortest-vector estimate");
    atk_gauss->add_option("--in", in_path, "ciphertext file")->required();
    atk_gauss->add_option("--block", block_idx, "ciphertext block (default 0)");
    atk_gauss->callback([&] {
        const Ciphertext ct = pick_block(load_ciphertext(in_path), block_idx);
        std::cout << "sigma_log2: " << std::fixed << std::setprecision(6)
                  << gaussian_heuristic(ct.c) << "\n";
    });

    auto* atk_cop = cmd_attack->add_subcommand("coppersmith-bound",
                                               "small-root bound arithmetic");
    atk_cop->add_option("--pub", pub_path)->required();
    atk_cop->callback([&] {
        const PublicKeyFile pf = load_public(pub_path);
        const SizeProfile s = derive_size_profile(pf.key.n);
        const double case1 =
            coppersmith_bound({0.5, 2, 0.0, pf.key.e1}); // degree-2 divisor polynomial
        const double case2 = coppersmith_bound({0.5, 1, 0.0, pf.key.e1}); // linear
        std::cout << std::fixed << std::setprecision(6);
        std::cout << "case1_bound_log2: " << case1 << "\n";
        std::cout << "case2_bound_log2: " << case2 << "\n";
        std::cout << "v_bits: " << s.v_bits << "\n";
    });

    // demos
    auto* cmd_demo = app.add_subcommand("demo", "replay a worked example");
    cmd_demo->require_subcommand(1);
    unsigned demo_n = 32;

    cmd_demo->add_subcommand("paper-example", "the published n=32 walkthrough")
        ->callback([&] { std::cout << worked_example_transcript(); });
    cmd_demo->add_subcommand("keyexchange", "singular-generator exchange forgery")
        ->callback([&] { std::cout << keyexchange_transcript(); });
    auto* demo_improper = cmd_demo->add_subcommand("improper-size", "floor-division break");
    demo_improper->add_option("--n", demo_n, "addend size in bits (default 32)");
    add_seed(demo_improper);
    demo_improper->callback([&] {
        RandomSource rng(seed.value_or(fresh_seed()));
        std::cout << improper_size_transcript(rng, demo_n);
    });

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "operation counts, expansion, timing");
    std::vector<unsigned> sizes{256, 512};
    unsigned trials = 100;
    bool timing = false, csv = false;
    cmd_bench->add_option("--n", n, "size for the op-count check (default 512)");
    add_seed(cmd_bench);
    cmd_bench->add_flag("--timing", timing, "also run the wall-clock benchmark");
    cmd_bench->add_flag("--csv", csv, "emit the timing table as CSV");
    cmd_bench->add_option("--sizes", sizes, "timing sizes (default 256 512)");
    cmd_bench->add_option("--trials", trials, "trials per row (min 100)");
    cmd_bench->callback([&] {
        RandomSource rng(seed.value_or(fresh_seed()));
        const SizeProfile s = derive_size_profile(n);
        const KeyPair kp = keygen(rng, n, mode_from(mode));
        const BigInt m = rng.raw_bits(s.m_bits);
        const SessionKeys keys{rng.in_range(1, pow2(s.k_bits) - 1),
                               rng.in_range(1, pow2(s.k_bits) - 1)};
        BigInt c;
        const OpCounts enc = count_encryption_ops(kp.pub, keys, m, &c);
        const OpCounts dec = count_decryption_ops(kp.priv, Ciphertext{c, n});
        std::cout << "encrypt ops: mul=" << enc.mul << " add=" << enc.add
                  << " mod=" << enc.mod << "\n";
        std::cout << "decrypt ops: mul=" << dec.mul << " add=" << dec.add
                  << " mod=" << dec.mod << "\n";
        std::cout << "expansion: " << std::fixed << std::setprecision(3)
                  << expansion_ratio(kp.pub) << "\n";
        if (timing) {
            const BenchReport report = run_bench(sizes, trials, rng);
            std::cout << (csv ? to_csv(report) : to_table(report));
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const aabeta::size_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const aabeta::retry_exhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const aabeta::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const aabeta::codec_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const aabeta::work_budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
