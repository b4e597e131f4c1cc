#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aabeta/bigint.hpp"
#include "aabeta/cipher.hpp"
#include "aabeta/errors.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/lattice.hpp"
#include "aabeta/prime.hpp"
#include "aabeta/random.hpp"
#include "aabeta/sizes.hpp"

namespace aabeta {

struct AttackDiagnostics {
    std::optional<double> sigma_log2;
    std::optional<double> target_norm_log2;
    std::optional<double> first_vector_log2;
    std::int64_t elapsed_ms = 0;
};

struct AttackOutcome {
    std::vector<std::array<BigInt, 3>> candidates; // (k1, k2, m)
    std::optional<bool> success;                   // only when the true triple is known
    AttackDiagnostics diagnostics;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

} // namespace detail

/// log2 of the Gaussian-heuristic estimate for the shortest vector of the
/// message lattice: sigma = sqrt(3/(2*pi*e)) * C^(1/3).
inline double gaussian_heuristic(const BigInt& C) {
    if (C < 1)
        throw size_error("gaussian_heuristic: C must be >= 1");
    const double c0 = 3.0 / (2.0 * std::numbers::pi * std::numbers::e);
    return 0.5 * std::log2(c0) + approx_log2(C) / 3.0;
}

/// log2 of ||(k1, k2, m)||.
inline double target_vector_norm(const BigInt& k1, const BigInt& k2, const BigInt& m) {
    if (k1 < 0 || k2 < 0 || m < 0)
        throw size_error("target_vector_norm: components must be nonnegative");
    const BigInt n2 = k1 * k1 + k2 * k2 + m * m;
    if (n2 == 0)
        throw size_error("target_vector_norm: zero vector");
    return 0.5 * approx_log2(n2);
}

struct CoppersmithParams {
    double beta = 1.0;    // divisor premise b >= N^beta
    unsigned delta = 1;   // polynomial degree
    double epsilon = 0.0;
    BigInt N;
};

/// log2 of the solvable-root radius (1/2) * N^(beta^2/delta - epsilon).
inline double coppersmith_bound(const CoppersmithParams& params) {
    if (params.beta <= 0.0 || params.beta > 1.0)
        throw size_error("coppersmith_bound: beta must be in (0, 1]");
    if (params.delta < 1)
        throw size_error("coppersmith_bound: delta must be a positive integer");
    if (params.epsilon < 0.0)
        throw size_error("coppersmith_bound: epsilon must be >= 0");
    if (params.N < 2)
        throw size_error("coppersmith_bound: N must be >= 2");
    const double exponent = params.beta * params.beta / params.delta - params.epsilon;
    if (exponent <= 0.0)
        throw size_error("coppersmith_bound: exponent degenerates to <= 0");
    return exponent * approx_log2(params.N) - 1.0;
}

/// Rows [(1,0,e1),(0,1,e2),(0,0,C)]; contains (k1, k2, -m) whenever
/// C = k1*e1 + k2*e2 + m.
inline LatticeBasis build_message_lattice(const PublicKey& pub, const Ciphertext& ct) {
    if (ct.c <= 0)
        throw size_error("build_message_lattice: ciphertext must be positive");
    LatticeBasis b;
    b.rows = {{BigInt(1), BigInt(0), pub.e1},
              {BigInt(0), BigInt(1), pub.e2},
              {BigInt(0), BigInt(0), ct.c}};
    return b;
}

/// LLL on the message lattice, then scan +/- reduced rows for vectors that
/// decode as valid (k1, k2, m) triples. Success is only judged when the
/// true triple is supplied; an empty candidate list is a legitimate result
/// (and the expected one at strict sizes).
inline AttackOutcome lattice_attack(const PublicKey& pub, const Ciphertext& ct,
                                    const SizeProfile& profile, double delta = 0.99,
                                    const std::optional<std::array<BigInt, 3>>& known = {}) {
    const auto t0 = detail::Clock::now();
    AttackOutcome out;
    const LatticeBasis reduced = lll_reduce(build_message_lattice(pub, ct), delta);

    const BigInt k_cap = pow2(profile.k_bits);
    const BigInt m_cap = pow2(profile.m_bits);
    for (const auto& row : reduced.rows) {
        for (int sgn : {1, -1}) {
            const BigInt x = sgn * row[0], y = sgn * row[1], m = -sgn * row[2];
            if (x < 1 || x >= k_cap || y < 1 || y >= k_cap)
                continue;
            if (m < 0 || m >= m_cap)
                continue;
            if (x * pub.e1 + y * pub.e2 + m != ct.c)
                continue;
            std::array<BigInt, 3> cand = {x, y, m};
            if (std::find(out.candidates.begin(), out.candidates.end(), cand) ==
                out.candidates.end())
                out.candidates.push_back(cand);
        }
    }

    out.diagnostics.sigma_log2 = gaussian_heuristic(ct.c);
    out.diagnostics.first_vector_log2 = 0.5 * approx_log2(norm_sq(reduced.rows[0]));
    if (known) {
        out.diagnostics.target_norm_log2 = target_vector_norm((*known)[0], (*known)[1], (*known)[2]);
        out.success = std::find(out.candidates.begin(), out.candidates.end(), *known) !=
                      out.candidates.end();
    } else if (!out.candidates.empty()) {
        const auto& c = out.candidates.front();
        out.diagnostics.target_norm_log2 = target_vector_norm(c[0], c[1], c[2]);
    }
    out.diagnostics.elapsed_ms = detail::ms_since(t0);
    return out;
}

/// Exhaustive DEHP-1 solver: for each k1, the matching k2 is unique because
/// m < 2^m_bits < e2, so floor division pins it. Refuses k_bits > 32.
inline AttackOutcome bruteforce_dehp1(const PublicKey& pub, const Ciphertext& ct,
                                      const SizeProfile& profile) {
    if (profile.k_bits > 32)
        throw work_budget_error("bruteforce_dehp1: 2^k_bits exceeds the work bound");
    const auto t0 = detail::Clock::now();
    AttackOutcome out;
    const BigInt k_cap = pow2(profile.k_bits);
    const BigInt m_cap = pow2(profile.m_bits);
    for (BigInt k1 = 1; k1 < k_cap; ++k1) {
        const BigInt r = ct.c - k1 * pub.e1;
        if (r < 0)
            break; // r only shrinks as k1 grows
        const BigInt k2 = r / pub.e2;
        const BigInt m = r - k2 * pub.e2;
        if (k2 >= 1 && k2 < k_cap && m < m_cap)
            out.candidates.push_back({k1, k2, m});
    }
    out.diagnostics.elapsed_ms = detail::ms_since(t0);
    return out;
}

struct KnownPlaintextProbe {
    Ciphertext ct;
    BigInt m;
};

struct FactoringOutcome {
    std::vector<PrivateKey> candidates;    // one per distinct prime factor of e1
    std::optional<std::size_t> selected;   // probe-confirmed candidate, when any
    bool probed = false;
    std::int64_t elapsed_ms = 0;

    const PrivateKey& chosen() const {
        return candidates[selected.value_or(0)];
    }
};

namespace detail {

/// Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n.
/// Every squaring counts against the shared step budget.
inline BigInt pollard_rho(const BigInt& n, RandomSource& rng, std::uint64_t& steps,
                          std::uint64_t budget) {
    auto spend = [&](std::uint64_t k) {
        steps += k;
        if (steps > budget)
            throw work_budget_error("factoring_attack: work budget exhausted");
    };
    for (;;) {
        const BigInt c = rng.in_range(1, n - 2);
        BigInt y = rng.in_range(2, n - 2), g = 1, q = 1, x = 0, ys = 0;
        std::uint64_t r = 1;
        const std::uint64_t batch = 128;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = (y * y + c) % n;
            spend(r);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t lim = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * boost::multiprecision::abs(x - y) % n;
                }
                spend(lim);
                g = boost::multiprecision::gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                spend(1);
                g = boost::multiprecision::gcd(boost::multiprecision::abs(x - ys), n);
            }
        }
        if (g != n)
            return g; // may itself be composite; caller recurses
        // cycle degenerated; retry with a fresh polynomial
    }
}

inline void factor_into(const BigInt& n, std::vector<BigInt>& primes, RandomSource& rng,
                        std::uint64_t& steps, std::uint64_t budget) {
    if (n == 1)
        return;
    if (is_probable_prime(n, rng)) {
        primes.push_back(n);
        return;
    }
    // small trial divisors first; cheap and keeps rho on hard cores
    BigInt rest = n;
    for (std::uint32_t d = 2; d < 10000 && rest > 1; d = (d == 2 ? 3 : d + 2)) {
        ++steps;
        if (steps > budget)
            throw work_budget_error("factoring_attack: work budget exhausted");
        while (rest % d == 0) {
            primes.push_back(d);
            rest /= d;
        }
    }
    if (rest == 1)
        return;
    if (is_probable_prime(rest, rng)) {
        primes.push_back(rest);
        return;
    }
    const BigInt f = pollard_rho(rest, rng, steps, budget);
    factor_into(f, primes, rng, steps, budget);
    factor_into(rest / f, primes, rng, steps, budget);
}

} // namespace detail

/// Factor e1, derive v = e2 mod p for each prime-factor role, and (when a
/// known plaintext is available) keep the candidate that actually decrypts.
/// Budget exhaustion is the expected outcome at real sizes — that failure
/// is the scheme's security claim.
inline FactoringOutcome factoring_attack(const PublicKey& pub, std::uint64_t budget,
                                         const std::optional<KnownPlaintextProbe>& probe = {}) {
    const auto t0 = detail::Clock::now();
    if (pub.e1 < 2)
        throw error("factoring_attack: e1 is not a valid modulus");
    RandomSource rng(0x5deece66dULL);
    if (is_probable_prime(pub.e1, rng))
        throw error("factoring_attack: e1 is prime — factorization (e1, 1) is malformed");

    std::uint64_t steps = 0;
    std::vector<BigInt> primes;
    detail::factor_into(pub.e1, primes, rng, steps, budget);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    FactoringOutcome out;
    for (const BigInt& p : primes)
        out.candidates.push_back(PrivateKey{p, mod_floor(pub.e2, p), pub.n});
    if (probe) {
        out.probed = true;
        for (std::size_t i = 0; i < out.candidates.size(); ++i) {
            if (decrypt(out.candidates[i], probe->ct) == probe->m) {
                out.selected = i;
                break;
            }
        }
    }
    out.elapsed_ms = detail::ms_since(t0);
    return out;
}

/// key: value report consumed by the CLI.
inline std::string format_report(const AttackOutcome& out) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6);
    os << "candidates: " << out.candidates.size() << "\n";
    for (const auto& c : out.candidates)
        os << "candidate: (" << c[0] << ", " << c[1] << ", " << c[2] << ")\n";
    if (out.diagnostics.sigma_log2)
        os << "sigma_log2: " << *out.diagnostics.sigma_log2 << "\n";
    if (out.diagnostics.target_norm_log2)
        os << "target_norm_log2: " << *out.diagnostics.target_norm_log2 << "\n";
    if (out.diagnostics.first_vector_log2)
        os << "first_vector_log2: " << *out.diagnostics.first_vector_log2 << "\n";
    os << "elapsed_ms: " << out.diagnostics.elapsed_ms << "\n";
    if (out.success)
        os << "success: " << (*out.success ? "true" : "false") << "\n";
    return os.str();
}

inline std::string format_report(const FactoringOutcome& out, const PublicKey& pub) {
    std::ostringstream os;
    os << "candidates: " << out.candidates.size() << "\n";
    for (const auto& cand : out.candidates)
        os << "candidate: (p=" << cand.p << ", v=" << cand.v << ")\n";
    const PrivateKey& pick = out.chosen();
    os << "p: " << pick.p << "\n";
    if (pick.p != 0 && pub.e1 % pick.p == 0)
        os << "q: " << pub.e1 / pick.p << "\n";
    os << "v: " << pick.v << "\n";
    os << "elapsed_ms: " << out.elapsed_ms << "\n";
    if (out.probed)
        os << "success: " << (out.selected ? "true" : "false") << "\n";
    return os.str();
}

} // namespace aabeta
