#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aabeta/bigint.hpp"
#include "aabeta/cipher.hpp"
#include "aabeta/errors.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/random.hpp"
#include "aabeta/sizes.hpp"

namespace aabeta {

struct OpCounts {
    std::uint64_t mul = 0, add = 0, mod = 0;
};

/// Big integer that tallies every *, +, % — plugged into the shared
/// arithmetic cores so the counted path IS the production path.
class CountingInt {
public:
    CountingInt() = default;
    CountingInt(const BigInt& v) : v_(v) {}

    static OpCounts& counts() {
        thread_local OpCounts c;
        return c;
    }
    static void reset() { counts() = OpCounts{}; }

    friend CountingInt operator*(const CountingInt& a, const CountingInt& b) {
        ++counts().mul;
        return CountingInt(a.v_ * b.v_);
    }
    friend CountingInt operator+(const CountingInt& a, const CountingInt& b) {
        ++counts().add;
        return CountingInt(a.v_ + b.v_);
    }
    friend CountingInt operator%(const CountingInt& a, const CountingInt& b) {
        ++counts().mod;
        return CountingInt(a.v_ % b.v_);
    }

    const BigInt& value() const { return v_; }

private:
    BigInt v_;
};

inline OpCounts count_encryption_ops(const PublicKey& pub, const SessionKeys& keys,
                                     const BigInt& m, BigInt* out_c = nullptr) {
    CountingInt::reset();
    CountingInt c = ciphertext_combine(CountingInt(keys.k1), CountingInt(pub.e1),
                                       CountingInt(keys.k2), CountingInt(pub.e2),
                                       CountingInt(m));
    if (out_c)
        *out_c = c.value();
    return CountingInt::counts();
}

inline OpCounts count_decryption_ops(const PrivateKey& priv, const Ciphertext& ct,
                                     BigInt* out_m = nullptr) {
    CountingInt::reset();
    CountingInt m = plaintext_reduce(CountingInt(ct.c), CountingInt(priv.p),
                                     CountingInt(priv.v));
    if (out_m)
        *out_m = m.value();
    return CountingInt::counts();
}

/// Left-to-right square-and-multiply, no windowing: the minimal stand-in
/// for an O(n^3)-style exponentiation workload.
inline BigInt modexp_square_multiply(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    if (mod <= 0)
        throw size_error("modexp: modulus must be positive");
    if (exp < 0)
        throw size_error("modexp: exponent must be nonnegative");
    BigInt r = BigInt(1) % mod;
    const BigInt b = mod_floor(base, mod);
    for (unsigned i = bit_length(exp); i-- > 0;) {
        r = r * r % mod;
        if (boost::multiprecision::bit_test(exp, i))
            r = r * b % mod;
    }
    return r;
}

/// (bit_length(e1) + k_bits) / m_bits — ciphertext bits per plaintext bits.
inline double expansion_ratio(const PublicKey& pub) {
    const SizeProfile s = derive_size_profile(pub.n);
    return static_cast<double>(bit_length(pub.e1) + s.k_bits) / static_cast<double>(s.m_bits);
}

struct BenchRow {
    unsigned n = 0;
    double enc_us = 0, dec_us = 0, modexp_us = 0;
    double expansion = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    // log-log least-squares slopes of time vs n; absent with fewer than 2 sizes
    std::optional<double> enc_exponent, dec_exponent, modexp_exponent;
};

namespace detail {

using BenchClock = std::chrono::steady_clock;

inline double elapsed_us(BenchClock::time_point t0) {
    return std::chrono::duration<double, std::micro>(BenchClock::now() - t0).count();
}

/// Median per-call microseconds over `trials` timed batches. The batch size
/// is calibrated once so each measurement spans enough wall clock to be
/// meaningful for sub-microsecond operations.
template <typename F>
double median_call_us(F&& call, unsigned trials) {
    unsigned batch = 1;
    {
        const auto t0 = BenchClock::now();
        call(0u);
        const double once = std::max(elapsed_us(t0), 0.01);
        batch = static_cast<unsigned>(std::clamp(100.0 / once, 1.0, 512.0));
    }
    std::vector<double> samples;
    samples.reserve(trials);
    unsigned idx = 0;
    for (unsigned t = 0; t < trials; ++t) {
        const auto t0 = BenchClock::now();
        for (unsigned i = 0; i < batch; ++i)
            call(idx++);
        samples.push_back(elapsed_us(t0) / batch);
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

inline std::optional<double> fit_exponent(const std::vector<BenchRow>& rows,
                                          double BenchRow::* field) {
    if (rows.size() < 2)
        return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        const double x = std::log2(static_cast<double>(r.n));
        const double y = std::log2(std::max(r.*field, 1e-6));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = k * sxx - sx * sx;
    if (denom == 0)
        return std::nullopt;
    return (k * sxy - sx * sy) / denom;
}

} // namespace detail

/// Time encryption, decryption, and the modexp baseline at each size.
/// Medians over at least 100 trials per row; sizes must be strict-mode
/// valid so the timed path is the guaranteed-correct one.
inline BenchReport run_bench(const std::vector<unsigned>& sizes, unsigned trials,
                             RandomSource& rng) {
    trials = std::max(trials, 100u);
    BenchReport report;
    for (unsigned n : sizes) {
        const SizeProfile s = derive_size_profile(n);
        const KeyPair kp = keygen(rng, n, KeyMode::strict);

        const unsigned pool = 128;
        std::vector<BigInt> ms, cs, bases, exps;
        std::vector<SessionKeys> keys;
        for (unsigned i = 0; i < pool; ++i) {
            ms.push_back(rng.raw_bits(s.m_bits));
            keys.push_back({rng.in_range(1, pow2(s.k_bits) - 1),
                            rng.in_range(1, pow2(s.k_bits) - 1)});
            cs.push_back(encrypt_with_keys(kp.pub, ms.back(), keys.back()).c);
            bases.push_back(random_exact_bits(rng, 2 * n));
            exps.push_back(random_exact_bits(rng, 2 * n));
        }
        const BigInt modulus = random_exact_bits(rng, 2 * n) | 1;

        BigInt sink = 0;
        BenchRow row;
        row.n = n;
        row.enc_us = detail::median_call_us(
            [&](unsigned i) {
                sink ^= encrypt_with_keys(kp.pub, ms[i % pool], keys[i % pool]).c & 0xff;
            },
            trials);
        row.dec_us = detail::median_call_us(
            [&](unsigned i) {
                sink ^= plaintext_reduce(cs[i % pool], kp.priv.p, kp.priv.v) & 0xff;
            },
            trials);
        row.modexp_us = detail::median_call_us(
            [&](unsigned i) {
                sink ^= modexp_square_multiply(bases[i % pool], exps[i % pool], modulus) & 0xff;
            },
            trials);
        row.expansion = expansion_ratio(kp.pub);
        (void)sink;
        report.rows.push_back(row);
    }
    report.enc_exponent = detail::fit_exponent(report.rows, &BenchRow::enc_us);
    report.dec_exponent = detail::fit_exponent(report.rows, &BenchRow::dec_us);
    report.modexp_exponent = detail::fit_exponent(report.rows, &BenchRow::modexp_us);
    return report;
}

inline std::string to_csv(const BenchReport& report) {
    std::ostringstream os;
    os << "n,enc_us,dec_us,modexp_us,expansion\n";
    os << std::fixed << std::setprecision(3);
    for (const auto& r : report.rows)
        os << r.n << "," << r.enc_us << "," << r.dec_us << "," << r.modexp_us << ","
           << r.expansion << "\n";
    return os.str();
}

inline std::string to_table(const BenchReport& report) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << std::setw(6) << "n" << std::setw(14) << "enc_us" << std::setw(14) << "dec_us"
       << std::setw(14) << "modexp_us" << std::setw(12) << "expansion" << "\n";
    for (const auto& r : report.rows)
        os << std::setw(6) << r.n << std::setw(14) << r.enc_us << std::setw(14) << r.dec_us
           << std::setw(14) << r.modexp_us << std::setw(12) << r.expansion << "\n";
    auto line = [&](const char* name, const std::optional<double>& e) {
        if (e)
            os << name << " exponent: " << *e << "\n";
    };
    line("enc", report.enc_exponent);
    line("dec", report.dec_exponent);
    line("modexp", report.modexp_exponent);
    return os.str();
}

} // namespace aabeta
