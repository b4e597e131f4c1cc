#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aabeta/bigint.hpp"
#include "aabeta/errors.hpp"
#include "aabeta/keys.hpp"

namespace aabeta {

inline constexpr const char* kPublicMagic = "AABETA PUBLIC v1";
inline constexpr const char* kPrivateMagic = "AABETA PRIVATE v1";
inline constexpr const char* kCiphertextMagic = "AABETA CT v1";

struct PublicKeyFile {
    PublicKey key;
    KeyMode mode = KeyMode::strict;
};

struct PrivateKeyFile {
    PrivateKey key;
    std::optional<EphemeralSecrets> secrets;
    KeyMode mode = KeyMode::strict;
};

struct CiphertextFile {
    std::vector<BigInt> blocks;
    unsigned n = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const char* ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> nonblank_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty())
            out.push_back(line);
    }
    return out;
}

inline BigInt parse_decimal(const std::string& s) {
    if (s.empty())
        throw parse_error("expected a decimal integer");
    for (char c : s)
        if (c < '0' || c > '9')
            throw parse_error("not a decimal integer: " + s);
    return BigInt(s);
}

inline unsigned parse_count(const std::string& s) {
    BigInt x = parse_decimal(s);
    if (x > 1000000)
        throw parse_error("count out of range: " + s);
    return x.convert_to<unsigned>();
}

/// `key = value` with any spacing around `=`.
inline std::pair<std::string, std::string> parse_kv(const std::string& line) {
    auto eq = line.find('=');
    if (eq == std::string::npos)
        throw parse_error("expected `key = value`, got: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
        throw parse_error("expected `key = value`, got: " + line);
    return {key, val};
}

/// Key-value body with unique keys drawn from `allowed`; unknown or
/// repeated keys are malformed.
inline std::map<std::string, std::string> parse_body(const std::vector<std::string>& lines,
                                                     std::size_t first,
                                                     const std::vector<std::string>& allowed) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = first; i < lines.size(); ++i) {
        auto [key, val] = parse_kv(lines[i]);
        bool known = false;
        for (const auto& a : allowed)
            known = known || a == key;
        if (!known)
            throw parse_error("unknown key: " + key);
        if (!kv.emplace(key, val).second)
            throw parse_error("repeated key: " + key);
    }
    return kv;
}

inline const std::string& require(const std::map<std::string, std::string>& kv,
                                  const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw parse_error("missing key: " + key);
    return it->second;
}

inline KeyMode parse_mode(const std::map<std::string, std::string>& kv) {
    auto it = kv.find("mode");
    if (it == kv.end() || it->second == "strict")
        return KeyMode::strict;
    if (it->second == "toy")
        return KeyMode::toy;
    throw parse_error("unknown mode: " + it->second);
}

} // namespace detail

inline std::string format_public_key(const PublicKey& key, KeyMode mode) {
    std::ostringstream out;
    out << kPublicMagic << "\n";
    out << "n = " << key.n << "\n";
    out << "e1 = " << key.e1 << "\n";
    out << "e2 = " << key.e2 << "\n";
    if (mode == KeyMode::toy)
        out << "mode = toy\n";
    return out.str();
}

inline PublicKeyFile parse_public_key(const std::string& text) {
    auto lines = detail::nonblank_lines(text);
    if (lines.empty() || lines[0] != kPublicMagic)
        throw parse_error("missing public key header");
    auto kv = detail::parse_body(lines, 1, {"n", "e1", "e2", "mode"});
    PublicKeyFile f;
    f.key.n = detail::parse_count(detail::require(kv, "n"));
    f.key.e1 = detail::parse_decimal(detail::require(kv, "e1"));
    f.key.e2 = detail::parse_decimal(detail::require(kv, "e2"));
    f.mode = detail::parse_mode(kv);
    return f;
}

inline std::string format_private_key(const PrivateKey& key,
                                      const std::optional<EphemeralSecrets>& secrets,
                                      KeyMode mode) {
    std::ostringstream out;
    out << kPrivateMagic << "\n";
    out << "n = " << key.n << "\n";
    out << "p = " << key.p << "\n";
    out << "v = " << key.v << "\n";
    if (secrets) {
        out << "a1 = " << secrets->a1 << "\n";
        out << "a2 = " << secrets->a2 << "\n";
        out << "a3 = " << secrets->a3 << "\n";
    }
    if (mode == KeyMode::toy)
        out << "mode = toy\n";
    return out.str();
}

inline PrivateKeyFile parse_private_key(const std::string& text) {
    auto lines = detail::nonblank_lines(text);
    if (lines.empty() || lines[0] != kPrivateMagic)
        throw parse_error("missing private key header");
    auto kv = detail::parse_body(lines, 1, {"n", "p", "v", "a1", "a2", "a3", "mode"});
    PrivateKeyFile f;
    f.key.n = detail::parse_count(detail::require(kv, "n"));
    f.key.p = detail::parse_decimal(detail::require(kv, "p"));
    f.key.v = detail::parse_decimal(detail::require(kv, "v"));
    const int have = (int)kv.count("a1") + (int)kv.count("a2") + (int)kv.count("a3");
    if (have == 3) {
        EphemeralSecrets sec;
        sec.a1 = detail::parse_decimal(kv.at("a1"));
        sec.a2 = detail::parse_decimal(kv.at("a2"));
        sec.a3 = detail::parse_decimal(kv.at("a3"));
        f.secrets = sec;
    } else if (have != 0) {
        throw parse_error("partial secret block: need all of a1, a2, a3");
    }
    f.mode = detail::parse_mode(kv);
    return f;
}

inline std::string format_ciphertext(const std::vector<BigInt>& blocks, unsigned n) {
    std::ostringstream out;
    out << kCiphertextMagic << "\n";
    out << "n = " << n << "\n";
    out << "blocks = " << blocks.size() << "\n";
    for (const BigInt& c : blocks)
        out << "c = " << c << "\n";
    return out.str();
}

inline CiphertextFile parse_ciphertext(const std::string& text) {
    auto lines = detail::nonblank_lines(text);
    if (lines.empty() || lines[0] != kCiphertextMagic)
        throw parse_error("missing ciphertext header");
    if (lines.size() < 3)
        throw parse_error("truncated ciphertext file");
    CiphertextFile f;
    auto [nk, nv] = detail::parse_kv(lines[1]);
    if (nk != "n")
        throw parse_error("expected n line, got: " + nk);
    f.n = detail::parse_count(nv);
    auto [bk, bv] = detail::parse_kv(lines[2]);
    if (bk != "blocks")
        throw parse_error("expected blocks line, got: " + bk);
    unsigned count = detail::parse_count(bv);
    if (lines.size() != 3 + count)
        throw parse_error("block count does not match blocks present");
    for (unsigned i = 0; i < count; ++i) {
        auto [ck, cv] = detail::parse_kv(lines[3 + i]);
        if (ck != "c")
            throw parse_error("expected c line, got: " + ck);
        f.blocks.push_back(detail::parse_decimal(cv));
    }
    return f;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw error("cannot open for writing: " + path);
    out << content;
    if (!out.flush())
        throw error("write failed: " + path);
}

inline std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    std::string s = read_text_file(path);
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

inline void write_binary_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out.flush())
        throw error("write failed: " + path);
}

} // namespace aabeta
