#pragma once

#include <cstdint>
#include <vector>

#include "aabeta/bigint.hpp"
#include "aabeta/errors.hpp"

namespace aabeta {

/// Bytes-per-block for a given message ceiling: one sentinel byte plus B
/// payload bytes must fit under 2^m_bits.
inline unsigned codec_block_bytes(unsigned m_bits) {
    if (m_bits < 16)
        throw size_error("codec: m_bits must be >= 16");
    return (m_bits - 8) / 8;
}

struct BlockStream {
    std::vector<BigInt> blocks;
    std::size_t payload_bytes = 0;
};

/// Chunk bytes into B-byte groups, each prefixed with the 0x01 sentinel so
/// every block has a fixed, recognizable bit length. The payload always ends
/// with 0x80 then zero-fill to a chunk boundary, so empty input still
/// produces one block.
inline BlockStream encode_blocks(const std::vector<std::uint8_t>& bytes, unsigned m_bits) {
    const unsigned B = codec_block_bytes(m_bits);
    std::vector<std::uint8_t> padded = bytes;
    padded.push_back(0x80);
    while (padded.size() % B != 0)
        padded.push_back(0x00);

    BlockStream out;
    out.payload_bytes = bytes.size();
    out.blocks.reserve(padded.size() / B);
    for (std::size_t i = 0; i < padded.size(); i += B) {
        BigInt block = 1; // sentinel
        for (unsigned j = 0; j < B; ++j) {
            block <<= 8;
            block |= padded[i + j];
        }
        out.blocks.push_back(block);
    }
    return out;
}

inline std::vector<std::uint8_t> decode_blocks(const std::vector<BigInt>& blocks,
                                               unsigned m_bits) {
    const unsigned B = codec_block_bytes(m_bits);
    std::vector<std::uint8_t> padded;
    padded.reserve(blocks.size() * B);
    for (const BigInt& block : blocks) {
        if (block < 0 || bit_length(block) != 8 * B + 1)
            throw codec_error("decode: block sentinel missing or malformed");
        for (unsigned j = 0; j < B; ++j) {
            unsigned shift = 8 * (B - 1 - j);
            padded.push_back(static_cast<std::uint8_t>((block >> shift) & 0xff));
        }
    }
    while (!padded.empty() && padded.back() == 0x00)
        padded.pop_back();
    if (padded.empty() || padded.back() != 0x80)
        throw codec_error("decode: terminal padding byte not found");
    padded.pop_back();
    return padded;
}

} // namespace aabeta
