#pragma once

#include <string>

#include "bitsel/bits.hpp"

namespace bitsel {

// Bit-file container: magic "BSEQ1", version byte 0x01, bit length as an
// unsigned 64-bit little-endian count, then the payload packed MSB-first
// within each byte with zero padding in the final partial byte.

inline constexpr char kBitFileMagic[5] = {'B', 'S', 'E', 'Q', '1'};
inline constexpr uint8_t kBitFileVersion = 0x01;

std::vector<uint8_t> to_bitfile_bytes(const BitString& s);
BitString from_bitfile_bytes(std::span<const uint8_t> bytes);

void write_bitfile(const BitString& s, const std::string& path);
BitString read_bitfile(const std::string& path);

/// Write '0'/'1' text with a trailing newline.
void write_bit_text(const BitString& s, const std::string& path);

/// Load either container: a BSEQ1 file or '0'/'1' text (detected by magic).
BitString read_bits_auto(const std::string& path);

/// Hex SHA-256 of the packed payload bytes (as stored in the bit file).
std::string payload_sha256(const BitString& s);

}  // namespace bitsel
