#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace bitsel {

/// Lowercase hex SHA-256 of a byte buffer. Self-contained (FIPS 180-4),
/// used for payload provenance in reports; not a performance path.
std::string sha256_hex(std::span<const uint8_t> data);

}  // namespace bitsel
