#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sdm {

/// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

/// Lower-case 16-hex-digit rendering.
std::string to_hex(std::uint64_t value);

/// Digest of arbitrary payload bytes, hex-encoded.
std::string payload_digest(std::string_view payload);

/// Next link of a hash chain: digest over the previous link's hex digits,
/// a newline, then the entry's canonical bytes.
std::string chain_digest(const std::string& prev_hex, std::string_view entry_bytes);

/// Keyed digest standing in for a signature: MAC = H(secret ":" payload_hash).
/// Real asymmetric schemes can replace this behind the same two calls.
std::string sign_digest(const std::string& secret_key, const std::string& payload_hash_hex);
bool verify_digest(const std::string& secret_key, const std::string& payload_hash_hex,
                   const std::string& signature);

} // namespace sdm
