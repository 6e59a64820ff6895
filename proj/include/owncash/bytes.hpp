#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace owncash {

using Bytes = std::vector<uint8_t>;

/// Thrown when a byte-level encoding is malformed (bad length, bad
/// characters, wrong magic). Distinct from a clean verification failure.
struct EncodingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_hex(std::span<const uint8_t> data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

inline int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

inline Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw EncodingError("hex string has odd length");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            throw EncodingError("invalid hex character");
        }
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

inline void append_u64_be(Bytes& out, uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<uint8_t>(v >> shift));
    }
}

inline uint64_t read_u64_be(std::span<const uint8_t> in) {
    uint64_t v = 0;
    for (size_t i = 0; i < 8; ++i) {
        v = (v << 8) | in[i];
    }
    return v;
}

inline void append_bytes(Bytes& out, std::span<const uint8_t> data) {
    out.insert(out.end(), data.begin(), data.end());
}

inline Bytes bytes_of(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

}  // namespace owncash
