#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdc/errors.hpp"

namespace rdc {

/// Unsigned LEB128: 7 data bits per byte, high bit set on continuation bytes.
inline void varint_append(std::vector<std::uint8_t>& out, std::uint64_t value) {
    while (value >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(value & 0x7F) | 0x80);
        value >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(value));
}

inline std::vector<std::uint8_t> varint_encode(const std::vector<std::uint64_t>& values) {
    std::vector<std::uint8_t> out;
    out.reserve(values.size());
    for (std::uint64_t v : values) varint_append(out, v);
    return out;
}

inline std::uint64_t varint_read(std::span<const std::uint8_t> data, std::size_t& pos) {
    std::uint64_t value = 0;
    unsigned shift = 0;
    for (;;) {
        if (pos >= data.size()) throw TruncatedStream("truncated varint");
        std::uint8_t byte = data[pos++];
        if (shift >= 64 || (shift == 63 && (byte & 0x7E)))
            throw CorruptStream("varint overflows 64 bits");
        value |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
        if (!(byte & 0x80)) return value;
        shift += 7;
    }
}

inline std::vector<std::uint64_t> varint_decode(std::span<const std::uint8_t> data,
                                                std::uint64_t n_values) {
    std::vector<std::uint64_t> out;
    out.reserve(n_values);
    std::size_t pos = 0;
    for (std::uint64_t i = 0; i < n_values; ++i) out.push_back(varint_read(data, pos));
    if (pos != data.size()) throw CorruptStream("trailing bytes after varint run");
    return out;
}

}  // namespace rdc
