#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <zlib.h>

#include "rdc/errors.hpp"

namespace rdc {

/// zlib-wrapped DEFLATE (RFC 1950 framing of RFC 1951 data).
inline std::vector<std::uint8_t> deflate_compress(std::span<const std::uint8_t> payload) {
    uLongf bound = compressBound(static_cast<uLong>(payload.size()));
    std::vector<std::uint8_t> out(bound);
    int rc = compress2(out.data(), &bound, payload.data() ? payload.data() : (const Bytef*)"",
                       static_cast<uLong>(payload.size()), Z_BEST_COMPRESSION);
    if (rc != Z_OK) throw Error("zlib compress failed: " + std::to_string(rc));
    out.resize(bound);
    return out;
}

inline std::vector<std::uint8_t> deflate_decompress(std::span<const std::uint8_t> compressed) {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw Error("inflateInit failed");
    zs.next_in = const_cast<Bytef*>(compressed.data());
    zs.avail_in = static_cast<uInt>(compressed.size());
    std::vector<std::uint8_t> out;
    std::uint8_t buf[16384];
    int rc;
    do {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END && rc != Z_BUF_ERROR) {
            inflateEnd(&zs);
            throw CorruptStream("zlib inflate failed: " + std::to_string(rc));
        }
        out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
        if (rc == Z_BUF_ERROR && zs.avail_in == 0) break;  // truncated input
    } while (rc != Z_STREAM_END);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw CorruptStream("truncated zlib stream");
    if (zs.avail_in != 0) throw CorruptStream("trailing bytes after zlib stream");
    return out;
}

inline std::uint32_t crc32_of(std::span<const std::uint8_t> data) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, data.data() ? data.data() : (const Bytef*)"", static_cast<uInt>(data.size())));
}

}  // namespace rdc
