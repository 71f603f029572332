#pragma once

#include <cstdint>
#include <vector>

#include "rdc/errors.hpp"

namespace rdc {

/// Packed bits, MSB-first within each byte, with an exact bit count.
struct BitStream {
    std::vector<std::uint8_t> bytes;
    std::uint64_t bit_count = 0;

    void append(std::uint32_t value, unsigned n_bits) {
        for (unsigned k = n_bits; k-- > 0;) {
            if (bit_count % 8 == 0) bytes.push_back(0);
            if ((value >> k) & 1u)
                bytes.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count % 8));
            ++bit_count;
        }
    }
};

class BitReader {
public:
    BitReader(const std::uint8_t* data, std::uint64_t bit_count)
        : data_(data), bit_count_(bit_count) {}
    explicit BitReader(const BitStream& bs) : BitReader(bs.bytes.data(), bs.bit_count) {}

    bool next() {
        if (pos_ >= bit_count_) throw TruncatedBits();
        bool bit = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1;
        ++pos_;
        return bit;
    }

    std::uint64_t consumed() const { return pos_; }
    std::uint64_t remaining() const { return bit_count_ - pos_; }

private:
    const std::uint8_t* data_;
    std::uint64_t bit_count_;
    std::uint64_t pos_ = 0;
};

}  // namespace rdc
