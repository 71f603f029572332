#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rdc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sequence_io
struct EmptyInput : Error {
    EmptyInput() : Error("empty input: no FASTA records found") {}
};
struct InvalidSymbol : Error {
    InvalidSymbol(std::string record_id, std::uint64_t position_1based, char symbol)
        : Error("invalid symbol '" + std::string(1, symbol) + "' in record '" + record_id +
                "' at position " + std::to_string(position_1based)),
          id(std::move(record_id)), position(position_1based) {}
    std::string id;
    std::uint64_t position;
};
struct DuplicateId : Error {
    explicit DuplicateId(const std::string& id)
        : Error("duplicate sequence id '" + id + "'") {}
};
struct TruncatedStream : Error {
    using Error::Error;
    TruncatedStream() : Error("truncated stream") {}
};

// alignment
struct SizeLimitExceeded : Error {
    SizeLimitExceeded(std::uint64_t cells, std::uint64_t budget)
        : Error("alignment matrix of " + std::to_string(cells) +
                " cells exceeds budget of " + std::to_string(budget)) {}
};

// diffcodec
struct BothGaps : Error {
    BothGaps() : Error("alignment column has a gap in both rows") {}
};
struct NotSorted : Error {
    NotSorted() : Error("location list is not non-decreasing") {}
};
struct InvalidGap : Error {
    using Error::Error;
    InvalidGap() : Error("invalid delta gap") {}
};
struct LocationOutOfRange : Error {
    using Error::Error;
    LocationOutOfRange() : Error("difference location out of range") {}
};
struct LengthMismatch : Error {
    LengthMismatch(const std::string& id, std::uint64_t got, std::uint64_t want)
        : Error("record '" + id + "': reconstructed " + std::to_string(got) +
                " bases, expected " + std::to_string(want)) {}
};
struct InvalidReplacement : Error {
    InvalidReplacement() : Error("replacement op applied to undefined base") {}
};

// entropy
struct EmptyDistribution : Error {
    EmptyDistribution() : Error("cannot build a code over an empty distribution") {}
};
struct SymbolNotInModel : Error {
    explicit SymbolNotInModel(int symbol)
        : Error("symbol " + std::to_string(symbol) + " has no codeword in the model") {}
};
struct TruncatedBits : Error {
    TruncatedBits() : Error("bit stream ended inside a codeword") {}
};
struct DanglingBits : Error {
    DanglingBits() : Error("more than 7 unused bits after the last codeword") {}
};
struct CorruptStream : Error {
    using Error::Error;
    CorruptStream() : Error("corrupt stream") {}
};

// archive / cli
struct UnknownId : Error {
    explicit UnknownId(const std::string& id)
        : Error("no sequence with id '" + id + "' in archive") {}
};
struct InvalidRate : Error {
    explicit InvalidRate(double r)
        : Error("mutation rate " + std::to_string(r) + " outside [0, 0.5)") {}
};

}  // namespace rdc
