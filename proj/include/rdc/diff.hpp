#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdc/errors.hpp"
#include "rdc/sequence.hpp"
#include "rdc/align.hpp"

namespace rdc {

// Per-column operation codes:
//   0 similarity, 1-3 replacement classes ({A,T}/{G,C}, {A,G}/{C,T}, {A,C}/{G,T}),
//   4 deletion, 5-8 insertion of G/A/C/T.
using OpCode = std::uint8_t;

inline constexpr OpCode kOpSimilarity = 0;
inline constexpr OpCode kOpDeletion = 4;

inline bool is_insertion(OpCode op) { return op >= 5 && op <= 8; }

inline OpCode opcode(char ref_symbol, char tgt_symbol) {
    if (ref_symbol == '-' && tgt_symbol == '-') throw BothGaps();
    if (tgt_symbol == '-') return 4;
    if (ref_symbol == '-') {
        switch (tgt_symbol) {
            case 'G': return 5;
            case 'A': return 6;
            case 'C': return 7;
            default: return 8;  // T
        }
    }
    if (ref_symbol == tgt_symbol) return 0;
    // XOR of the 2-bit codes (A=0,C=1,G=2,T=3) separates the swap classes:
    // 3 -> {A,T},{C,G}; 2 -> {A,G},{C,T}; 1 -> {A,C},{G,T}.
    switch (base_index(ref_symbol) ^ base_index(tgt_symbol)) {
        case 3: return 1;
        case 2: return 2;
        default: return 3;
    }
}

/// The base an op-1..3 replacement turns `base` into (an involution).
inline char replacement_base(OpCode op, char base) {
    int x = base_index(base);
    if (x < 0) throw InvalidReplacement();
    switch (op) {
        case 1: return index_base(x ^ 3);
        case 2: return index_base(x ^ 2);
        case 3: return index_base(x ^ 1);
        default: throw InvalidReplacement();
    }
}

inline char insertion_base(OpCode op) {
    switch (op) {
        case 5: return 'G';
        case 6: return 'A';
        case 7: return 'C';
        case 8: return 'T';
        default: throw InvalidReplacement();
    }
}

/// Non-zero op-codes paired with 1-based positions into the unaligned
/// reference. An insertion at position p is emitted before reference base p;
/// p = len(reference)+1 addresses insertions past the final base.
struct DiffRecord {
    std::vector<OpCode> ops;
    std::vector<std::uint64_t> locations;
    std::string target_id;
    std::uint64_t target_length = 0;
};

inline DiffRecord record_diffs(const AlignedPair& pair, std::string target_id) {
    DiffRecord rec;
    rec.target_id = std::move(target_id);
    std::uint64_t p = 1;
    for (std::size_t col = 0; col < pair.ref_aligned.size(); ++col) {
        const char rs = pair.ref_aligned[col];
        const char ts = pair.tgt_aligned[col];
        OpCode op = opcode(rs, ts);
        if (op != kOpSimilarity) {
            rec.ops.push_back(op);
            rec.locations.push_back(p);
        }
        if (ts != '-') ++rec.target_length;
        if (rs != '-') ++p;  // insertions do not advance the reference coordinate
    }
    return rec;
}

/// Replay a DiffRecord against the reference: single left-to-right pass,
/// insertions at p emitted before reference base p is consumed.
inline Sequence reconstruct(const Sequence& reference, const DiffRecord& diff) {
    const std::string& ref = reference.bases;
    const std::uint64_t n = ref.size();
    std::string out;
    out.reserve(diff.target_length);
    std::size_t j = 0;
    const std::size_t n_ops = diff.ops.size();
    for (std::uint64_t p = 1; p <= n + 1; ++p) {
        if (j < n_ops && diff.locations[j] < p) throw LocationOutOfRange();
        while (j < n_ops && diff.locations[j] == p && is_insertion(diff.ops[j]))
            out.push_back(insertion_base(diff.ops[j++]));
        if (p == n + 1) break;
        if (j < n_ops && diff.locations[j] == p) {
            OpCode op = diff.ops[j++];
            if (op != kOpDeletion) out.push_back(replacement_base(op, ref[p - 1]));
        } else {
            out.push_back(ref[p - 1]);
        }
    }
    if (j != n_ops) throw LocationOutOfRange();
    if (out.size() != diff.target_length)
        throw LengthMismatch(diff.target_id, out.size(), diff.target_length);
    return {diff.target_id, std::move(out)};
}

inline std::vector<std::uint64_t> delta_encode(const std::vector<std::uint64_t>& locations) {
    std::vector<std::uint64_t> gaps;
    gaps.reserve(locations.size());
    std::uint64_t prev = 0;
    for (std::uint64_t loc : locations) {
        if (loc < prev || loc < 1) throw NotSorted();
        gaps.push_back(loc - prev);
        prev = loc;
    }
    return gaps;
}

inline std::vector<std::uint64_t> delta_decode(const std::vector<std::uint64_t>& gaps) {
    std::vector<std::uint64_t> locations;
    locations.reserve(gaps.size());
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (i == 0 && gaps[i] < 1) throw InvalidGap();
        acc += gaps[i];
        locations.push_back(acc);
    }
    return locations;
}

}  // namespace rdc
