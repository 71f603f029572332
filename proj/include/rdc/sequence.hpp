#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rdc/errors.hpp"

namespace rdc {

/// A validated DNA sequence: uppercase A/C/G/T only, never empty.
struct Sequence {
    std::string id;
    std::string bases;
};

struct SequenceSet {
    std::vector<Sequence> sequences;
    std::size_t reference_index = 0;

    const Sequence& reference() const { return sequences[reference_index]; }
};

inline bool is_base(char c) { return c == 'A' || c == 'C' || c == 'G' || c == 'T'; }

inline int base_index(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: return -1;
    }
}

inline char index_base(int i) { return "ACGT"[i]; }

/// Parse FASTA text. Lowercase bases are folded to uppercase; anything outside
/// {A,C,G,T,a,c,g,t} (including N and IUPAC ambiguity codes) is rejected.
inline SequenceSet parse_fasta(std::string_view input) {
    SequenceSet set;
    std::unordered_set<std::string> seen;
    std::size_t pos = 0;
    bool in_record = false;
    while (pos < input.size()) {
        std::size_t eol = input.find('\n', pos);
        if (eol == std::string_view::npos) eol = input.size();
        std::string_view line = input.substr(pos, eol - pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        if (!line.empty() && line.front() == '>') {
            std::string id(line.substr(1));
            if (!seen.insert(id).second) throw DuplicateId(id);
            set.sequences.push_back({std::move(id), {}});
            in_record = true;
        } else if (!line.empty()) {
            if (!in_record) throw Error("sequence data before first FASTA header");
            Sequence& cur = set.sequences.back();
            for (char c : line) {
                if (c == ' ' || c == '\t') continue;
                char u = (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
                if (!is_base(u)) throw InvalidSymbol(cur.id, cur.bases.size() + 1, c);
                cur.bases.push_back(u);
            }
        }
        pos = eol + 1;
    }
    if (set.sequences.empty()) throw EmptyInput();
    for (const Sequence& s : set.sequences)
        if (s.bases.empty()) throw Error("record '" + s.id + "' has no bases");
    return set;
}

inline std::string write_fasta(const SequenceSet& set, std::size_t line_width = 60) {
    std::string out;
    for (const Sequence& s : set.sequences) {
        out += '>';
        out += s.id;
        out += '\n';
        for (std::size_t i = 0; i < s.bases.size(); i += line_width) {
            out.append(s.bases, i, line_width);
            out += '\n';
        }
    }
    return out;
}

/// Pack bases at two bits each (A=00, C=01, G=10, T=11), MSB-first per byte,
/// final partial byte zero-padded. Length travels separately.
inline std::vector<std::uint8_t> pack_2bit(std::string_view bases) {
    std::vector<std::uint8_t> out((bases.size() + 3) / 4, 0);
    for (std::size_t i = 0; i < bases.size(); ++i) {
        int code = base_index(bases[i]);
        out[i / 4] |= static_cast<std::uint8_t>(code << (6 - 2 * (i % 4)));
    }
    return out;
}

inline std::string unpack_2bit(const std::vector<std::uint8_t>& packed, std::uint64_t n_bases) {
    if (packed.size() < (n_bases + 3) / 4) throw TruncatedStream();
    std::string out;
    out.reserve(n_bases);
    for (std::uint64_t i = 0; i < n_bases; ++i)
        out.push_back(index_base((packed[i / 4] >> (6 - 2 * (i % 4))) & 3));
    return out;
}

}  // namespace rdc
