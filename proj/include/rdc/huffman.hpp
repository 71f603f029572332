#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <queue>
#include <vector>

#include "rdc/bitstream.hpp"
#include "rdc/errors.hpp"

namespace rdc {

inline constexpr int kNumOpSymbols = 8;  // op-codes 1..8

/// Canonical Huffman code over op-codes 1..8. Index k holds symbol k+1.
/// Symbols with zero frequency get length 0 and no codeword.
struct HuffmanModel {
    std::array<std::uint64_t, kNumOpSymbols> frequencies{};
    std::array<std::uint8_t, kNumOpSymbols> code_lengths{};
    std::array<std::uint32_t, kNumOpSymbols> codewords{};
};

namespace detail {

/// Assign canonical codewords from lengths: symbols sorted by (length, symbol),
/// numerically increasing.
inline void canonicalize(HuffmanModel& model) {
    std::vector<int> order;
    for (int s = 0; s < kNumOpSymbols; ++s)
        if (model.code_lengths[s] > 0) order.push_back(s);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (model.code_lengths[a] != model.code_lengths[b])
            return model.code_lengths[a] < model.code_lengths[b];
        return a < b;
    });
    std::uint32_t code = 0;
    unsigned prev_len = 0;
    for (int s : order) {
        code <<= (model.code_lengths[s] - prev_len);
        model.codewords[s] = code++;
        prev_len = model.code_lengths[s];
    }
}

}  // namespace detail

/// True when the sum over nonzero-length symbols of 2^(-len) equals exactly 1.
inline bool kraft_equality(const HuffmanModel& model) {
    std::uint64_t sum = 0;  // units of 2^-32
    int nonzero = 0;
    for (int s = 0; s < kNumOpSymbols; ++s) {
        if (model.code_lengths[s] == 0) continue;
        ++nonzero;
        sum += std::uint64_t(1) << (32 - model.code_lengths[s]);
    }
    if (nonzero <= 1) return true;  // degenerate single-symbol code
    return sum == (std::uint64_t(1) << 32);
}

/// Huffman construction over frequencies[k] for symbol k+1. Equal-weight merges
/// pick the lower symbol value (leaves before internals, internals in creation
/// order), then lengths are canonicalized. A single occurring symbol gets
/// length 1.
inline HuffmanModel build_huffman(const std::array<std::uint64_t, kNumOpSymbols>& frequencies) {
    HuffmanModel model;
    model.frequencies = frequencies;

    struct Node { std::uint64_t weight; int left, right; };
    std::vector<Node> nodes;
    using Entry = std::pair<std::uint64_t, int>;  // (weight, node id)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (int s = 0; s < kNumOpSymbols; ++s) {
        nodes.push_back({frequencies[s], -1, -1});
        if (frequencies[s] > 0) heap.emplace(frequencies[s], s);
    }
    if (heap.empty()) throw EmptyDistribution();
    if (heap.size() == 1) {
        model.code_lengths[heap.top().second] = 1;
        detail::canonicalize(model);
        return model;
    }
    while (heap.size() > 1) {
        auto [wa, a] = heap.top(); heap.pop();
        auto [wb, b] = heap.top(); heap.pop();
        nodes.push_back({wa + wb, a, b});
        heap.emplace(wa + wb, static_cast<int>(nodes.size()) - 1);
    }
    // depth-first walk to assign leaf depths
    std::vector<std::pair<int, int>> stack{{heap.top().second, 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        if (nodes[id].left < 0) {
            model.code_lengths[id] = static_cast<std::uint8_t>(depth);
        } else {
            stack.emplace_back(nodes[id].left, depth + 1);
            stack.emplace_back(nodes[id].right, depth + 1);
        }
    }
    detail::canonicalize(model);
    return model;
}

/// Rebuild codewords from stored lengths (the archive header carries only the
/// eight lengths).
inline HuffmanModel model_from_lengths(const std::array<std::uint8_t, kNumOpSymbols>& lengths) {
    HuffmanModel model;
    model.code_lengths = lengths;
    if (!kraft_equality(model)) throw CorruptStream("huffman lengths violate Kraft equality");
    detail::canonicalize(model);
    return model;
}

/// Concatenated codewords, MSB-first. `ops` holds op-code values 1..8.
inline BitStream huffman_encode(const std::vector<std::uint8_t>& ops, const HuffmanModel& model) {
    BitStream out;
    for (std::uint8_t op : ops) {
        if (op < 1 || op > 8 || model.code_lengths[op - 1] == 0) throw SymbolNotInModel(op);
        out.append(model.codewords[op - 1], model.code_lengths[op - 1]);
    }
    return out;
}

inline std::vector<std::uint8_t> huffman_decode(BitReader reader, const HuffmanModel& model,
                                                std::uint64_t n_symbols) {
    // canonical decoding tables: per length, first code value and symbol run
    unsigned max_len = 0;
    for (int s = 0; s < kNumOpSymbols; ++s)
        max_len = std::max<unsigned>(max_len, model.code_lengths[s]);
    std::array<std::uint32_t, 16> first_code{}, count{};
    std::array<std::uint32_t, 16> offset{};
    std::vector<int> order;
    for (int s = 0; s < kNumOpSymbols; ++s)
        if (model.code_lengths[s] > 0) order.push_back(s);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (model.code_lengths[a] != model.code_lengths[b])
            return model.code_lengths[a] < model.code_lengths[b];
        return a < b;
    });
    for (int s : order) ++count[model.code_lengths[s]];
    {
        std::uint32_t code = 0, idx = 0;
        for (unsigned len = 1; len <= max_len; ++len) {
            code <<= 1;
            first_code[len] = code;
            offset[len] = idx;
            code += count[len];
            idx += count[len];
        }
    }

    std::vector<std::uint8_t> ops;
    ops.reserve(n_symbols);
    for (std::uint64_t i = 0; i < n_symbols; ++i) {
        std::uint32_t code = 0;
        unsigned len = 0;
        for (;;) {
            code = (code << 1) | (reader.next() ? 1u : 0u);
            ++len;
            if (len > max_len) throw CorruptStream("invalid huffman codeword");
            if (count[len] && code >= first_code[len] && code < first_code[len] + count[len]) {
                ops.push_back(static_cast<std::uint8_t>(order[offset[len] + code - first_code[len]] + 1));
                break;
            }
        }
    }
    if (reader.remaining() > 7) throw DanglingBits();
    return ops;
}

inline std::vector<std::uint8_t> huffman_decode(const BitStream& bits, const HuffmanModel& model,
                                                std::uint64_t n_symbols) {
    return huffman_decode(BitReader(bits), model, n_symbols);
}

}  // namespace rdc
