#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "rdc/deflate.hpp"
#include "rdc/huffman.hpp"
#include "test_util.hpp"

using namespace rdc;

namespace {

// Table-style op-code distributions scaled to counts per million symbols.
constexpr std::array<std::uint64_t, 8> kHumanCounts = {1'100, 94'200, 2'100, 895'700,
                                                       200,   700,    5'000, 500};
constexpr std::array<std::uint64_t, 8> kMouseCounts = {71'800,  90'600,  48'300,  69'600,
                                                       191'000, 184'900, 159'500, 183'900};

std::vector<std::uint8_t> random_ops(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> ops(n);
    for (auto& op : ops) op = static_cast<std::uint8_t>(1 + rng() % 8);
    return ops;
}

}  // namespace

TEST_CASE("human-distribution code lengths") {
    HuffmanModel model = build_huffman(kHumanCounts);
    CHECK(model.code_lengths == std::array<std::uint8_t, 8>{5, 2, 4, 1, 7, 6, 3, 7});
    CHECK(kraft_equality(model));
}

TEST_CASE("mouse-distribution code lengths") {
    HuffmanModel model = build_huffman(kMouseCounts);
    CHECK(model.code_lengths == std::array<std::uint8_t, 8>{4, 4, 4, 4, 2, 2, 3, 3});
    CHECK(kraft_equality(model));
}

TEST_CASE("two-symbol and one-symbol codes") {
    HuffmanModel two = build_huffman({5, 5, 0, 0, 0, 0, 0, 0});
    CHECK(two.code_lengths[0] == 1);
    CHECK(two.code_lengths[1] == 1);

    HuffmanModel one = build_huffman({0, 0, 0, 7, 0, 0, 0, 0});
    CHECK(one.code_lengths[3] == 1);
    CHECK(kraft_equality(one));

    CHECK_THROWS_AS(build_huffman({0, 0, 0, 0, 0, 0, 0, 0}), EmptyDistribution);
}

TEST_CASE("canonical codewords are prefix-free and ordered") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        std::array<std::uint64_t, 8> counts{};
        int k = 2 + rng() % 7;
        for (int i = 0; i < k; ++i) counts[rng() % 8] += 1 + rng() % 100;
        bool any = false;
        for (auto c : counts) any = any || c;
        if (!any) continue;
        HuffmanModel m = build_huffman(counts);
        CHECK(kraft_equality(m));
        for (int a = 0; a < 8; ++a) {
            if (m.code_lengths[a] == 0) continue;
            for (int b = 0; b < 8; ++b) {
                if (b == a || m.code_lengths[b] == 0) continue;
                if (m.code_lengths[a] <= m.code_lengths[b]) {
                    // a's codeword must not prefix b's
                    std::uint32_t bp = m.codewords[b] >> (m.code_lengths[b] - m.code_lengths[a]);
                    CHECK(bp != m.codewords[a]);
                }
            }
        }
    }
}

TEST_CASE("encode examples") {
    HuffmanModel model = build_huffman(kHumanCounts);
    BitStream bits = huffman_encode({4, 4, 2}, model);
    CHECK(bits.bit_count == 4);  // lengths 1 + 1 + 2

    CHECK(huffman_encode({}, model).bit_count == 0);
    CHECK(huffman_decode(BitStream{}, model, 0).empty());

    CHECK_THROWS_AS(huffman_encode({9}, model), SymbolNotInModel);
    HuffmanModel partial = build_huffman({5, 5, 0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(huffman_encode({3}, partial), SymbolNotInModel);
}

TEST_CASE("huffman round trip on random streams") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<std::uint8_t> ops = random_ops(rng, rng() % 2000);
        std::array<std::uint64_t, 8> counts{};
        for (auto op : ops) ++counts[op - 1];
        if (ops.empty()) continue;
        HuffmanModel model = build_huffman(counts);
        BitStream bits = huffman_encode(ops, model);
        CHECK(huffman_decode(bits, model, ops.size()) == ops);

        // a model rebuilt from lengths alone decodes the same stream
        HuffmanModel rebuilt = model_from_lengths(model.code_lengths);
        CHECK(huffman_decode(bits, rebuilt, ops.size()) == ops);
    }
}

TEST_CASE("truncated bit stream is detected") {
    HuffmanModel model = build_huffman(kHumanCounts);
    BitStream bits = huffman_encode({5, 5, 5}, model);  // 21 bits
    BitReader short_reader(bits.bytes.data(), bits.bit_count - 1);
    CHECK_THROWS_AS(huffman_decode(short_reader, model, 3), TruncatedBits);
}

TEST_CASE("dangling bits beyond padding are rejected") {
    HuffmanModel model = build_huffman(kHumanCounts);
    BitStream bits = huffman_encode({4}, model);  // 1 bit
    BitReader padded(bits.bytes.data(), 16);  // pretend two payload bytes
    CHECK_THROWS_AS(huffman_decode(padded, model, 1), DanglingBits);
}

TEST_CASE("build_huffman matches brute-force optimum for small distributions") {
    // exhaustive over 1..3 nonzero symbols, sampled for 4..5
    for (std::uint64_t a = 1; a <= 20; ++a)
        for (std::uint64_t b = 0; b <= 20; ++b)
            for (std::uint64_t c = 0; c <= 20; ++c) {
                std::array<std::uint64_t, 8> counts{a, b, c, 0, 0, 0, 0, 0};
                HuffmanModel m = build_huffman(counts);
                std::uint64_t total = 0;
                for (int s = 0; s < 8; ++s) total += counts[s] * m.code_lengths[s];
                CHECK(total == oracle::optimal_prefix_total_bits({a, b, c}));
            }
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 2000; ++iter) {
        std::vector<std::uint64_t> v(5);
        for (auto& x : v) x = rng() % 21;
        if (v[0] == 0) v[0] = 1;
        std::array<std::uint64_t, 8> counts{};
        for (int i = 0; i < 5; ++i) counts[i] = v[i];
        HuffmanModel m = build_huffman(counts);
        std::uint64_t total = 0;
        for (int s = 0; s < 8; ++s) total += counts[s] * m.code_lengths[s];
        CHECK(total == oracle::optimal_prefix_total_bits(v));
    }
}

TEST_CASE("deflate round trip") {
    std::mt19937_64 rng(31);
    for (std::size_t size : {std::size_t(0), std::size_t(1), std::size_t(1000),
                             std::size_t(1) << 20}) {
        std::vector<std::uint8_t> payload(size);
        for (auto& b : payload) b = static_cast<std::uint8_t>(rng());
        CHECK(deflate_decompress(deflate_compress(payload)) == payload);
    }
}

TEST_CASE("deflate squeezes runs") {
    std::vector<std::uint8_t> runs(10'000, 0x04);
    CHECK(deflate_compress(runs).size() < 100);
}

TEST_CASE("deflate rejects corrupt input") {
    CHECK_THROWS_AS(deflate_decompress(std::vector<std::uint8_t>{1, 2, 3, 4}), CorruptStream);
    std::vector<std::uint8_t> good = deflate_compress(std::vector<std::uint8_t>(5000, 'x'));
    std::vector<std::uint8_t> truncated(good.begin(), good.begin() + good.size() / 2);
    CHECK_THROWS_AS(deflate_decompress(truncated), CorruptStream);
    std::vector<std::uint8_t> flipped = good;
    flipped[flipped.size() / 2] ^= 0xFF;
    CHECK_THROWS_AS(deflate_decompress(flipped), CorruptStream);
}
