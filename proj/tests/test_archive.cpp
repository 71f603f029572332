#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "rdc/archive.hpp"
#include "rdc/synthetic.hpp"
#include "rdc/varint.hpp"
#include "test_util.hpp"

using namespace rdc;

namespace {

bool sets_equal(const SequenceSet& a, const SequenceSet& b) {
    if (a.sequences.size() != b.sequences.size()) return false;
    if (a.reference_index != b.reference_index) return false;
    for (std::size_t i = 0; i < a.sequences.size(); ++i)
        if (a.sequences[i].id != b.sequences[i].id || a.sequences[i].bases != b.sequences[i].bases)
            return false;
    return true;
}

}  // namespace

TEST_CASE("varint round trip and edge values") {
    CHECK(varint_encode({0}) == std::vector<std::uint8_t>{0x00});
    CHECK(varint_encode({127}) == std::vector<std::uint8_t>{0x7F});
    CHECK(varint_encode({128}) == std::vector<std::uint8_t>{0x80, 0x01});
    std::mt19937_64 rng(71);
    std::vector<std::uint64_t> values;
    for (int i = 0; i < 1000; ++i) values.push_back(rng() >> (rng() % 64));
    values.push_back(std::numeric_limits<std::uint64_t>::max());
    CHECK(varint_decode(varint_encode(values), values.size()) == values);
    CHECK_THROWS_AS(varint_decode(std::vector<std::uint8_t>{0x80}, 1), TruncatedStream);
}

TEST_CASE("single-sequence set round-trips with zero records") {
    SequenceSet set;
    set.sequences.push_back({"only", "GATTACA"});
    Archive ar = compress_set(set);
    CHECK(ar.records.empty());
    auto bytes = write_archive(ar);
    CHECK(sets_equal(decompress_set(bytes), set));
}

TEST_CASE("copies of the reference produce empty diff records") {
    SequenceSet set;
    set.sequences.push_back({"r", "GATTACAGATTACA"});
    set.sequences.push_back({"c1", "GATTACAGATTACA"});
    set.sequences.push_back({"c2", "GATTACAGATTACA"});
    Archive ar = compress_set(set);
    REQUIRE(ar.records.size() == 2);
    for (const auto& rec : ar.records) CHECK(rec.n_ops == 0);
    CHECK(sets_equal(decompress_set(write_archive(ar)), set));
}

TEST_CASE("synthetic set round-trips under both backends and modes") {
    SequenceSet set = generate_synthetic_set(2000, 50, 0.01, 0.002, 0.002, 404);
    for (Backend backend : {Backend::huffman, Backend::deflate}) {
        for (AlignMode mode : {AlignMode::global, AlignMode::semi_global}) {
            AlignParams params;
            params.mode = mode;
            auto bytes = write_archive(compress_set(set, params, backend));
            CHECK(sets_equal(decompress_set(bytes), set));
        }
    }
}

TEST_CASE("reference is restored at its original index") {
    SequenceSet set = generate_synthetic_set(500, 4, 0.02, 0.01, 0.01, 9);
    std::swap(set.sequences[0], set.sequences[2]);
    set.reference_index = 2;
    auto bytes = write_archive(compress_set(set));
    CHECK(sets_equal(decompress_set(bytes), set));
}

TEST_CASE("decompress_one matches decompress_set without touching other payloads") {
    SequenceSet set = generate_synthetic_set(800, 10, 0.02, 0.005, 0.005, 2024);
    auto bytes = write_archive(compress_set(set));
    SequenceSet all = decompress_set(bytes);
    for (const Sequence& want : all.sequences) {
        Sequence got = decompress_one(bytes, want.id);
        CHECK(got.id == want.id);
        CHECK(got.bases == want.bases);
    }
    CHECK_THROWS_AS(decompress_one(bytes, "no-such-id"), UnknownId);
}

TEST_CASE("flipping any payload byte is detected") {
    SequenceSet set = generate_synthetic_set(600, 5, 0.03, 0.01, 0.01, 55);
    auto bytes = write_archive(compress_set(set));

    MemorySource src(bytes);
    ArchiveReader reader(src);
    REQUIRE(!reader.directory().empty());
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        auto corrupt = bytes;
        const auto& e = reader.directory()[rng() % reader.directory().size()];
        corrupt[e.offset + rng() % e.byte_len] ^= static_cast<std::uint8_t>(1 + rng() % 255);
        CHECK_THROWS_AS(decompress_set(corrupt), Error);
    }
    // header corruption is equally fatal
    auto corrupt = bytes;
    corrupt[5] ^= 0x40;
    CHECK_THROWS_AS(decompress_set(corrupt), CorruptStream);
}

TEST_CASE("generate_synthetic_set is deterministic and honors rates") {
    SequenceSet a = generate_synthetic_set(1000, 5, 0.02, 0.01, 0.01, 77);
    SequenceSet b = generate_synthetic_set(1000, 5, 0.02, 0.01, 0.01, 77);
    CHECK(sets_equal(a, b));

    SequenceSet copies = generate_synthetic_set(300, 4, 0.0, 0.0, 0.0, 3);
    for (const Sequence& s : copies.sequences) CHECK(s.bases == copies.sequences[0].bases);

    CHECK_THROWS_AS(generate_synthetic_set(100, 1, 0.6, 0, 0, 1), InvalidRate);
    CHECK_THROWS_AS(generate_synthetic_set(100, 1, 0, -0.1, 0, 1), InvalidRate);

    // SNP-only targets should carry Binomial(n, p) mismatches, within 3 sigma
    const std::size_t n = 10'000;
    const double p = 0.01;
    SequenceSet snps = generate_synthetic_set(n, 10, p, 0.0, 0.0, 1234);
    const double sigma = std::sqrt(n * p * (1 - p));
    for (std::size_t t = 1; t < snps.sequences.size(); ++t) {
        const std::string& ref = snps.sequences[0].bases;
        const std::string& tgt = snps.sequences[t].bases;
        REQUIRE(tgt.size() == n);
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (ref[i] != tgt[i]) ++mismatches;
        CHECK(std::abs(static_cast<double>(mismatches) - n * p) <= 3 * sigma);
    }
}

TEST_CASE("report formulas") {
    CompressionReport r = make_report(100, 100);
    CHECK(r.compression_ratio == 1.0);
    CHECK(r.space_saving == 0.0);
    CHECK(r.fold == 1.0);

    SequenceSet set = generate_synthetic_set(2000, 10, 0.01, 0.002, 0.002, 31);
    Archive ar = compress_set(set);
    CompressionReport rep = report(set, ar);
    std::uint64_t bases = 0;
    for (const auto& s : set.sequences) bases += s.bases.size();
    CHECK(rep.uncompressed_bytes == bases);
    CHECK(rep.compressed_bytes == rep.differences_bytes + rep.locations_bytes);
    CHECK(rep.archive_bytes == write_archive(ar).size());
    CHECK(rep.compression_ratio ==
          Catch::Approx(double(rep.compressed_bytes) / double(rep.uncompressed_bytes)));
    CHECK(rep.space_saving == Catch::Approx(1.0 - rep.compression_ratio));
    CHECK(rep.fold ==
          Catch::Approx(double(rep.uncompressed_bytes) / double(rep.compressed_bytes)));
    CHECK(rep.differences_bytes > 0);
    CHECK(rep.locations_bytes > 0);
    CHECK(rep.archive_bytes > rep.compressed_bytes);
}
