#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "rdc/align.hpp"
#include "test_util.hpp"

using namespace rdc;

namespace {

std::string strip_gaps(const std::string& row) {
    std::string out;
    for (char c : row)
        if (c != '-') out.push_back(c);
    return out;
}

AlignParams global_params() {
    AlignParams p;
    p.mode = AlignMode::global;
    return p;
}

}  // namespace

TEST_CASE("identical sequences align without gaps") {
    Sequence r{"r", "GATTACA"};
    for (AlignMode mode : {AlignMode::global, AlignMode::semi_global}) {
        AlignParams p;
        p.mode = mode;
        AlignedPair pair = align(r, r, p);
        CHECK(pair.ref_aligned == "GATTACA");
        CHECK(pair.tgt_aligned == "GATTACA");
    }
}

TEST_CASE("single substitution aligns as one mismatch column") {
    AlignedPair pair = align({"r", "GATTACA"}, {"t", "GATCACA"}, global_params());
    CHECK(pair.ref_aligned == "GATTACA");
    CHECK(pair.tgt_aligned == "GATCACA");
    CHECK(oracle::pair_score(pair, global_params()) == 11);
}

TEST_CASE("single deletion aligns as one gap column") {
    AlignedPair pair = align({"r", "ACGT"}, {"t", "AGT"}, global_params());
    CHECK(pair.ref_aligned == "ACGT");
    CHECK(pair.tgt_aligned == "A-GT");
    CHECK(oracle::best_alignment_score("ACGT", "AGT", global_params()) == 4);
}

TEST_CASE("cell budget is enforced") {
    AlignParams p;
    p.cell_budget = 10;
    CHECK_THROWS_AS(align({"r", "GATTACA"}, {"t", "GATTACA"}, p), SizeLimitExceeded);
}

TEST_CASE("identity_fraction counts equal non-gap columns") {
    CHECK(identity_fraction({"GATTACA", "GATTACA"}) == 1.0);
    CHECK(identity_fraction({"GATTACA", "GATCACA"}) == Catch::Approx(6.0 / 7.0));
    CHECK(identity_fraction({"ACGT", "A-GT"}) == Catch::Approx(0.75));
}

TEST_CASE("projection property: stripping gaps recovers the inputs") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        Sequence r{"r", testutil::random_bases(rng, 1 + rng() % 300)};
        Sequence t{"t", testutil::random_bases(rng, 1 + rng() % 300)};
        AlignParams p;
        p.mode = (iter % 2) ? AlignMode::global : AlignMode::semi_global;
        AlignedPair pair = align(r, t, p);
        REQUIRE(pair.ref_aligned.size() == pair.tgt_aligned.size());
        CHECK(strip_gaps(pair.ref_aligned) == r.bases);
        CHECK(strip_gaps(pair.tgt_aligned) == t.bases);
        for (std::size_t i = 0; i < pair.ref_aligned.size(); ++i)
            REQUIRE((pair.ref_aligned[i] != '-' || pair.tgt_aligned[i] != '-'));
    }
}

TEST_CASE("alignment score matches brute-force enumeration for short pairs") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 100; ++iter) {
        Sequence r{"r", testutil::random_bases(rng, 1 + rng() % 10)};
        Sequence t{"t", testutil::random_bases(rng, 1 + rng() % 10)};
        AlignParams p;
        p.mode = (iter % 2) ? AlignMode::global : AlignMode::semi_global;
        AlignedPair pair = align(r, t, p);
        CHECK(oracle::pair_score(pair, p) ==
              oracle::best_alignment_score(r.bases, t.bases, p));
    }
}
