#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "rdc/errors.hpp"
#include "rdc/sequence.hpp"

namespace rdc {

namespace detail {

// Derived from the raw engine output so the byte stream is identical across
// standard library implementations.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline char random_base(std::mt19937_64& rng) { return index_base(static_cast<int>(rng() % 4)); }

}  // namespace detail

/// Deterministic synthetic dataset: a random reference plus n_targets copies
/// mutated by independent per-base substitutions, insertions and deletions.
/// Replacement bases are uniform over the 3 alternatives, inserted bases
/// uniform over 4. Sequence "ref" is the reference (index 0); targets are
/// "t1".."tN".
inline SequenceSet generate_synthetic_set(std::uint64_t reference_length, std::uint32_t n_targets,
                                          double snp_rate, double ins_rate, double del_rate,
                                          std::uint64_t seed) {
    for (double r : {snp_rate, ins_rate, del_rate})
        if (!(r >= 0.0 && r < 0.5)) throw InvalidRate(r);
    if (reference_length < 1) throw Error("reference_length must be >= 1");

    std::mt19937_64 rng(seed);
    SequenceSet set;
    set.reference_index = 0;

    Sequence ref{"ref", {}};
    ref.bases.reserve(reference_length);
    for (std::uint64_t i = 0; i < reference_length; ++i)
        ref.bases.push_back(detail::random_base(rng));
    set.sequences.push_back(ref);

    for (std::uint32_t t = 1; t <= n_targets; ++t) {
        std::string bases;
        bases.reserve(reference_length + reference_length / 8);
        for (char base : ref.bases) {
            if (detail::unit_double(rng) < ins_rate) bases.push_back(detail::random_base(rng));
            if (detail::unit_double(rng) < del_rate) continue;
            if (detail::unit_double(rng) < snp_rate) {
                // one of the 3 alternatives to `base`
                int alt = static_cast<int>(rng() % 3);
                int idx = base_index(base);
                bases.push_back(index_base(alt >= idx ? alt + 1 : alt));
            } else {
                bases.push_back(base);
            }
        }
        if (detail::unit_double(rng) < ins_rate) bases.push_back(detail::random_base(rng));
        if (bases.empty()) bases.push_back(ref.bases.front());  // a Sequence may not be empty
        set.sequences.push_back({"t" + std::to_string(t), std::move(bases)});
    }
    return set;
}

}  // namespace rdc
