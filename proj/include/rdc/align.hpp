#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rdc/errors.hpp"
#include "rdc/sequence.hpp"

namespace rdc {

enum class AlignMode { global, semi_global };

struct AlignParams {
    int match = 2;
    int mismatch = -1;
    int gap = -2;  // linear gap penalty per column
    AlignMode mode = AlignMode::semi_global;
    std::uint64_t cell_budget = 400'000'000;
};

/// Two equal-length gapped rows; stripping '-' from each recovers the inputs.
struct AlignedPair {
    std::string ref_aligned;
    std::string tgt_aligned;
};

namespace detail {
// traceback directions
inline constexpr std::uint8_t kDiag = 1;  // consume one base of each
inline constexpr std::uint8_t kUp = 2;    // consume reference base, gap in target
inline constexpr std::uint8_t kLeft = 3;  // consume target base, gap in reference
}  // namespace detail

/// Needleman-Wunsch with linear gaps. In semi_global mode leading and trailing
/// gap runs in either row are free. Traceback ties prefer diagonal, then gap in
/// target, then gap in reference, so equal-score inputs produce identical
/// archives across runs.
inline AlignedPair align(const Sequence& reference, const Sequence& target,
                         const AlignParams& params = {}) {
    const std::string& r = reference.bases;
    const std::string& t = target.bases;
    const std::size_t m = r.size(), n = t.size();
    const std::uint64_t cells = static_cast<std::uint64_t>(m) * n;
    if (cells > params.cell_budget) throw SizeLimitExceeded(cells, params.cell_budget);

    const bool global = params.mode == AlignMode::global;
    const int gap = params.gap;

    // traceback kept for the whole matrix; scores as two rolling rows
    std::unique_ptr<std::uint8_t[]> trace(new std::uint8_t[(m + 1) * (n + 1)]);
    std::vector<int> prev(n + 1), cur(n + 1), mid(n + 1);
    std::vector<int> last_col(m + 1);  // dp[i][n], needed for semi-global endpoints

    for (std::size_t j = 0; j <= n; ++j) prev[j] = global ? static_cast<int>(j) * gap : 0;
    last_col[0] = prev[n];

    const char* tp = t.data();
    const int match = params.match, mismatch = params.mismatch;
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = global ? static_cast<int>(i) * gap : 0;
        std::uint8_t* trow = trace.get() + i * (n + 1);
        const int* up_row = prev.data();
        int* cur_row = cur.data();
        int* mid_row = mid.data();
        const char ri = r[i - 1];
        // pass 1 (vectorizable): best of diagonal and up, no in-row dependency
        for (std::size_t j = 1; j <= n; ++j) {
            const int a = up_row[j - 1] + (ri == tp[j - 1] ? match : mismatch);
            const int b = up_row[j] + gap;
            mid_row[j] = a >= b ? a : b;
            trow[j] = a >= b ? detail::kDiag : detail::kUp;
        }
        // pass 2: fold in the in-row gap chain; left wins only on strict
        // improvement, preserving the diag > up > left tie-break
        int running = cur_row[0];
        for (std::size_t j = 1; j <= n; ++j) {
            const int cand = running + gap;
            const int h = mid_row[j];
            const bool left_wins = cand > h;
            running = left_wins ? cand : h;
            cur_row[j] = running;
            if (left_wins) trow[j] = detail::kLeft;
        }
        prev.swap(cur);
        last_col[i] = prev[n];
    }
    // prev now holds dp[m][*]

    std::size_t ei = m, ej = n;
    if (!global) {
        int best = prev[n];
        for (std::size_t j = n; j-- > 0;)
            if (prev[j] > best) { best = prev[j]; ei = m; ej = j; }
        for (std::size_t i = m; i-- > 0;)
            if (last_col[i] > best) { best = last_col[i]; ei = i; ej = n; }
    }

    std::string ra, ta;  // built reversed
    ra.reserve(m + n);
    ta.reserve(m + n);
    // free trailing gaps past the semi-global endpoint
    for (std::size_t j = n; j > ej; --j) { ra.push_back('-'); ta.push_back(t[j - 1]); }
    for (std::size_t i = m; i > ei; --i) { ra.push_back(r[i - 1]); ta.push_back('-'); }

    std::size_t i = ei, j = ej;
    while (i > 0 || j > 0) {
        std::uint8_t dir;
        if (i == 0) dir = detail::kLeft;
        else if (j == 0) dir = detail::kUp;
        else dir = trace[i * (n + 1) + j];
        switch (dir) {
            case detail::kDiag: ra.push_back(r[--i]); ta.push_back(t[--j]); break;
            case detail::kUp: ra.push_back(r[--i]); ta.push_back('-'); break;
            default: ra.push_back('-'); ta.push_back(t[--j]); break;
        }
    }
    std::reverse(ra.begin(), ra.end());
    std::reverse(ta.begin(), ta.end());
    return {std::move(ra), std::move(ta)};
}

/// Fraction of columns whose symbols are equal non-gap bases.
inline double identity_fraction(const AlignedPair& pair) {
    std::size_t same = 0;
    for (std::size_t i = 0; i < pair.ref_aligned.size(); ++i)
        if (pair.ref_aligned[i] == pair.tgt_aligned[i] && pair.ref_aligned[i] != '-') ++same;
    return pair.ref_aligned.empty() ? 0.0
                                    : static_cast<double>(same) / pair.ref_aligned.size();
}

}  // namespace rdc
