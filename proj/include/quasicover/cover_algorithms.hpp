#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "quasicover/bits.hpp"
#include "quasicover/ipm_index.hpp"
#include "quasicover/packed_text.hpp"
#include "quasicover/progressions.hpp"

namespace quasicover {

namespace detail {

// base^e, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t e)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::nullopt;
        }
        r *= base;
    }
    return r;
}

}  // namespace detail

/// Largest c with base^(6c) <= n, i.e. floor(log_base(n) / 6).
inline std::size_t floor_log_over_six(std::uint64_t n, std::uint64_t base)
{
    if (base < 2) {
        throw std::invalid_argument("floor_log_over_six: base must be at least 2");
    }
    const auto step = detail::checked_pow(base, 6);
    std::size_t c = 0;
    std::uint64_t pow = 1;
    while (step && pow <= n / *step) {
        pow *= *step;
        ++c;
    }
    return c;
}

/// Short/long split point. Uses base sigma + 1 so that windows padded with the
/// sentinel digit still index a table of at most sqrt(n) entries.
inline std::size_t short_cover_threshold(std::uint64_t n, std::uint64_t sigma)
{
    if (n == 0 || sigma == 0) {
        throw std::invalid_argument("short_cover_threshold: need n >= 1 and sigma >= 1");
    }
    return floor_log_over_six(n, sigma + 1);
}

/// Distinct length-3c windows W_j = T[(j-1)c .. (j+2)c) for j in [0, ceil(n/c)),
/// coded in base sigma + 1 with out-of-range positions read as the digit sigma.
struct ShortCoverContext {
    std::size_t c = 0;
    std::uint64_t base = 0;
    std::size_t windows = 0;
    std::vector<std::uint64_t> codes;
    /// Start position (j-1)c of the first window carrying each code; -c for j = 0.
    std::vector<std::ptrdiff_t> representative;

    std::size_t window_length() const noexcept { return 3 * c; }
};

/// Largest c accepted by build_factor_set for this alphabet.
inline std::size_t max_window_threshold(std::uint64_t sigma)
{
    std::size_t c = 0;
    while (detail::checked_pow(sigma + 1, 3 * (c + 1))) {
        ++c;
    }
    return c;
}

inline ShortCoverContext build_factor_set(const PackedText& t, std::size_t c, WordOps* ops = nullptr)
{
    if (c == 0) {
        throw std::invalid_argument("build_factor_set: threshold must be positive");
    }
    const std::uint64_t sigma = t.sigma();
    const std::uint64_t base = sigma + 1;
    const auto space = detail::checked_pow(base, 3 * c);
    if (!space) {
        throw std::invalid_argument("build_factor_set: windows of length 3c do not fit in a word");
    }
    const std::uint64_t pow_c = *detail::checked_pow(base, c);
    const std::uint64_t pow_2c = pow_c * pow_c;
    const std::size_t n = t.size();
    const unsigned b = t.bits_per_symbol();

    ShortCoverContext ctx;
    ctx.c = c;
    ctx.base = base;
    ctx.windows = (n + c - 1) / c;

    std::uint64_t pad_block = 0;
    for (std::size_t i = 0; i < c; ++i) {
        pad_block = pad_block * base + sigma;
    }

    // Full blocks are converted from their packed bits through a lookup table
    // when c*b is small; otherwise digit by digit.
    const bool bits_fit = c * b <= kWordBits;
    const bool use_table = bits_fit && c * b <= 16;
    std::vector<std::uint64_t> convert;
    if (use_table) {
        convert.assign(std::size_t{1} << (c * b), 0);
        const std::uint64_t mask = low_mask(b);
        for (std::size_t bits = 0; bits < convert.size(); ++bits) {
            std::uint64_t code = 0;
            for (std::size_t i = 0; i < c; ++i) {
                code = code * base + ((bits >> (i * b)) & mask);
            }
            convert[bits] = code;
        }
        tally(ops, words_for_bits(convert.size() * kWordBits));
    }

    auto block = [&](std::ptrdiff_t j) -> std::uint64_t {
        if (j < 0) {
            return pad_block;
        }
        const std::size_t begin = static_cast<std::size_t>(j) * c;
        if (begin >= n) {
            return pad_block;
        }
        if (begin + c <= n && use_table) {
            return convert[t.chunk(begin, static_cast<unsigned>(c), ops)];
        }
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < c; ++i) {
            const std::size_t pos = begin + i;
            code = code * base + (pos < n ? t[pos] : sigma);
        }
        tally(ops, words_for_bits(c * b) + 1);
        return code;
    };

    const bool direct = *space <= (std::uint64_t{1} << 26);
    std::vector<std::uint64_t> seen;
    if (direct) {
        seen.assign(words_for_bits(*space), 0);
        tally(ops, seen.size());
    }

    std::uint64_t prev = pad_block;  // block j-1
    std::uint64_t cur = block(0);    // block j
    for (std::size_t j = 0; j < ctx.windows; ++j) {
        const std::uint64_t next = block(static_cast<std::ptrdiff_t>(j) + 1);
        const std::uint64_t code = (prev * pow_2c) + (cur * pow_c) + next;
        const auto start = static_cast<std::ptrdiff_t>(j * c) - static_cast<std::ptrdiff_t>(c);
        if (direct) {
            std::uint64_t& w = seen[code / kWordBits];
            const std::uint64_t bit = std::uint64_t{1} << (code % kWordBits);
            if ((w & bit) == 0) {
                w |= bit;
                ctx.codes.push_back(code);
                ctx.representative.push_back(start);
            }
        } else {
            ctx.codes.push_back(code);
            ctx.representative.push_back(start);
        }
        prev = cur;
        cur = next;
    }
    if (!direct) {
        // dedupe keeping the first representative of each code
        std::vector<std::size_t> order(ctx.codes.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b2) { return ctx.codes[a] < ctx.codes[b2]; });
        std::vector<std::uint64_t> codes;
        std::vector<std::ptrdiff_t> reps;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i == 0 || ctx.codes[order[i]] != ctx.codes[order[i - 1]]) {
                codes.push_back(ctx.codes[order[i]]);
                reps.push_back(ctx.representative[order[i]]);
            }
        }
        ctx.codes = std::move(codes);
        ctx.representative = std::move(reps);
    }
    return ctx;
}

/// Digits of a window code, first symbol first.
inline std::vector<std::uint64_t> decode_window(std::uint64_t code, std::uint64_t base, std::size_t len)
{
    std::vector<std::uint64_t> digits(len);
    for (std::size_t i = len; i-- > 0;) {
        digits[i] = code % base;
        code /= base;
    }
    return digits;
}

/// Lengths l in [1..min(c, n)] whose prefix covers T. A border C covers T iff in
/// every window its occurrences cover the real positions of the middle block.
inline std::vector<std::size_t> short_covers(const PackedText& t, const ShortCoverContext& ctx,
                                             WordOps* ops = nullptr)
{
    const std::size_t n = t.size();
    const std::size_t c = ctx.c;
    const std::size_t w = ctx.window_length();
    const std::uint64_t sentinel = t.sigma();
    std::vector<std::size_t> out;

    std::vector<std::vector<std::uint64_t>> windows;
    windows.reserve(ctx.codes.size());
    for (auto code : ctx.codes) {
        windows.push_back(decode_window(code, ctx.base, w));
    }

    std::vector<std::size_t> fail;
    std::vector<int> delta(w + 1);
    for (std::size_t len = 1; len <= std::min(c, n); ++len) {
        if (packed_lcp(t, 0, t, n - len, len, ops) != len) {
            continue;
        }
        const auto cand = t.unpack(0, len);
        tally(ops, words_for_bits(len * t.bits_per_symbol()));
        fail.assign(len + 1, 0);
        for (std::size_t i = 1, k = 0; i < len; ++i) {
            while (k > 0 && cand[i] != cand[k]) {
                k = fail[k];
            }
            if (cand[i] == cand[k]) {
                ++k;
            }
            fail[i + 1] = k;
        }
        bool ok = true;
        for (const auto& s : windows) {
            tally(ops, w + len);
            std::fill(delta.begin(), delta.end(), 0);
            for (std::size_t i = 0, k = 0; i < w; ++i) {
                while (k > 0 && (k == len || s[i] != cand[k])) {
                    k = fail[k];
                }
                if (s[i] == cand[k]) {
                    ++k;
                }
                if (k == len) {
                    ++delta[i + 1 - len];
                    --delta[i + 1];
                }
            }
            int depth = 0;
            for (std::size_t i = 0; i < 2 * c && ok; ++i) {
                depth += delta[i];
                if (i >= c && s[i] != sentinel && depth == 0) {
                    ok = false;
                }
            }
            if (!ok) {
                break;
            }
        }
        if (ok) {
            out.push_back(len);
        }
    }
    return out;
}

/// Occurrences of the length-B prefix in T as O(n/B) progressions, via IPM
/// queries on windows of length 2B-1 at positions that are multiples of B.
inline std::vector<Progression> occurrences_of_border(const TextIndex& idx, std::size_t len,
                                                      QueryUnits* units = nullptr)
{
    if (len == 0 || len > idx.size()) {
        throw std::out_of_range("occurrences_of_border: length outside [1..n]");
    }
    return idx.ipm_query({0, 0, len}, {0, 0, idx.size()}, units);
}

/// Whether occurrences (sorted progressions of start positions) of a length-len
/// string cover [0, n).
inline bool occurrences_cover(std::span<const Progression> occ, std::size_t n, std::size_t len)
{
    std::size_t reach = 0;
    for (const auto& p : occ) {
        if (p.start > reach) {
            return false;
        }
        if (p.count > 1 && p.diff > len) {
            return false;
        }
        reach = p.last() + len;
    }
    return reach == n;
}

/// Shortest maximal run of consecutive occurrences with difference p.
inline std::size_t min_run_length(std::span<const Progression> occ, std::size_t p)
{
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::size_t run = 0;
    std::size_t prev = 0;
    auto push = [&](std::size_t x) {
        if (run > 0 && x - prev == p) {
            ++run;
        } else {
            if (run > 0) {
                best = std::min(best, run);
            }
            run = 1;
        }
        prev = x;
    };
    for (const auto& q : occ) {
        if (q.count > 1 && q.diff == p) {
            push(q.start);
            run += q.count - 1;
            prev = q.last();
        } else {
            for (std::size_t i = 0; i < q.count; ++i) {
                push(q[i]);
            }
        }
    }
    if (run > 0) {
        best = std::min(best, run);
    }
    return best;
}

/// What the long-cover stage decided for one border group.
struct GroupTrace {
    std::size_t d = 0;
    Progression trimmed;        // group members > c
    bool first_covers = false;
    bool second_covers = false;
    std::size_t delta = 0;      // 0 unless the run analysis ran
    std::size_t accepted = 0;   // members output as covers
};

/// Long-cover stage over any source of border groups and prefix occurrences.
/// `occurrences_of(len)` must return sorted progressions of start positions.
template <class OccurrencesFn>
std::vector<Progression> long_covers_from_groups(const BorderGroups& groups, std::size_t c,
                                                 OccurrencesFn&& occurrences_of,
                                                 std::vector<GroupTrace>* trace = nullptr)
{
    const std::size_t n = groups.n;
    std::vector<Progression> out;
    for (const auto& g : groups.groups) {
        const Progression& all = g.lengths;
        if (all.last() <= c) {
            continue;
        }
        const std::size_t skip = all.start > c ? 0 : (c - all.start) / all.diff + 1;
        const std::size_t r = all.count - skip;
        const std::size_t b1 = all[skip];
        const std::size_t p = all.diff;

        GroupTrace tr;
        tr.d = g.d;
        tr.trimmed = Progression::make(b1, r > 1 ? p : 0, r);

        const auto occ1 = occurrences_of(b1);
        tr.first_covers = occurrences_cover(occ1, n, b1);
        if (tr.first_covers) {
            tr.accepted = 1;
            if (r >= 2) {
                const auto occ2 = occurrences_of(b1 + p);
                tr.second_covers = occurrences_cover(occ2, n, b1 + p);
                if (tr.second_covers) {
                    tr.accepted = 2;
                    if (r >= 3) {
                        tr.delta = min_run_length(occ1, p);
                        tr.accepted = std::min(tr.delta, r);
                    }
                }
            }
            out.push_back(Progression::make(b1, p, tr.accepted));
        }
        if (trace != nullptr) {
            trace->push_back(tr);
        }
    }
    return out;
}

/// Cover lengths > c among the proper borders of T, one progression per group.
inline std::vector<Progression> long_covers(const TextIndex& idx, std::size_t c,
                                            QueryUnits* units = nullptr,
                                            std::vector<GroupTrace>* trace = nullptr)
{
    const auto& groups = idx.border_groups(units);
    return long_covers_from_groups(
        groups, c, [&](std::size_t len) { return occurrences_of_border(idx, len, units); }, trace);
}

struct CoverOptions {
    /// Test hook: replaces the production threshold.
    std::optional<std::size_t> force_c;
};

struct CoverStats {
    std::size_t c = 0;
    WordOps short_ops;
    QueryUnits long_units;
    std::size_t windows = 0;
    std::size_t distinct_windows = 0;
    std::vector<std::size_t> short_lengths;
    std::vector<Progression> long_progressions;
    std::vector<GroupTrace> groups;
};

/// All covers of T: short ones from the window table, long ones from border
/// groups and IPM queries, plus n itself.
inline CoverSet covers(const PackedText& t, const CoverOptions& options = {}, CoverStats* stats = nullptr)
{
    const std::size_t n = t.size();
    if (n == 0) {
        throw std::invalid_argument("covers: empty text");
    }
    CoverStats local;
    CoverStats& st = stats != nullptr ? *stats : local;
    st = CoverStats{};
    st.c = options.force_c.value_or(short_cover_threshold(n, t.sigma()));

    if (st.c >= 1) {
        const auto ctx = build_factor_set(t, st.c, &st.short_ops);
        st.windows = ctx.windows;
        st.distinct_windows = ctx.codes.size();
        st.short_lengths = short_covers(t, ctx, &st.short_ops);
    }
    const TextIndex idx(t);
    st.long_progressions = long_covers(idx, st.c, &st.long_units, &st.groups);

    std::vector<Progression> progs;
    for (auto len : st.short_lengths) {
        progs.push_back(Progression::singleton(len));
    }
    progs.insert(progs.end(), st.long_progressions.begin(), st.long_progressions.end());
    if (progs.empty() || progs.back().last() != n) {
        progs.push_back(Progression::singleton(n));
    }
    return CoverSet(n, std::move(progs));
}

}  // namespace quasicover
