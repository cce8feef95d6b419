#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "quasicover/fragment.hpp"
#include "quasicover/oracles.hpp"
#include "quasicover/packed_text.hpp"
#include "quasicover/pillar.hpp"
#include "quasicover/progressions.hpp"

namespace quasicover {

/// Abstract cost of index queries. One unit per window query; a Period Query
/// costs one unit per power-of-two level.
struct QueryUnits {
    std::uint64_t count = 0;
    std::uint64_t ipm_calls = 0;
};

inline void charge(QueryUnits* units, std::uint64_t k = 1) noexcept
{
    if (units != nullptr) {
        units->count += k;
    }
}

/// Border lengths of T lying in [d, 2d), d a power of two.
struct BorderGroup {
    std::size_t d = 0;
    Progression lengths;

    friend bool operator==(const BorderGroup&, const BorderGroup&) = default;
};

/// Non-empty groups in ascending d. Groups with more than two members have the
/// common smallest period of their borders as diff.
struct BorderGroups {
    std::size_t n = 0;
    std::vector<BorderGroup> groups;

    std::vector<std::size_t> lengths() const
    {
        std::vector<std::size_t> out;
        for (const auto& g : groups) {
            for (std::size_t i = 0; i < g.lengths.count; ++i) {
                out.push_back(g.lengths[i]);
            }
        }
        return out;
    }
};

/// Groups an ascending list of border lengths by power-of-two range.
inline BorderGroups group_borders(std::size_t n, const std::vector<std::size_t>& ascending)
{
    BorderGroups out;
    out.n = n;
    std::size_t i = 0;
    while (i < ascending.size()) {
        const std::size_t d = std::bit_floor(ascending[i]);
        std::vector<std::size_t> members;
        while (i < ascending.size() && ascending[i] < 2 * d) {
            members.push_back(ascending[i++]);
        }
        const auto prog = as_progression(members);
        out.groups.push_back({d, *prog});
    }
    return out;
}

inline BorderGroups border_groups(std::span<const Symbol> s)
{
    const std::size_t n = s.size();
    if (n == 0) {
        throw std::invalid_argument("border_groups: empty text");
    }
    const auto b = border_array(s);
    std::vector<std::size_t> chain;
    for (std::size_t len = b[n]; len > 0; len = b[len]) {
        chain.push_back(len);
    }
    std::reverse(chain.begin(), chain.end());
    return group_borders(n, chain);
}

inline BorderGroups border_groups(const PackedText& t)
{
    const auto s = t.unpack();
    return border_groups(s);
}

/// Fixed text plus a Z-array and precomputed border groups. IPM queries are
/// answered window by window: windows of length 2|X|-1 starting at multiples
/// of |X| inside Y, each holding at most one progression of occurrences.
class TextIndex {
public:
    TextIndex() = default;

    explicit TextIndex(PackedText t) : text_(std::move(t))
    {
        if (text_.empty()) {
            throw std::invalid_argument("TextIndex: empty text");
        }
        const auto s = text_.unpack();
        z_ = z_array(s);
        groups_ = quasicover::border_groups(s);
    }

    const PackedText& text() const noexcept { return text_; }
    std::size_t size() const noexcept { return text_.size(); }
    const std::vector<std::size_t>& z() const noexcept { return z_; }

    /// Period Query on T itself.
    const BorderGroups& border_groups(QueryUnits* units = nullptr) const noexcept
    {
        charge(units, std::bit_width(text_.size()));
        return groups_;
    }

    /// Occurrences of X in Y, relative to Y.start, one progression per window
    /// that holds an occurrence.
    std::vector<Progression> ipm_query(Fragment x, Fragment y, QueryUnits* units = nullptr) const
    {
        check(x);
        check(y);
        const std::size_t m = x.length();
        if (m == 0) {
            throw std::invalid_argument("ipm_query: empty pattern");
        }
        if (units != nullptr) {
            ++units->ipm_calls;
        }
        std::vector<Progression> out;
        if (y.length() < m) {
            return out;
        }
        const std::size_t last_start = y.end - m;  // absolute
        const bool prefix = x.start == 0;
        std::vector<std::size_t> general;
        std::size_t gi = 0;
        if (!prefix) {
            const auto pat = text_.unpack(x.start, x.end);
            const auto hay = text_.unpack(y.start, y.end);
            general = kmp_occurrences(pat, hay);
        }
        std::vector<std::size_t> window;
        for (std::size_t ws = y.start; ws <= last_start; ws += m) {
            charge(units);
            const std::size_t we = std::min(ws + m - 1, last_start);  // last start in window
            window.clear();
            if (prefix) {
                for (std::size_t q = ws; q <= we; ++q) {
                    if (z_[q] >= m) {
                        window.push_back(q - y.start);
                    }
                }
            } else {
                while (gi < general.size() && general[gi] + y.start <= we) {
                    window.push_back(general[gi++]);
                }
            }
            if (auto p = as_progression(window)) {
                out.push_back(*p);
            }
        }
        return out;
    }

    /// IPM primitive: |Y| <= 2|X|, all occurrences as a single progression.
    std::optional<Progression> ipm_core(Fragment x, Fragment y, QueryUnits* units = nullptr) const
    {
        if (x.length() == 0 || y.length() > 2 * x.length()) {
            throw contract_violation("ipm_core: need 1 <= |X| and |Y| <= 2|X|");
        }
        const auto parts = ipm_query(x, y, units);
        if (parts.empty()) {
            return std::nullopt;
        }
        Progression p = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) {
            const Progression& q = parts[i];
            if (q.count != 1) {
                throw std::logic_error("ipm_core: unexpected second window shape");
            }
            if (p.count == 1) {
                p = Progression::make(p.start, q.start - p.start, 2);
            } else if (q.start - p.last() == p.diff) {
                ++p.count;
            } else {
                throw std::logic_error("ipm_core: occurrences are not a progression");
            }
        }
        return p;
    }

private:
    void check(const Fragment& f) const
    {
        if (f.start > f.end || f.end > text_.size()) {
            throw std::out_of_range("TextIndex: fragment outside the text");
        }
    }

    PackedText text_;
    std::vector<std::size_t> z_;
    BorderGroups groups_;
};

inline TextIndex build_index(PackedText t) { return TextIndex(std::move(t)); }

}  // namespace quasicover
