#pragma once

// The long-cover algorithm expressed only through PILLAR primitives. Short
// covers get no special treatment here (threshold 0), so every border is
// handled by the long-cover stage.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "quasicover/cover_algorithms.hpp"
#include "quasicover/ipm_index.hpp"
#include "quasicover/pillar.hpp"
#include "quasicover/progressions.hpp"

namespace quasicover {

/// Border lengths of text `id`, grouped per [d, 2d). For each d the prefix
/// P = T[0..d) is located in the last 2d-1 positions by one IPM query; every
/// candidate it yields is confirmed with one LCP query.
inline BorderGroups border_groups_pillar(PillarBackend& backend, std::size_t id)
{
    const Fragment text = backend.whole(id);
    const std::size_t n = text.length();
    std::vector<std::size_t> borders;
    for (std::size_t d = 1; d < n; d *= 2) {
        const std::size_t ylo = n + 1 > 2 * d ? n + 1 - 2 * d : 1;
        if (n - ylo < d) {
            continue;
        }
        const auto occ = backend.ipm(text.sub(0, d), text.sub(ylo, n));
        if (!occ) {
            continue;
        }
        std::vector<std::size_t> level;
        for (std::size_t i = 0; i < occ->count; ++i) {
            const std::size_t b = n - (ylo + (*occ)[i]);
            if (b < d || b >= 2 * d || b >= n) {
                continue;
            }
            if (b == d || backend.lcp(text.sub(d, b), text.sub(n - b + d, n)) == b - d) {
                level.push_back(b);
            }
        }
        std::sort(level.begin(), level.end());
        borders.insert(borders.end(), level.begin(), level.end());
    }
    return group_borders(n, borders);
}

/// Occurrences of the length-len prefix of text `id` via IPM on windows of
/// length 2len-1 at multiples of len.
inline std::vector<Progression> occurrences_pillar(PillarBackend& backend, Fragment text, std::size_t len)
{
    const std::size_t n = text.length();
    std::vector<Progression> out;
    const Fragment pat = text.sub(0, len);
    for (std::size_t ws = 0; ws + len <= n; ws += len) {
        const std::size_t we = std::min(ws + 2 * len - 1, n);
        if (auto p = backend.ipm(pat, text.sub(ws, we))) {
            p->start += ws;
            out.push_back(*p);
        }
    }
    return out;
}

inline bool is_cover_pillar(PillarBackend& backend, std::size_t id, std::size_t len)
{
    const Fragment text = backend.whole(id);
    return occurrences_cover(occurrences_pillar(backend, text, len), text.length(), len);
}

inline CoverSet covers_pillar(PillarBackend& backend, std::size_t id)
{
    const auto groups = border_groups_pillar(backend, id);
    const Fragment text{id, 0, groups.n};
    auto progs = long_covers_from_groups(groups, 0, [&](std::size_t len) {
        return occurrences_pillar(backend, text, len);
    });
    progs.push_back(Progression::singleton(groups.n));
    return CoverSet(groups.n, std::move(progs));
}

}  // namespace quasicover
