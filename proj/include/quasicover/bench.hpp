#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "quasicover/cover_algorithms.hpp"
#include "quasicover/packed_text.hpp"

namespace quasicover {

inline constexpr std::size_t kEdge = 64;

/// Uniform random text conditioned on having a border of length b and no other
/// border in (b/2, kEdge]. Only the first and last kEdge symbols decide borders
/// that short; they are redrawn from `edge_rng` until the condition holds.
inline std::vector<Symbol> random_text_with_border(std::size_t n, std::uint64_t sigma, std::size_t b,
                                                   std::mt19937_64& edge_rng, std::mt19937_64& rng)
{
    std::vector<Symbol> s(n);
    for (auto& x : s) {
        x = static_cast<Symbol>(rng() % sigma);
    }
    const std::size_t edge = std::min(kEdge, n / 2);
    if (b > edge) {
        std::copy(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::min(b, n)),
                  s.end() - static_cast<std::ptrdiff_t>(std::min(b, n)));
        return s;
    }
    auto unwanted_border = [&] {
        for (std::size_t len = b / 2 + 1; len <= edge; ++len) {
            if (len != b && std::equal(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len),
                                       s.end() - static_cast<std::ptrdiff_t>(len))) {
                return true;
            }
        }
        return false;
    };
    do {
        for (std::size_t i = 0; i < edge; ++i) {
            s[i] = static_cast<Symbol>(edge_rng() % sigma);
            s[n - edge + i] = static_cast<Symbol>(edge_rng() % sigma);
        }
        for (std::size_t i = 0; i < b; ++i) {
            s[n - b + i] = s[i];
        }
    } while (unwanted_border());
    return s;
}

/// Averaged counted costs of the two cover stages at one text length.
struct StageCosts {
    std::size_t n = 0;
    std::size_t c = 0;
    std::size_t samples = 0;
    double long_units = 0;
    double short_ops = 0;
    double ipm_calls = 0;

    double n_over_c() const noexcept { return c == 0 ? static_cast<double>(n) : static_cast<double>(n) / c; }
    /// Units per n/c position, the quantity expected to stay flat.
    double long_per_n_over_c() const noexcept { return long_units / n_over_c(); }
    double short_per_n_over_c() const noexcept { return short_ops / n_over_c(); }
};

inline StageCosts measure_stage_costs(std::size_t n, std::uint64_t sigma, std::uint64_t seed, std::size_t samples)
{
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * n));
    StageCosts out;
    out.n = n;
    out.samples = samples;
    out.c = short_cover_threshold(n, sigma);
    for (std::size_t i = 0; i < samples; ++i) {
        std::mt19937_64 edge_rng(seed * 1000003 + i);
        const auto s = random_text_with_border(n, sigma, 2 * std::max<std::size_t>(out.c, 1), edge_rng, rng);
        CoverStats st;
        covers(PackedText::pack(s, sigma), {}, &st);
        out.long_units += static_cast<double>(st.long_units.count);
        out.short_ops += static_cast<double>(st.short_ops.count);
        out.ipm_calls += static_cast<double>(st.long_units.ipm_calls);
    }
    const auto k = static_cast<double>(samples);
    out.long_units /= k;
    out.short_ops /= k;
    out.ipm_calls /= k;
    return out;
}

}  // namespace quasicover
