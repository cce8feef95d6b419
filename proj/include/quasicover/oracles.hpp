#pragma once

// Linear and quadratic reference algorithms. Everything the sublinear code
// computes is checked against these.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "quasicover/packed_text.hpp"

namespace quasicover {

/// b[l] = longest proper border of s[0..l) for l in [1..n]; b[0] = 0.
inline std::vector<std::size_t> border_array(std::span<const Symbol> s)
{
    const std::size_t n = s.size();
    std::vector<std::size_t> b(n + 1, 0);
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i) {
        while (k > 0 && s[i] != s[k]) {
            k = b[k];
        }
        if (s[i] == s[k]) {
            ++k;
        }
        b[i + 1] = k;
    }
    return b;
}

inline std::vector<std::size_t> border_array(const PackedText& t)
{
    const auto s = t.unpack();
    return border_array(s);
}

/// z[i] = lcp(s, s[i..)); z[0] = n.
inline std::vector<std::size_t> z_array(std::span<const Symbol> s)
{
    const std::size_t n = s.size();
    std::vector<std::size_t> z(n, 0);
    if (n == 0) {
        return z;
    }
    z[0] = n;
    std::size_t l = 0, r = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (i < r) {
            z[i] = std::min(r - i, z[i - l]);
        }
        while (i + z[i] < n && s[z[i]] == s[i + z[i]]) {
            ++z[i];
        }
        if (i + z[i] > r) {
            l = i;
            r = i + z[i];
        }
    }
    return z;
}

/// per[l] = l - b[l], the smallest period of s[0..l); per[0] = 0.
inline std::vector<std::size_t> smallest_period_array(std::span<const Symbol> s)
{
    auto b = border_array(s);
    for (std::size_t l = 1; l < b.size(); ++l) {
        b[l] = l - b[l];
    }
    return b;
}

inline std::vector<std::size_t> smallest_period_array(const PackedText& t)
{
    const auto s = t.unpack();
    return smallest_period_array(s);
}

namespace detail {

// Whether the length-c prefix covers a text whose Z-array is z.
inline bool prefix_covers(std::span<const std::size_t> z, std::size_t c)
{
    const std::size_t n = z.size();
    std::size_t reach = 0;  // positions [0, reach) are covered
    for (std::size_t q = 0; q + c <= n; ++q) {
        if (z[q] >= c) {
            if (q > reach) {
                return false;
            }
            reach = q + c;
        }
    }
    return reach == n;
}

}  // namespace detail

inline bool is_cover_naive(std::span<const Symbol> s, std::size_t c)
{
    if (c == 0 || c > s.size()) {
        throw std::out_of_range("is_cover_naive: length outside [1..n]");
    }
    const auto z = z_array(s);
    return detail::prefix_covers(z, c);
}

inline bool is_cover_naive(const PackedText& t, std::size_t c)
{
    const auto s = t.unpack();
    return is_cover_naive(s, c);
}

/// Sorted cover lengths, found by testing every border on the border chain.
inline std::vector<std::size_t> all_covers_naive(std::span<const Symbol> s)
{
    const std::size_t n = s.size();
    if (n == 0) {
        throw std::invalid_argument("all_covers_naive: empty text");
    }
    const auto b = border_array(s);
    const auto z = z_array(s);
    std::vector<std::size_t> out{n};
    for (std::size_t len = b[n]; len > 0; len = b[len]) {
        if (detail::prefix_covers(z, len)) {
            out.push_back(len);
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

inline std::vector<std::size_t> all_covers_naive(const PackedText& t)
{
    const auto s = t.unpack();
    return all_covers_naive(s);
}

/// Online shortest-cover array: cov[l] for l in [1..n], cov[0] = 0.
/// reach[c] holds the longest processed prefix that the length-c prefix covers.
inline std::vector<std::size_t> cover_array_breslauer(std::span<const Symbol> s)
{
    const std::size_t n = s.size();
    const auto b = border_array(s);
    std::vector<std::size_t> cov(n + 1, 0);
    std::vector<std::size_t> reach(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t border = b[i];
        if (border > 0) {
            const std::size_t c = cov[border];
            if (reach[c] + c >= i) {
                cov[i] = c;
                reach[c] = i;
                continue;
            }
        }
        cov[i] = i;
        reach[i] = i;
    }
    return cov;
}

inline std::vector<std::size_t> cover_array_breslauer(const PackedText& t)
{
    const auto s = t.unpack();
    return cover_array_breslauer(s);
}

/// Naive occurrence list of pattern in text (all start positions).
inline std::vector<std::size_t> naive_occurrences(std::span<const Symbol> pattern,
                                                  std::span<const Symbol> text)
{
    std::vector<std::size_t> occ;
    if (pattern.empty() || pattern.size() > text.size()) {
        return occ;
    }
    for (std::size_t q = 0; q + pattern.size() <= text.size(); ++q) {
        if (std::equal(pattern.begin(), pattern.end(), text.begin() + static_cast<std::ptrdiff_t>(q))) {
            occ.push_back(q);
        }
    }
    return occ;
}

}  // namespace quasicover
