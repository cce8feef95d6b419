#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasicover/oracles.hpp"
#include "quasicover/packed_text.hpp"

namespace quasicover {

/// Lengths F_k = |Fib_k| with F_0 = F_1 = 1.
class FibTable {
public:
    /// All F_k up to and including the first one >= bound.
    explicit FibTable(std::uint64_t bound = 2)
    {
        f_ = {1, 1};
        while (f_.back() < bound) {
            const std::uint64_t a = f_[f_.size() - 2];
            const std::uint64_t b = f_.back();
            if (b > std::numeric_limits<std::uint64_t>::max() - a) {
                throw std::overflow_error("FibTable: bound too large");
            }
            f_.push_back(a + b);
        }
    }

    std::size_t size() const noexcept { return f_.size(); }
    std::uint64_t operator[](std::size_t k) const { return f_.at(k); }
    const std::vector<std::uint64_t>& values() const noexcept { return f_; }

    /// Index k with F_k == len for k >= 2, if any.
    std::optional<std::size_t> index_of(std::uint64_t len) const
    {
        const auto it = std::lower_bound(f_.begin() + 2, f_.end(), len);
        if (it != f_.end() && *it == len) {
            return static_cast<std::size_t>(it - f_.begin());
        }
        return std::nullopt;
    }

private:
    std::vector<std::uint64_t> f_;
};

inline std::string fib_string(std::size_t m)
{
    std::string prev = "b";
    std::string cur = "a";
    if (m == 0) {
        return prev;
    }
    for (std::size_t i = 1; i < m; ++i) {
        std::string next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Fib_m over {0,1} with a -> 0, b -> 1.
inline std::vector<Symbol> fib_symbols(std::size_t m)
{
    const std::string s = fib_string(m);
    std::vector<Symbol> out(s.size());
    std::transform(s.begin(), s.end(), out.begin(), [](char ch) { return ch == 'a' ? 0u : 1u; });
    return out;
}

/// Cov of the length-len prefix of the infinite Fibonacci string, O(log len) steps.
inline std::uint64_t fib_cov(std::uint64_t len, const FibTable& table)
{
    if (len == 0) {
        throw std::out_of_range("fib_cov: length must be >= 1");
    }
    if (table.values().back() <= len) {
        return fib_cov(len, FibTable(len + 1));
    }
    const auto& f = table.values();
    while (true) {
        if (len <= 2) {
            return len;
        }
        if (const auto k = table.index_of(len); k && *k >= 3) {
            return *k % 2 == 1 ? 3 : 5;
        }
        // k with F_k < len < F_{k+1}
        const std::size_t k = static_cast<std::size_t>(std::lower_bound(f.begin() + 2, f.end(), len) - f.begin()) - 1;
        if (k >= 3) {
            // the only corner values strictly inside (F_k, F_{k+1})
            if (len == f[k + 1] - 1 || (k >= 5 && len == 2 * f[k - 1] - 1)) {
                return len;
            }
        }
        len -= f[k - 1];
    }
}

inline std::uint64_t fib_cov(std::uint64_t len) { return fib_cov(len, FibTable(len + 1)); }

/// fib_cov for every prefix length [1..F_m], index 0 unused.
inline std::vector<std::size_t> fib_cover_array(std::size_t m)
{
    const FibTable table(std::numeric_limits<std::uint32_t>::max());
    if (m >= table.size()) {
        throw std::out_of_range("fib_cover_array: m too large");
    }
    const std::size_t n = table[m];
    std::vector<std::size_t> out(n + 1, 0);
    for (std::size_t l = 1; l <= n; ++l) {
        out[l] = fib_cov(l, table);
    }
    return out;
}

struct CorollaryReport {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t distinct_values = 0;
    std::size_t superprimitive_prefixes = 0;
    /// Positions l in [5..n) with Cov[l+1] == Cov[l] + 1.
    std::vector<std::size_t> counterexamples;
    /// Positions where the closed form disagrees with the direct cover array.
    std::vector<std::size_t> recursion_mismatches;
};

inline CorollaryReport check_corollary(std::size_t m)
{
    if (m < 5) {
        throw std::invalid_argument("check_corollary: need m >= 5");
    }
    const auto s = fib_symbols(m);
    const auto cov = cover_array_breslauer(s);
    const FibTable table(s.size() + 1);
    CorollaryReport r;
    r.m = m;
    r.n = s.size();
    std::set<std::size_t> values;
    for (std::size_t l = 1; l <= r.n; ++l) {
        values.insert(cov[l]);
        if (cov[l] == l) {
            ++r.superprimitive_prefixes;
        }
        if (fib_cov(l, table) != cov[l]) {
            r.recursion_mismatches.push_back(l);
        }
    }
    for (std::size_t l = 5; l < r.n; ++l) {
        if (cov[l + 1] == cov[l] + 1) {
            r.counterexamples.push_back(l);
        }
    }
    r.distinct_values = values.size();
    return r;
}

}  // namespace quasicover
