#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasicover/bits.hpp"

namespace quasicover {

/// {start, start + diff, ..., start + (count - 1) * diff}. Singletons carry diff 0.
struct Progression {
    std::size_t start = 0;
    std::size_t diff = 0;
    std::size_t count = 0;

    static Progression singleton(std::size_t x) noexcept { return {x, 0, 1}; }

    /// Canonical form: singleton => diff 0.
    static Progression make(std::size_t start, std::size_t diff, std::size_t count)
    {
        if (count == 0) {
            throw std::invalid_argument("Progression: count must be positive");
        }
        if (count == 1) {
            return singleton(start);
        }
        if (diff == 0) {
            throw std::invalid_argument("Progression: diff must be positive when count > 1");
        }
        return {start, diff, count};
    }

    std::size_t last() const noexcept { return start + diff * (count - 1); }
    std::size_t operator[](std::size_t i) const noexcept { return start + diff * i; }

    bool contains(std::size_t x) const noexcept
    {
        if (count == 0 || x < start || x > last()) {
            return false;
        }
        return diff == 0 ? x == start : (x - start) % diff == 0;
    }

    friend bool operator==(const Progression&, const Progression&) = default;
};

inline std::vector<std::size_t> flatten(const std::vector<Progression>& progs)
{
    std::vector<std::size_t> out;
    for (const auto& p : progs) {
        for (std::size_t i = 0; i < p.count; ++i) {
            out.push_back(p[i]);
        }
    }
    return out;
}

/// The cover lengths of a length-n text as sorted, value-disjoint progressions.
class CoverSet {
public:
    CoverSet() = default;

    CoverSet(std::size_t n, std::vector<Progression> progs) : n_(n), progs_(std::move(progs))
    {
        if (n_ == 0) {
            throw std::invalid_argument("CoverSet: text length must be positive");
        }
        for (std::size_t i = 0; i < progs_.size(); ++i) {
            const auto& p = progs_[i];
            if (p.count == 0 || p.start == 0 || (p.count == 1 && p.diff != 0) ||
                (p.count > 1 && p.diff == 0)) {
                throw std::invalid_argument("CoverSet: progression " + std::to_string(i) +
                                            " is not canonical");
            }
            if (i > 0 && progs_[i - 1].last() >= p.start) {
                throw std::invalid_argument("CoverSet: progressions overlap or are unsorted");
            }
        }
        if (progs_.empty() || progs_.back().last() != n_) {
            throw std::invalid_argument("CoverSet: the text length must be the largest member");
        }
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<Progression>& progressions() const noexcept { return progs_; }

    bool contains(std::size_t len) const
    {
        if (len == 0 || len > n_) {
            throw std::out_of_range("CoverSet::contains: length outside [1..n]");
        }
        // first progression whose last member is >= len
        auto it = std::partition_point(progs_.begin(), progs_.end(),
                                       [len](const Progression& p) { return p.last() < len; });
        return it != progs_.end() && it->contains(len);
    }

    std::size_t shortest() const noexcept { return progs_.front().start; }

    std::vector<std::size_t> enumerate() const { return flatten(progs_); }

    std::size_t size() const noexcept
    {
        std::size_t s = 0;
        for (const auto& p : progs_) {
            s += p.count;
        }
        return s;
    }

    /// Packed Boolean array: bit (len - 1) is set iff len is a cover length.
    /// Progressions with a small difference are written a word at a time.
    std::vector<std::uint64_t> to_bitmask() const
    {
        std::vector<std::uint64_t> bits(words_for_bits(n_), 0);
        for (const auto& p : progs_) {
            if (p.count == 1 || p.diff >= kWordBits / 2) {
                for (std::size_t i = 0; i < p.count; ++i) {
                    const std::size_t b = p[i] - 1;
                    bits[b / kWordBits] |= std::uint64_t{1} << (b % kWordBits);
                }
                continue;
            }
            write_stride(bits, p);
        }
        return bits;
    }

    friend bool operator==(const CoverSet&, const CoverSet&) = default;

private:
    static void write_stride(std::vector<std::uint64_t>& bits, const Progression& p)
    {
        // pattern with bits 0, d, 2d, ... set across a full word
        std::uint64_t pattern = 0;
        for (std::size_t k = 0; k < kWordBits; k += p.diff) {
            pattern |= std::uint64_t{1} << k;
        }
        const std::size_t first = p.start - 1;
        const std::size_t final = p.last() - 1;
        const std::size_t w0 = first / kWordBits;
        const std::size_t w1 = final / kWordBits;
        for (std::size_t w = w0; w <= w1; ++w) {
            const std::size_t base = w * kWordBits;
            // offset of the first member at or after base
            std::size_t off;
            if (base <= first) {
                off = first - base;
            } else {
                const std::size_t r = (base - first) % p.diff;
                off = r == 0 ? 0 : p.diff - r;
            }
            if (off >= kWordBits) {
                continue;
            }
            std::uint64_t m = pattern << off;
            if (final < base + kWordBits - 1) {
                m &= low_mask(static_cast<unsigned>(final - base + 1));
            }
            bits[w] |= m;
        }
    }

    std::size_t n_ = 0;
    std::vector<Progression> progs_;
};

}  // namespace quasicover
