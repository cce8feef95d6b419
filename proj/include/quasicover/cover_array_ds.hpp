#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasicover/bits.hpp"
#include "quasicover/ipm_index.hpp"
#include "quasicover/oracles.hpp"
#include "quasicover/packed_text.hpp"

namespace quasicover {

/// Half lengths j of the primitively rooted square prefixes T[0..2j), ascending.
inline std::vector<std::size_t> square_prefix_halves(std::span<const Symbol> s)
{
    const auto z = z_array(s);
    const auto per = smallest_period_array(s);
    std::vector<std::size_t> out;
    for (std::size_t j = 1; 2 * j <= s.size(); ++j) {
        // root s[0..j) is primitive iff its smallest period does not divide j properly
        const bool primitive = per[j] == j || j % per[j] != 0;
        if (z[j] >= j && primitive) {
            out.push_back(j);
        }
    }
    return out;
}

inline std::vector<std::size_t> square_prefix_halves(const PackedText& t)
{
    const auto s = t.unpack();
    return square_prefix_halves(s);
}

/// Smallest p >= j such that T[0..p) is aperiodic, given the smallest-period array.
inline std::size_t aperiodic_prefix_for(std::span<const std::size_t> per, std::size_t j)
{
    for (std::size_t p = std::max<std::size_t>(j, 1); p < per.size(); ++p) {
        if (2 * per[p] > p) {
            return p;
        }
    }
    throw std::logic_error("aperiodic_prefix_for: no aperiodic prefix of length >= j");
}

inline std::size_t aperiodic_prefix_for(const PackedText& t, std::size_t j)
{
    const auto per = smallest_period_array(t);
    return aperiodic_prefix_for(per, j);
}

struct CovQueryStats {
    std::uint64_t queries = 0;
    std::uint64_t ipm_queries = 0;
    std::uint64_t max_occurrences = 0;
    QueryUnits units;
};

/// Cover-array index: one superprimitivity bit per prefix, a packed pointer to
/// one of t aperiodic prefixes for every other prefix, and an IPM index.
/// Cov[l] is either l or recovered from the rightmost occurrence of the
/// assigned aperiodic prefix in T[l-2p+1..l).
class CoverArrayIndex {
public:
    static constexpr std::array<char, 4> kMagic{'Q', 'C', 'A', 'I'};
    static constexpr std::uint32_t kVersion = 1;

    CoverArrayIndex() = default;

    static CoverArrayIndex build(PackedText text)
    {
        const std::size_t n = text.size();
        if (n == 0) {
            throw std::invalid_argument("build_cover_index: empty text");
        }
        const auto s = text.unpack();
        const auto per = smallest_period_array(s);
        const auto z = z_array(s);
        const auto cov = cover_array_breslauer(s);
        const auto halves = square_prefix_halves(s);

        CoverArrayIndex idx;
        idx.n_ = n;
        const unsigned len_width = ceil_log2(n + 1);
        idx.halves_ = PackedIntArray(halves.size(), len_width);
        idx.aperiodic_ = PackedIntArray(halves.size(), len_width);
        for (std::size_t i = 0; i < halves.size(); ++i) {
            const std::size_t p = aperiodic_prefix_for(per, halves[i]);
            if (p >= 2 * halves[i]) {
                throw std::logic_error("build_cover_index: aperiodic prefix too long");
            }
            idx.halves_.set(i, halves[i]);
            idx.aperiodic_.set(i, p);
        }

        // first_at_least[c] = smallest q > 0 with z[q] >= c
        const std::size_t none = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> first_at_least(n + 2, none);
        for (std::size_t q = n; q-- > 1;) {
            first_at_least[z[q]] = q;
        }
        for (std::size_t c = n; c-- > 0;) {
            first_at_least[c] = std::min(first_at_least[c], first_at_least[c + 1]);
        }

        idx.sp_ = PackedIntArray(n, 1);
        idx.pref_ = PackedIntArray(n, ceil_log2(halves.size()));
        for (std::size_t l = 1; l <= n; ++l) {
            const std::size_t c = cov[l];
            if (c == l) {
                idx.sp_.set(l - 1, 1);
                continue;
            }
            const std::size_t q = first_at_least[c];
            const auto it = std::lower_bound(halves.begin(), halves.end(), q);
            if (q == none || it == halves.end() || *it != q || 2 * q <= c) {
                throw std::logic_error("build_cover_index: second occurrence of the shortest cover of prefix " +
                                       std::to_string(l) + " is not a square half");
            }
            idx.pref_.set(l - 1, static_cast<std::uint64_t>(it - halves.begin()));
        }
        idx.ipm_ = TextIndex(std::move(text));
        return idx;
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t square_count() const noexcept { return halves_.size(); }
    std::size_t square_half(std::size_t i) const { return halves_.get(i); }
    std::size_t aperiodic_length(std::size_t i) const { return aperiodic_.get(i); }
    bool superprimitive(std::size_t l) const { return sp_.get(checked(l) - 1) != 0; }
    /// 1-based index into the square/aperiodic tables; meaningful where sp is 0.
    std::size_t pref(std::size_t l) const { return pref_.get(checked(l) - 1) + 1; }
    const TextIndex& ipm() const noexcept { return ipm_; }

    std::size_t query(std::size_t l, CovQueryStats* stats = nullptr) const
    {
        checked(l);
        if (stats != nullptr) {
            ++stats->queries;
        }
        if (sp_.get(l - 1) != 0) {
            return l;
        }
        const std::size_t p = aperiodic_.get(pref_.get(l - 1));
        const std::size_t lo = l + 1 >= 2 * p ? l + 1 - 2 * p : 0;
        const auto occ = ipm_.ipm_core({0, 0, p}, {0, lo, l}, stats ? &stats->units : nullptr);
        if (!occ) {
            throw std::logic_error("query_cov: assigned aperiodic prefix does not occur");
        }
        if (stats != nullptr) {
            ++stats->ipm_queries;
            stats->max_occurrences = std::max<std::uint64_t>(stats->max_occurrences, occ->count);
        }
        return l - (lo + occ->last());
    }

    /// Bits of sp, pref and the two length tables (the IPM index is separate).
    std::size_t structure_bits() const noexcept
    {
        return sp_.bit_size() + pref_.bit_size() + halves_.bit_size() + aperiodic_.bit_size();
    }

    /// Versioned little-endian blob; layout in docs/index-format.md.
    void save(std::ostream& out) const
    {
        out.write(kMagic.data(), kMagic.size());
        put32(out, kVersion);
        put64(out, n_);
        put64(out, ipm_.text().sigma());
        put64(out, halves_.size());
        put32(out, halves_.width());
        put32(out, pref_.width());
        put_words(out, halves_.words());
        put_words(out, aperiodic_.words());
        put_words(out, sp_.words());
        put_words(out, pref_.words());
        put_words(out, ipm_.text().words());
        if (!out) {
            throw std::runtime_error("CoverArrayIndex::save: write failed");
        }
    }

    static CoverArrayIndex load(std::istream& in)
    {
        std::array<char, 4> magic{};
        in.read(magic.data(), magic.size());
        if (!in || magic != kMagic) {
            throw std::runtime_error("CoverArrayIndex::load: bad magic");
        }
        if (get32(in) != kVersion) {
            throw std::runtime_error("CoverArrayIndex::load: unsupported version");
        }
        CoverArrayIndex idx;
        idx.n_ = get64(in);
        const std::uint64_t sigma = get64(in);
        const std::size_t t = get64(in);
        const unsigned len_width = get32(in);
        const unsigned pref_width = get32(in);
        if (idx.n_ == 0 || sigma == 0 || len_width != ceil_log2(idx.n_ + 1) || pref_width != ceil_log2(t) ||
            t > idx.n_) {
            throw std::runtime_error("CoverArrayIndex::load: inconsistent header");
        }
        idx.halves_ = PackedIntArray::from_words(t, len_width, get_words(in, words_for_bits(t * len_width)));
        idx.aperiodic_ = PackedIntArray::from_words(t, len_width, get_words(in, words_for_bits(t * len_width)));
        idx.sp_ = PackedIntArray::from_words(idx.n_, 1, get_words(in, words_for_bits(idx.n_)));
        idx.pref_ = PackedIntArray::from_words(idx.n_, pref_width,
                                               get_words(in, words_for_bits(idx.n_ * pref_width)));
        const unsigned bps = bits_for_alphabet(sigma);
        auto text_words = get_words(in, words_for_bits(idx.n_ * bps));
        idx.ipm_ = TextIndex(PackedText::from_words(idx.n_, sigma, std::move(text_words)));
        return idx;
    }

private:
    std::size_t checked(std::size_t l) const
    {
        if (l == 0 || l > n_) {
            throw std::out_of_range("query_cov: length " + std::to_string(l) + " outside [1..n]");
        }
        return l;
    }

    static void put32(std::ostream& out, std::uint32_t v)
    {
        std::array<char, 4> b{};
        for (unsigned i = 0; i < 4; ++i) {
            b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        }
        out.write(b.data(), b.size());
    }
    static void put64(std::ostream& out, std::uint64_t v)
    {
        std::array<char, 8> b{};
        for (unsigned i = 0; i < 8; ++i) {
            b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        }
        out.write(b.data(), b.size());
    }
    static void put_words(std::ostream& out, const std::vector<std::uint64_t>& words)
    {
        for (auto w : words) {
            put64(out, w);
        }
    }
    static std::uint64_t get_le(std::istream& in, unsigned bytes)
    {
        std::array<unsigned char, 8> b{};
        in.read(reinterpret_cast<char*>(b.data()), bytes);
        if (!in) {
            throw std::runtime_error("CoverArrayIndex::load: truncated input");
        }
        std::uint64_t v = 0;
        for (unsigned i = 0; i < bytes; ++i) {
            v |= std::uint64_t{b[i]} << (8 * i);
        }
        return v;
    }
    static std::uint32_t get32(std::istream& in) { return static_cast<std::uint32_t>(get_le(in, 4)); }
    static std::uint64_t get64(std::istream& in) { return get_le(in, 8); }
    static std::vector<std::uint64_t> get_words(std::istream& in, std::size_t count)
    {
        std::vector<std::uint64_t> w(count);
        for (auto& x : w) {
            x = get64(in);
        }
        return w;
    }

    std::size_t n_ = 0;
    PackedIntArray halves_;
    PackedIntArray aperiodic_;
    PackedIntArray sp_;
    PackedIntArray pref_;
    TextIndex ipm_;
};

inline CoverArrayIndex build_cover_index(PackedText t) { return CoverArrayIndex::build(std::move(t)); }

inline std::size_t query_cov(const CoverArrayIndex& idx, std::size_t l, CovQueryStats* stats = nullptr)
{
    return idx.query(l, stats);
}

}  // namespace quasicover
