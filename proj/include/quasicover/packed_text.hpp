#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quasicover/bits.hpp"

namespace quasicover {

using Symbol = std::uint32_t;

/// ceil(log2(max(sigma, 2))): unary texts still use one bit per symbol.
constexpr unsigned bits_for_alphabet(std::uint64_t sigma) noexcept
{
    return static_cast<unsigned>(std::bit_width(std::max<std::uint64_t>(sigma, 2) - 1));
}

/// A string over [0, sigma) stored densely, bits_per_symbol bits per symbol,
/// symbols straddling word boundaries. Symbol i occupies bits
/// [i*b, (i+1)*b) counted from the least significant bit of word 0.
class PackedText {
public:
    PackedText() = default;

    static PackedText pack(std::span<const Symbol> symbols, std::uint64_t sigma)
    {
        if (sigma == 0) {
            throw std::invalid_argument("pack: alphabet size must be at least 1");
        }
        if (sigma > (std::uint64_t{1} << 32)) {
            throw std::invalid_argument("pack: alphabet size exceeds 2^32");
        }
        PackedText t;
        t.n_ = symbols.size();
        t.sigma_ = sigma;
        t.bps_ = bits_for_alphabet(sigma);
        t.words_.assign(words_for_bits(t.n_ * t.bps_), 0);
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (symbols[i] >= sigma) {
                throw std::invalid_argument("pack: symbol " + std::to_string(symbols[i]) +
                                            " at position " + std::to_string(i) +
                                            " is outside the alphabet");
            }
            or_bits(t.words_, i * t.bps_, t.bps_, symbols[i]);
        }
        return t;
    }

    /// Packs a string of letters by mapping `alphabet[k]` to symbol k.
    static PackedText from_letters(std::string_view s, std::string_view alphabet)
    {
        std::vector<Symbol> v;
        v.reserve(s.size());
        for (char ch : s) {
            const auto pos = alphabet.find(ch);
            if (pos == std::string_view::npos) {
                throw std::invalid_argument(std::string("from_letters: letter '") + ch +
                                            "' is not in the alphabet");
            }
            v.push_back(static_cast<Symbol>(pos));
        }
        return pack(v, alphabet.size());
    }

    /// Packs raw word-sized storage; validates the trailing-zero and range invariants.
    static PackedText from_words(std::size_t n, std::uint64_t sigma, std::vector<std::uint64_t> words)
    {
        PackedText t;
        t.n_ = n;
        t.sigma_ = sigma;
        t.bps_ = bits_for_alphabet(sigma);
        if (sigma == 0 || words.size() != words_for_bits(n * t.bps_)) {
            throw std::invalid_argument("from_words: storage does not match length");
        }
        const std::size_t used = n * t.bps_;
        if (used % kWordBits != 0 && (words.back() >> (used % kWordBits)) != 0) {
            throw std::invalid_argument("from_words: trailing bits are not zero");
        }
        t.words_ = std::move(words);
        for (std::size_t i = 0; i < n; ++i) {
            if (t.at(i) >= sigma) {
                throw std::invalid_argument("from_words: symbol outside the alphabet");
            }
        }
        return t;
    }

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }
    std::uint64_t sigma() const noexcept { return sigma_; }
    unsigned bits_per_symbol() const noexcept { return bps_; }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    /// Symbols that fit in one word read.
    unsigned symbols_per_word() const noexcept { return kWordBits / bps_; }

    Symbol access(std::size_t i) const
    {
        if (i >= n_) {
            throw std::out_of_range("access: index " + std::to_string(i) + " >= length " +
                                    std::to_string(n_));
        }
        return at(i);
    }

    Symbol operator[](std::size_t i) const noexcept { return at(i); }

    Symbol at(std::size_t i, WordOps* ops = nullptr) const noexcept
    {
        return static_cast<Symbol>(read_bits(words_, i * bps_, bps_, ops));
    }

    /// Raw bits of symbols [i, i + count); count * bits_per_symbol <= 64.
    std::uint64_t chunk(std::size_t i, unsigned count, WordOps* ops = nullptr) const noexcept
    {
        return read_bits(words_, i * bps_, count * bps_, ops);
    }

    std::vector<Symbol> unpack() const
    {
        std::vector<Symbol> out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            out[i] = at(i);
        }
        return out;
    }

    std::vector<Symbol> unpack(std::size_t begin, std::size_t end) const
    {
        std::vector<Symbol> out;
        out.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            out.push_back(at(i));
        }
        return out;
    }

    /// Half-open packed copy T[begin..end), word at a time.
    PackedText slice(std::size_t begin, std::size_t end, WordOps* ops = nullptr) const
    {
        if (begin > end || end > n_) {
            throw std::out_of_range("slice: invalid range");
        }
        PackedText t;
        t.n_ = end - begin;
        t.sigma_ = sigma_;
        t.bps_ = bps_;
        const std::size_t bits = t.n_ * bps_;
        t.words_.assign(words_for_bits(bits), 0);
        const std::size_t src = begin * bps_;
        for (std::size_t w = 0; w < t.words_.size(); ++w) {
            const std::size_t done = w * kWordBits;
            const auto len = static_cast<unsigned>(std::min<std::size_t>(kWordBits, bits - done));
            t.words_[w] = read_bits(words_, src + done, len, ops);
            tally(ops);
        }
        return t;
    }

    friend bool operator==(const PackedText&, const PackedText&) = default;

private:
    std::size_t n_ = 0;
    std::uint64_t sigma_ = 1;
    unsigned bps_ = 1;
    std::vector<std::uint64_t> words_;
};

inline PackedText pack(std::span<const Symbol> symbols, std::uint64_t sigma)
{
    return PackedText::pack(symbols, sigma);
}

/// Packed copy of the inclusive range T[i..j]; i == j + 1 yields the empty string.
inline PackedText extract_packed(const PackedText& t, std::size_t i, std::size_t j,
                                 WordOps* ops = nullptr)
{
    // j + 1 may wrap when j == SIZE_MAX; reject that explicitly
    if (j == std::numeric_limits<std::size_t>::max() ? i != 0 : (i > j + 1 || j + 1 > t.size())) {
        throw std::out_of_range("extract_packed: need 0 <= i <= j+1 <= n");
    }
    return t.slice(i, j + 1, ops);
}

/// Base-(sigma+1) positional code of T[start..start+len), most significant
/// digit first; positions at or past n read as the sentinel digit sigma.
inline std::uint64_t factor_code(const PackedText& t, std::size_t start, std::size_t len)
{
    if (start > t.size()) {
        throw std::out_of_range("factor_code: start past the end of the text");
    }
    const std::uint64_t base = t.sigma() + 1;
    std::uint64_t code = 0;
    for (std::size_t k = 0; k < len; ++k) {
        const std::size_t pos = start + k;
        const std::uint64_t digit = pos < t.size() ? t[pos] : t.sigma();
        if (code > (std::numeric_limits<std::uint64_t>::max() - digit) / base) {
            throw std::invalid_argument("factor_code: code does not fit in one word");
        }
        code = code * base + digit;
    }
    return code;
}

/// Longest common extension of x[xs..) and y[ys..), capped at max_len.
/// Compares whole words when both texts share a symbol width.
inline std::size_t packed_lcp(const PackedText& x, std::size_t xs, const PackedText& y,
                              std::size_t ys, std::size_t max_len, WordOps* ops = nullptr)
{
    if (x.bits_per_symbol() != y.bits_per_symbol()) {
        std::size_t k = 0;
        while (k < max_len && x[xs + k] == y[ys + k]) {
            ++k;
        }
        tally(ops, k + 1);
        return k;
    }
    const unsigned b = x.bits_per_symbol();
    const unsigned per = x.symbols_per_word();
    std::size_t k = 0;
    while (k < max_len) {
        const auto cnt = static_cast<unsigned>(std::min<std::size_t>(per, max_len - k));
        const std::uint64_t diff = x.chunk(xs + k, cnt, ops) ^ y.chunk(ys + k, cnt, ops);
        if (diff != 0) {
            return k + static_cast<std::size_t>(std::countr_zero(diff)) / b;
        }
        k += cnt;
    }
    return max_len;
}

/// Longest common suffix of x[..xe) and y[..ye), capped at max_len.
inline std::size_t packed_lcs(const PackedText& x, std::size_t xe, const PackedText& y,
                              std::size_t ye, std::size_t max_len, WordOps* ops = nullptr)
{
    if (x.bits_per_symbol() != y.bits_per_symbol()) {
        std::size_t k = 0;
        while (k < max_len && x[xe - 1 - k] == y[ye - 1 - k]) {
            ++k;
        }
        tally(ops, k + 1);
        return k;
    }
    const unsigned b = x.bits_per_symbol();
    const unsigned per = x.symbols_per_word();
    std::size_t k = 0;
    while (k < max_len) {
        const auto cnt = static_cast<unsigned>(std::min<std::size_t>(per, max_len - k));
        const std::uint64_t diff = x.chunk(xe - k - cnt, cnt, ops) ^ y.chunk(ye - k - cnt, cnt, ops);
        if (diff != 0) {
            const auto top = static_cast<unsigned>(std::bit_width(diff) - 1) / b;
            return k + (cnt - 1 - top);
        }
        k += cnt;
    }
    return max_len;
}

}  // namespace quasicover
