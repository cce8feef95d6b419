#include <gtest/gtest.h>

#include <random>

#include "quasicover/bits.hpp"
#include "quasicover/packed_text.hpp"
#include "test_support.hpp"

using namespace quasicover;
using quasicover::testing::uniform_text;

TEST(Bits, CeilLog2AndMasks)
{
    EXPECT_EQ(ceil_log2(1), 0u);
    EXPECT_EQ(ceil_log2(2), 1u);
    EXPECT_EQ(ceil_log2(3), 2u);
    EXPECT_EQ(ceil_log2(1024), 10u);
    EXPECT_EQ(ceil_log2(1025), 11u);
    EXPECT_EQ(low_mask(0), 0u);
    EXPECT_EQ(low_mask(64), ~std::uint64_t{0});
    EXPECT_EQ(words_for_bits(0), 0u);
    EXPECT_EQ(words_for_bits(65), 2u);
}

TEST(Bits, PackedIntArrayRandomWrites)
{
    std::mt19937_64 rng(7);
    for (unsigned width : {0u, 1u, 3u, 7u, 13u, 31u, 63u, 64u}) {
        PackedIntArray a(257, width);
        std::vector<std::uint64_t> ref(257, 0);
        for (int it = 0; it < 2000; ++it) {
            const std::size_t i = rng() % ref.size();
            const std::uint64_t v = rng() & low_mask(width);
            a.set(i, v);
            ref[i] = v;
        }
        for (std::size_t i = 0; i < ref.size(); ++i) {
            ASSERT_EQ(a.get(i), ref[i]) << "width " << width << " index " << i;
        }
        EXPECT_EQ(PackedIntArray::from_words(a.size(), a.width(), a.words()), a);
    }
}

TEST(Bits, PackedIntArrayRejectsOversizedValues)
{
    PackedIntArray a(4, 3);
    EXPECT_THROW(a.set(0, 8), std::out_of_range);
    EXPECT_THROW(PackedIntArray(1, 65), std::invalid_argument);
}

TEST(PackedText, BitsPerSymbol)
{
    EXPECT_EQ(bits_for_alphabet(1), 1u);
    EXPECT_EQ(bits_for_alphabet(2), 1u);
    EXPECT_EQ(bits_for_alphabet(3), 2u);
    EXPECT_EQ(bits_for_alphabet(4), 2u);
    EXPECT_EQ(bits_for_alphabet(5), 3u);
    EXPECT_EQ(bits_for_alphabet(26), 5u);
    EXPECT_EQ(bits_for_alphabet(256), 8u);
}

TEST(PackedText, RoundTripAcrossAlphabets)
{
    std::mt19937_64 rng(1);
    for (std::uint64_t sigma : {1ull, 2ull, 3ull, 5ull, 7ull, 26ull, 255ull, 1ull << 20, 1ull << 32}) {
        for (std::size_t n : {0u, 1u, 63u, 64u, 65u, 1000u}) {
            const auto s = uniform_text(rng, n, sigma);
            const auto t = PackedText::pack(s, sigma);
            ASSERT_EQ(t.size(), n);
            ASSERT_EQ(t.unpack(), s);
            for (std::size_t i = 0; i < n; ++i) {
                ASSERT_EQ(t.access(i), s[i]);
            }
            EXPECT_EQ(PackedText::from_words(n, sigma, t.words()), t);
        }
    }
}

TEST(PackedText, FromLettersMapsByAlphabetIndex)
{
    const auto t = PackedText::from_letters("abacab", "abc");
    EXPECT_EQ(t.sigma(), 3u);
    EXPECT_EQ(t.unpack(), (std::vector<Symbol>{0, 1, 0, 2, 0, 1}));
    EXPECT_THROW(PackedText::from_letters("abd", "abc"), std::invalid_argument);
}

TEST(PackedText, RejectsBadInput)
{
    const std::vector<Symbol> s{0, 1, 2};
    EXPECT_THROW(PackedText::pack(s, 2), std::invalid_argument);
    EXPECT_THROW(PackedText::pack(s, 0), std::invalid_argument);
    const auto t = PackedText::pack(s, 3);
    EXPECT_THROW(t.access(3), std::out_of_range);
    auto w = t.words();
    w.push_back(0);
    EXPECT_THROW(PackedText::from_words(3, 3, w), std::invalid_argument);
    // symbol value 3 is outside a ternary alphabet
    EXPECT_THROW(PackedText::from_words(1, 3, {3}), std::invalid_argument);
}

TEST(PackedText, ChunkReadsStraddlingWords)
{
    std::mt19937_64 rng(2);
    const auto s = uniform_text(rng, 500, 5);  // 3 bits, 64 % 3 != 0
    const auto t = PackedText::pack(s, 5);
    for (std::size_t i = 0; i + 21 <= s.size(); ++i) {
        const std::uint64_t bits = t.chunk(i, 21);
        for (std::size_t k = 0; k < 21; ++k) {
            ASSERT_EQ((bits >> (3 * k)) & 7u, s[i + k]);
        }
    }
}

TEST(PackedText, SliceAndExtract)
{
    std::mt19937_64 rng(3);
    const auto s = uniform_text(rng, 300, 4);
    const auto t = PackedText::pack(s, 4);
    for (int it = 0; it < 200; ++it) {
        const std::size_t b = rng() % 301;
        const std::size_t e = b + rng() % (301 - b);
        const auto sl = t.slice(b, e);
        ASSERT_EQ(sl.unpack(), std::vector<Symbol>(s.begin() + b, s.begin() + e));
        if (e > b) {
            ASSERT_EQ(extract_packed(t, b, e - 1), sl);
        }
    }
    EXPECT_EQ(extract_packed(t, 0, SIZE_MAX).size(), 0u);
    EXPECT_THROW(extract_packed(t, 5, 300), std::out_of_range);
}

TEST(PackedText, FactorCodeUsesSentinelPastEnd)
{
    const auto t = PackedText::pack(std::vector<Symbol>{1, 0, 1}, 2);
    // base 3, digits 1 0 1 -> 10; past the end read 2
    EXPECT_EQ(factor_code(t, 0, 3), 10u);
    EXPECT_EQ(factor_code(t, 2, 2), 1u * 3 + 2);
    EXPECT_EQ(factor_code(t, 3, 1), 2u);
    EXPECT_THROW(factor_code(t, 4, 1), std::out_of_range);
}

TEST(PackedText, LcpAndLcsMatchSymbolComparison)
{
    std::mt19937_64 rng(4);
    for (std::uint64_t sigma : {2ull, 3ull, 26ull}) {
        auto s = uniform_text(rng, 400, sigma);
        // long repeats so that word-parallel paths are exercised
        for (std::size_t i = 0; i < 150; ++i) {
            s[200 + i] = s[10 + i];
        }
        const auto t = PackedText::pack(s, sigma);
        for (int it = 0; it < 2000; ++it) {
            const std::size_t x = rng() % 400;
            const std::size_t y = rng() % 400;
            const std::size_t max = std::min(400 - x, 400 - y);
            std::size_t k = 0;
            while (k < max && s[x + k] == s[y + k]) {
                ++k;
            }
            ASSERT_EQ(packed_lcp(t, x, t, y, max), k);
            const std::size_t xe = x + 1;
            const std::size_t ye = y + 1;
            const std::size_t maxr = std::min(xe, ye);
            std::size_t r = 0;
            while (r < maxr && s[xe - 1 - r] == s[ye - 1 - r]) {
                ++r;
            }
            ASSERT_EQ(packed_lcs(t, xe, t, ye, maxr), r);
        }
    }
}

TEST(PackedText, LcpAcrossDifferentWidths)
{
    const auto a = PackedText::pack(std::vector<Symbol>{0, 1, 1, 0}, 2);
    const auto b = PackedText::pack(std::vector<Symbol>{0, 1, 2, 0}, 3);
    EXPECT_EQ(packed_lcp(a, 0, b, 0, 4), 2u);
    EXPECT_EQ(packed_lcs(a, 4, b, 4, 4), 1u);
}

TEST(PackedText, WordOpsAreCounted)
{
    std::mt19937_64 rng(5);
    const auto s = uniform_text(rng, 64 * 100, 2);
    const auto t = PackedText::pack(s, 2);
    WordOps ops;
    EXPECT_EQ(packed_lcp(t, 0, t, 0, s.size(), &ops), s.size());
    // one word from each side per 64 symbols
    EXPECT_LE(ops.count, 2u * 101u + 2u);
    EXPECT_GT(ops.count, 0u);
}
