#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "quasicover/constants.hpp"
#include "quasicover/cover_array_ds.hpp"
#include "quasicover/fibonacci.hpp"
#include "quasicover/oracles.hpp"
#include "test_support.hpp"

using namespace quasicover;
using quasicover::testing::letters;
using quasicover::testing::mixed_text;
using quasicover::testing::uniform_text;

namespace {

std::vector<Symbol> two_b_family(std::size_t m)
{
    std::vector<Symbol> s(2 * m, 0);
    s.push_back(1);
    s.insert(s.end(), 3 * m, 0);
    s.push_back(1);
    s.insert(s.end(), 2 * m, 0);
    return s;
}

}  // namespace

TEST(CoverArrayIndex, FibonacciPrefix21)
{
    const auto idx = build_cover_index(PackedText::pack(letters("abaababaabaababaababa"), 2));
    const std::vector<std::size_t> expected{1, 2, 3, 4, 5, 3, 7, 3, 9, 5, 3, 12, 5, 3, 15, 3, 9, 5, 3, 20, 3};
    for (std::size_t l = 1; l <= 21; ++l) {
        EXPECT_EQ(query_cov(idx, l), expected[l - 1]) << l;
    }
    EXPECT_EQ(query_cov(idx, 10), 5u);
    EXPECT_THROW(query_cov(idx, 0), std::out_of_range);
    EXPECT_THROW(query_cov(idx, 22), std::out_of_range);
}

TEST(CoverArrayIndex, SquareHalvesAndAperiodicPrefixes)
{
    const auto fib = letters("abaababaabaababaababa");
    EXPECT_EQ(square_prefix_halves(fib), (std::vector<std::size_t>{3, 5, 8}));
    const auto per = smallest_period_array(fib);
    EXPECT_EQ(aperiodic_prefix_for(per, 3), 3u);  // "aba": period 2, 2*2 > 3
    EXPECT_EQ(aperiodic_prefix_for(per, 5), 5u);
    // aaaa... never becomes aperiodic past length 1
    const std::vector<Symbol> unary(10, 0);
    EXPECT_EQ(square_prefix_halves(unary), (std::vector<std::size_t>{1}));
    EXPECT_EQ(aperiodic_prefix_for(smallest_period_array(unary), 1), 1u);
    EXPECT_THROW(aperiodic_prefix_for(smallest_period_array(unary), 2), std::logic_error);
}

TEST(CoverArrayIndex, TwoBFamilyTail)
{
    for (std::size_t m : {1u, 2u, 10u, 100u, 1000u}) {
        const auto s = two_b_family(m);
        const auto idx = build_cover_index(PackedText::pack(s, 2));
        const std::size_t n = s.size();
        for (std::size_t i = 0; i <= m; ++i) {
            ASSERT_EQ(query_cov(idx, n - m + i), 3 * m + 1 + i) << "m " << m << " i " << i;
        }
    }
}

TEST(CoverArrayIndex, RandomTextsMatchBreslauer)
{
    std::mt19937_64 rng(51);
    for (int it = 0; it < 2000; ++it) {
        const std::uint64_t sigma = 1 + rng() % 4;
        const auto s = mixed_text(rng, 1 + rng() % 400, sigma);
        const auto idx = build_cover_index(PackedText::pack(s, sigma));
        const auto cov = cover_array_breslauer(s);
        CovQueryStats st;
        for (std::size_t l = 1; l <= s.size(); ++l) {
            ASSERT_EQ(idx.query(l, &st), cov[l]) << "l " << l;
            ASSERT_EQ(idx.superprimitive(l), cov[l] == l);
        }
        ASSERT_LE(st.max_occurrences, 2u);
        ASSERT_EQ(st.queries, s.size());
    }
}

TEST(CoverArrayIndex, OneIpmQueryPerNonSuperprimitivePrefix)
{
    const auto s = letters("abaababaabaababaababaabaababaabaab");
    const auto idx = build_cover_index(PackedText::pack(s, 2));
    for (std::size_t l = 1; l <= s.size(); ++l) {
        CovQueryStats st;
        idx.query(l, &st);
        EXPECT_EQ(st.ipm_queries, idx.superprimitive(l) ? 0u : 1u);
        EXPECT_EQ(st.units.ipm_calls, st.ipm_queries);
    }
}

TEST(CoverArrayIndex, SaveLoadRoundTripIsBitIdentical)
{
    std::mt19937_64 rng(52);
    for (int it = 0; it < 50; ++it) {
        const std::uint64_t sigma = 1 + rng() % 20;
        const auto s = mixed_text(rng, 1 + rng() % 2000, sigma);
        const auto idx = build_cover_index(PackedText::pack(s, sigma));
        std::stringstream a;
        idx.save(a);
        const auto back = CoverArrayIndex::load(a);
        std::stringstream b;
        back.save(b);
        ASSERT_EQ(a.str(), b.str());
        for (std::size_t l = 1; l <= s.size(); l += 7) {
            ASSERT_EQ(back.query(l), idx.query(l));
        }
    }
}

TEST(CoverArrayIndex, LoadRejectsCorruptBlobs)
{
    const auto idx = build_cover_index(PackedText::pack(letters("abaababaab"), 2));
    std::stringstream a;
    idx.save(a);
    const std::string blob = a.str();
    {
        std::stringstream bad(std::string("XCAI") + blob.substr(4));
        EXPECT_THROW(CoverArrayIndex::load(bad), std::runtime_error);
    }
    {
        std::stringstream bad(blob.substr(0, blob.size() - 3));
        EXPECT_THROW(CoverArrayIndex::load(bad), std::runtime_error);
    }
    {
        std::string v = blob;
        v[4] = 9;  // version
        std::stringstream bad(v);
        EXPECT_THROW(CoverArrayIndex::load(bad), std::runtime_error);
    }
}

TEST(CoverArrayIndex, SquareCountGrowsLogarithmically)
{
    for (std::size_t m = 5; m <= 24; ++m) {
        const auto s = fib_symbols(m);
        const auto idx = build_cover_index(PackedText::pack(s, 2));
        const double bound = 1.45 * std::log2(static_cast<double>(s.size())) + 3;
        EXPECT_LE(static_cast<double>(idx.square_count()), bound) << "m " << m;
    }
}

TEST(CoverArrayIndex, SpaceStaysUnderFrozenBound)
{
    std::mt19937_64 rng(53);
    for (std::uint64_t sigma : {2ull, 16ull}) {
        const std::size_t n = std::size_t{1} << 16;
        const auto s = uniform_text(rng, n, sigma);
        const auto idx = build_cover_index(PackedText::pack(s, sigma));
        EXPECT_LE(static_cast<double>(idx.structure_bits()), SpaceBound::bits(n, sigma));
    }
    const auto fib = fib_symbols(23);
    const auto idx = build_cover_index(PackedText::pack(fib, 2));
    EXPECT_LE(static_cast<double>(idx.structure_bits()), SpaceBound::bits(fib.size(), 2));
}

TEST(CoverArrayIndex, RejectsEmptyText)
{
    EXPECT_THROW(build_cover_index(PackedText::pack(std::vector<Symbol>{}, 2)), std::invalid_argument);
}
