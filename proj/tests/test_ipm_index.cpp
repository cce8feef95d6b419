#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "quasicover/cover_array_ds.hpp"
#include "quasicover/ipm_index.hpp"
#include "quasicover/oracles.hpp"
#include "test_support.hpp"

using namespace quasicover;
using quasicover::testing::letters;
using quasicover::testing::mixed_text;

namespace {

std::vector<std::size_t> flatten_occ(const std::vector<Progression>& ps) { return flatten(ps); }

std::vector<std::size_t> borders_of(const std::vector<Symbol>& s)
{
    const auto b = border_array(s);
    std::vector<std::size_t> out;
    for (std::size_t l = b[s.size()]; l > 0; l = b[l]) {
        out.push_back(l);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(IpmIndex, QueryMatchesNaiveMatcher)
{
    std::mt19937_64 rng(31);
    for (int it = 0; it < 300; ++it) {
        const std::uint64_t sigma = 1 + rng() % 3;
        const auto s = mixed_text(rng, 1 + rng() % 150, sigma);
        const TextIndex idx(PackedText::pack(s, sigma));
        const std::size_t n = s.size();
        for (int k = 0; k < 30; ++k) {
            const std::size_t xs = k % 2 == 0 ? 0 : rng() % n;
            const std::size_t xe = xs + 1 + rng() % (n - xs);
            const std::size_t ys = rng() % n;
            const std::size_t ye = ys + rng() % (n - ys + 1);
            const std::vector<Symbol> pat(s.begin() + static_cast<std::ptrdiff_t>(xs),
                                          s.begin() + static_cast<std::ptrdiff_t>(xe));
            const std::vector<Symbol> hay(s.begin() + static_cast<std::ptrdiff_t>(ys),
                                          s.begin() + static_cast<std::ptrdiff_t>(ye));
            QueryUnits u;
            const auto got = idx.ipm_query({0, xs, xe}, {0, ys, ye}, &u);
            ASSERT_EQ(flatten_occ(got), naive_occurrences(pat, hay));
            const std::size_t m = xe - xs;
            const std::size_t windows = ye - ys >= m ? (ye - ys - m) / m + 1 : 0;
            ASSERT_EQ(u.count, windows);
            ASSERT_EQ(u.ipm_calls, 1u);
        }
    }
}

TEST(IpmIndex, CoreEnforcesContractAndMerges)
{
    const auto s = letters("abababababab");
    const TextIndex idx(PackedText::pack(s, 2));
    EXPECT_THROW(idx.ipm_core({0, 0, 2}, {0, 0, 5}), contract_violation);
    const auto occ = idx.ipm_core({0, 0, 4}, {0, 0, 8});
    ASSERT_TRUE(occ.has_value());
    EXPECT_EQ(*occ, Progression::make(0, 2, 3));
    EXPECT_FALSE(idx.ipm_core({0, 0, 3}, {0, 1, 4}).has_value());
    EXPECT_THROW(idx.ipm_query({0, 0, 0}, {0, 0, 3}), std::invalid_argument);
    EXPECT_THROW(idx.ipm_query({0, 0, 13}, {0, 0, 3}), std::out_of_range);
}

TEST(IpmIndex, BorderGroupsMatchBorderChain)
{
    std::mt19937_64 rng(32);
    for (int it = 0; it < 500; ++it) {
        const auto s = mixed_text(rng, 1 + rng() % 300, 1 + rng() % 3);
        const auto expected = borders_of(s);
        const auto g = border_groups(s);
        ASSERT_EQ(g.lengths(), expected);
        for (const auto& grp : g.groups) {
            ASSERT_GE(grp.lengths.start, grp.d);
            ASSERT_LT(grp.lengths.last(), 2 * grp.d);
            ASSERT_EQ(grp.d & (grp.d - 1), 0u);
            if (grp.lengths.count >= 3) {
                // diff is the smallest period of every member
                const auto per = smallest_period_array(s);
                for (std::size_t i = 0; i < grp.lengths.count; ++i) {
                    ASSERT_EQ(per[grp.lengths[i]], grp.lengths.diff);
                }
            }
        }
    }
}

TEST(IpmIndex, PeriodQueryCostsOneUnitPerLevel)
{
    const auto s = letters("abaababaabaababaababa");
    const TextIndex idx(PackedText::pack(s, 2));
    QueryUnits u;
    const auto& g = idx.border_groups(&u);
    EXPECT_EQ(u.count, 5u);  // bit_width(21)
    EXPECT_EQ(g.lengths(), (std::vector<std::size_t>{1, 3, 8}));
}

// Fine-Wilf: periods p, q of a string of length >= p + q - gcd(p, q) imply gcd(p, q) is a period.
TEST(Periodicity, FineWilfOnPrefixPeriods)
{
    std::mt19937_64 rng(33);
    for (int it = 0; it < 300; ++it) {
        const auto s = mixed_text(rng, 1 + rng() % 200, 2);
        for (std::size_t l = 2; l <= s.size(); ++l) {
            std::vector<std::size_t> periods;
            for (std::size_t p = 1; p <= l; ++p) {
                bool ok = true;
                for (std::size_t i = p; i < l && ok; ++i) {
                    ok = s[i] == s[i - p];
                }
                if (ok) {
                    periods.push_back(p);
                }
            }
            for (auto p : periods) {
                for (auto q : periods) {
                    const std::size_t g = std::gcd(p, q);
                    if (p + q - g <= l) {
                        ASSERT_TRUE(std::find(periods.begin(), periods.end(), g) != periods.end());
                    }
                }
            }
        }
    }
}

// Primitively rooted square prefixes with halves x < y < z satisfy z >= x + y.
TEST(Periodicity, ThreeSquaresGrowth)
{
    std::mt19937_64 rng(34);
    for (int it = 0; it < 2000; ++it) {
        const auto s = mixed_text(rng, 1 + rng() % 400, 1 + rng() % 3);
        const auto h = square_prefix_halves(s);
        for (std::size_t i = 0; i + 2 < h.size(); ++i) {
            ASSERT_GE(h[i + 2], h[i] + h[i + 1]);
        }
    }
}

// Equality is reached: Fibonacci prefixes have square halves 3, 5, 8, 13, ...
TEST(Periodicity, ThreeSquaresBoundIsTightOnFibonacci)
{
    const auto fib = letters("abaababaabaababaababaabaababaabaab");
    const auto h = square_prefix_halves(fib);
    EXPECT_EQ(h, (std::vector<std::size_t>{3, 5, 8, 13}));
    EXPECT_EQ(h[2], h[0] + h[1]);
}

TEST(Periodicity, TripleOccurrenceDiffIsSmallestPeriod)
{
    std::mt19937_64 rng(35);
    std::size_t triples = 0;
    for (int it = 0; it < 400; ++it) {
        const std::uint64_t sigma = 1 + rng() % 2;
        const auto s = mixed_text(rng, 2 + rng() % 200, sigma);
        const TextIndex idx(PackedText::pack(s, sigma));
        const auto per = smallest_period_array(s);
        const std::size_t n = s.size();
        for (int k = 0; k < 20; ++k) {
            const std::size_t m = 1 + rng() % (n / 2);
            const std::size_t ys = rng() % (n - m + 1);
            const std::size_t ye = std::min(n, ys + 2 * m);
            const auto occ = idx.ipm_core({0, 0, m}, {0, ys, ye});
            if (occ && occ->count >= 3) {
                ++triples;
                ASSERT_EQ(occ->diff, per[m]);
            }
        }
    }
    EXPECT_GT(triples, 0u);
}
