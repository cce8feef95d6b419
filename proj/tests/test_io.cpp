#include <gtest/gtest.h>

#include <sstream>

#include "quasicover/io.hpp"

using namespace quasicover;

TEST(Io, BytesMapInFirstOccurrenceOrder)
{
    const auto p = parse_bytes("banana");
    EXPECT_EQ(p.sigma, 3u);
    EXPECT_EQ(p.symbols, (std::vector<Symbol>{0, 1, 2, 1, 2, 1}));
    EXPECT_EQ(parse_bytes("banana", 5).sigma, 5u);
    EXPECT_THROW(parse_bytes("banana", 2), std::invalid_argument);
    EXPECT_EQ(parse_bytes("").sigma, 1u);
}

TEST(Io, IntegerLists)
{
    const auto p = parse_ints("3 0 1\n2  0");
    EXPECT_EQ(p.symbols, (std::vector<Symbol>{3, 0, 1, 2, 0}));
    EXPECT_EQ(p.sigma, 4u);
    EXPECT_EQ(parse_ints("1 1", 10).sigma, 10u);
    EXPECT_THROW(parse_ints("1 x"), std::invalid_argument);
    EXPECT_THROW(parse_ints("-1"), std::invalid_argument);
    EXPECT_THROW(parse_ints("5", 5), std::invalid_argument);
}

TEST(Io, ProgressionLines)
{
    const std::vector<Progression> ps{Progression::singleton(3), Progression::make(8, 5, 3),
                                      Progression::singleton(21)};
    const auto text = format_progressions(ps);
    EXPECT_EQ(text, "3 0 1\n8 5 3\n21 0 1\n");
    std::istringstream in(text);
    EXPECT_EQ(parse_progressions(in), ps);
    std::istringstream bad("1 2\n");
    EXPECT_THROW(parse_progressions(bad), std::invalid_argument);
    std::istringstream extra("1 2 3 4\n");
    EXPECT_THROW(parse_progressions(extra), std::invalid_argument);
}

TEST(Io, ProgressionJson)
{
    const std::vector<Progression> ps{Progression::singleton(3), Progression::make(8, 5, 3)};
    const nlohmann::json j = ps;
    EXPECT_EQ(j.dump(), R"([{"count":1,"diff":0,"start":3},{"count":3,"diff":5,"start":8}])");
    EXPECT_EQ(j.get<std::vector<Progression>>(), ps);
}

TEST(Io, TranscriptEntries)
{
    const std::vector<std::pair<Query, Answer>> tr{
        {make_length(0), Answer{42, {}, std::nullopt}},
        {make_access({0, 2, 9}, 3), Answer{1, {}, std::nullopt}},
        {make_extract({0, 2, 9}, 1, 4), Answer{0, {1, 0, 1}, std::nullopt}},
        {make_lcp({0, 0, 5}, {0, 3, 9}), Answer{2, {}, std::nullopt}},
        {make_lcp_r({0, 0, 5}, {0, 3, 9}), Answer{0, {}, std::nullopt}},
        {make_ipm({0, 0, 3}, {0, 4, 9}), Answer{0, {}, Progression::make(0, 2, 2)}},
        {make_ipm({0, 0, 3}, {0, 4, 9}), Answer{}},
    };
    std::stringstream io;
    write_transcript(io, tr);
    EXPECT_EQ(read_transcript(io), tr);
    EXPECT_THROW(primitive_from_name("Nope"), std::invalid_argument);
}
