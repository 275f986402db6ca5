#include <gtest/gtest.h>

#include <sstream>

#include "espdesign/block_io.hpp"
#include "espdesign/esp_blocks.hpp"
#include "oracles.hpp"

using namespace espd;

namespace {

std::size_t error_line(const std::string& text) {
    try {
        static_cast<void>(parse_blockset(text));
    } catch (const ParseError& e) {
        return e.line();
    }
    ADD_FAILURE() << "no ParseError for:\n" << text;
    return 0;
}

}  // namespace

TEST(BlockIo, RoundTrip) {
    const BlockSet bs = blockset_plain(oracle::circle(4), 5, 2);
    std::ostringstream os;
    write_blockset(os, bs);
    const BlockSet back = parse_blockset(os.str());
    EXPECT_EQ(back, bs);
    EXPECT_EQ(back.family(), "plain:5,2");
    EXPECT_EQ(back.q(), 16);
    EXPECT_EQ(back.k(), 5);
    // the writer and the json serializer agree on content
    EXPECT_EQ(nlohmann::json::parse(os.str()), nlohmann::json::parse(blockset_to_json(bs).dump()));
}

TEST(BlockIo, EmptySetRoundTrip) {
    const BlockSet bs = blockset_plain(oracle::circle(5), 5, 2);
    ASSERT_TRUE(bs.empty());
    std::ostringstream os;
    write_blockset(os, bs);
    const BlockSet back = parse_blockset(os.str());
    EXPECT_TRUE(back.empty());
    EXPECT_EQ(back.k(), 5);
}

TEST(BlockIo, ReportsLineOfBadBlock) {
    const std::string text =
        "{\n"
        "  \"q\": 16,\n"
        "  \"k\": 3,\n"
        "  \"family\": \"x\",\n"
        "  \"num_blocks\": 3,\n"
        "  \"blocks\": [\n"
        "    [0,1,2],\n"
        "    [0,1,3],\n"
        "    [0,4,3]\n"
        "  ]\n"
        "}\n";
    EXPECT_EQ(error_line(text), 9u);
}

TEST(BlockIo, ReportsUnsortedOuterList) {
    const std::string text = "{\"q\": 16, \"k\": 2, \"blocks\": [\n[0,2],\n[0,1]\n]}";
    EXPECT_EQ(error_line(text), 3u);
}

TEST(BlockIo, ReportsOutOfRangeIndex) {
    const std::string text = "{\"q\": 16, \"k\": 2,\n\"blocks\": [[0,1],\n[3,17]]}";
    EXPECT_EQ(error_line(text), 3u);
}

TEST(BlockIo, ReportsSyntaxErrorLine) {
    const std::string text = "{\n\"q\": 16,\n\"k\": 2,\n\"blocks\": [[0,1],, ]\n}";
    EXPECT_EQ(error_line(text), 4u);
}

TEST(BlockIo, RejectsMissingFieldAndCountMismatch) {
    EXPECT_THROW(parse_blockset("{\"q\": 16, \"blocks\": []}"), ParseError);
    EXPECT_THROW(parse_blockset("{\"q\": 16, \"k\": 2, \"num_blocks\": 2, \"blocks\": [[0,1]]}"), ParseError);
    EXPECT_THROW(parse_blockset("{\"q\": 16, \"k\": 2, \"blocks\": [[0,1,2]]}"), ParseError);
    EXPECT_THROW(parse_blockset("{\"q\": 16, \"k\": 2, \"blocks\": [[1,1]]}"), ParseError);
    EXPECT_THROW(parse_blockset("[]"), ParseError);
}

TEST(BlockIo, MissingFileIsNotAParseError) {
    EXPECT_THROW(read_blockset_file("/nonexistent/blocks.json"), std::runtime_error);
}
