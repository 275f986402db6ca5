#include <gtest/gtest.h>

#include "espdesign/designs.hpp"
#include "espdesign/esp_blocks.hpp"
#include "oracles.hpp"

using namespace espd;

namespace {

BlockSet make(int v, int k, const std::vector<std::vector<Point>>& blocks) {
    BlockSet bs(v, k);
    for (const auto& b : blocks) bs.append(b);
    bs.normalize();
    return bs;
}

const std::vector<std::vector<Point>> kFano = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};

std::vector<std::vector<Point>> as_vectors(const BlockSet& bs) {
    std::vector<std::vector<Point>> out;
    for (std::size_t i = 0; i < bs.size(); ++i) out.emplace_back(bs[i].begin(), bs[i].end());
    return out;
}

}  // namespace

TEST(Designs, FanoPlane) {
    const BlockSet fano = make(7, 3, kFano);
    const auto r = verify_t_design(fano, 2);
    ASSERT_TRUE(r.is_design());
    EXPECT_EQ(*r.lambda, 1u);
    EXPECT_FALSE(r.complete);
    EXPECT_EQ(*verify_t_design(fano, 1).lambda, 3u);
    EXPECT_FALSE(verify_t_design(fano, 3).is_design());
}

TEST(Designs, WitnessForNonDesign) {
    auto blocks = kFano;
    blocks.pop_back();
    const auto r = verify_t_design(make(7, 3, blocks), 2);
    ASSERT_FALSE(r.is_design());
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NE(r.witness->first_count, r.witness->second_count);
    EXPECT_EQ(r.witness->first, (std::vector<Point>{0, 1}));
}

TEST(Designs, CompleteDesign) {
    BlockSet all(9, 4);
    for_each_subset(9, 4, [&](std::span<const Point> s) { all.append(s); });
    const auto r = verify_t_design(all, 3);
    EXPECT_EQ(*r.lambda, 6u);  // C(6,1)
    EXPECT_TRUE(r.complete);
}

TEST(Designs, EmptySetHasIndexZero) {
    const auto r = verify_t_design(BlockSet(10, 4), 2);
    EXPECT_TRUE(r.empty);
    EXPECT_EQ(*r.lambda, 0u);
}

TEST(Designs, RejectsBadStrength) {
    const BlockSet fano = make(7, 3, kFano);
    EXPECT_THROW(verify_t_design(fano, 0), std::invalid_argument);
    EXPECT_THROW(verify_t_design(fano, 4), std::invalid_argument);
}

TEST(Designs, LargeBlocksAgreeWithDirectCount) {
    // complements of the Steiner blocks (k = 12 > v/2) go through inclusion-exclusion
    const BlockSet s = supplementary(blockset_plain(oracle::circle(4), 5, 2));
    const auto r = verify_t_design(s, 3);
    const auto direct = oracle::coverage_values(17, 3, as_vectors(s));
    ASSERT_EQ(direct.size(), 1u);
    ASSERT_TRUE(r.is_design());
    EXPECT_EQ(*r.lambda, *direct.begin());
    EXPECT_EQ(BigInt(*r.lambda), numerator(supplementary_lambda(17, 5, 3, 1)));
    // and a non-design keeps its witness through the same path
    BlockSet broken(s.v(), s.k());
    for (std::size_t i = 1; i < s.size(); ++i) broken.append(s[i]);
    EXPECT_FALSE(verify_t_design(broken, 3).is_design());
}

TEST(Designs, IndexFormulas) {
    EXPECT_EQ(lambda_s(17, 5, 3, 1, 2), Rational(5));
    EXPECT_EQ(lambda_s(33, 6, 4, 12, 3), Rational(120));
    EXPECT_EQ(lambda_s(17, 5, 3, 1, 1), Rational(20));
    EXPECT_EQ(supplementary_lambda(33, 5, 4, 5), Rational(20475));
    EXPECT_EQ(complementary_lambda(33, 7, 4, 756), BigInt(2898));
    EXPECT_THROW(lambda_s(17, 5, 3, 1, 4), std::invalid_argument);
}

TEST(Designs, LowerStrengthsFollowFromLambda) {
    const BlockSet steiner = blockset_plain(oracle::circle(4), 5, 2);
    for (int s = 1; s <= 2; ++s) {
        const auto r = verify_t_design(steiner, s);
        ASSERT_TRUE(r.is_design());
        EXPECT_EQ(Rational(*r.lambda), lambda_s(17, 5, 3, 1, s));
    }
}

TEST(Designs, Involutions) {
    const BlockSet steiner = blockset_plain(oracle::circle(4), 5, 2);
    EXPECT_EQ(supplementary(supplementary(steiner)), steiner);
    const BlockSet comp = complementary(steiner);
    EXPECT_EQ(comp.size(), binom(17, 5) - steiner.size());
    EXPECT_EQ(complementary(comp), steiner);
    EXPECT_EQ(*verify_t_design(comp, 3).lambda, 1u * static_cast<unsigned>(binom(14, 2)) - 1u);
    BlockSet unsorted(5, 2);
    unsorted.append(std::vector<Point>{2, 3});
    unsorted.append(std::vector<Point>{0, 1});
    EXPECT_THROW(complementary(unsorted), std::invalid_argument);
}

TEST(Designs, MaxIntersection) {
    EXPECT_EQ(max_pairwise_intersection(make(7, 3, kFano)), 1);
    EXPECT_EQ(max_pairwise_intersection(make(6, 3, {{0, 1, 2}, {0, 1, 3}, {3, 4, 5}})), 2);  // k-1 reached
    EXPECT_EQ(max_pairwise_intersection(make(100, 2, {{0, 70}, {1, 70}, {5, 6}})), 1);     // points past 64
    EXPECT_THROW(max_pairwise_intersection(make(7, 3, {{0, 1, 2}})), std::invalid_argument);
}

TEST(Designs, VerdictJson) {
    const auto j = verdict_to_json(verify_t_design(make(7, 3, kFano), 2));
    EXPECT_EQ(j["lambda"], 1);
    EXPECT_EQ(j["num_blocks"], 7);
    auto blocks = kFano;
    blocks.pop_back();
    const auto w = verdict_to_json(verify_t_design(make(7, 3, blocks), 2));
    EXPECT_TRUE(w.contains("witness"));
    EXPECT_FALSE(w.contains("lambda"));
}
