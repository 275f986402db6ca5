#include <gtest/gtest.h>

#include "property_checks.hpp"

using oracle::circle;

class Properties : public ::testing::TestWithParam<int> {};

TEST_P(Properties, ConjugationIdentity) {
    const auto v = props::conjugation_identity(circle(GetParam()), 10000, 100 + static_cast<std::uint64_t>(GetParam()));
    EXPECT_TRUE(v.ok) << v.detail;
}

TEST_P(Properties, ShiftPathsAgree) {
    const auto v = props::shift_paths_agree(circle(GetParam()), 10000, 200 + static_cast<std::uint64_t>(GetParam()));
    EXPECT_TRUE(v.ok) << v.detail;
    EXPECT_EQ(v.cases, 10000u);
}

TEST_P(Properties, IntersectionBounds) {
    const auto v = props::intersection_bounds(circle(GetParam()));
    EXPECT_TRUE(v.ok) << v.detail;
}

TEST_P(Properties, UVariantCollapse) {
    const auto v = props::u_collapse(circle(GetParam()));
    EXPECT_TRUE(v.ok) << v.detail;
}

INSTANTIATE_TEST_SUITE_P(EvenAndOdd, Properties, ::testing::Values(4, 5), [](const auto& info) { return "m" + std::to_string(info.param); });
