#include <gtest/gtest.h>

#include <sstream>

#include "espdesign/report.hpp"

using namespace espd;

TEST(CheckLog, PassFailAndExceptions) {
    std::ostringstream progress;
    CheckLog log(&progress);
    EXPECT_TRUE(log.run("a", "same", [] { return CheckLog::Outcome{"x", "x"}; }).pass);
    EXPECT_FALSE(log.run("b", "differ", [] { return CheckLog::Outcome{"x", "y"}; }).pass);
    const auto& e = log.run("c", "throws", []() -> CheckLog::Outcome { throw std::runtime_error("boom"); });
    EXPECT_FALSE(e.pass);
    EXPECT_EQ(e.observed, "error: boom");
    EXPECT_EQ(log.failures(), 2u);
    EXPECT_NE(progress.str().find("PASS a"), std::string::npos);
    EXPECT_NE(progress.str().find("FAIL b"), std::string::npos);
}

TEST(CheckLog, JsonOmitsTimingsByDefault) {
    CheckLog log;
    log.run("a", "t", [] { return CheckLog::Outcome{"1", "1"}; });
    log.run("b", "t", [] { return CheckLog::Outcome{"1", "2"}; });
    const auto j = results_to_json(log.results());
    EXPECT_EQ(j["passed"], 1);
    EXPECT_EQ(j["failed"], 1);
    EXPECT_EQ(j["checks"][1]["status"], "fail");
    EXPECT_FALSE(j["checks"][0].contains("runtime_ms"));
    EXPECT_TRUE(results_to_json(log.results(), true)["checks"][0].contains("runtime_ms"));
}

TEST(Formula, ClosedFormsAtSmallQ) {
    EXPECT_EQ(formula::block_count(17, 5, 3, 1), 68);
    EXPECT_EQ(formula::block_count(33, 5, 4, 5), 40920);
    EXPECT_EQ(formula::even_bbar53(16), 61);
    EXPECT_EQ(formula::even_u73(16), 231);
    EXPECT_EQ(formula::even_b7(16), 770);
    EXPECT_EQ(formula::odd_plain63(32), 12);
    EXPECT_EQ(formula::odd_u73(32), 756);
    EXPECT_EQ(formula::odd_b7(32), 2898);
    EXPECT_THROW(formula::even_plain63(32), std::domain_error);
}

TEST(Labels, Formatting) {
    EXPECT_EQ(design_label(3, 17, 5, 1), "3-(17,5,1)");
    const std::vector<Point> s = {1, 4, 9};
    EXPECT_EQ(points_label(s), "{1,4,9}");
    SetComparison c;
    c.equal = true;
    EXPECT_EQ(comparison_label(c), "equal");
}

TEST(Suite, Q16PassesAndIsDeterministic) {
    SuiteOptions opt;
    opt.qs = {16};
    const auto a = run_suite(opt);
    for (const auto& r : a) EXPECT_TRUE(r.pass) << r.check_id << ": expected " << r.expected << ", observed " << r.observed;
    const auto b = run_suite(opt);
    EXPECT_EQ(results_to_json(a).dump(), results_to_json(b).dump());
    EXPECT_THROW(run_suite(SuiteOptions{{128}}), std::invalid_argument);
    EXPECT_THROW(run_suite(SuiteOptions{{20}}), std::invalid_argument);
}
