#include <gtest/gtest.h>

#include "hypsurf/verify.hpp"

using namespace hypsurf;

TEST(Suites, Registry) {
    const auto& ids = suite_ids();
    EXPECT_EQ(ids.size(), 6u);
    try {
        run_suite("no_such_suite", {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownSuite);
    }
}

TEST(Suites, SameSeedSameBytes) {
    SuiteConfig cfg;
    cfg.seed = 99;
    cfg.trials = 40;
    const auto a = to_json(run_suite("collar_cross", cfg)).dump();
    const auto b = to_json(run_suite("collar_cross", cfg)).dump();
    EXPECT_EQ(a, b);
    cfg.seed = 100;
    EXPECT_NE(to_json(run_suite("collar_cross", cfg)).dump(), a);
}

TEST(Suites, ReportShape) {
    SuiteConfig cfg;
    cfg.trials = 30;
    const auto rep = run_suite("pants_bound", cfg);
    EXPECT_EQ(rep.suite_id, "pants_bound");
    EXPECT_EQ(rep.trials, 30u);
    EXPECT_TRUE(rep.passed());
    EXPECT_LE(rep.witnesses.size(), 10u);
    EXPECT_GT(rep.worst_margin, 0.0);
    const auto j = to_json(rep);
    for (const char* key : {"suite_id", "seed", "trials", "failures", "skipped", "worst_margin", "witnesses"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
}

TEST(Suites, ThinPointsOnShortCollar) {
    SuiteConfig cfg;
    cfg.trials = 25;
    cfg.seed = 3;
    const auto rep = run_suite("inj_short", cfg);
    EXPECT_EQ(rep.failures, 0u);
    EXPECT_EQ(rep.trials, 25u);
}

TEST(Surfaces, BuildAndLabel) {
    EXPECT_EQ(surface_label({"bolza", {}}), "bolza");
    EXPECT_NE(surface_label({"doubled_pants", {0.5, 6, 6}}).find("doubled_pants"), std::string::npos);
    EXPECT_THROW(build_surface({"torus", {}}), Error);
    EXPECT_THROW(build_surface({"doubled_pants", {1.0}}), Error);
}
