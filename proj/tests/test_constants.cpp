#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hypsurf/constants.hpp"
#include "hypsurf/errors.hpp"

using namespace hypsurf;

namespace {
constexpr double kPi = std::numbers::pi;
double as_double(const Real& r) { return r.convert_to<double>(); }
}  // namespace

TEST(Ledger, ValuesAgainstIndependentEvaluation) {
    const double s2 = std::sqrt(2.0);
    EXPECT_NEAR(as_double(ledger_entry("LIP_INJ").value), 1.0 / (4.0 * std::sqrt(s2 - 1.0)), 1e-15);
    EXPECT_NEAR(as_double(ledger_entry("LIP_INJ_THICK").value), std::sqrt(6.0) / (4.0 * std::sqrt(kPi)), 1e-15);
    EXPECT_NEAR(as_double(ledger_entry("DEEP_INJ").value),
                std::log(std::exp(-s2) + std::sqrt(std::exp(-2 * s2) + 1.0)), 1e-15);
    EXPECT_NEAR(as_double(ledger_entry("SHRINK").value), s2 - 1.0, 1e-15);
    EXPECT_NEAR(as_double(ledger_entry("INRADIUS_RATIO").value), std::sqrt(2 * kPi), 1e-15);
    EXPECT_NEAR(as_double(ledger_entry("MAX_INJ_G2").value), std::log(6.0), 1e-15);
}

TEST(Ledger, DisplaysConsistentAndClassified) {
    for (const auto& c : ledger()) {
        EXPECT_TRUE(c.display_consistent()) << c.id;
        EXPECT_FALSE(c.context.empty()) << c.id;
    }
    EXPECT_EQ(ledger_entry("LIP_INJ").display_match(), DisplayMatch::Rounded);
    EXPECT_EQ(ledger_entry("LIP_INJ_THICK").display_match(), DisplayMatch::Truncated);
    EXPECT_EQ(ledger_entry("LIP_SYS").display_match(), DisplayMatch::Neither);
    EXPECT_EQ(ledger_entry("DEEP_INJ").display_match(), DisplayMatch::Truncated);
    EXPECT_EQ(ledger_entry("SHRINK").display_match(), DisplayMatch::NoDisplay);
    EXPECT_EQ(ledger_entry("MT4").display_match(), DisplayMatch::Truncated);
}

TEST(Ledger, UnknownId) {
    try {
        ledger_entry("NOPE");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}

TEST(Ledger, DecimalRendering) {
    EXPECT_EQ(to_decimal(Real(1) / 3, 10), "0.3333333333");
    EXPECT_EQ(to_decimal(ledger_entry("INRADIUS_RATIO").value, 12).substr(0, 12), "2.5066282746");
}

TEST(Bounds, MaxInjAndPants) {
    EXPECT_NEAR(max_inj(2), std::log(6.0), 1e-15);
    EXPECT_NEAR(max_inj(5), std::log(18.0), 1e-15);
    EXPECT_NEAR(pants_inj(6.0), 3.0 + std::log(6.0), 1e-14);
    EXPECT_THROW(max_inj(1), Error);
    EXPECT_THROW(pants_inj(0.0), Error);
}

TEST(TeoC, LargeRadiusLimit) {
    EXPECT_NEAR(teo_C(50.0), std::sqrt(3.0 / (4.0 * kPi)), 1e-12);
}

TEST(TeoC, SmallRadiusBehaviour) {
    // 1 - sech^6(r/2) ~ 3 r^2 / 4, so C(r) sqrt(pi) r -> 1
    for (double r : {1e-3, 1e-5, 1e-7}) {
        EXPECT_NEAR(teo_C(r) * std::sqrt(kPi) * r, 1.0, 2.0 * r);
    }
}

TEST(TeoC, ExtendedPrecisionAgrees) {
    for (double r : {1e-6, 0.1, 1.0, 7.0}) {
        EXPECT_NEAR(teo_C(r) / as_double(teo_C_ext(Real(r))), 1.0, 1e-13) << r;
    }
}

TEST(TeoC, ExtendedPrecisionStaysMonotoneFurtherOut) {
    // in double precision C(r) reaches its limit near r = 12
    EXPECT_GT(teo_C_ext(Real(20)), teo_C_ext(Real(21)));
}

TEST(TeoC, MonotoneDecreasing) {
    double prev = INFINITY;
    for (int i = 1; i <= 1000; ++i) {
        const double r = 0.01 * i;
        const double c = teo_C(r);
        EXPECT_LT(c, prev) << r;
        prev = c;
    }
}

TEST(TeoC, DomainError) {
    try {
        teo_C(0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    }
}

TEST(Lipschitz, ArithmeticReport) {
    const auto rep = verify_lipschitz_arithmetic();
    EXPECT_TRUE(rep.lip_inj_matches);
    EXPECT_TRUE(rep.max_is_short_regime);
    EXPECT_TRUE(rep.deep_below_asinh1);
    EXPECT_NEAR(rep.lip_inj_rederived, 0.388443493507509, 1e-14);
    EXPECT_NEAR(rep.thick_closed_form, 0.345494149471335, 1e-14);
    // the small-r limit of the printed C(r) diverges, so the thick limit is
    // not reproduced from it
    EXPECT_FALSE(rep.thick_limit_reproduced);
}
