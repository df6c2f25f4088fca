#include <gtest/gtest.h>

#include <cmath>

#include "hypsurf/collar.hpp"
#include "hypsurf/errors.hpp"

using namespace hypsurf;

namespace {
const double kAsinh1 = std::asinh(1.0);

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Io;
}
}  // namespace

TEST(Collar, HalfWidthOracle) {
    EXPECT_NEAR(half_width(2.0 * kAsinh1), kAsinh1, 1e-15);
    EXPECT_NEAR(half_width(0.5), std::asinh(1.0 / std::sinh(0.25)), 1e-15);
    const auto c = collar(1.0);
    EXPECT_EQ(c.core_length, 1.0);
    EXPECT_EQ(c.half_width, half_width(1.0));
    EXPECT_EQ(kind_of([] { half_width(0.0); }), ErrorKind::InvalidArgument);
}

TEST(Collar, BoundaryLengthBoundInRegime) {
    for (double L = 0.01; L <= 2.0 * kAsinh1; L += 0.01) {
        const double b = collar_boundary_length(L);
        EXPECT_NEAR(b, equidistant_length(L, half_width(L)), 1e-12);
        EXPECT_LE(b, 2.0 * std::sqrt(2.0) + 1e-12);
    }
    // the limit value at the regime edge
    EXPECT_NEAR(collar_boundary_length(2.0 * kAsinh1), 2.0 * std::sqrt(2.0) * kAsinh1, 1e-12);
}

TEST(Collar, EquidistantOutsideCollar) {
    EXPECT_EQ(kind_of([] { equidistant_length(1.0, half_width(1.0) * 1.01); }), ErrorKind::OutsideCollar);
    EXPECT_NEAR(equidistant_length(1.0, -0.3), std::cosh(0.3), 1e-15);
}

TEST(Collar, RegimeFlag) {
    EXPECT_TRUE(in_short_regime(2.0 * kAsinh1));
    EXPECT_FALSE(in_short_regime(2.0 * kAsinh1 + 1e-9));
}

TEST(Collar, CoreAndBoundaryFormsAgree) {
    for (double L : {0.1, 0.5, 1.2, 2.0 * kAsinh1}) {
        const double w = half_width(L);
        EXPECT_NEAR(inj_from_core_distance(L, 0.0), 0.5 * L, 1e-15);
        for (double d = 0.0; d <= w; d += w / 16) {
            EXPECT_NEAR(inj_from_boundary_distance(L, d), inj_from_core_distance(L, w - d), 1e-12);
        }
        // at the collar boundary the radius is asinh(cosh(L/2))
        EXPECT_NEAR(inj_from_boundary_distance(L, 0.0), std::asinh(std::cosh(0.5 * L)), 1e-13);
    }
}

TEST(Collar, RegimeChecks) {
    EXPECT_EQ(kind_of([] { inj_from_boundary_distance(2.0, 0.1); }), ErrorKind::OutOfRegime);
    EXPECT_EQ(kind_of([] { inj_from_boundary_distance(0.5, -0.1); }), ErrorKind::OutOfRegime);
    const auto flagged = inj_from_boundary_distance_flagged(2.0, 0.1);
    EXPECT_FALSE(flagged.in_regime);
    EXPECT_NEAR(flagged.value, std::asinh(std::cosh(1.0) * std::cosh(0.1) - std::sinh(0.1)), 1e-14);
    EXPECT_TRUE(inj_from_core_distance_flagged(0.5, 0.1).in_regime);
}

TEST(Collar, CoreDistanceInverse) {
    EXPECT_THROW(inj_from_core_distance(0.8, 1.7), Error);
    for (double s : {0.0, 0.3, 1.6}) {
        const double inj = inj_from_core_distance(0.8, s);
        EXPECT_NEAR(core_distance_for_inj(0.8, inj), s, 1e-10);
    }
}

TEST(Collar, InjMonotoneInCoreDistance) {
    double prev = 0.0;
    for (double s = 0.0; s < 3.0; s += 0.05) {
        const double v = inj_from_core_distance_flagged(0.3, s).value;
        EXPECT_GT(v, prev);
        prev = v;
    }
}
