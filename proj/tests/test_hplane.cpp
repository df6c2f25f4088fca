#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hypsurf/hplane.hpp"

using namespace hypsurf;

namespace {
constexpr double kPi = std::numbers::pi;

double dist_oracle(double x1, double y1, double x2, double y2) {
    const double dx = x1 - x2, dy = y1 - y2;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * y1 * y2));
}
}  // namespace

TEST(HPoint, RejectsClosedLowerHalfPlane) {
    EXPECT_THROW(HPoint(0.0, 0.0), Error);
    EXPECT_THROW(HPoint(1.0, -2.0), Error);
    EXPECT_THROW(HPoint(NAN, 1.0), Error);
    try {
        HPoint(0.0, -1.0);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidPoint);
    }
}

TEST(HPoint, PolarRoundTrip) {
    const HPoint p = HPoint::from_polar(2.5, 1.1);
    EXPECT_NEAR(p.polar_r(), 2.5, 1e-14);
    EXPECT_NEAR(p.polar_theta(), 1.1, 1e-14);
}

TEST(Distance, MatchesClosedForm) {
    EXPECT_NEAR(dist(HPoint(0, 1), HPoint(0, 2)), std::log(2.0), 1e-15);
    const double pts[][4] = {{0, 1, 3, 0.5}, {-2, 0.01, 2, 0.02}, {1e3, 5, -1e3, 7}, {0.3, 1e-4, 0.30001, 1e-4}};
    for (const auto& q : pts) {
        const double expect = dist_oracle(q[0], q[1], q[2], q[3]);
        EXPECT_NEAR(dist(HPoint(q[0], q[1]), HPoint(q[2], q[3])), expect, 1e-12 * std::max(1.0, expect));
    }
    EXPECT_EQ(dist(HPoint(0.7, 0.2), HPoint(0.7, 0.2)), 0.0);
}

TEST(Distance, TinySeparationsKeepRelativeAccuracy) {
    const HPoint p(0.0, 1.0), q(1e-9, 1.0);
    EXPECT_NEAR(dist(p, q), 1e-9, 1e-20);
}

TEST(Distance, ToImaginaryAxis) {
    for (double theta : {0.2, 0.9, kPi / 2, 2.5}) {
        const HPoint z = HPoint::from_polar(3.0, theta);
        const double expect = std::log(1.0 / std::sin(theta) + std::abs(std::cos(theta) / std::sin(theta)));
        EXPECT_NEAR(dist_to_imaginary_axis(z), expect, 1e-13);
        EXPECT_NEAR(dist_point_geodesic(z, Geodesic::vertical(0.0)).distance, expect, 1e-12);
    }
}

TEST(Moebius, NormalizedAndSignCanonical) {
    const Moebius g(2.0, 2.0, 0.0, 2.0);  // det 4 -> rescaled
    EXPECT_NEAR(g.a() * g.d() - g.b() * g.c(), 1.0, 1e-15);
    const Moebius h(-1.0, -1.0, 0.0, -1.0);
    EXPECT_TRUE(h.approx_equal(Moebius(1.0, 1.0, 0.0, 1.0)));
    EXPECT_GT(h.a(), 0.0);
}

TEST(Moebius, CompositionAndInverse) {
    const Moebius g(2.0, 1.0, 3.0, 2.0, {1});
    const Moebius h(1.0, -4.0, 0.5, -1.0, {2});
    const HPoint z(0.3, 0.8);
    const HPoint lhs = (g * h).apply(z);
    const HPoint rhs = g.apply(h.apply(z));
    EXPECT_NEAR(lhs.x(), rhs.x(), 1e-13);
    EXPECT_NEAR(lhs.y(), rhs.y(), 1e-13);
    EXPECT_TRUE((g * g.inverse()).approx_equal(Moebius::identity()));
    EXPECT_EQ((g * h).word(), (Word{1, 2}));
    EXPECT_EQ((g * g.inverse()).word(), Word{});
}

TEST(Moebius, IsometryProperty) {
    const Moebius g(1.3, -0.4, 2.2, 0.6);
    const HPoint p(0.1, 0.5), q(-3.0, 2.0);
    EXPECT_NEAR(dist(g.apply(p), g.apply(q)), dist(p, q), 1e-12);
}

TEST(Words, FreeCancellation) {
    EXPECT_EQ(concat_words({1, 2, -3}, {3, -2, 4}), (Word{1, 4}));
    EXPECT_EQ(concat_words({1}, {-1}), Word{});
    EXPECT_EQ(invert_word({1, -2, 3}), (Word{-3, 2, -1}));
}

TEST(TranslationLength, DiagonalOracle) {
    for (double t : {0.01, 0.5, 3.0, 12.0}) {
        EXPECT_NEAR(translation_length(Moebius::axis_translation(t)), t, 1e-12 * std::max(1.0, t));
    }
    EXPECT_TRUE(is_hyperbolic(Moebius::axis_translation(0.1)));
    EXPECT_FALSE(is_hyperbolic(Moebius::rotation(0.3)));
}

TEST(TranslationLength, RejectsNonHyperbolic) {
    try {
        translation_length(Moebius::rotation(0.7));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EllipticElement);
    }
    try {
        translation_length(Moebius(1.0, 1.0, 0.0, 1.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParabolicElement);
    }
}

TEST(FixedPoints, AxisOfConjugatedTranslation) {
    const Moebius c(2.0, 1.0, 1.0, 1.0);
    const Moebius g = c * Moebius::axis_translation(1.5) * c.inverse();
    const auto fp = fixed_points(g);
    EXPECT_NEAR(fp.repelling, c.apply_boundary(0.0), 1e-12);
    EXPECT_NEAR(fp.attracting, c.apply_boundary(INFINITY), 1e-12);
    EXPECT_TRUE(axis(g).same_as(Geodesic::from_endpoints(1.0, 2.0)));
}

TEST(Geodesic, ThroughContainsBothPoints) {
    const HPoint p(-1.0, 0.5), q(2.0, 1.5);
    const Geodesic g = Geodesic::through(p, q);
    EXPECT_TRUE(g.contains(p));
    EXPECT_TRUE(g.contains(q));
    EXPECT_EQ(Geodesic::through(HPoint(1, 1), HPoint(1, 4)).kind(), Geodesic::Kind::Vertical);
}

TEST(Geodesic, DisjointDistanceOracle) {
    // endpoints (1, 4) against i R+: cosh d = (e1 + e2) / (e2 - e1)
    const auto r = dist_geodesics(Geodesic::vertical(0.0), Geodesic::from_endpoints(1.0, 4.0));
    EXPECT_FALSE(r.intersecting);
    EXPECT_NEAR(r.distance, std::acosh(5.0 / 3.0), 1e-13);
    ASSERT_TRUE(r.nearest_on_first && r.nearest_on_second);
    EXPECT_NEAR(dist(*r.nearest_on_first, *r.nearest_on_second), r.distance, 1e-12);
}

TEST(Geodesic, IntersectingAndAsymptotic) {
    const auto x = dist_geodesics(Geodesic::vertical(0.0), Geodesic::from_endpoints(-1.0, 2.0));
    EXPECT_TRUE(x.intersecting);
    EXPECT_EQ(x.distance, 0.0);
    const auto a = dist_geodesics(Geodesic::vertical(0.0), Geodesic::from_endpoints(0.0, 3.0));
    EXPECT_TRUE(a.asymptotic);
    EXPECT_EQ(a.distance, 0.0);
}

TEST(Frames, SegmentFrameSendsEndpointsToAxis) {
    const HPoint p(0.4, 0.3), q(-2.0, 1.7);
    const Moebius f = segment_frame(p, q);
    const HPoint fp = f.apply(p), fq = f.apply(q);
    EXPECT_NEAR(fp.x(), 0.0, 1e-12);
    EXPECT_NEAR(fp.y(), 1.0, 1e-12);
    EXPECT_NEAR(fq.x(), 0.0, 1e-10);
    EXPECT_NEAR(fq.y(), std::exp(dist(p, q)), 1e-10 * fq.y());
}

TEST(Frames, BoundaryNormalizer) {
    const Moebius n = boundary_normalizer(-2.0, 5.0);
    EXPECT_NEAR(n.apply_boundary(-2.0), 0.0, 1e-12);
    EXPECT_GT(std::abs(n.apply_boundary(5.0)), 1e12);
}

TEST(Frames, PointAtAndDirection) {
    const HPoint p(1.0, 2.0);
    for (double ang : {0.0, 1.0, 2.5, -1.2}) {
        const HPoint w = point_at(p, ang, 0.8);
        EXPECT_NEAR(dist(p, w), 0.8, 1e-12);
        EXPECT_NEAR(std::remainder(direction_angle(p, w) - ang, 2 * kPi), 0.0, 1e-10);
    }
}

TEST(Segments, PointSegmentDistance) {
    const HPoint p(0, 1), q(0, std::exp(2.0));
    EXPECT_NEAR(dist_point_segment(HPoint(0, std::exp(1.0)), p, q), 0.0, 1e-12);
    EXPECT_NEAR(dist_point_segment(HPoint(0, std::exp(-0.5)), p, q), 0.5, 1e-12);
    const HPoint side = HPoint::from_polar(std::exp(1.0), 1.0);
    EXPECT_NEAR(dist_point_segment(side, p, q), dist_to_imaginary_axis(side), 1e-12);
}

TEST(Area, BallArea) {
    EXPECT_NEAR(ball_area(1.0), 2 * kPi * (std::cosh(1.0) - 1.0), 1e-14);
    EXPECT_NEAR(ball_area(1e-4) / (kPi * 1e-8), 1.0, 1e-8);
}
