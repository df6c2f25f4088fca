#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hypsurf/fuchsian.hpp"
#include "surfaces.hpp"

using namespace hypsurf;
using namespace testing_surfaces;

namespace {
constexpr double kPi = std::numbers::pi;
const double kBolzaSystole = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
// The zero-twist seam joining the two long boundaries closes up in the
// double: cosh b1 = (cosh^2 3 + cosh 0.25) / sinh^2 3, length 2 b1.
const double kSeam = 2.0 * std::acosh((std::cosh(3.0) * std::cosh(3.0) + std::cosh(0.25)) /
                                      (std::sinh(3.0) * std::sinh(3.0)));

double cutoff_for(const FuchsianGroup& g) {
    return 2.0 * g.diameter_bound() + 2.0 * std::log(4.0 * g.genus() - 2.0) + 0.1;
}
}  // namespace

TEST(Bolza, BasicInvariants) {
    const auto& g = bolza_surface();
    EXPECT_EQ(g.genus(), 2);
    EXPECT_NEAR(g.domain_area(), 4.0 * kPi, 1e-4 * 4.0 * kPi);
    EXPECT_EQ(g.face_pairings().size(), 8u);
    EXPECT_EQ(g.curves().size(), 4u);
    // the regular octagon has circumradius acosh(cot^2(pi/8))
    const double cot = 1.0 / std::tan(kPi / 8.0);
    EXPECT_NEAR(g.domain_radius(), std::acosh(cot * cot), 1e-9);
}

TEST(Bolza, SystoleOracle) {
    const auto& g = bolza_surface();
    const auto s = systole(g, cutoff_for(g));
    EXPECT_NEAR(s.length, kBolzaSystole, 1e-9);
    EXPECT_NEAR(translation_length(s.witness), s.length, 1e-12);
    EXPECT_NEAR(translation_length(g.evaluate(s.witness.word())), s.length, 1e-9);
}

TEST(Bolza, SystoleNeedsSufficientCutoff) {
    try {
        systole(bolza_surface(), 3.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InconclusiveCutoff);
    }
}

TEST(DoubledPants, GluingCurvesHaveTheirLengths) {
    const auto& g = short_pants_surface();
    EXPECT_EQ(g.genus(), 2);
    ASSERT_EQ(g.curves().size(), 3u);
    const double lengths[] = {0.5, 6.0, 6.0};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(translation_length(g.evaluate(g.curves()[i].word)), lengths[i], 1e-9) << g.curves()[i].name;
    }
}

TEST(DoubledPants, SystoleIsTheClosedSeam) {
    const auto& g = short_pants_surface();
    EXPECT_NEAR(kSeam, 0.401734051326028, 1e-14);
    EXPECT_NEAR(systole(g, cutoff_for(g)).length, kSeam, 1e-8);
}

TEST(DoubledPants, DegenerateLengths) {
    for (double bad : {0.0, -1.0, std::nan("")}) {
        try {
            doubled_pants(bad, 1.0, 1.0);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::DegenerateLength);
        }
    }
}

TEST(Generators, ConjugationInvariance) {
    const auto& g = bolza_surface();
    const Moebius c(1.0, 0.3, 0.2, 1.06);
    std::vector<Matrix2> mats;
    for (const auto& h : g.generators()) {
        const Moebius k = c * h * c.inverse();
        mats.push_back(Matrix2{k.a(), k.b(), k.c(), k.d()});
    }
    const auto conj = from_generators(mats, 2, {}, c.apply(g.basepoint()));
    EXPECT_NEAR(conj.domain_area(), g.domain_area(), 1e-8);
    EXPECT_NEAR(conj.domain_radius(), g.domain_radius(), 1e-8);
    EXPECT_NEAR(systole(conj, cutoff_for(conj)).length, kBolzaSystole, 1e-9);
}

TEST(Generators, RejectsWrongCount) {
    const auto& g = bolza_surface();
    std::vector<Matrix2> mats;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& h = g.generators()[i];
        mats.push_back(Matrix2{h.a(), h.b(), h.c(), h.d()});
    }
    EXPECT_THROW(from_generators(mats, 2), Error);
}

TEST(Generators, RejectsEllipticGenerator) {
    std::vector<Matrix2> mats(4, Matrix2{std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3)});
    EXPECT_THROW(from_generators(mats, 2), Error);
}

TEST(Enumeration, SortedAndWithinRadius) {
    const auto& g = bolza_surface();
    const auto els = enumerate(g, 6.0);
    ASSERT_FALSE(els.empty());
    for (std::size_t i = 0; i < els.size(); ++i) {
        EXPECT_LE(els[i].displacement, 6.0 + 1e-9);
        EXPECT_NEAR(dist(g.basepoint(), els[i].element.apply(g.basepoint())), els[i].displacement, 1e-9);
        if (i) EXPECT_LE(els[i - 1].displacement, els[i].displacement);
    }
}

TEST(Enumeration, ClosedUnderInverse) {
    const auto& g = bolza_surface();
    const auto els = enumerate(g, 5.0);
    for (const auto& e : els) {
        const Moebius inv = e.element.inverse();
        bool found = false;
        for (const auto& f : els) found = found || f.element.approx_equal(inv, 1e-7);
        EXPECT_TRUE(found);
    }
}

TEST(Reduce, LandsInDomainAndIsAnOrbitMove) {
    const auto& g = short_pants_surface();
    const HPoint far(3.7, 0.02);
    const auto red = g.reduce(far);
    EXPECT_LE(red.offset, g.domain_radius() + 1e-9);
    const HPoint back = red.to_domain.apply(far);
    EXPECT_NEAR(dist(back, red.point), 0.0, 1e-9);
    EXPECT_NEAR(surface_distance(g, far, red.point, 1.0), 0.0, 1e-9);
}

TEST(SurfaceDistance, SymmetricAndCapped) {
    const auto& g = bolza_surface();
    const HPoint a(0.2, 0.9), b(-0.5, 1.6);
    const double d = surface_distance(g, a, b, 10.0);
    EXPECT_NEAR(surface_distance(g, b, a, 10.0), d, 1e-12);
    EXPECT_LE(d, dist(a, b) + 1e-12);
    EXPECT_LE(d, g.diameter_bound() + 1e-9);
    EXPECT_EQ(surface_distance(g, a, b, 0.5 * d), 0.5 * d);
    const Moebius h = g.generators()[0];
    EXPECT_NEAR(surface_distance(g, h.apply(a), a, 1.0), 0.0, 1e-9);
}

TEST(ElementsNear, IncludesIdentity) {
    const auto& g = bolza_surface();
    const auto near = elements_near(g, g.basepoint(), g.basepoint(), 0.1);
    ASSERT_EQ(near.size(), 1u);
    EXPECT_TRUE(near[0].approx_equal(Moebius::identity()));
}

TEST(Sampling, DeterministicAndInsideDomain) {
    const auto& g = bolza_surface();
    const auto a = mc_sample_domain(g, 500, 42);
    const auto b = mc_sample_domain(g, 500, 42);
    ASSERT_EQ(a.size(), 500u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].x(), b[i].x());
        EXPECT_EQ(a[i].y(), b[i].y());
        EXPECT_LE(dist(a[i], g.basepoint()), g.domain_radius() + 1e-9);
    }
    EXPECT_NE(mc_sample_domain(g, 1, 43)[0].x(), a[0].x());
}

TEST(Sampling, AreaEstimateWithinThreeSigma) {
    const auto& g = short_pants_surface();
    const auto est = mc_area_estimate(g, 200'000, 7);
    EXPECT_EQ(est.proposals, 200'000u);
    EXPECT_LE(std::abs(est.area - 4.0 * kPi), 3.0 * est.standard_error);
    const auto again = mc_area_estimate(g, 200'000, 7);
    EXPECT_EQ(est.area, again.area);
}

TEST(Sampling, DiskSamplerStaysInDisk) {
    const HPoint c(0.5, 2.0);
    for (double u1 : {0.0, 0.3, 0.999}) {
        for (double u2 : {0.0, 0.5, 0.99}) EXPECT_LE(dist(sample_disk(c, 0.7, u1, u2), c), 0.7 + 1e-12);
    }
}
