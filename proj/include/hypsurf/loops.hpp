#pragma once

// Injectivity radius, shortest geodesic loops and the neck inequality
// integrals along a loop.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hypsurf/fuchsian.hpp"

namespace hypsurf {

/// Shortest nontrivial geodesic loop at a point: the segment from
/// basepoint_lift to element(basepoint_lift).
struct GeodesicLoop {
    HPoint basepoint_lift;
    Moebius element;
    double length;  // 2 * injectivity radius
};

struct InjectivityResult {
    double inj;
    GeodesicLoop loop;
};

/// inj_X(p) = min over g != id of dist(p, g p) / 2. Ties go to the
/// lexicographically smallest word.
InjectivityResult injectivity_radius(const FuchsianGroup& group, const HPoint& p);

/// Point at arc length s along the loop's lifted segment.
HPoint loop_point(const GeodesicLoop& loop, double s);

struct InjSample {
    double s;
    double inj;
};
struct InjProfile {
    std::vector<InjSample> samples;
    double min_inj() const;
    double max_inj() const;
};

/// Injectivity radius at n equally spaced points of the loop, endpoints
/// included (2 <= n <= 10^4).
InjProfile inj_profile(const FuchsianGroup& group, const GeodesicLoop& loop, std::size_t n);

/// Surface distance from q to the loop's image.
double dist_to_loop(const FuchsianGroup& group, const HPoint& q, const GeodesicLoop& loop);

/// Point at signed distance `normal` from the axis of the curve w, over the
/// axis point at arc length `along` from the basepoint's projection.
HPoint curve_point(const FuchsianGroup& group, const Word& w, double along, double normal);

/// Scalar field on the surface, evaluated on Dirichlet-domain lifts.
using SurfaceField = std::function<double(const HPoint&)>;

struct NeckResult {
    double lhs;
    double rhs;
    double se_lhs;
    double se_rhs;
    double ratio;
    double se_ratio;
    double min_profile_inj;
    std::uint64_t seed;
};

/// Both sides of
///   int_0^{2 inj} int_{B(sigma(s), eps0)} f  <=  12 eps0 int_{N_eps0(sigma)} f
/// by Monte Carlo on the eps0-tube around the lifted loop, sharing one point
/// cloud between the two sides. The outer s-integral uses the midpoint rule
/// on n_s panels.
NeckResult neck_check(const FuchsianGroup& group, const GeodesicLoop& loop, double eps0,
                      const SurfaceField& f, std::size_t n_mc, std::size_t n_s, std::uint64_t seed);

/// exp(-d^2 / width) with d the surface distance to centre.
SurfaceField bump_field(const FuchsianGroup& group, const HPoint& centre, double width = 0.01);
/// Logistic smoothing of the indicator of the surface ball B(centre, radius).
SurfaceField smoothed_indicator_field(const FuchsianGroup& group, const HPoint& centre, double radius,
                                      double softness);

}  // namespace hypsurf
