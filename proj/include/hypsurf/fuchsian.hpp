#pragma once

// Closed-surface Fuchsian groups: construction, Dirichlet domains, orbit
// enumeration, systole and Monte-Carlo sampling of the fundamental domain.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hypsurf/hplane.hpp"

namespace hypsurf {

struct OrbitElement {
    Moebius element;
    double displacement;  // dist(basepoint, element * basepoint)
};

struct GroupLimits {
    double radius_cap = 25.0;
    std::size_t element_cap = 5'000'000;
    /// Samples for the Monte-Carlo area certificate at construction; 0 skips
    /// it (the deterministic quadrature certificate always runs).
    std::size_t mc_area_samples = 0;
    std::uint64_t mc_seed = 0;
};

/// A named closed curve on the surface, given as a word in the generators.
struct NamedCurve {
    std::string name;
    Word word;
};

/// Provenance used to export and rebuild a surface.
struct SurfaceSource {
    std::string kind;            // "bolza" | "doubled_pants" | "generators"
    std::vector<double> params;  // family parameters, if any
};

/// Immutable, shareable description of a closed hyperbolic surface X = H/G.
class FuchsianGroup {
public:
    const std::vector<Moebius>& generators() const;
    int genus() const;
    const HPoint& basepoint() const;
    /// Radius of the Dirichlet domain at the basepoint, inflated by 10%.
    double diameter_bound() const;
    double domain_radius() const;
    /// Dirichlet domain area by radial quadrature.
    double domain_area() const;
    /// Elements whose bisectors bound the Dirichlet domain (closed under inverse).
    const std::vector<Moebius>& face_pairings() const;
    const std::vector<NamedCurve>& curves() const;
    const SurfaceSource& source() const;
    const GroupLimits& limits() const;

    double target_area() const;

    Moebius evaluate(const Word& w) const;

    /// Conjugate every generator by m: g -> m g m^-1. The basepoint moves to
    /// m(basepoint) so the Dirichlet data are carried along unchanged.
    FuchsianGroup conjugated(const Moebius& m) const;

    struct Reduced {
        HPoint point;       // lift inside the Dirichlet domain
        Moebius to_domain;  // point = to_domain(original)
        double offset;      // dist(basepoint, point)
    };
    /// Moves z into the Dirichlet domain by greedy face-pairing descent.
    Reduced reduce(const HPoint& z) const;

    /// Sorted orbit of the basepoint up to local_orbit_radius(); shared by
    /// all pointwise queries.
    const std::vector<OrbitElement>& local_orbit() const;
    double local_orbit_radius() const;
    /// Orbit points closer than this are treated as one group element.
    double orbit_merge_radius() const;

    /// Points of the basepoint orbit within 2 * diameter_bound, faces first.
    const std::vector<HPoint>& dirichlet_check_points() const;
    bool in_dirichlet_domain(const HPoint& z, double slack = 1e-12) const;

    struct State;
    explicit FuchsianGroup(std::shared_ptr<const State> state) : state_(std::move(state)) {}

private:
    std::shared_ptr<const State> state_;
};

struct FuchsianGroup::State {
    std::vector<Moebius> generators;
    int genus = 2;
    HPoint basepoint{0.0, 1.0};
    double domain_radius = 0.0;
    double domain_area = 0.0;
    std::vector<Moebius> faces;
    std::vector<NamedCurve> curves;
    SurfaceSource source;
    GroupLimits limits;
    std::vector<OrbitElement> orbit;
    double orbit_radius = 0.0;
    double merge_radius = 0.0;
    std::vector<HPoint> check_points;
};

inline const std::vector<Moebius>& FuchsianGroup::generators() const { return state_->generators; }
inline int FuchsianGroup::genus() const { return state_->genus; }
inline const HPoint& FuchsianGroup::basepoint() const { return state_->basepoint; }
inline double FuchsianGroup::diameter_bound() const { return 1.1 * state_->domain_radius; }
inline double FuchsianGroup::domain_radius() const { return state_->domain_radius; }
inline double FuchsianGroup::domain_area() const { return state_->domain_area; }
inline const std::vector<Moebius>& FuchsianGroup::face_pairings() const { return state_->faces; }
inline const std::vector<NamedCurve>& FuchsianGroup::curves() const { return state_->curves; }
inline const SurfaceSource& FuchsianGroup::source() const { return state_->source; }
inline const GroupLimits& FuchsianGroup::limits() const { return state_->limits; }
inline const std::vector<OrbitElement>& FuchsianGroup::local_orbit() const { return state_->orbit; }
inline double FuchsianGroup::local_orbit_radius() const { return state_->orbit_radius; }
inline double FuchsianGroup::orbit_merge_radius() const { return state_->merge_radius; }
inline const std::vector<HPoint>& FuchsianGroup::dirichlet_check_points() const { return state_->check_points; }

using Matrix2 = std::array<double, 4>;  // row-major a, b, c, d

/// Validates raw generators and builds the Dirichlet data.
FuchsianGroup from_generators(const std::vector<Matrix2>& mats, int genus,
                              const GroupLimits& limits = {},
                              HPoint basepoint = HPoint(0.0, 1.0),
                              std::vector<NamedCurve> curves = {});

/// The genus-2 surface from the regular octagon with vertex angle pi/4.
FuchsianGroup bolza(const GroupLimits& limits = {});

/// Two pairs of pants with boundary lengths L1, L2, L3 glued with zero
/// twist. Curves "c1", "c2", "c3" are the gluing geodesics.
FuchsianGroup doubled_pants(double L1, double L2, double L3, const GroupLimits& limits = {});

/// All g != id with dist(p, g p) <= radius at the basepoint p, sorted by
/// displacement and then word.
std::vector<OrbitElement> enumerate(const FuchsianGroup& group, double radius);

/// Every h in the group (identity included) with dist(h z, w) <= radius.
std::vector<Moebius> elements_near(const FuchsianGroup& group, const HPoint& z, const HPoint& w,
                                   double radius);

/// Distance on the surface between the projections of z and w, capped: the
/// result is exact when below cap and cap otherwise.
double surface_distance(const FuchsianGroup& group, const HPoint& z, const HPoint& w,
                        double cap);

struct SystoleResult {
    double length;
    Moebius witness;
};
SystoleResult systole(const FuchsianGroup& group, double cutoff);

/// n points with density proportional to hyperbolic area on the Dirichlet
/// domain; deterministic for a given seed.
std::vector<HPoint> mc_sample_domain(const FuchsianGroup& group, std::size_t n,
                                     std::uint64_t seed);

struct AreaEstimate {
    double area;
    double standard_error;
    std::size_t proposals;
    std::size_t accepted;
};
/// Hit-or-miss area of the Dirichlet domain from n uniform proposals in the
/// ball of radius diameter_bound around the basepoint.
AreaEstimate mc_area_estimate(const FuchsianGroup& group, std::size_t n, std::uint64_t seed);

/// Uniform (area) sample of the hyperbolic disk B(center, radius).
HPoint sample_disk(const HPoint& center, double radius, double u1, double u2);

}  // namespace hypsurf
