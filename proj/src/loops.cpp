#include "hypsurf/loops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hypsurf/parallel.hpp"
#include "hypsurf/rng.hpp"

namespace hypsurf {

namespace {

constexpr double kPi = std::numbers::pi;

bool word_less(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
}

}  // namespace

InjectivityResult injectivity_radius(const FuchsianGroup& group, const HPoint& p) {
    const auto red = group.reduce(p);
    const HPoint& q = red.point;
    const double upper = std::log(4.0 * group.genus() - 2.0);

    // dist(q, e q) >= disp(e) - 2 offset, so the sorted scan can stop once
    // disp(e) exceeds best + 2 offset.
    const double slack = 2.0 * red.offset + 1e-9;
    if (2.0 * upper + slack > group.local_orbit_radius()) {
        std::ostringstream os;
        os << "point lies " << red.offset << " from the basepoint, beyond the cached orbit";
        throw Error(ErrorKind::EnumerationBudgetExceeded, os.str());
    }

    const OrbitElement* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& e : group.local_orbit()) {
        if (e.displacement > best_d + slack) break;
        const double d = dist(q, e.element.apply(q));
        if (d < best_d * (1.0 - 1e-12)) {
            best_d = d;
            best = &e;
        } else if (d <= best_d * (1.0 + 1e-12) && word_less(e.element.word(), best->element.word())) {
            best = &e;
        }
    }
    if (best == nullptr) throw Error(ErrorKind::EnumerationBudgetExceeded, "no nontrivial element found");

    const Moebius to = red.to_domain;
    const Moebius g = to.inverse() * best->element * to;
    const double length = dist(p, g.apply(p));
    const double inj = 0.5 * length;
    if (inj > upper * (1.0 + 1e-9)) {
        std::ostringstream os;
        os << "injectivity radius " << inj << " exceeds ln(4g-2) = " << upper;
        throw Error(ErrorKind::EnumerationBudgetExceeded, os.str());
    }
    return {inj, GeodesicLoop{p, g, length}};
}

HPoint loop_point(const GeodesicLoop& loop, double s) {
    const double tol = 1e-12 * std::max(1.0, loop.length);
    if (!(s >= -tol && s <= loop.length + tol)) {
        std::ostringstream os;
        os << "arc length " << s << " outside [0, " << loop.length << "]";
        throw Error(ErrorKind::ParameterOutOfRange, os.str());
    }
    s = std::clamp(s, 0.0, loop.length);
    if (s == 0.0) return loop.basepoint_lift;
    const HPoint end = loop.element.apply(loop.basepoint_lift);
    if (s == loop.length) return end;
    const Moebius back = segment_frame(loop.basepoint_lift, end).inverse();
    return back.apply(HPoint(0.0, std::exp(s)));
}

double InjProfile::min_inj() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) m = std::min(m, s.inj);
    return m;
}

double InjProfile::max_inj() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, s.inj);
    return m;
}

InjProfile inj_profile(const FuchsianGroup& group, const GeodesicLoop& loop, std::size_t n) {
    if (n < 2 || n > 10000) throw Error(ErrorKind::InvalidArgument, "profile size must lie in [2, 10000]");
    InjProfile prof;
    prof.samples.resize(n);
    parallel_for(n, [&](std::size_t i) {
        const double s = loop.length * static_cast<double>(i) / static_cast<double>(n - 1);
        prof.samples[i] = {s, injectivity_radius(group, loop_point(loop, s)).inj};
    });
    return prof;
}

double dist_to_loop(const FuchsianGroup& group, const HPoint& q, const GeodesicLoop& loop) {
    const HPoint p = loop.basepoint_lift;
    const HPoint e = loop.element.apply(p);
    const HPoint mid = loop_point(loop, 0.5 * loop.length);
    // The answer never exceeds the surface diameter, and a minimizing h
    // puts h q within that of the segment, hence within half a length more
    // of its midpoint.
    const double direct = dist_point_segment(q, p, e);
    const double bound = std::min(direct, 2.0 * group.diameter_bound());
    double best = direct;
    for (const auto& h : elements_near(group, q, mid, 0.5 * loop.length + bound + 1e-9)) {
        best = std::min(best, dist_point_segment(h.apply(q), p, e));
    }
    return best;
}

HPoint curve_point(const FuchsianGroup& group, const Word& w, double along, double normal) {
    const Moebius g = group.evaluate(w);
    const HPoint foot0 = dist_point_geodesic(group.basepoint(), axis(g)).foot;
    HPoint foot = foot0;
    if (along != 0.0) foot = point_at(foot0, direction_angle(foot0, g.apply(foot0)), along);
    if (normal == 0.0) return foot;
    const double ahead = direction_angle(foot, g.apply(foot));
    return point_at(foot, ahead + (normal > 0.0 ? 0.5 : -0.5) * kPi, std::abs(normal));
}

// ------------------------------------------------------------- neck check

namespace {

constexpr std::size_t kNeckChunk = 4096;
constexpr std::size_t kMaxSamples = 100'000'000;

struct Moments {
    double x = 0, xx = 0, y = 0, yy = 0, xy = 0;
};

}  // namespace

NeckResult neck_check(const FuchsianGroup& group, const GeodesicLoop& loop, double eps0,
                      const SurfaceField& f, std::size_t n_mc, std::size_t n_s, std::uint64_t seed) {
    if (!(eps0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps0 must be positive");
    if (n_mc < 2 || n_mc > kMaxSamples) throw Error(ErrorKind::MCBudget, "n_mc must lie in [2, 1e8]");
    if (n_s < 64 || n_s > 1'000'000) throw Error(ErrorKind::MCBudget, "n_s must lie in [64, 1e6]");

    const InjProfile prof = inj_profile(group, loop, 129);
    const double min_inj = prof.min_inj();
    if (min_inj < 2.0 * eps0) {
        std::ostringstream os;
        os << "injectivity radius along the loop drops to " << min_inj << " < 2 eps0 = " << 2.0 * eps0;
        throw Error(ErrorKind::HypothesisViolated, os.str());
    }

    const double len = loop.length;
    const HPoint p = loop.basepoint_lift;
    const HPoint e = loop.element.apply(p);
    const Moebius back = segment_frame(p, e).inverse();
    const HPoint mid = loop_point(loop, 0.5 * len);

    const double band_area = 2.0 * len * std::sinh(eps0);
    const double tube_area = band_area + ball_area(eps0);
    const double band_prob = band_area / tube_area;
    const double top = std::exp(len);
    const double panel = len / static_cast<double>(n_s);
    const double cosh_eps = std::cosh(eps0);

    // Uniform point of the tube in frame coordinates, where the segment runs
    // from i to i e^len along the imaginary axis.
    auto sample_tube = [&](Rng& rng) -> HPoint {
        const double u0 = rng.uniform();
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        if (u0 < band_prob) {
            const double s = len * u1;
            const double t = std::asinh((2.0 * u2 - 1.0) * std::sinh(eps0));
            return {std::exp(s) * std::tanh(t), std::exp(s) / std::cosh(t)};
        }
        // Caps: half-disks beyond either end, folded onto the outer side.
        const bool upper_cap = u0 < band_prob + 0.5 * (1.0 - band_prob);
        const double c = upper_cap ? top : 1.0;
        HPoint w = sample_disk(HPoint(0.0, c), eps0, u1, u2);
        const double r = w.polar_r();
        if (upper_cap ? r < top : r > 1.0) w = HPoint(c * c / std::conj(w.z()));
        return w;
    };

    const std::size_t chunks = (n_mc + kNeckChunk - 1) / kNeckChunk;
    std::vector<Moments> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = Rng::stream(seed, c);
        const std::size_t count = std::min(kNeckChunk, n_mc - c * kNeckChunk);
        Moments m;
        for (std::size_t k = 0; k < count; ++k) {
            const HPoint w = sample_tube(rng);
            const HPoint z = back.apply(w);
            const double fz = f(group.reduce(z).point);
            double x = 0.0, y = 0.0;
            if (fz != 0.0) {
                std::size_t mult = 0;
                for (const auto& h : elements_near(group, z, mid, 0.5 * len + eps0 + 1e-9)) {
                    if (dist_point_segment(h.apply(z), p, e) < eps0) ++mult;
                }
                x = fz / static_cast<double>(std::max<std::size_t>(mult, 1));

                std::size_t hits = 0;
                for (std::size_t j = 0; j < n_s; ++j) {
                    const double sj = (static_cast<double>(j) + 0.5) * panel;
                    if (cosh_dist(w, HPoint(0.0, std::exp(sj))) < cosh_eps) ++hits;
                }
                y = fz * panel * static_cast<double>(hits);
            }
            m.x += x;
            m.xx += x * x;
            m.y += y;
            m.yy += y * y;
            m.xy += x * y;
        }
        parts[c] = m;
    });

    Moments tot;
    for (const auto& m : parts) {
        tot.x += m.x;
        tot.xx += m.xx;
        tot.y += m.y;
        tot.yy += m.yy;
        tot.xy += m.xy;
    }
    const double n = static_cast<double>(n_mc);
    const double mx = tot.x / n, my = tot.y / n;
    const double vx = std::max(0.0, (tot.xx / n - mx * mx) * n / (n - 1.0));
    const double vy = std::max(0.0, (tot.yy / n - my * my) * n / (n - 1.0));
    const double cxy = (tot.xy / n - mx * my) * n / (n - 1.0);

    NeckResult out{};
    out.seed = seed;
    out.min_profile_inj = min_inj;
    const double rhs_scale = 12.0 * eps0 * tube_area;
    out.lhs = tube_area * my;
    out.rhs = rhs_scale * mx;
    out.se_lhs = tube_area * std::sqrt(vy / n);
    out.se_rhs = rhs_scale * std::sqrt(vx / n);
    if (out.rhs > 0.0) {
        out.ratio = out.lhs / out.rhs;
        // delta method for a ratio of correlated means
        const double rel = vy / (my * my + 1e-300) + vx / (mx * mx) - 2.0 * cxy / (mx * my + 1e-300);
        out.se_ratio = out.lhs > 0.0 ? std::abs(out.ratio) * std::sqrt(std::max(0.0, rel) / n) : 0.0;
    }
    return out;
}

SurfaceField bump_field(const FuchsianGroup& group, const HPoint& centre, double width) {
    if (!(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "bump width must be positive");
    const double cap = std::sqrt(40.0 * width);
    return [group, centre, width, cap](const HPoint& z) {
        const double d = surface_distance(group, z, centre, cap);
        return d >= cap ? 0.0 : std::exp(-d * d / width);
    };
}

SurfaceField smoothed_indicator_field(const FuchsianGroup& group, const HPoint& centre, double radius,
                                      double softness) {
    if (!(radius > 0.0) || !(softness > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "radius and softness must be positive");
    }
    const double cap = radius + 40.0 * softness;
    return [group, centre, radius, softness, cap](const HPoint& z) {
        const double d = surface_distance(group, z, centre, cap);
        return d >= cap ? 0.0 : 1.0 / (1.0 + std::exp((d - radius) / softness));
    };
}

}  // namespace hypsurf
