#include "hypsurf/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "hypsurf/parallel.hpp"
#include "hypsurf/rng.hpp"

namespace hypsurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kRadialAngles = 8192;
constexpr double kAreaRelTolerance = 1e-4;

// ----------------------------------------------------------- raw matrices

struct Mat {
    double a, b, c, d;

    Mat operator*(const Mat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }
};

Mat raw(const Moebius& m) { return {m.a(), m.b(), m.c(), m.d()}; }

double cosh_disp(const Mat& m, const HPoint& p) {
    const Complex den = m.c * p.z() + m.d;
    const Complex w = m.apply(p.z());
    const double wy = p.y() / std::norm(den);
    return 1.0 + std::norm(w - p.z()) / (2.0 * p.y() * wy);
}

double disp_from_cosh(double ch) { return std::acosh(std::max(ch, 1.0)); }

bool word_less(const Word& x, const Word& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

void sort_orbit(std::vector<OrbitElement>& elems) {
    std::sort(elems.begin(), elems.end(), [](const OrbitElement& x, const OrbitElement& y) {
        if (x.displacement != y.displacement) return x.displacement < y.displacement;
        return word_less(x.element.word(), y.element.word());
    });
}

// ------------------------------------------------------- orbit point index

// The group acts freely, so g is determined by g(p0). Elements are
// deduplicated by their orbit points: two words whose images of p0 lie
// within `merge` of each other are the same element. Entrywise matrix
// comparison does not work here: the face-pairing matrices carry rounding
// error that long words amplify well past any fixed quantum, while orbit
// points stay separated by 2 * inj(p0).
//
// Points are bucketed on a log-polar grid around p0: rows of width `cell`
// in distance, each row split into angular sectors no narrower than `cell`
// in arc length, so a merge ball meets at most 2 rows x 3 sectors.
class OrbitIndex {
public:
    OrbitIndex(const HPoint& p0, double merge) : p0_(p0), merge_(merge), cell_(4.0 * merge) {
        const double s = std::sinh(merge / 2);
        merge_norm_ = 4.0 * s * s;  // |z-w|^2/(y_z y_w) at distance merge
    }

    /// Inserts the orbit point w at distance d from p0; false if an existing
    /// point lies within the merge radius.
    bool insert(const Complex& w, double d) {
        const double angle = sector_angle(w);
        const std::int64_t r_lo = static_cast<std::int64_t>(std::max(0.0, d - merge_) / cell_);
        const std::int64_t r_hi = static_cast<std::int64_t>((d + merge_) / cell_);
        for (std::int64_t r = r_lo; r <= r_hi; ++r) {
            const std::int64_t n = sectors(r);
            const std::int64_t j0 = sector(angle, n);
            const std::int64_t span = std::min<std::int64_t>(n, 3);
            for (std::int64_t dj = -(span / 2); dj < span - span / 2; ++dj) {
                const auto it = cells_.find({r, ((j0 + dj) % n + n) % n});
                if (it == cells_.end()) continue;
                for (std::uint32_t idx = it->second; idx != kNone; idx = next_[idx]) {
                    if (std::norm(points_[idx] - w) / (points_[idx].imag() * w.imag()) < merge_norm_) return false;
                }
            }
        }
        const std::int64_t r = static_cast<std::int64_t>(d / cell_);
        const auto idx = static_cast<std::uint32_t>(points_.size());
        auto [it, fresh] = cells_.try_emplace({r, sector(angle, sectors(r))}, idx);
        next_.push_back(fresh ? kNone : it->second);
        it->second = idx;
        points_.push_back(w);
        return true;
    }

private:
    struct CellKey {
        std::int64_t row, sector;
        bool operator==(const CellKey&) const = default;
    };
    struct CellHash {
        std::size_t operator()(const CellKey& k) const noexcept {
            const std::uint64_t h = static_cast<std::uint64_t>(k.row) * 0x9e3779b97f4a7c15ull ^
                                    (static_cast<std::uint64_t>(k.sector) + 0x632be59bd9b4e019ull);
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };

    double sector_angle(const Complex& w) const {
        // hyperboloid coordinates of w seen from p0 (p0 -> (1, 0, 0))
        const double x = (w.real() - p0_.x()) / p0_.y();
        const double y = w.imag() / p0_.y();
        const double n2 = x * x + y * y;
        const double angle = std::atan2((n2 - 1.0) / (2.0 * y), x / y);
        return angle < 0.0 ? angle + 2 * kPi : angle;
    }
    std::int64_t sectors(std::int64_t row) const {
        const double n = std::floor(2 * kPi * std::sinh(static_cast<double>(row) * cell_) / cell_);
        return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::min(n, 4e18)));
    }
    static std::int64_t sector(double angle, std::int64_t n) {
        const auto j = static_cast<std::int64_t>(angle / (2 * kPi) * static_cast<double>(n));
        return std::min(j, n - 1);
    }

    HPoint p0_;
    double merge_;
    double cell_;
    double merge_norm_;
    static constexpr std::uint32_t kNone = 0xffffffffu;
    std::vector<Complex> points_;
    std::vector<std::uint32_t> next_;  // chains points sharing a cell
    std::unordered_map<CellKey, std::uint32_t, CellHash> cells_;
};

// ------------------------------------------------------------ orbit search

struct SearchNode {
    Mat m;
    std::int32_t parent;
    std::int32_t letter;
};

std::vector<OrbitElement> collect(const std::vector<SearchNode>& nodes,
                                  const std::vector<std::pair<std::int32_t, double>>& hits,
                                  const std::vector<Moebius>& alphabet) {
    std::vector<OrbitElement> out;
    out.reserve(hits.size());
    std::vector<std::int32_t> path;
    for (const auto& [idx, disp] : hits) {
        path.clear();
        for (std::int32_t n = idx; nodes[n].parent >= 0; n = nodes[n].parent) path.push_back(nodes[n].letter);
        Word w;
        for (auto it = path.rbegin(); it != path.rend(); ++it) w = concat_words(w, alphabet[*it].word());
        const Mat& m = nodes[idx].m;
        out.push_back({Moebius(m.a, m.b, m.c, m.d, std::move(w)), disp});
    }
    sort_orbit(out);
    return out;
}

/// Breadth-first expansion of right products w * f over the alphabet,
/// keeping words whose basepoint displacement stays within prefix_bound.
/// Returns non-identity elements with displacement <= radius.
std::vector<OrbitElement> bfs_orbit(const std::vector<Moebius>& alphabet, const HPoint& p0,
                                    double prefix_bound, double radius, std::size_t cap, double merge) {
    std::vector<Mat> letters;
    letters.reserve(alphabet.size());
    for (const auto& f : alphabet) letters.push_back(raw(f));

    const double cosh_prefix = std::cosh(prefix_bound) + 1e-9;
    const double cosh_radius = std::cosh(radius);

    std::vector<SearchNode> nodes;
    OrbitIndex seen(p0, merge);
    nodes.push_back({{1, 0, 0, 1}, -1, -1});
    seen.insert(p0.z(), 0.0);
    std::vector<std::pair<std::int32_t, double>> hits;

    for (std::size_t head = 0; head < nodes.size(); ++head) {
        const Mat base = nodes[head].m;
        for (std::size_t l = 0; l < letters.size(); ++l) {
            const Mat x = base * letters[l];
            const double ch = cosh_disp(x, p0);
            if (ch > cosh_prefix) continue;
            const double d = disp_from_cosh(ch);
            if (!seen.insert(x.apply(p0.z()), d)) continue;
            nodes.push_back({x, static_cast<std::int32_t>(head), static_cast<std::int32_t>(l)});
            if (nodes.size() > cap) {
                std::ostringstream os;
                os << "more than " << cap << " elements within prefix bound " << prefix_bound;
                throw Error(ErrorKind::EnumerationBudgetExceeded, os.str());
            }
            if (ch <= cosh_radius) hits.emplace_back(static_cast<std::int32_t>(nodes.size() - 1), d);
        }
    }
    return collect(nodes, hits, alphabet);
}

/// Best-first expansion by displacement: the `budget` nearest orbit points
/// reachable through words whose prefixes were themselves expanded.
std::vector<OrbitElement> best_first_orbit(const std::vector<Moebius>& alphabet, const HPoint& p0,
                                           std::size_t budget, std::size_t cap, double merge) {
    std::vector<Mat> letters;
    for (const auto& f : alphabet) letters.push_back(raw(f));
    std::vector<SearchNode> nodes;
    OrbitIndex seen(p0, merge);
    using Item = std::pair<double, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    nodes.push_back({{1, 0, 0, 1}, -1, -1});
    seen.insert(p0.z(), 0.0);
    queue.push({1.0, 0});
    std::vector<std::pair<std::int32_t, double>> hits;
    std::size_t popped = 0;
    while (!queue.empty() && popped < budget) {
        const auto [ch, idx] = queue.top();
        queue.pop();
        ++popped;
        if (idx != 0) hits.emplace_back(idx, disp_from_cosh(ch));
        const Mat base = nodes[idx].m;
        for (std::size_t l = 0; l < letters.size(); ++l) {
            const Mat x = base * letters[l];
            const double cx = cosh_disp(x, p0);
            if (!seen.insert(x.apply(p0.z()), disp_from_cosh(cx))) continue;
            nodes.push_back({x, idx, static_cast<std::int32_t>(l)});
            if (nodes.size() > cap) {
                std::ostringstream os;
                os << "best-first search exceeded " << cap << " elements";
                throw Error(ErrorKind::EnumerationBudgetExceeded, os.str());
            }
            queue.push({cx, static_cast<std::int32_t>(nodes.size() - 1)});
        }
    }
    return collect(nodes, hits, alphabet);
}

// ------------------------------------------------- Dirichlet radial data

struct Radial {
    double radius = std::numeric_limits<double>::infinity();
    double area = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> faces;  // indices into the element list
};

/// Region {z : d(z,p0) <= d(z, g p0)} over the given elements, in polar
/// coordinates about p0. The boundary is located on a uniform angular grid
/// and refined by bisection at every change of face; the area is then
/// integrated exactly face by face.
Radial radial_domain(const std::vector<OrbitElement>& elems, const HPoint& p0) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    struct Face {
        double half;  // displacement / 2
        double tanh_half;
        double cosh_half;
        double angle;
    };
    std::vector<Face> data;
    data.reserve(elems.size());
    for (const auto& e : elems) {
        const double h = e.displacement / 2;
        data.push_back({h, std::tanh(h), std::cosh(h), direction_angle(p0, e.element.apply(p0))});
    }
    auto rho_of = [&](std::size_t i, double phi) {
        const double cs = std::cos(phi - data[i].angle);
        return cs <= data[i].tanh_half ? kInf : std::atanh(data[i].tanh_half / cs);
    };
    auto argmin = [&](double phi) {
        std::pair<long, double> best{-1, kInf};
        for (std::size_t i = 0; i < data.size() && data[i].half < best.second; ++i) {
            const double r = rho_of(i, phi);
            if (r < best.second) best = {static_cast<long>(i), r};
        }
        return best;
    };
    // integral of (cosh rho - 1) dphi under a single bisector
    auto primitive = [&](std::size_t i, double phi) {
        const double psi = std::remainder(phi - data[i].angle, 2 * kPi);
        return std::asin(std::clamp(data[i].cosh_half * std::sin(psi), -1.0, 1.0)) - psi;
    };

    Radial out;
    std::vector<char> is_face(elems.size(), 0);
    const double step = 2 * kPi / kRadialAngles;
    // irrational offset keeps grid angles off symmetric vertex directions
    auto angle_at = [&](std::size_t k) { return step * (static_cast<double>(k) + 0.318309886); };
    std::vector<std::pair<long, double>> grid(kRadialAngles + 1);
    bool bounded = true;
    double radius = 0.0;
    for (std::size_t k = 0; k < kRadialAngles; ++k) {
        grid[k] = argmin(angle_at(k));
        if (grid[k].first < 0) {
            bounded = false;
            continue;
        }
        radius = std::max(radius, grid[k].second);
        is_face[grid[k].first] = 1;
    }
    grid[kRadialAngles] = grid[0];
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (is_face[i]) out.faces.push_back(i);
    }
    if (!bounded) return out;

    double area = 0.0;
    std::function<void(double, long, double, long, int)> piece = [&](double lo, long i, double hi, long j,
                                                                    int depth) {
        if (i == j) {
            area += primitive(i, hi) - primitive(i, lo);
            return;
        }
        double a = lo, b = hi;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (a + b);
            (rho_of(i, mid) <= rho_of(j, mid) ? a : b) = mid;
        }
        const double cut = 0.5 * (a + b);
        const auto [m, rm] = argmin(cut);
        const double at_cut = std::min(rho_of(i, cut), rho_of(j, cut));
        if (m >= 0 && m != i && m != j && rm < at_cut - 1e-12 && depth < 40) {
            is_face[m] = 1;
            piece(lo, i, cut, m, depth + 1);
            piece(cut, m, hi, j, depth + 1);
            return;
        }
        radius = std::max(radius, at_cut);
        area += primitive(i, cut) - primitive(i, lo) + primitive(j, hi) - primitive(j, cut);
    };
    for (std::size_t k = 0; k < kRadialAngles; ++k) {
        piece(angle_at(k), grid[k].first, angle_at(k + 1), grid[k + 1].first, 0);
    }
    out.faces.clear();
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (is_face[i]) out.faces.push_back(i);
    }
    out.area = area;
    out.radius = radius;
    return out;
}

/// Elements compared through their orbit points (see OrbitIndex).
struct SameElement {
    HPoint p0;
    double merge;
    bool operator()(const Moebius& x, const Moebius& y) const {
        return dist(x.apply(p0), y.apply(p0)) < merge;
    }
};

std::vector<Moebius> close_under_inverse(const std::vector<Moebius>& elems, const SameElement& same) {
    std::vector<Moebius> out;
    auto add = [&](const Moebius& m) {
        for (const auto& o : out) {
            if (same(o, m)) return;
        }
        out.push_back(m);
    };
    for (const auto& m : elems) {
        add(m);
        add(m.inverse());
    }
    return out;
}

bool same_elements(const std::vector<Moebius>& x, const std::vector<Moebius>& y, const SameElement& same) {
    if (x.size() != y.size()) return false;
    for (const auto& m : x) {
        if (std::none_of(y.begin(), y.end(), [&](const Moebius& o) { return same(o, m); })) return false;
    }
    return true;
}

std::vector<Moebius> face_elements(const std::vector<OrbitElement>& elems, const Radial& radial,
                                   const SameElement& same) {
    std::vector<Moebius> faces;
    for (std::size_t i : radial.faces) faces.push_back(elems[i].element);
    return close_under_inverse(faces, same);
}

/// Throws if two distinct words of length <= 2 move p0 to almost the same
/// place; returns the smallest separation seen.
double check_discreteness(const std::vector<Moebius>& alphabet, const HPoint& p0) {
    std::vector<Moebius> elems{Moebius::identity()};
    for (const auto& g : alphabet) {
        elems.push_back(g);
        for (const auto& h : alphabet) elems.push_back(g * h);
    }
    std::vector<Moebius> distinct;
    for (const auto& e : elems) {
        const double scale = 1.0 + std::abs(e.a()) + std::abs(e.b()) + std::abs(e.c()) + std::abs(e.d());
        bool dup = false;
        for (const auto& o : distinct) {
            if (o.approx_equal(e, 1e-9 * scale)) {
                dup = true;
                break;
            }
        }
        if (!dup) distinct.push_back(e);
    }
    std::vector<HPoint> pts;
    for (const auto& e : distinct) pts.push_back(e.apply(p0));
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = dist(pts[i], pts[j]);
            if (d < 1e-6) {
                throw Error(ErrorKind::DiscretenessSuspect,
                            "two distinct words of length <= 2 move the basepoint to the same place");
            }
            sep = std::min(sep, d);
        }
    }
    return sep;
}

FuchsianGroup build_group(std::vector<Moebius> generators, int genus, HPoint p0,
                          const GroupLimits& limits, std::vector<NamedCurve> curves,
                          SurfaceSource source) {
    if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "empty generator list");
    if (genus < 2) throw Error(ErrorKind::InvalidArgument, "genus must be at least 2");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (!is_hyperbolic(generators[i])) {
            std::ostringstream os;
            os << "generator " << i + 1 << " has |trace| = " << std::abs(generators[i].trace());
            throw Error(ErrorKind::NotHyperbolicGenerator, os.str());
        }
        generators[i] = generators[i].with_word({static_cast<int>(i) + 1});
    }

    std::vector<Moebius> alphabet;
    for (const auto& g : generators) {
        alphabet.push_back(g);
        alphabet.push_back(g.inverse());
    }
    // Merge radius for orbit deduplication: a quarter of the smallest orbit
    // separation, refined once the true minimum displacement is known.
    SameElement same{p0, 0.25 * std::min(check_discreteness(alphabet, p0), 1.0)};

    const double target = 4 * kPi * (genus - 1);
    const double tol = kAreaRelTolerance * target;
    const std::vector<Moebius> base_alphabet = alphabet;
    std::size_t budget = 20000;
    std::vector<OrbitElement> final_elems;
    Radial final_radial;
    bool done = false;
    for (int iter = 0; iter < 40 && !done && budget <= limits.element_cap; ++iter) {
        auto elems = best_first_orbit(alphabet, p0, budget, limits.element_cap, same.merge);
        const Radial radial = radial_domain(elems, p0);
        if (!std::isfinite(radial.radius)) {
            budget *= 2;
            continue;
        }
        std::vector<Moebius> faces = face_elements(elems, radial, same);
        if (std::abs(radial.area - target) <= tol) {
            // Certification: with the face pairings as alphabet, a prefix
            // bound of R + diameter reaches every element within R, so the
            // recomputed domain must reproduce itself.
            const double rad = radial.radius;
            const double r = std::min(2.0 * rad * 1.05 + 0.1, limits.radius_cap);
            try {
                const double prefix = std::min(r + 1.1 * rad, limits.radius_cap);
                auto cert = bfs_orbit(faces, p0, prefix, r, limits.element_cap, same.merge);
                if (!cert.empty() && 4.0 * same.merge > cert.front().displacement) {
                    same.merge = 0.25 * cert.front().displacement;
                    cert = bfs_orbit(faces, p0, prefix, r, limits.element_cap, same.merge);
                }
                const Radial check = radial_domain(cert, p0);
                if (std::isfinite(check.radius)) {
                    std::vector<Moebius> next = face_elements(cert, check, same);
                    if (std::abs(check.area - target) <= tol && check.radius <= rad * (1.0 + 1e-9) &&
                        same_elements(next, faces, same)) {
                        final_elems = std::move(cert);
                        final_radial = check;
                        done = true;
                        break;
                    }
                    faces.insert(faces.end(), next.begin(), next.end());
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::EnumerationBudgetExceeded) throw;
            }
            budget *= 2;
        }
        std::vector<Moebius> next = base_alphabet;
        next.insert(next.end(), faces.begin(), faces.end());
        next = close_under_inverse(next, same);
        if (same_elements(next, alphabet, same)) budget *= 2;
        alphabet = std::move(next);
    }
    if (!done) {
        std::ostringstream os;
        os << "could not certify a Dirichlet domain of area 4*pi*(g-1) = " << target;
        throw Error(ErrorKind::AreaMismatch, os.str());
    }

    auto state = std::make_shared<FuchsianGroup::State>();
    state->generators = std::move(generators);
    state->genus = genus;
    state->basepoint = p0;
    state->domain_radius = final_radial.radius;
    state->domain_area = final_radial.area;
    state->faces = face_elements(final_elems, final_radial, same);
    state->merge_radius = same.merge;
    state->curves = std::move(curves);
    state->source = std::move(source);
    state->limits = limits;

    // Local orbit: enough for injectivity radii at any point (bounded by
    // ln(4g-2)) after reduction into the domain.
    const double diam = 1.1 * final_radial.radius;
    const double orbit_radius =
        std::min(2.0 * std::log(4.0 * genus - 2.0) + 2.0 * diam + 0.5, limits.radius_cap);
    state->orbit = bfs_orbit(state->faces, p0, orbit_radius + diam, orbit_radius, limits.element_cap, same.merge);
    state->orbit_radius = orbit_radius;

    // Dirichlet check list: faces first (they reject most points), then the
    // rest of the orbit within 2 * diameter_bound.
    for (const auto& f : state->faces) state->check_points.push_back(f.apply(p0));
    for (const auto& e : state->orbit) {
        if (e.displacement > 2.0 * diam) break;
        const bool is_face = std::any_of(state->faces.begin(), state->faces.end(),
                                         [&](const Moebius& f) { return same(f, e.element); });
        if (!is_face) state->check_points.push_back(e.element.apply(p0));
    }

    FuchsianGroup group(std::move(state));
    if (limits.mc_area_samples > 0) {
        const AreaEstimate est = mc_area_estimate(group, limits.mc_area_samples, limits.mc_seed);
        if (std::abs(est.area - target) > 3.0 * est.standard_error) {
            std::ostringstream os;
            os << "Monte-Carlo area " << est.area << " +- " << est.standard_error << " vs " << target;
            throw Error(ErrorKind::AreaMismatch, os.str());
        }
    }
    return group;
}

// ------------------------------------------------ right-angled hexagons

// Reflections are orientation-reversing; they are carried as det = -1
// matrices acting by z -> (a conj(z) + b)/(c conj(z) + d). A product of two
// reflections is an ordinary Moebius transformation.
Mat frame_reflection(const Moebius& frame) {
    const Mat f = raw(frame);
    const Mat finv{f.d, -f.b, -f.c, f.a};
    const Mat j{-1, 0, 0, 1};
    return f * j * finv;
}

HPoint hyperboloid_centroid(const std::vector<HPoint>& pts) {
    double t = 0, x = 0, y = 0;
    for (const auto& p : pts) {
        const double n2 = p.x() * p.x() + p.y() * p.y();
        t += (n2 + 1.0) / (2.0 * p.y());
        x += p.x() / p.y();
        y += (n2 - 1.0) / (2.0 * p.y());
    }
    const double norm = std::sqrt(t * t - x * x - y * y);
    t /= norm;
    x /= norm;
    y /= norm;
    const double py = 1.0 / (t - y);
    return {x * py, py};
}

}  // namespace

// ------------------------------------------------------- FuchsianGroup

double FuchsianGroup::target_area() const { return 4 * kPi * (genus() - 1); }

Moebius FuchsianGroup::evaluate(const Word& w) const {
    Moebius out;
    for (int letter : w) {
        const int idx = std::abs(letter) - 1;
        if (letter == 0 || idx >= static_cast<int>(generators().size())) {
            std::ostringstream os;
            os << "word letter " << letter << " out of range";
            throw Error(ErrorKind::InvalidArgument, os.str());
        }
        out = out * (letter > 0 ? generators()[idx] : generators()[idx].inverse());
    }
    return out;
}

FuchsianGroup FuchsianGroup::conjugated(const Moebius& m) const {
    const Moebius mi = m.inverse().with_word({});
    const Moebius mm = m.with_word({});
    auto conj = [&](const Moebius& g) { return mm * g * mi; };
    auto state = std::make_shared<State>(*state_);
    for (auto& g : state->generators) g = conj(g);
    for (auto& f : state->faces) f = conj(f);
    for (auto& e : state->orbit) e.element = conj(e.element);
    for (auto& q : state->check_points) q = mm.apply(q);
    state->basepoint = mm.apply(state_->basepoint);
    state->source = {"generators", {}};
    return FuchsianGroup(std::move(state));
}

FuchsianGroup::Reduced FuchsianGroup::reduce(const HPoint& z) const {
    const HPoint& p0 = basepoint();
    HPoint cur = z;
    Moebius acc;
    double cur_ch = cosh_dist(cur, p0);
    for (int step = 0; step < 100000; ++step) {
        int best = -1;
        double best_ch = cur_ch;
        for (std::size_t i = 0; i < state_->faces.size(); ++i) {
            const double ch = cosh_dist(state_->faces[i].apply(cur), p0);
            if (ch < best_ch * (1.0 - 1e-14)) {
                best_ch = ch;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        cur = state_->faces[best].apply(cur);
        acc = state_->faces[best] * acc;
        cur_ch = best_ch;
    }
    return {cur, acc, disp_from_cosh(cur_ch)};
}

bool FuchsianGroup::in_dirichlet_domain(const HPoint& z, double slack) const {
    const HPoint& p0 = basepoint();
    const double own = std::norm(z.z() - p0.z()) / p0.y();
    for (const auto& q : state_->check_points) {
        // cosh d(z,p0) <= cosh d(z,q)  <=>  |z-p0|^2 / y0 <= |z-q|^2 / yq
        const double other = std::norm(z.z() - q.z()) / q.y();
        if (own > other * (1.0 + slack) + slack) return false;
    }
    return true;
}

// ------------------------------------------------------------ builders

FuchsianGroup from_generators(const std::vector<Matrix2>& mats, int genus, const GroupLimits& limits,
                              HPoint basepoint, std::vector<NamedCurve> curves) {
    if (mats.empty()) throw Error(ErrorKind::InvalidArgument, "empty generator list");
    std::vector<Moebius> gens;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const auto& m = mats[i];
        const double det = m[0] * m[3] - m[1] * m[2];
        if (!(det > 0.0)) {
            std::ostringstream os;
            os << "generator " << i + 1 << " has non-positive determinant";
            throw Error(ErrorKind::InvalidArgument, os.str());
        }
        gens.emplace_back(m[0], m[1], m[2], m[3]);
    }
    return build_group(std::move(gens), genus, basepoint, limits, std::move(curves), {"generators", {}});
}

FuchsianGroup bolza(const GroupLimits& limits) {
    const double inradius = std::acosh(1.0 + std::sqrt(2.0));
    const Moebius t = Moebius::axis_translation(2.0 * inradius);
    std::vector<Moebius> gens;
    for (int k = 0; k < 4; ++k) {
        const Moebius r = Moebius::rotation(k * kPi / 4);
        gens.push_back(r * t * r.inverse());
    }
    std::vector<NamedCurve> curves;
    for (int k = 0; k < 4; ++k) curves.push_back({"a" + std::to_string(k + 1), {k + 1}});
    return build_group(std::move(gens), 2, HPoint(0.0, 1.0), limits, std::move(curves), {"bolza", {}});
}

namespace {

FuchsianGroup build_doubled_pants(double L1, double L2, double L3, const GroupLimits& limits) {
    const std::array<double, 3> a{L1 / 2, L2 / 2, L3 / 2};
    auto opposite = [&](int i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        return std::acosh((std::cosh(a[j]) * std::cosh(a[k]) + std::cosh(a[i])) /
                          (std::sinh(a[j]) * std::sinh(a[k])));
    };
    const std::array<double, 3> b{opposite(0), opposite(1), opposite(2)};

    // Walk the hexagon a1, b3, a2, b1, a3, b2 with right-angle turns.
    const std::array<double, 6> sides{a[0], b[2], a[1], b[0], a[2], b[1]};
    std::array<Mat, 6> refl{};
    std::vector<HPoint> vertices;
    Moebius frame;
    for (int s = 0; s < 6; ++s) {
        refl[s] = frame_reflection(frame);
        vertices.push_back(frame.apply(HPoint(0.0, 1.0)));
        frame = frame * Moebius::axis_translation(sides[s]) * Moebius::rotation(-kPi / 2);
    }
    // sides: 0=a1 1=b3 2=a2 3=b1 4=a3 5=b2; a-sides are even indices
    auto type = [](int s) { return s % 2 == 0 ? 1 : 2; };  // 1 = (1,0), 2 = (0,1)
    const Mat id{1, 0, 0, 1};
    const std::array<Mat, 4> rep{id, refl[0], refl[1], refl[0] * refl[1]};
    const std::array<Mat, 4> rep_inv{id, refl[0], refl[1], refl[1] * refl[0]};

    auto to_moebius = [](const Mat& m) {
        // det(m) = +1 up to rounding for an even number of reflections
        return Moebius(double(m.a), double(m.b), double(m.c), double(m.d));
    };
    std::vector<Moebius> gens;
    auto add = [&](const Moebius& g) {
        if (!is_hyperbolic(g) && std::abs(g.trace()) < 2.0 + 1e-9 && g.approx_equal(Moebius::identity(), 1e-9)) return;
        for (const auto& o : gens) {
            if (o.approx_equal(g, 1e-9) || o.approx_equal(g.inverse(), 1e-9)) return;
        }
        gens.push_back(g);
    };
    // The gluing curves first: c1 = s_b3 s_b2 (along a1), c2 = s_b3 s_b1 (along a2).
    add(to_moebius(refl[1] * refl[5]));
    add(to_moebius(refl[1] * refl[3]));
    for (int t = 0; t < 4; ++t) {
        for (int s = 0; s < 6; ++s) {
            const int coset = t ^ type(s);
            add(to_moebius(rep[t] * refl[s] * rep_inv[coset]));
        }
    }

    // Put an interior point of the hexagon at i.
    const Moebius centre = Moebius::to_i(hyperboloid_centroid(vertices));
    const Moebius centre_inv = centre.inverse();
    for (auto& g : gens) g = centre * g * centre_inv;

    std::vector<NamedCurve> curves{{"c1", {1}}, {"c2", {2}}, {"c3", {-2, 1}}};
    return build_group(std::move(gens), 2, HPoint(0.0, 1.0), limits, std::move(curves),
                       {"doubled_pants", {L1, L2, L3}});
}

}  // namespace

FuchsianGroup doubled_pants(double L1, double L2, double L3, const GroupLimits& limits) {
    for (double L : {L1, L2, L3}) {
        if (!(L >= 1e-4) || !(L <= 30.0)) {
            std::ostringstream os;
            os << "boundary length " << L << " outside [1e-4, 30]";
            throw Error(ErrorKind::DegenerateLength, os.str());
        }
    }
    try {
        return build_doubled_pants(L1, L2, L3, limits);
    } catch (const Error& e) {
        // extreme length ratios break the hexagon arithmetic in double precision
        if (e.kind() != ErrorKind::InvalidArgument) throw;
        std::ostringstream os;
        os << "boundary lengths (" << L1 << ", " << L2 << ", " << L3 << ") are numerically degenerate: " << e.what();
        throw Error(ErrorKind::DegenerateLength, os.str());
    }
}

// ---------------------------------------------------------- enumeration

std::vector<OrbitElement> enumerate(const FuchsianGroup& group, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
    if (radius > group.limits().radius_cap) {
        std::ostringstream os;
        os << "radius " << radius << " exceeds the hard cap " << group.limits().radius_cap;
        throw Error(ErrorKind::EnumerationBudgetExceeded, os.str());
    }
    if (radius <= group.local_orbit_radius()) {
        std::vector<OrbitElement> out;
        for (const auto& e : group.local_orbit()) {
            if (e.displacement > radius) break;
            out.push_back(e);
        }
        return out;
    }
    // tiles meeting the ball have centres within one domain radius of it
    const double prefix = radius + group.domain_radius() * (1.0 + 1e-9) + 1e-9;
    return bfs_orbit(group.face_pairings(), group.basepoint(), prefix, radius, group.limits().element_cap,
                     group.orbit_merge_radius());
}

namespace {

/// Orbit elements with displacement <= radius, from the cache when possible.
std::vector<OrbitElement> orbit_within(const FuchsianGroup& group, double radius) {
    if (radius <= group.local_orbit_radius()) return {};
    return enumerate(group, std::min(radius, group.limits().radius_cap));
}

}  // namespace

std::vector<Moebius> elements_near(const FuchsianGroup& group, const HPoint& z, const HPoint& w,
                                   double radius) {
    const auto rz = group.reduce(z);
    const auto rw = group.reduce(w);
    const double bound = radius + rz.offset + rw.offset + 1e-9;
    const double cosh_r = std::cosh(radius) * (1.0 + 1e-12);
    const Moebius a = rz.to_domain;
    const Moebius b_inv = rw.to_domain.inverse();

    std::vector<Moebius> out;
    if (cosh_dist(rz.point, rw.point) <= cosh_r) out.push_back(b_inv * a);
    auto scan = [&](const std::vector<OrbitElement>& orbit) {
        for (const auto& e : orbit) {
            if (e.displacement > bound) break;
            if (cosh_dist(e.element.apply(rz.point), rw.point) <= cosh_r) out.push_back(b_inv * e.element * a);
        }
    };
    const auto extra = orbit_within(group, bound);
    scan(extra.empty() ? group.local_orbit() : extra);
    return out;
}

double surface_distance(const FuchsianGroup& group, const HPoint& z, const HPoint& w, double cap) {
    const auto rz = group.reduce(z);
    const auto rw = group.reduce(w);
    double best = std::min(cap, dist(rz.point, rw.point));
    auto scan = [&](const std::vector<OrbitElement>& orbit) {
        for (const auto& e : orbit) {
            if (e.displacement > best + rz.offset + rw.offset) break;
            best = std::min(best, dist(e.element.apply(rz.point), rw.point));
        }
    };
    const auto extra = orbit_within(group, cap + rz.offset + rw.offset);
    scan(extra.empty() ? group.local_orbit() : extra);
    return best;
}

SystoleResult systole(const FuchsianGroup& group, double cutoff) {
    const double slack = cutoff - 2.0 * group.diameter_bound();
    if (!(slack > 0.0)) {
        std::ostringstream os;
        os << "cutoff " << cutoff << " does not exceed 2 * diameter_bound = " << 2.0 * group.diameter_bound();
        throw Error(ErrorKind::InconclusiveCutoff, os.str());
    }
    const auto orbit = enumerate(group, cutoff);
    const OrbitElement* best = nullptr;
    double best_len = std::numeric_limits<double>::infinity();
    for (const auto& e : orbit) {
        if (!is_hyperbolic(e.element)) continue;
        const double len = translation_length(e.element);
        if (len < best_len - 1e-12) {
            best_len = len;
            best = &e;
        }
    }
    if (best == nullptr || best_len > slack) {
        std::ostringstream os;
        os << "no closed geodesic of length <= " << slack << " found; raise the cutoff";
        throw Error(ErrorKind::InconclusiveCutoff, os.str());
    }
    return {best_len, best->element};
}

// --------------------------------------------------------- Monte Carlo

HPoint sample_disk(const HPoint& center, double radius, double u1, double u2) {
    // area within rho is proportional to sinh^2(rho/2)
    const double rho = 2.0 * std::asinh(std::sqrt(u1) * std::sinh(radius / 2));
    return point_at(center, 2 * kPi * u2, rho);
}

namespace {
constexpr std::size_t kChunk = 1 << 14;
}

std::vector<HPoint> mc_sample_domain(const FuchsianGroup& group, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
    const double radius = group.diameter_bound();
    std::vector<HPoint> out;
    out.reserve(n);
    std::size_t next_chunk = 0;
    const std::size_t batch = std::max<std::size_t>(1, thread_count());
    while (out.size() < n) {
        std::vector<std::vector<HPoint>> found(batch);
        parallel_for(batch, [&](std::size_t i) {
            Rng rng = Rng::stream(seed, next_chunk + i);
            for (std::size_t k = 0; k < kChunk; ++k) {
                const double u1 = rng.uniform();
                const double u2 = rng.uniform();
                const HPoint z = sample_disk(group.basepoint(), radius, u1, u2);
                if (group.in_dirichlet_domain(z)) found[i].push_back(z);
            }
        });
        next_chunk += batch;
        for (auto& f : found) {
            for (const auto& z : f) {
                if (out.size() < n) out.push_back(z);
            }
        }
    }
    return out;
}

AreaEstimate mc_area_estimate(const FuchsianGroup& group, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
    const double radius = group.diameter_bound();
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::size_t> hits(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = Rng::stream(seed, c);
        const std::size_t count = std::min(kChunk, n - c * kChunk);
        for (std::size_t k = 0; k < count; ++k) {
            const double u1 = rng.uniform();
            const double u2 = rng.uniform();
            if (group.in_dirichlet_domain(sample_disk(group.basepoint(), radius, u1, u2))) ++hits[c];
        }
    });
    std::size_t accepted = 0;
    for (std::size_t h : hits) accepted += h;
    const double p = static_cast<double>(accepted) / static_cast<double>(n);
    const double ball = ball_area(radius);
    return {ball * p, ball * std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, accepted};
}

}  // namespace hypsurf
