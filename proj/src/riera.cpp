#include "hypsurf/riera.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace hypsurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFingerprintTol = 1e-7;

Word word_power(const Word& w, int m) {
    Word out;
    const Word base = m >= 0 ? w : invert_word(w);
    for (int k = 0; k < std::abs(m); ++k) out = concat_words(out, base);
    return out;
}

struct KeyHash {
    std::size_t operator()(const std::tuple<int, long long, long long>& k) const {
        const auto [f, a, b] = k;
        std::size_t h = static_cast<std::size_t>(a) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::size_t>(b) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        return h ^ static_cast<std::size_t>(f);
    }
};

}  // namespace

AxisFrame conjugate_to_axis(const FuchsianGroup& group, const Word& w) {
    const Moebius g = group.evaluate(w);
    const double len = translation_length(g);  // throws for elliptic and parabolic
    const FixedPoints fp = fixed_points(g);
    const Moebius m = boundary_normalizer(fp.repelling, fp.attracting);
    const double h = std::exp(0.5 * len);
    return {group.conjugated(m), Moebius(h, 0.0, 0.0, 1.0 / h, w), m, len};
}

std::vector<CosetRep> double_cosets(const AxisFrame& frame, int cutoff) {
    if (cutoff < 1 || cutoff > 24) throw Error(ErrorKind::InvalidArgument, "cutoff must lie in [1, 24]");
    const double len = frame.length;
    const Word& aw = frame.A.word();
    const auto orbit = enumerate(frame.group, static_cast<double>(cutoff));

    std::vector<CosetRep> reps;
    std::vector<double> ts;
    std::vector<double> keys;
    std::unordered_map<std::tuple<int, long long, long long>, std::size_t, KeyHash> seen;

    auto find = [&](int flag, double t, double s2) -> bool {
        const long long kt = std::llround(t / kFingerprintTol);
        const long long ks = std::llround(s2 / kFingerprintTol);
        const long long wrap = std::llround(len / kFingerprintTol);
        for (long long shift : {0LL, wrap, -wrap}) {
            for (long long dt = -1; dt <= 1; ++dt) {
                for (long long ds = -1; ds <= 1; ++ds) {
                    auto it = seen.find({flag, kt + dt + shift, ks + ds});
                    if (it == seen.end()) continue;
                    const std::size_t j = it->second;
                    double gap = std::abs(ts[j] - t);
                    gap = std::min(gap, len - gap);
                    if (gap < kFingerprintTol && std::abs(keys[j] - s2) < kFingerprintTol) return true;
                }
            }
        }
        return false;
    };

    for (const auto& e : orbit) {
        const Moebius& b = e.element;
        const double scale = std::max({std::abs(b.a()), std::abs(b.b()), std::abs(b.c()), std::abs(b.d())});
        const bool fixes_zero = std::abs(b.b()) <= 1e-10 * scale;
        const bool fixes_inf = std::abs(b.c()) <= 1e-10 * scale;
        if (fixes_zero || fixes_inf) continue;  // a power of A, or asymptotic to the axis
        if (std::abs(b.d()) <= 1e-14 * scale || std::abs(b.a()) <= 1e-14 * scale) continue;

        const double e1 = b.b() / b.d();
        const double e2 = b.a() / b.c();
        const bool crossing = e1 * e2 < 0.0;
        const double signed_u = (e1 + e2) / (e2 - e1);
        const double u = std::abs(signed_u);
        const double r = std::sqrt(std::abs(e1 * e2));

        const double lr = std::log(r);
        const int m = -static_cast<int>(std::floor(lr / len));
        double t = lr + m * len;
        if (t >= len) t -= len;
        if (t < 0.0) t = 0.0;

        // second fingerprint coordinate: signed distance, or signed crossing cosine
        const double s2 = crossing ? signed_u : std::copysign(std::acosh(std::max(u, 1.0)), e1);
        const int flag = crossing ? 1 : 0;
        if (find(flag, t, s2)) continue;

        const double h = std::exp(0.5 * m * len);
        const Moebius am(h, 0.0, 0.0, 1.0 / h, word_power(aw, m));
        double theta = kPi / 2;
        if (!crossing) {
            theta = std::asin(std::min(1.0, 1.0 / u));
            if (e1 < 0.0) theta = kPi - theta;
        }
        seen[{flag, std::llround(t / kFingerprintTol), std::llround(s2 / kFingerprintTol)}] = reps.size();
        reps.push_back({am * b, u, std::exp(t), theta, crossing});
        ts.push_back(t);
        keys.push_back(s2);
    }

    std::stable_sort(reps.begin(), reps.end(), [](const CosetRep& x, const CosetRep& y) {
        if (x.intersecting != y.intersecting) return x.intersecting;
        if (x.u != y.u) return x.u < y.u;
        if (x.r != y.r) return x.r < y.r;
        return x.theta < y.theta;
    });
    return reps;
}

double riera_term(double u) {
    if (!(u > 1.0)) {
        std::ostringstream os;
        os << "riera_term needs u > 1, got " << u;
        throw Error(ErrorKind::DomainError, os.str());
    }
    if (u < 2.0) return u * std::log1p(2.0 / (u - 1.0)) - 2.0;
    // 2 (x^2/3 + x^4/5 + ...) with x = 1/u avoids the cancellation
    const double x2 = 1.0 / (u * u);
    double sum = 0.0;
    double p = x2;
    for (int k = 1; k < 200; ++k) {
        const double term = p / (2.0 * k + 1.0);
        sum += term;
        if (term < 1e-18 * sum) break;
        p *= x2;
    }
    return 2.0 * sum;
}

RieraEvaluation gradient_norm_sq(const FuchsianGroup& group, const Word& w, int cutoff) {
    const AxisFrame frame = conjugate_to_axis(group, w);
    const auto reps = double_cosets(frame, cutoff);

    RieraEvaluation ev{};
    ev.curve_length = frame.length;
    ev.word_cutoff = cutoff;
    ev.min_u = std::numeric_limits<double>::infinity();
    std::vector<double> us;
    for (const auto& rep : reps) {
        if (rep.intersecting) {
            ++ev.intersecting_excluded;
            continue;
        }
        us.push_back(rep.u);
        ev.min_u = std::min(ev.min_u, rep.u);
    }
    ev.coset_count = us.size();
    // smallest terms first
    double sum = 0.0;
    for (auto it = us.rbegin(); it != us.rend(); ++it) sum += riera_term(*it);
    ev.truncated_sum = sum;
    ev.value = 2.0 / kPi * (frame.length + sum);

    // Heuristic: N(u <= U) ~ K U, fitted at the median, with terms ~ (2/3) u^-2
    // beyond the largest u found.
    if (us.size() >= 10) {
        const double u_med = us[us.size() / 2];
        const double k = static_cast<double>(us.size() / 2 + 1) / u_med;
        ev.tail_bound = 2.0 / 3.0 * k / us.back();
    }
    return ev;
}

double wolpert_distance_bound(double L) {
    if (!(L > 0.0)) throw Error(ErrorKind::InvalidArgument, "length must be positive");
    return std::sqrt(2.0 * kPi * L);
}

double up_eff_rhs(double L, double C) {
    if (!(C > 0.0)) throw Error(ErrorKind::InvalidArgument, "C must be positive");
    if (!(L >= 8.0)) {
        std::ostringstream os;
        os << "systole " << L << " below 8";
        throw Error(ErrorKind::OutOfRegime, os.str());
    }
    return 2.0 / kPi * L * (1.0 + C * std::exp(-L / 8.0));
}

OrbitBallReport orbit_ball_checks(const std::vector<CosetRep>& cosets, double systole_length,
                                  std::size_t max_reps) {
    OrbitBallReport rep{};
    rep.hypothesis_met = systole_length >= 8.0;
    rep.sin_theta_bound = 2.0 * std::exp(-systole_length / 8.0);
    rep.min_pairwise_dist = std::numeric_limits<double>::infinity();

    std::vector<HPoint> pts;
    for (const auto& c : cosets) {
        if (c.intersecting) continue;
        rep.max_sin_theta = std::max(rep.max_sin_theta, std::sin(c.theta));
        if (pts.size() < max_reps) pts.push_back(HPoint::from_polar(c.r, c.theta));
    }
    rep.reps_compared = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            rep.min_pairwise_dist = std::min(rep.min_pairwise_dist, dist(pts[i], pts[j]));
        }
    }
    rep.passed = rep.hypothesis_met && rep.min_pairwise_dist >= 2.0 && rep.max_sin_theta <= rep.sin_theta_bound;
    return rep;
}

}  // namespace hypsurf
