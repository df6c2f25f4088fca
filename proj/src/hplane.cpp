#include "hypsurf/hplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hypsurf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTraceTolerance = 1e-12;

bool is_infinite(double x) { return !std::isfinite(x) || std::abs(x) >= kBoundaryInfinity; }

Complex cayley(Complex w) { return (w - Complex(0, 1)) / (w + Complex(0, 1)); }

Complex inverse_cayley(Complex zeta) { return Complex(0, 1) * (1.0 + zeta) / (1.0 - zeta); }

}  // namespace

Word concat_words(const Word& lhs, const Word& rhs) {
    Word out = lhs;
    for (int letter : rhs) {
        if (!out.empty() && out.back() == -letter) {
            out.pop_back();
        } else {
            out.push_back(letter);
        }
    }
    return out;
}

Word invert_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& letter : out) letter = -letter;
    return out;
}

// ---------------------------------------------------------------- HPoint

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
    if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        std::ostringstream os;
        os << "point (" << x << ", " << y << ") is not in the upper half-plane";
        throw Error(ErrorKind::InvalidPoint, os.str());
    }
}

double HPoint::polar_r() const { return std::hypot(x_, y_); }

double HPoint::polar_theta() const { return std::atan2(y_, x_); }

HPoint HPoint::from_polar(double r, double theta) {
    return {r * std::cos(theta), r * std::sin(theta)};
}

// --------------------------------------------------------------- Moebius

Moebius::Moebius(double a, double b, double c, double d, Word word)
    : a_(a), b_(b), c_(c), d_(d), word_(std::move(word)) {
    const double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det)) {
        throw Error(ErrorKind::InvalidArgument, "matrix determinant must be positive");
    }
    const double s = 1.0 / std::sqrt(det);
    a_ *= s;
    b_ *= s;
    c_ *= s;
    d_ *= s;
    canonicalize();
}

void Moebius::canonicalize() {
    const double scale = std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
    for (double v : {a_, b_, c_, d_}) {
        if (std::abs(v) > 1e-12 * scale) {
            if (v < 0.0) {
                a_ = -a_;
                b_ = -b_;
                c_ = -c_;
                d_ = -d_;
            }
            return;
        }
    }
}

Moebius Moebius::axis_translation(double t) {
    return {std::exp(t / 2), 0.0, 0.0, std::exp(-t / 2)};
}

Moebius Moebius::rotation(double psi) {
    const double c = std::cos(psi / 2);
    const double s = std::sin(psi / 2);
    return {c, s, -s, c};
}

Moebius Moebius::to_i(const HPoint& p) {
    const double sy = std::sqrt(p.y());
    return {1.0 / sy, -p.x() / sy, 0.0, sy};
}

Moebius Moebius::inverse() const { return {d_, -b_, -c_, a_, invert_word(word_)}; }

Moebius Moebius::with_word(Word w) const {
    Moebius out = *this;
    out.word_ = std::move(w);
    return out;
}

Moebius operator*(const Moebius& lhs, const Moebius& rhs) {
    return {lhs.a_ * rhs.a_ + lhs.b_ * rhs.c_, lhs.a_ * rhs.b_ + lhs.b_ * rhs.d_,
            lhs.c_ * rhs.a_ + lhs.d_ * rhs.c_, lhs.c_ * rhs.b_ + lhs.d_ * rhs.d_,
            concat_words(lhs.word_, rhs.word_)};
}

Complex Moebius::apply(Complex z) const { return (a_ * z + b_) / (c_ * z + d_); }

HPoint Moebius::apply(const HPoint& z) const {
    const Complex den = c_ * z.z() + d_;
    const double n = std::norm(den);
    const double x = ((a_ * z.x() + b_) * (c_ * z.x() + d_) + a_ * c_ * z.y() * z.y()) / n;
    return {x, z.y() / n};
}

double Moebius::apply_boundary(double x) const {
    if (is_infinite(x)) {
        if (c_ == 0.0) return kInf;
        const double v = a_ / c_;
        return is_infinite(v) ? kInf : v;
    }
    const double den = c_ * x + d_;
    if (den == 0.0) return kInf;
    const double v = (a_ * x + b_) / den;
    return is_infinite(v) ? kInf : v;
}

bool Moebius::approx_equal(const Moebius& other, double tol) const {
    return std::abs(a_ - other.a_) <= tol && std::abs(b_ - other.b_) <= tol &&
           std::abs(c_ - other.c_) <= tol && std::abs(d_ - other.d_) <= tol;
}

// -------------------------------------------------------------- Geodesic

Geodesic Geodesic::vertical(double x0) {
    Geodesic g;
    g.kind_ = Kind::Vertical;
    g.x0_ = x0;
    return g;
}

Geodesic Geodesic::circular(double center, double radius) {
    if (!(radius > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "circular geodesic needs a positive radius");
    }
    Geodesic g;
    g.kind_ = Kind::Circular;
    g.center_ = center;
    g.radius_ = radius;
    return g;
}

Geodesic Geodesic::from_endpoints(double e1, double e2) {
    const bool inf1 = is_infinite(e1);
    const bool inf2 = is_infinite(e2);
    if (inf1 && inf2) throw Error(ErrorKind::InvalidArgument, "both endpoints at infinity");
    if (inf1) return vertical(e2);
    if (inf2) return vertical(e1);
    if (e1 == e2) throw Error(ErrorKind::InvalidArgument, "coincident endpoints");
    return circular(0.5 * (e1 + e2), 0.5 * std::abs(e2 - e1));
}

Geodesic Geodesic::through(const HPoint& p, const HPoint& q) {
    const Moebius inv = segment_frame(p, q).inverse();
    return from_endpoints(inv.apply_boundary(0.0), inv.apply_boundary(kInf));
}

std::pair<double, double> Geodesic::endpoints() const {
    if (kind_ == Kind::Vertical) return {x0_, kInf};
    return {center_ - radius_, center_ + radius_};
}

bool Geodesic::contains(const HPoint& p, double tol) const {
    if (kind_ == Kind::Vertical) return std::abs(p.x() - x0_) <= tol * (1.0 + std::abs(x0_));
    return std::abs(std::hypot(p.x() - center_, p.y()) - radius_) <= tol * (1.0 + radius_);
}

bool Geodesic::same_as(const Geodesic& other, double tol) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Vertical) return std::abs(x0_ - other.x0_) <= tol * (1.0 + std::abs(x0_));
    const double scale = 1.0 + std::abs(center_) + radius_;
    return std::abs(center_ - other.center_) <= tol * scale &&
           std::abs(radius_ - other.radius_) <= tol * scale;
}

Geodesic apply(const Moebius& g, const Geodesic& geo) {
    const auto [e1, e2] = geo.endpoints();
    return Geodesic::from_endpoints(g.apply_boundary(e1), g.apply_boundary(e2));
}

// ------------------------------------------------------------- distances

double cosh_dist(const HPoint& z, const HPoint& w) {
    return 1.0 + std::norm(z.z() - w.z()) / (2.0 * z.y() * w.y());
}

double dist(const HPoint& z, const HPoint& w) {
    return 2.0 * std::asinh(std::abs(z.z() - w.z()) / (2.0 * std::sqrt(z.y() * w.y())));
}

double dist_to_imaginary_axis(const HPoint& z) {
    // ln(csc t + |cot t|) = ln((r + |x|)/y) = asinh(|x|/y)
    return std::asinh(std::abs(z.x()) / z.y());
}

HPoint apply(const Moebius& g, const HPoint& z) { return g.apply(z); }

bool is_hyperbolic(const Moebius& g) { return std::abs(g.trace()) > 2.0 + kTraceTolerance; }

double translation_length(const Moebius& g) {
    const double t = std::abs(g.trace());
    if (t < 2.0 - kTraceTolerance) {
        throw Error(ErrorKind::EllipticElement, "|trace| < 2");
    }
    if (t <= 2.0 + kTraceTolerance) {
        throw Error(ErrorKind::ParabolicElement, "|trace| = 2 within tolerance");
    }
    return 2.0 * std::acosh(t / 2.0);
}

FixedPoints fixed_points(const Moebius& g) {
    translation_length(g);  // classification
    const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(d), 1.0});
    if (std::abs(c) <= 1e-15 * scale) {
        // z -> a^2 z + ab
        const double finite = a * b / (1.0 - a * a);
        if (a * a > 1.0) return {finite, kInf};
        return {kInf, finite};
    }
    const double tr = a + d;
    const double s = std::sqrt(tr * tr - 4.0);
    const double bq = a - d;
    const double sign = bq >= 0.0 ? 1.0 : -1.0;
    const double r1 = (bq + sign * s) / (2.0 * c);
    const double r2 = r1 != 0.0 ? (-b / c) / r1 : (bq - sign * s) / (2.0 * c);
    // derivative at a fixed point x is 1/(cx+d)^2
    const bool r1_attracting = std::abs(c * r1 + d) > std::abs(c * r2 + d);
    return r1_attracting ? FixedPoints{r2, r1} : FixedPoints{r1, r2};
}

Geodesic axis(const Moebius& g) {
    const FixedPoints fp = fixed_points(g);
    return Geodesic::from_endpoints(fp.repelling, fp.attracting);
}

Moebius boundary_normalizer(double from, double to) {
    const bool inf_from = is_infinite(from);
    const bool inf_to = is_infinite(to);
    if (inf_from && inf_to) throw Error(ErrorKind::InvalidArgument, "degenerate endpoints");
    if (inf_to) return {1.0, -from, 0.0, 1.0};
    if (inf_from) return {0.0, -1.0, 1.0, -to};
    if (from > to) return {1.0, -from, 1.0, -to};
    if (from < to) return {-1.0, from, 1.0, -to};
    throw Error(ErrorKind::InvalidArgument, "coincident endpoints");
}

Moebius segment_frame(const HPoint& p, const HPoint& q) {
    const Moebius t = Moebius::to_i(p);
    const Complex zeta = cayley(t.apply(q.z()));
    if (std::abs(zeta) == 0.0) throw Error(ErrorKind::InvalidArgument, "segment of zero length");
    return Moebius::rotation(-std::arg(zeta)) * t;
}

double direction_angle(const HPoint& p, const HPoint& w) {
    return std::arg(cayley(Moebius::to_i(p).apply(w.z())));
}

HPoint point_at(const HPoint& p, double angle, double r) {
    const Complex zeta = std::tanh(r / 2) * std::polar(1.0, angle);
    const Complex w = inverse_cayley(zeta);
    return Moebius::to_i(p).inverse().apply(HPoint(w.real(), std::max(w.imag(), 1e-300)));
}

GeodesicDistance dist_geodesics(const Geodesic& g1, const Geodesic& g2) {
    const auto [f1, f2] = g1.endpoints();
    const Moebius n = boundary_normalizer(f1, f2);
    const Moebius back = n.inverse();
    const auto [e1, e2] = g2.endpoints();
    double p = n.apply_boundary(e1);
    double q = n.apply_boundary(e2);

    GeodesicDistance out;
    const auto at_zero = [](double x) { return !is_infinite(x) && std::abs(x) <= 1e-12; };
    const int shared = (is_infinite(p) || at_zero(p)) + (is_infinite(q) || at_zero(q));
    if (shared == 2) {
        out.distance = 0.0;  // identical geodesics
        return out;
    }
    if (shared == 1) {
        out.distance = 0.0;
        out.asymptotic = true;
        return out;
    }
    if (p * q < 0.0) {
        const HPoint x = back.apply(HPoint(0.0, std::sqrt(-p * q)));
        out.distance = 0.0;
        out.intersecting = true;
        out.nearest_on_first = x;
        out.nearest_on_second = x;
        return out;
    }
    if (p > q) std::swap(p, q);
    const double u = std::abs(p + q) / (q - p);
    out.distance = std::acosh(std::max(u, 1.0));
    const double m = std::sqrt(p * q);
    out.nearest_on_first = back.apply(HPoint(0.0, m));
    out.nearest_on_second =
        back.apply(HPoint(2.0 * p * q / (p + q), m * (q - p) / std::abs(p + q)));
    return out;
}

PointGeodesicDistance dist_point_geodesic(const HPoint& z, const Geodesic& geo) {
    const auto [e1, e2] = geo.endpoints();
    const Moebius n = boundary_normalizer(e1, e2);
    const HPoint w = n.apply(z);
    return {dist_to_imaginary_axis(w), n.inverse().apply(HPoint(0.0, w.polar_r()))};
}

double dist_point_segment(const HPoint& z, const HPoint& p, const HPoint& q) {
    const double len = dist(p, q);
    if (len == 0.0) return dist(z, p);
    const Moebius frame = segment_frame(p, q);
    const HPoint w = frame.apply(z);
    const double r = w.polar_r();
    if (r < 1.0) return dist(w, HPoint(0.0, 1.0));
    const double top = std::exp(len);
    if (r > top) return dist(w, HPoint(0.0, top));
    return dist_to_imaginary_axis(w);
}

double ball_area(double r) {
    if (r < 0.0) throw Error(ErrorKind::InvalidArgument, "negative radius");
    // 2 pi (cosh r - 1) = 4 pi sinh^2(r/2), stable for small r
    const double s = std::sinh(r / 2);
    return 4.0 * std::numbers::pi * s * s;
}

}  // namespace hypsurf
