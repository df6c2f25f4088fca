#pragma once

// Upper half-plane model: points, PSL(2,R) elements, geodesics and the
// distance formulas built on them.

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "hypsurf/errors.hpp"

namespace hypsurf {

using Complex = std::complex<double>;

/// Signed generator indices, 1-based: +k is generator k, -k its inverse.
using Word = std::vector<int>;

/// Concatenates two words with free cancellation at the seam.
Word concat_words(const Word& lhs, const Word& rhs);
Word invert_word(const Word& w);

/// A point of the upper half-plane. Construction rejects y <= 0.
class HPoint {
public:
    HPoint(double x, double y);
    explicit HPoint(Complex z) : HPoint(z.real(), z.imag()) {}

    double x() const { return x_; }
    double y() const { return y_; }
    Complex z() const { return {x_, y_}; }

    /// Euclidean modulus and argument; the argument lies in (0, pi).
    double polar_r() const;
    double polar_theta() const;

    static HPoint from_polar(double r, double theta);

private:
    double x_;
    double y_;
};

/// Orientation-preserving isometry z -> (az+b)/(cz+d) with ad - bc = 1.
///
/// The matrix is renormalized to unit determinant on construction and
/// sign-canonicalized so that the first nonzero entry of (a,b,c,d) is
/// positive; PSL(2,R) equality is then entrywise.
class Moebius {
public:
    Moebius() = default;
    Moebius(double a, double b, double c, double d, Word word = {});

    static Moebius identity() { return {}; }
    /// Hyperbolic translation along the imaginary axis: i -> e^t i.
    static Moebius axis_translation(double t);
    /// Elliptic rotation about i by angle psi (counterclockwise).
    static Moebius rotation(double psi);
    /// Affine map sending p to i.
    static Moebius to_i(const HPoint& p);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    const Word& word() const { return word_; }

    double trace() const { return a_ + d_; }
    Moebius inverse() const;
    Moebius with_word(Word w) const;

    HPoint apply(const HPoint& z) const;
    Complex apply(Complex z) const;
    /// Action on the extended real line; infinity is represented by +inf.
    double apply_boundary(double x) const;

    bool approx_equal(const Moebius& other, double tol = 1e-9) const;

    friend Moebius operator*(const Moebius& lhs, const Moebius& rhs);

private:
    void canonicalize();

    double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
    Word word_;
};

/// Boundary endpoints at |x| beyond this are treated as infinity.
inline constexpr double kBoundaryInfinity = 1e12;

/// A complete geodesic: either the vertical line Re z = x0 or a Euclidean
/// semicircle centred on the real axis.
class Geodesic {
public:
    enum class Kind { Vertical, Circular };

    static Geodesic vertical(double x0);
    static Geodesic circular(double center, double radius);
    /// Geodesic with the given ideal endpoints (either may be +inf).
    static Geodesic from_endpoints(double e1, double e2);
    static Geodesic through(const HPoint& p, const HPoint& q);

    Kind kind() const { return kind_; }
    double x0() const { return x0_; }
    double center() const { return center_; }
    double radius() const { return radius_; }
    /// Ideal endpoints; for a vertical line the second one is +inf.
    std::pair<double, double> endpoints() const;

    bool contains(const HPoint& p, double tol = 1e-9) const;
    bool same_as(const Geodesic& other, double tol = 1e-9) const;

private:
    Geodesic() = default;

    Kind kind_ = Kind::Vertical;
    double x0_ = 0.0;
    double center_ = 0.0;
    double radius_ = 0.0;
};

Geodesic apply(const Moebius& g, const Geodesic& geo);

double dist(const HPoint& z, const HPoint& w);
/// cosh of the distance, cheaper when only comparisons are needed.
double cosh_dist(const HPoint& z, const HPoint& w);

/// Distance to the imaginary axis: ln(csc theta + |cot theta|).
double dist_to_imaginary_axis(const HPoint& z);

HPoint apply(const Moebius& g, const HPoint& z);

/// 2 arccosh(|tr|/2); throws for elliptic and parabolic elements.
double translation_length(const Moebius& g);
bool is_hyperbolic(const Moebius& g);

struct FixedPoints {
    double repelling;
    double attracting;
};
FixedPoints fixed_points(const Moebius& g);

Geodesic axis(const Moebius& g);

/// Isometry sending the endpoint pair (from, to) of a geodesic to (0, inf).
Moebius boundary_normalizer(double from, double to);

/// Isometry sending p to i and q onto the upward imaginary axis, so q maps
/// to i e^{dist(p,q)}. Requires p != q.
Moebius segment_frame(const HPoint& p, const HPoint& q);

/// Direction of w as seen from p, measured as a conformal angle in the
/// tangent plane at p (consistent with point_at).
double direction_angle(const HPoint& p, const HPoint& w);
/// Point at hyperbolic distance r from p in direction angle.
HPoint point_at(const HPoint& p, double angle, double r);

struct GeodesicDistance {
    double distance = 0.0;
    bool intersecting = false;
    /// Set when the geodesics share an ideal endpoint (no nearest pair).
    bool asymptotic = false;
    std::optional<HPoint> nearest_on_first;
    std::optional<HPoint> nearest_on_second;
};
GeodesicDistance dist_geodesics(const Geodesic& g1, const Geodesic& g2);

struct PointGeodesicDistance {
    double distance;
    HPoint foot;
};
PointGeodesicDistance dist_point_geodesic(const HPoint& z, const Geodesic& geo);

/// Distance from z to the closed segment [p, q].
double dist_point_segment(const HPoint& z, const HPoint& p, const HPoint& q);

/// Area of a hyperbolic disk of radius r: 2 pi (cosh r - 1).
double ball_area(double r);

}  // namespace hypsurf
