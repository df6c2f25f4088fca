#include "hypsurf/collar.hpp"

#include <cmath>
#include <sstream>

#include "hypsurf/errors.hpp"

namespace hypsurf {

namespace {

constexpr double kEdgeSlack = 1e-12;

void require_length(double L) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        std::ostringstream os;
        os << "curve length must be positive, got " << L;
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
}

bool within_collar(double L, double t) { return t >= 0.0 && t <= half_width(L) * (1.0 + kEdgeSlack) + kEdgeSlack; }

RegimeValue checked(RegimeValue v, const char* what, double L, double t) {
    if (!v.in_regime) {
        std::ostringstream os;
        os << what << ": L = " << L << ", distance = " << t << " outside L <= 2 asinh(1), 0 <= distance <= "
           << half_width(L);
        throw Error(ErrorKind::OutOfRegime, os.str());
    }
    return v;
}

}  // namespace

double half_width(double L) {
    require_length(L);
    return std::asinh(1.0 / std::sinh(L / 2));
}

CollarData collar(double L) { return {L, half_width(L)}; }

double equidistant_length(double L, double rho) {
    if (std::abs(rho) > half_width(L) * (1.0 + kEdgeSlack) + kEdgeSlack) {
        std::ostringstream os;
        os << "|rho| = " << std::abs(rho) << " exceeds the half width " << half_width(L);
        throw Error(ErrorKind::OutsideCollar, os.str());
    }
    return L * std::cosh(rho);
}

double collar_boundary_length(double L) {
    require_length(L);
    const double s = std::sinh(L / 2);
    return (L / s) * std::sqrt(1.0 + s * s);
}

bool in_short_regime(double L) { return L <= 2.0 * std::asinh(1.0) * (1.0 + kEdgeSlack); }

RegimeValue inj_from_boundary_distance_flagged(double L, double d) {
    require_length(L);
    const double v = std::asinh(std::cosh(L / 2) * std::cosh(d) - std::sinh(d));
    return {v, in_short_regime(L) && within_collar(L, d)};
}

double inj_from_boundary_distance(double L, double d) {
    return checked(inj_from_boundary_distance_flagged(L, d), "inj_from_boundary_distance", L, d).value;
}

RegimeValue inj_from_core_distance_flagged(double L, double s) {
    require_length(L);
    const double v = std::asinh(std::sinh(L / 2) * std::cosh(s));
    return {v, in_short_regime(L) && within_collar(L, s)};
}

double inj_from_core_distance(double L, double s) {
    return checked(inj_from_core_distance_flagged(L, s), "inj_from_core_distance", L, s).value;
}

double core_distance_for_inj(double L, double inj) {
    require_length(L);
    const double ratio = std::sinh(inj) / std::sinh(L / 2);
    if (!(ratio >= 1.0 - 1e-12)) {
        std::ostringstream os;
        os << "injectivity radius " << inj << " is below L/2 = " << L / 2;
        throw Error(ErrorKind::OutOfRegime, os.str());
    }
    return std::acosh(std::max(ratio, 1.0));
}

}  // namespace hypsurf
