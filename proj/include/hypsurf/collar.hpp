#pragma once

// Collar lemma quantities for a simple closed geodesic of length L. All
// injectivity-radius formulas return the radius itself, not its sinh.

namespace hypsurf {

struct CollarData {
    double core_length;
    double half_width;
};

CollarData collar(double L);

/// arcsinh(1 / sinh(L/2)).
double half_width(double L);

/// L cosh(rho): length of the equidistant curve at signed distance rho from
/// the core. Throws OutsideCollar when |rho| > half_width(L).
double equidistant_length(double L, double rho);

/// Length of a collar boundary curve, (L / sinh(L/2)) sqrt(1 + sinh^2(L/2)).
/// Evaluates for every L > 0; the 2 sqrt(2) bound holds only in regime.
double collar_boundary_length(double L);

/// L <= 2 arcsinh(1): the short-curve regime of the injectivity formulas.
bool in_short_regime(double L);

struct RegimeValue {
    double value;
    bool in_regime;
};

/// arcsinh(cosh(L/2) cosh(d) - sinh(d)) where d is the distance to the
/// collar boundary. The checked form throws OutOfRegime outside
/// L <= 2 arcsinh(1), 0 <= d <= half_width(L).
double inj_from_boundary_distance(double L, double d);
RegimeValue inj_from_boundary_distance_flagged(double L, double d);

/// arcsinh(sinh(L/2) cosh(s)) where s is the distance to the core.
double inj_from_core_distance(double L, double s);
RegimeValue inj_from_core_distance_flagged(double L, double s);

/// Core distance s at which inj_from_core_distance(L, s) = inj; requires
/// L/2 <= inj.
double core_distance_for_inj(double L, double inj);

}  // namespace hypsurf
