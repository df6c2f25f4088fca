#pragma once

// Named constants with closed forms, evaluated in extended precision and
// compared with their short printed displays.

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace hypsurf {

using Real = boost::multiprecision::cpp_bin_float_50;

enum class DisplayMatch { Rounded, Truncated, Neither, NoDisplay };
const char* to_string(DisplayMatch m);

struct NamedConstant {
    std::string id;
    std::string closed_form;
    Real value;
    /// Printed value and its number of decimals; absent for entries that
    /// have no short display.
    std::optional<double> display;
    int display_digits = 0;
    std::string context;

    /// |value - display| < 1.5 * 10^-digits.
    bool display_consistent() const;
    DisplayMatch display_match() const;
};

std::vector<NamedConstant> ledger();
/// Looks up an entry by id; throws InvalidArgument if absent.
const NamedConstant& ledger_entry(const std::string& id);

/// Upper bound on the injectivity radius of a genus-g surface.
double max_inj(int genus);
/// Injectivity-radius bound on pants with boundary length L.
double pants_inj(double L);

/// (4 pi / 3 (1 - (4 e^r / (1 + e^r)^2)^3))^(-1/2).
double teo_C(double r);
Real teo_C_ext(const Real& r);

struct LipschitzReport {
    double thick_at_1e8;        // (sqrt6/4) C(r) sqrt(r) at r = 1e-8
    double thick_at_1e10;       // same at r = 1e-10
    double thick_extrapolated;  // two-point Richardson in r
    double thick_closed_form;   // sqrt6 / (4 sqrt pi)
    bool thick_limit_reproduced;
    double lip_inj_rederived;   // 1 / (4 sqrt(SHRINK))
    bool lip_inj_matches;
    double lipschitz_constant;  // max of the two regime constants
    bool max_is_short_regime;
    bool deep_below_asinh1;
    bool all_passed() const;
};
LipschitzReport verify_lipschitz_arithmetic();

/// Fixed-point decimal rendering with the given number of significant digits.
std::string to_decimal(const Real& x, int digits);

}  // namespace hypsurf
