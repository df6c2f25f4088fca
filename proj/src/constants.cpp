#include "hypsurf/constants.hpp"

#include <cmath>
#include <sstream>

#include "hypsurf/errors.hpp"

namespace hypsurf {

namespace {

Real pi() { return boost::math::constants::pi<Real>(); }

Real rounded(const Real& x, int digits, bool truncate) {
    const Real scale = pow(Real(10), digits);
    return (truncate ? floor(x * scale) : floor(x * scale + Real(0.5))) / scale;
}

std::vector<NamedConstant> build_ledger() {
    const Real s2 = sqrt(Real(2));
    const Real lip_inj = 1 / (4 * sqrt(s2 - 1));
    const Real thick = sqrt(Real(6)) / (4 * sqrt(pi()));
    const Real e = exp(-s2);
    const Real deep = log(e + sqrt(e * e + 1));
    const Real shrink = 1 / (1 + s2);  // e^{-asinh 1}
    const Real ln6 = log(Real(6));

    return {
        {"LIP_INJ", "1/(4*sqrt(sqrt2-1))", lip_inj, 0.3884, 4, "Lipschitz constant of inj, short regime"},
        {"LIP_INJ_THICK", "sqrt6/(4*sqrt(pi))", thick, 0.3454, 4, "Lipschitz constant of inj, thick regime"},
        {"LIP_SYS", "sqrt2*LIP_INJ", s2 * lip_inj, 0.5492, 4, "Lipschitz constant of the systole"},
        {"DEEP_INJ", "ln(e^-sqrt2 + sqrt(e^-2sqrt2 + 1))", deep, 0.2407, 4,
         "lower bound of inj along a shortest loop, thick regime"},
        {"SHRINK", "e^-asinh(1) = sqrt2-1", shrink, std::nullopt, 0, "contraction of inj along a short loop"},
        {"INRADIUS_RATIO", "sqrt(2*pi)", sqrt(2 * pi()), 2.5066, 4, "Weil-Petersson inradius over sqrt(systole)"},
        {"MT4", "1/(0.3884*sqrt6)", 1 / (Real("0.3884") * sqrt(Real(6))), 1.051102, 6,
         "ratio bound from the rounded short-regime constant"},
        {"MAX_INJ_G2", "ln(4g-2), g=2", ln6, 1.7918, 4, "upper bound of inj in genus 2"},
        {"PANTS_INJ_6", "L/2 + ln6, L=6", 3 + ln6, std::nullopt, 0, "inj bound on pants with boundary length 6"},
    };
}

}  // namespace

const char* to_string(DisplayMatch m) {
    switch (m) {
        case DisplayMatch::Rounded: return "rounded";
        case DisplayMatch::Truncated: return "truncated";
        case DisplayMatch::Neither: return "neither";
        case DisplayMatch::NoDisplay: return "none";
    }
    return "?";
}

bool NamedConstant::display_consistent() const {
    if (!display) return true;
    const Real tol = Real("1.5") * pow(Real(10), -display_digits);
    return abs(value - Real(*display)) < tol;
}

DisplayMatch NamedConstant::display_match() const {
    if (!display) return DisplayMatch::NoDisplay;
    const Real half_ulp = Real("0.5") * pow(Real(10), -display_digits - 2);
    const Real shown(*display);
    if (abs(rounded(value, display_digits, false) - shown) < half_ulp) return DisplayMatch::Rounded;
    if (abs(rounded(value, display_digits, true) - shown) < half_ulp) return DisplayMatch::Truncated;
    return DisplayMatch::Neither;
}

std::vector<NamedConstant> ledger() { return build_ledger(); }

const NamedConstant& ledger_entry(const std::string& id) {
    static const std::vector<NamedConstant> entries = build_ledger();
    for (const auto& c : entries) {
        if (c.id == id) return c;
    }
    throw Error(ErrorKind::InvalidArgument, "no ledger entry " + id);
}

double max_inj(int genus) {
    if (genus < 2) throw Error(ErrorKind::InvalidArgument, "genus must be at least 2");
    return std::log(4.0 * genus - 2.0);
}

double pants_inj(double L) {
    if (!(L > 0.0)) throw Error(ErrorKind::InvalidArgument, "length must be positive");
    return L / 2 + std::log(6.0);
}

// 4e^r/(1+e^r)^2 = sech^2(r/2) = 1 - x with x = tanh^2(r/2), and
// 1 - (1-x)^3 = x (3 - 3x + x^2) keeps precision for small r.
double teo_C(double r) {
    if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "teo_C needs r > 0");
    const double t = std::tanh(r / 2);
    const double x = t * t;
    const double gap = x * (3.0 - 3.0 * x + x * x);
    return 1.0 / std::sqrt(4.0 * M_PI / 3.0 * gap);
}

Real teo_C_ext(const Real& r) {
    if (!(r > 0)) throw Error(ErrorKind::DomainError, "teo_C needs r > 0");
    const Real t = tanh(r / 2);
    const Real x = t * t;
    const Real gap = x * (3 - 3 * x + x * x);
    return 1 / sqrt(4 * pi() / 3 * gap);
}

bool LipschitzReport::all_passed() const {
    return thick_limit_reproduced && lip_inj_matches && max_is_short_regime && deep_below_asinh1;
}

LipschitzReport verify_lipschitz_arithmetic() {
    LipschitzReport rep{};
    auto thick_at = [](const Real& r) { return sqrt(Real(6)) / 4 * teo_C_ext(r) * sqrt(r); };
    const Real r1("1e-8"), r2("1e-10");
    const Real f1 = thick_at(r1), f2 = thick_at(r2);
    const Real extrap = f2 + (f2 - f1) * r2 / (r1 - r2);
    const Real closed = ledger_entry("LIP_INJ_THICK").value;
    rep.thick_at_1e8 = f1.convert_to<double>();
    rep.thick_at_1e10 = f2.convert_to<double>();
    rep.thick_extrapolated = extrap.convert_to<double>();
    rep.thick_closed_form = closed.convert_to<double>();
    rep.thick_limit_reproduced = abs(extrap - closed) < Real("1e-4");

    const Real lip = ledger_entry("LIP_INJ").value;
    const Real rederived = 1 / (4 * sqrt(ledger_entry("SHRINK").value));
    rep.lip_inj_rederived = rederived.convert_to<double>();
    rep.lip_inj_matches = abs(rederived - lip) < Real("1e-30");
    rep.lipschitz_constant = (lip > closed ? lip : closed).convert_to<double>();
    rep.max_is_short_regime = lip > closed;
    rep.deep_below_asinh1 = ledger_entry("DEEP_INJ").value < log(1 + sqrt(Real(2)));
    return rep;
}

std::string to_decimal(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

}  // namespace hypsurf
