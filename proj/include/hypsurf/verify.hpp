#pragma once

// Verification suites: seeded experiments that check the injectivity-radius,
// neck, collar, pants and Riera inequalities on concrete surfaces.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypsurf/fuchsian.hpp"

namespace hypsurf {

struct Witness {
    std::string input;
    double observed;
    double bound;
    double margin;  // signed slack; negative means the check failed
};

struct VerificationReport {
    std::string suite_id;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t skipped = 0;
    double worst_margin = 0.0;
    /// Every failure plus the tightest passing trials, in trial order.
    std::vector<Witness> witnesses;
    std::vector<std::string> notes;

    bool passed() const { return failures == 0; }
};

nlohmann::ordered_json to_json(const VerificationReport& report);

struct SuiteConfig {
    std::uint64_t seed = 0;
    /// 0 selects the suite's default.
    std::size_t trials = 0;
    std::optional<double> tol;
    std::size_t mc_samples = 100'000;
    std::size_t n_s = 64;
    std::size_t profile_points = 65;
    /// Empty selects the suite's default surfaces.
    std::vector<SurfaceSource> surfaces;
    std::vector<int> cutoffs;
};

/// Builds a builtin surface from its source description.
FuchsianGroup build_surface(const SurfaceSource& source, const GroupLimits& limits = {});
std::string surface_label(const SurfaceSource& source);

VerificationReport suite_inj_short(const SuiteConfig& cfg);
VerificationReport suite_inj_thick(const SuiteConfig& cfg);
VerificationReport suite_neck(const SuiteConfig& cfg);
VerificationReport suite_collar_cross(const SuiteConfig& cfg);
VerificationReport suite_pants_bound(const SuiteConfig& cfg);
VerificationReport suite_riera_properties(const SuiteConfig& cfg);

const std::vector<std::string>& suite_ids();
/// Dispatches by id; throws UnknownSuite.
VerificationReport run_suite(const std::string& id, const SuiteConfig& cfg);

}  // namespace hypsurf
