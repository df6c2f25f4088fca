// Acceptance runner: one PASS/FAIL line per criterion. With --criterion N
// only that criterion runs; the exit status is nonzero if any that ran failed.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypsurf/constants.hpp"
#include "hypsurf/fuchsian.hpp"
#include "hypsurf/verify.hpp"

using namespace hypsurf;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double cutoff_for(const FuchsianGroup& g) {
    return 2.0 * g.diameter_bound() + 2.0 * std::log(4.0 * g.genus() - 2.0) + 0.1;
}

// trials = 0 keeps the suite's own case list; expected is the trial count
// the report must show.
Outcome suite_outcome(const std::string& id, std::size_t trials, std::size_t expected,
                      std::optional<double> tol = {}, std::size_t mc_samples = 100'000) {
    SuiteConfig cfg;
    cfg.trials = trials;
    cfg.tol = tol;
    cfg.mc_samples = mc_samples;
    const auto rep = run_suite(id, cfg);
    return {rep.passed() && rep.trials == expected && rep.skipped == 0,
            fmt("%zu trials, %zu failures, %zu skipped, worst margin %.3g", rep.trials, rep.failures, rep.skipped,
                rep.worst_margin)};
}

Outcome ledger_check() {
    bool ok = true;
    std::string bad;
    for (const auto& c : ledger()) {
        if (!c.display_consistent()) {
            ok = false;
            bad += " " + c.id;
        }
    }
    const double ln6 = std::log(6.0);
    ok = ok && std::abs(ledger_entry("MAX_INJ_G2").value.convert_to<double>() - ln6) < 1e-15;
    ok = ok && std::abs(max_inj(3) - std::log(10.0)) < 1e-15;
    ok = ok && std::abs(ledger_entry("PANTS_INJ_6").value.convert_to<double>() - (3.0 + ln6)) < 1e-14;
    const auto& sys = ledger_entry("LIP_SYS");
    return {ok, fmt("%zu entries; LIP_SYS display %s, flagged %s%s", ledger().size(),
                    sys.display_consistent() ? "within one display ulp" : "off",
                    to_string(sys.display_match()), bad.empty() ? "" : (" inconsistent:" + bad).c_str())};
}

Outcome teo_check() {
    const double c50 = teo_C(50.0);
    const bool limit = std::abs(c50 - std::sqrt(3.0 / (4.0 * kPi))) < 1e-12;
    const double small = teo_C(1e-6) * std::sqrt(kPi * 1e-6);
    const bool small_ok = small >= 0.99 && small <= 1.01;
    bool mono = true;
    double prev = INFINITY;
    for (int i = 1; i <= 1000; ++i) {
        const double c = teo_C(0.01 * i);
        mono = mono && c < prev;
        prev = c;
    }
    return {limit && small_ok && mono,
            fmt("C(50) error %.2e; C(1e-6) sqrt(pi 1e-6) = %.6g (needs [0.99, 1.01]); monotone %s",
                std::abs(c50 - std::sqrt(3.0 / (4.0 * kPi))), small, mono ? "yes" : "no")};
}

Outcome area_check() {
    const std::vector<std::pair<std::string, std::function<FuchsianGroup()>>> surfaces = {
        {"bolza", [] { return bolza(); }},
        {"pants(1.2,1.2,1.2)", [] { return doubled_pants(1.2, 1.2, 1.2); }},
        {"pants(0.5,6,6)", [] { return doubled_pants(0.5, 6.0, 6.0); }},
        {"pants(2,3,4)", [] { return doubled_pants(2.0, 3.0, 4.0); }},
    };
    bool ok = true;
    std::ostringstream os;
    std::uint64_t seed = 1;
    for (const auto& [name, make] : surfaces) {
        const auto est = mc_area_estimate(make(), 1'000'000, seed++);
        const double z = (est.area - 4.0 * kPi) / est.standard_error;
        ok = ok && std::abs(z) <= 3.0;
        os << name << " z=" << fmt("%+.2f", z) << " ";
    }
    return {ok, os.str()};
}

Outcome systole_check() {
    const auto b = bolza();
    const double sb = systole(b, cutoff_for(b)).length;
    const double eb = std::abs(sb - 2.0 * std::acosh(1.0 + std::sqrt(2.0)));
    const auto p = doubled_pants(0.5, 6.0, 6.0);
    const double sp = systole(p, cutoff_for(p)).length;
    const double ep = std::abs(sp - 0.5);
    return {eb < 1e-6 && ep < 1e-8,
            fmt("bolza %.10f (error %.1e); pants(0.5,6,6) %.10f against 0.5 (error %.1e)", sb, eb, sp, ep)};
}

Outcome determinism_check() {
    std::ostringstream os;
    bool ok = true;
    for (const auto& id : suite_ids()) {
        SuiteConfig cfg;
        cfg.seed = 20261019;
        cfg.trials = 20;
        cfg.mc_samples = 20'000;
        const auto a = to_json(run_suite(id, cfg)).dump();
        const auto b = to_json(run_suite(id, cfg)).dump();
        ok = ok && a == b;
        os << id << (a == b ? " same " : " DIFFERS ");
    }
    return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "constant ledger displays", 1.0, ledger_check},
        {2, "Teo C(r) limits and monotonicity", 1.0, teo_check},
        {3, "Monte-Carlo area equals 4 pi", 60.0, area_check},
        {4, "systole by certified enumeration", 120.0, systole_check},
        {5, "collar formula against enumeration", 120.0, [] { return suite_outcome("collar_cross", 200, 200, 1e-6); }},
        {6, "thin-point loop shrinkage", 600.0, [] { return suite_outcome("inj_short", 500, 500, 1e-6); }},
        {7, "thick-point loop depth", 600.0, [] { return suite_outcome("inj_thick", 500, 500, 1e-4); }},
        {8, "neck inequality", 900.0, [] { return suite_outcome("neck", 0, 19, {}, 100'000); }},
        {9, "Riera formula properties", 300.0, [] { return suite_outcome("riera_properties", 0, 13); }},
        {10, "pants injectivity bound", 300.0, [] { return suite_outcome("pants_bound", 1000, 1000); }},
        {11, "seeded reruns are byte-identical", 600.0, determinism_check},
    };

    bool all = true;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const Error& e) {
            o = {false, std::string("error ") + to_string(e.kind()) + ": " + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::printf("criterion %2d %s: %s [%.1fs of %.0fs] %s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), secs,
                    c.budget_s, o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
