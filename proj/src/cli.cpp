#include "hypsurf/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypsurf/collar.hpp"
#include "hypsurf/constants.hpp"
#include "hypsurf/loops.hpp"
#include "hypsurf/riera.hpp"
#include "hypsurf/verify.hpp"
#include "hypsurf/version.hpp"

namespace hypsurf {

using ojson = nlohmann::ordered_json;

// ------------------------------------------------------------- surface JSON

ojson surface_to_json(const FuchsianGroup& group) {
    ojson j;
    j["format"] = "hypsurf-surface";
    j["version"] = kVersion;
    j["source"] = {{"kind", group.source().kind}, {"params", group.source().params}};
    j["genus"] = group.genus();
    j["basepoint"] = {group.basepoint().x(), group.basepoint().y()};
    auto& gens = j["generators"] = ojson::array();
    for (const auto& g : group.generators()) gens.push_back({g.a(), g.b(), g.c(), g.d()});
    auto& curves = j["curves"] = ojson::array();
    for (const auto& c : group.curves()) curves.push_back({{"name", c.name}, {"word", c.word}});
    return j;
}

FuchsianGroup surface_from_json(const nlohmann::json& j, const GroupLimits& limits) {
    try {
        if (j.value("format", "") != "hypsurf-surface") {
            throw Error(ErrorKind::InvalidArgument, "not a hypsurf surface file");
        }
        SurfaceSource src;
        if (j.contains("source")) {
            src.kind = j["source"].value("kind", "generators");
            src.params = j["source"].value("params", std::vector<double>{});
        }
        if (src.kind == "bolza" || src.kind == "doubled_pants") return build_surface(src, limits);

        std::vector<Matrix2> mats;
        for (const auto& g : j.at("generators")) {
            if (g.size() != 4) throw Error(ErrorKind::InvalidArgument, "generator needs four entries");
            mats.push_back({g[0].get<double>(), g[1].get<double>(), g[2].get<double>(), g[3].get<double>()});
        }
        const auto bp = j.at("basepoint");
        std::vector<NamedCurve> curves;
        for (const auto& c : j.value("curves", nlohmann::json::array())) {
            curves.push_back({c.at("name").get<std::string>(), c.at("word").get<Word>()});
        }
        return from_generators(mats, j.at("genus").get<int>(), limits,
                               HPoint(bp.at(0).get<double>(), bp.at(1).get<double>()), std::move(curves));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed surface file: ") + e.what());
    }
}

namespace {

// ------------------------------------------------------------------ helpers

struct Options {
    std::string builtin;
    std::string params;
    std::string surface_file;
    std::string point = "basepoint";
    std::string curve;
    std::string out;
    std::string format;
    std::string suite = "all";
    std::string export_file;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t profile = 0;
    std::size_t mc_area = 0;
    int cutoff = 10;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("cannot parse " + what + " '" + text + "'");
        }
    }
    return out;
}

FuchsianGroup load_surface(const Options& o) {
    const int sources = !o.builtin.empty() + !o.surface_file.empty();
    if (sources != 1) throw UsageError("give exactly one of --builtin and --surface");
    if (!o.surface_file.empty()) {
        std::ifstream in(o.surface_file);
        if (!in) throw Error(ErrorKind::Io, "cannot read " + o.surface_file);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::InvalidArgument, std::string("malformed surface file: ") + e.what());
        }
        return surface_from_json(j);
    }
    SurfaceSource src{o.builtin, {}};
    if (o.builtin == "bolza") {
        if (!o.params.empty()) throw UsageError("bolza takes no --params");
    } else if (o.builtin == "doubled_pants") {
        src.params = parse_numbers(o.params, "--params");
        if (src.params.size() != 3) throw UsageError("doubled_pants needs --params L1,L2,L3");
    } else {
        throw UsageError("unknown builtin '" + o.builtin + "' (bolza, doubled_pants)");
    }
    return build_surface(src);
}

std::string word_text(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s;
}

Word systolic_word(const FuchsianGroup& g) {
    const double cutoff = 2.0 * g.diameter_bound() + 2.0 * std::log(4.0 * g.genus() - 2.0) + 0.1;
    return systole(g, cutoff).witness.word();
}

/// Named curve, "systole", or a comma-separated word; empty selects the
/// shortest named curve (the systole when there are none).
Word resolve_curve(const FuchsianGroup& g, const std::string& spec) {
    if (spec == "systole") return systolic_word(g);
    if (spec.empty()) {
        if (g.curves().empty()) return systolic_word(g);
        const NamedCurve* best = nullptr;
        double best_len = INFINITY;
        for (const auto& c : g.curves()) {
            const double len = translation_length(g.evaluate(c.word));
            if (len < best_len) {
                best_len = len;
                best = &c;
            }
        }
        return best->word;
    }
    for (const auto& c : g.curves()) {
        if (c.name == spec) return c.word;
    }
    Word w;
    for (double x : parse_numbers(spec, "--curve")) {
        const int k = static_cast<int>(x);
        if (k != x || k == 0 || std::abs(k) > static_cast<int>(g.generators().size())) {
            throw UsageError("bad generator index in --curve '" + spec + "'");
        }
        w.push_back(k);
    }
    if (w.empty()) throw UsageError("empty --curve");
    return w;
}

HPoint resolve_point(const FuchsianGroup& g, const Options& o) {
    if (o.point == "basepoint") return g.basepoint();
    if (o.point == "on-core" || o.point == "collar-boundary") {
        const Word w = resolve_curve(g, o.curve);
        const double L = translation_length(g.evaluate(w));
        return curve_point(g, w, 0.0, o.point == "on-core" ? 0.0 : half_width(L));
    }
    const auto xy = parse_numbers(o.point, "--point");
    if (xy.size() != 2) throw UsageError("--point takes x,y or on-core, collar-boundary, basepoint");
    return HPoint(xy[0], xy[1]);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string csv() const {
        std::string s;
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + csv_field(r[i]);
            s += "\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
        return s;
    }
};

ojson envelope(const std::string& command, const Options& o) {
    ojson j;
    j["tool"] = "hypsurf";
    j["version"] = kVersion;
    j["command"] = command;
    j["seed"] = o.seed;
    return j;
}

// --------------------------------------------------------------- subcommands

struct Output {
    ojson json;
    Table table;
    std::string text;  // human-readable table, when the command has one
    int status = 0;
};

Output cmd_surface(const Options& o) {
    const auto g = load_surface(o);
    Output r;
    r.json = envelope("surface", o);
    const SurfaceSource& src = g.source();
    r.json["surface"] = surface_label(src);
    r.json["genus"] = g.genus();
    r.json["domain_area"] = g.domain_area();
    r.json["target_area"] = g.target_area();
    r.json["domain_radius"] = g.domain_radius();
    r.json["diameter_bound"] = g.diameter_bound();
    r.json["face_pairings"] = g.face_pairings().size();
    const double cutoff = 2.0 * g.diameter_bound() + 2.0 * std::log(4.0 * g.genus() - 2.0) + 0.1;
    const auto sys = systole(g, cutoff);
    r.json["systole"] = {{"length", sys.length}, {"word", sys.witness.word()}, {"cutoff", cutoff}};
    if (o.mc_area) {
        const auto est = mc_area_estimate(g, o.mc_area, o.seed);
        r.json["mc_area"] = {{"area", est.area}, {"standard_error", est.standard_error}, {"samples", est.proposals}};
    }
    r.table.header = {"curve", "word", "length", "half_width", "boundary_length", "short_regime"};
    auto& collars = r.json["collars"] = ojson::array();
    for (const auto& c : g.curves()) {
        const double L = translation_length(g.evaluate(c.word));
        const double w = half_width(L);
        const double bl = collar_boundary_length(L);
        const bool sr = in_short_regime(L);
        collars.push_back({{"curve", c.name}, {"word", c.word}, {"length", L}, {"half_width", w},
                           {"boundary_length", bl}, {"short_regime", sr}});
        r.table.rows.push_back({c.name, word_text(c.word), num(L), num(w), num(bl), sr ? "true" : "false"});
    }
    if (!o.export_file.empty()) {
        std::ofstream f(o.export_file);
        if (!f) throw Error(ErrorKind::Io, "cannot write " + o.export_file);
        f << surface_to_json(g).dump(2) << "\n";
        r.json["exported"] = o.export_file;
    }
    return r;
}

ojson loop_json(const GeodesicLoop& loop) {
    const HPoint end = loop.element.apply(loop.basepoint_lift);
    return {{"basepoint_lift", {loop.basepoint_lift.x(), loop.basepoint_lift.y()}},
            {"endpoint", {end.x(), end.y()}},
            {"element", {loop.element.a(), loop.element.b(), loop.element.c(), loop.element.d()}},
            {"word", loop.element.word()},
            {"length", loop.length}};
}

Output cmd_inj(const Options& o) {
    const auto g = load_surface(o);
    const HPoint p = resolve_point(g, o);
    const auto res = injectivity_radius(g, p);
    Output r;
    r.json = envelope("inj", o);
    r.json["surface"] = surface_label(g.source());
    r.json["point"] = {p.x(), p.y()};
    r.json["inj"] = res.inj;
    r.json["loop"] = loop_json(res.loop);
    r.table.header = {"x", "y", "inj", "loop_length", "word"};
    r.table.rows.push_back({num(p.x()), num(p.y()), num(res.inj), num(res.loop.length), word_text(res.loop.element.word())});
    return r;
}

Output cmd_loop(const Options& o) {
    const auto g = load_surface(o);
    const HPoint p = resolve_point(g, o);
    const auto res = injectivity_radius(g, p);
    const std::size_t n = o.profile ? o.profile : 33;
    const auto prof = inj_profile(g, res.loop, n);
    Output r;
    r.json = envelope("loop", o);
    r.json["surface"] = surface_label(g.source());
    r.json["point"] = {p.x(), p.y()};
    r.json["inj"] = res.inj;
    r.json["loop"] = loop_json(res.loop);
    auto& samples = r.json["profile"] = ojson::array();
    r.table.header = {"s", "inj"};
    for (const auto& s : prof.samples) {
        samples.push_back({{"s", s.s}, {"inj", s.inj}});
        r.table.rows.push_back({num(s.s), num(s.inj)});
    }
    r.json["profile_min"] = prof.min_inj();
    r.json["profile_max"] = prof.max_inj();
    return r;
}

Output cmd_riera(const Options& o) {
    const auto g = load_surface(o);
    const Word w = resolve_curve(g, o.curve.empty() ? "systole" : o.curve);
    const auto ev = gradient_norm_sq(g, w, o.cutoff);
    Output r;
    r.json = envelope("riera", o);
    r.json["surface"] = surface_label(g.source());
    r.json["curve_word"] = w;
    r.json["curve_length"] = ev.curve_length;
    r.json["value"] = ev.value;
    r.json["coset_count"] = ev.coset_count;
    r.json["word_cutoff"] = ev.word_cutoff;
    r.json["min_u"] = ev.min_u;
    r.json["intersecting_excluded"] = ev.intersecting_excluded;
    r.json["tail_bound_heuristic"] = ev.tail_bound;
    r.table.header = {"curve_length", "value", "coset_count", "word_cutoff", "min_u", "intersecting_excluded",
                      "tail_bound_heuristic"};
    r.table.rows.push_back({num(ev.curve_length), num(ev.value), std::to_string(ev.coset_count),
                            std::to_string(ev.word_cutoff), num(ev.min_u), std::to_string(ev.intersecting_excluded),
                            num(ev.tail_bound)});
    return r;
}

Output cmd_constants(const Options& o) {
    Output r;
    r.json = envelope("constants", o);
    auto& entries = r.json["ledger"] = ojson::array();
    r.table.header = {"id", "closed_form", "value", "display", "match", "context"};
    std::ostringstream text;
    text << std::left << std::setw(16) << "id" << std::setw(38) << "closed form" << std::setw(20) << "value"
         << std::setw(10) << "display" << std::setw(11) << "match" << "context\n";
    bool ok = true;
    for (const auto& c : ledger()) {
        const std::string v15 = to_decimal(c.value, 15);
        std::string disp;
        if (c.display) {
            std::ostringstream d;
            d << std::fixed << std::setprecision(c.display_digits) << *c.display;
            disp = d.str();
        }
        const bool consistent = c.display_consistent();
        ok = ok && consistent;
        entries.push_back({{"id", c.id},
                           {"closed_form", c.closed_form},
                           {"value", to_decimal(c.value, 32)},
                           {"display", c.display ? ojson(*c.display) : ojson(nullptr)},
                           {"display_match", to_string(c.display_match())},
                           {"display_consistent", consistent},
                           {"context", c.context}});
        r.table.rows.push_back({c.id, c.closed_form, v15, disp, to_string(c.display_match()), c.context});
        text << std::setw(16) << c.id << std::setw(38) << c.closed_form << std::setw(20) << v15 << std::setw(10)
             << disp << std::setw(11) << to_string(c.display_match()) << c.context << "\n";
    }
    const auto lip = verify_lipschitz_arithmetic();
    r.json["lipschitz_arithmetic"] = {{"thick_at_1e-8", lip.thick_at_1e8},
                                      {"thick_at_1e-10", lip.thick_at_1e10},
                                      {"thick_extrapolated", lip.thick_extrapolated},
                                      {"thick_closed_form", lip.thick_closed_form},
                                      {"thick_limit_reproduced", lip.thick_limit_reproduced},
                                      {"lip_inj_rederived", lip.lip_inj_rederived},
                                      {"lip_inj_matches", lip.lip_inj_matches},
                                      {"lipschitz_constant", lip.lipschitz_constant},
                                      {"max_is_short_regime", lip.max_is_short_regime},
                                      {"deep_below_asinh1", lip.deep_below_asinh1}};
    r.json["ledger_consistent"] = ok;
    text << "\nledger displays consistent: " << (ok ? "yes" : "no") << "\n";
    text << "thick-regime limit of (sqrt6/4) C(r) sqrt(r) reproduced: " << (lip.thick_limit_reproduced ? "yes" : "no")
         << " (value at r=1e-10: " << num(lip.thick_at_1e10) << ")\n";
    r.text = text.str();
    r.status = ok ? 0 : 1;
    return r;
}

Output cmd_verify(const Options& o) {
    std::vector<std::string> ids;
    if (o.suite == "all") {
        ids = suite_ids();
    } else {
        ids.push_back(o.suite);
    }
    SuiteConfig cfg;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    Output r;
    r.json = envelope("verify", o);
    auto& reps = r.json["reports"] = ojson::array();
    r.table.header = {"suite_id", "seed", "trials", "failures", "skipped", "worst_margin", "passed"};
    bool ok = true;
    for (const auto& id : ids) {
        const auto rep = run_suite(id, cfg);
        ok = ok && rep.passed();
        reps.push_back(to_json(rep));
        r.table.rows.push_back({rep.suite_id, std::to_string(rep.seed), std::to_string(rep.trials),
                                std::to_string(rep.failures), std::to_string(rep.skipped), num(rep.worst_margin),
                                rep.passed() ? "true" : "false"});
    }
    r.json["passed"] = ok;
    r.status = ok ? 0 : 1;
    return r;
}

void add_surface_options(CLI::App* sub, Options& o) {
    sub->add_option("--builtin", o.builtin, "builtin surface: bolza or doubled_pants");
    sub->add_option("--params", o.params, "comma-separated family parameters, e.g. 0.5,6,6");
    sub->add_option("--surface", o.surface_file, "surface JSON file written by 'surface --export'");
}

void add_output_options(CLI::App* sub, Options& o, bool with_table) {
    sub->add_option("--out", o.out, "write the result to this file instead of stdout");
    auto* fmt = sub->add_option("--format", o.format, with_table ? "table, json or csv" : "json or csv");
    fmt->check(with_table ? CLI::IsMember({"table", "json", "csv"}) : CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "master seed (default 0)");
}

int status_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::InvalidPoint:
        case ErrorKind::ParameterOutOfRange:
        case ErrorKind::UnknownSuite:
        case ErrorKind::Io:
            return 2;
        default:
            return 1;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbolic surface toolkit: injectivity radius, collars, Riera sums and verification suites",
                 "hypsurf"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Options o;

    auto* surface = app.add_subcommand("surface", "genus, systole and collar table of a surface");
    add_surface_options(surface, o);
    add_output_options(surface, o, false);
    surface->add_option("--export", o.export_file, "also write the surface as JSON to this file");
    surface->add_option("--mc-area", o.mc_area, "Monte-Carlo area estimate with this many samples");

    auto* inj = app.add_subcommand("inj", "injectivity radius and shortest loop at a point");
    add_surface_options(inj, o);
    add_output_options(inj, o, false);
    inj->add_option("--point", o.point, "x,y or on-core, collar-boundary, basepoint");
    inj->add_option("--curve", o.curve, "curve for the on-core and collar-boundary anchors");

    auto* loop = app.add_subcommand("loop", "shortest loop and its injectivity-radius profile");
    add_surface_options(loop, o);
    add_output_options(loop, o, false);
    loop->add_option("--point", o.point, "x,y or on-core, collar-boundary, basepoint");
    loop->add_option("--curve", o.curve, "curve for the on-core and collar-boundary anchors");
    loop->add_option("--profile", o.profile, "number of profile samples (2..10000, default 33)");

    auto* riera = app.add_subcommand("riera", "truncated Riera sum for a curve");
    add_surface_options(riera, o);
    add_output_options(riera, o, false);
    riera->add_option("--curve", o.curve, "curve name, 'systole', or a word such as 1,-2 (default systole)");
    riera->add_option("--cutoff", o.cutoff, "displacement cutoff for coset representatives (default 10)");

    auto* constants = app.add_subcommand("constants", "ledger of named constants");
    add_output_options(constants, o, true);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_output_options(verify, o, false);
    verify->add_option("--suite", o.suite, "suite id or 'all'");
    verify->add_option("--trials", o.trials, "trial count (0 keeps each suite's default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run 'hypsurf --help' for usage\n";
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    Output res;
    try {
        if (name == "surface") res = cmd_surface(o);
        if (name == "inj") res = cmd_inj(o);
        if (name == "loop") res = cmd_loop(o);
        if (name == "riera") res = cmd_riera(o);
        if (name == "constants") res = cmd_constants(o);
        if (name == "verify") res = cmd_verify(o);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error in '" << name << "': " << e.what() << "\n";
        return status_for(e.kind());
    }

    const std::string format = o.format.empty() ? (name == "constants" ? "table" : "json") : o.format;
    std::string body;
    if (format == "json") {
        body = res.json.dump(2) + "\n";
    } else if (format == "csv") {
        body = res.table.csv();
    } else {
        body = res.text;
    }
    if (o.out.empty()) {
        out << body;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            err << "error: cannot write " << o.out << "\n";
            return 2;
        }
        f << body;
    }
    return res.status;
}

}  // namespace hypsurf
