#include "flatcurve/cli.hpp"

#include "flatcurve/cover.hpp"
#include "flatcurve/equiv.hpp"
#include "flatcurve/flatgeom.hpp"
#include "flatcurve/svg.hpp"
#include "flatcurve/veech.hpp"
#include "flatcurve/weierstrass.hpp"
#include "flatcurve/window_json.hpp"

#include "jsonio.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>

namespace flatcurve {

using detail::json;

namespace {

constexpr const char* kUsage =
    "usage: flatcurve <subcommand> [--sequence NAME | --input FILE] [--param k=v]... --radius R\n"
    "                 [--inner r] [--m k] [--mode exact|float] [--eps e] [--format json|csv|svg]\n"
    "                 [--out PATH] [--seed n]\n"
    "subcommands: gen validate eval verify-zeros saddles hol directions lift cone-angle\n"
    "             classify sandwich equiv moduli plot\n";

/// Bad command line; reported with exit code 2.
struct ArgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string sequence;
    std::string input;
    std::vector<std::string> params;
    double radius = 0;
    double inner = 0;
    double entry_bound = 0;
    int m = 2;
    std::string mode;
    double eps = kDefaultEps;
    std::string format = "json";
    std::string out_path;
    long seed = 0;

    std::string at;
    std::string factors;
    std::string degree = "default";
    std::string box;
    int samples = 256;
    std::string refine;
    std::string path;
    int start_sheet = 0;
    long zero_index = -1;
    double circle_radius = 0;
    std::string left, right;

    // Set when the option appeared on the command line.
    bool has_radius = false, has_inner = false, has_entry_bound = false, has_mode = false, has_eps = false;
    bool has_circle_radius = false, has_format = false;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(std::string s)
{
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

std::vector<ZPoint> parse_point_list(const std::string& text)
{
    std::vector<ZPoint> out;
    for (const auto& item : split(text, ';')) {
        std::string t = trim(item);
        if (t.empty()) continue;
        out.push_back(parse_point(t));
    }
    return out;
}

Mat2 parse_matrix(const std::string& text)
{
    auto parts = split(text, ',');
    if (parts.size() != 4) throw FlatError("InvalidArgument", "matrix '" + text + "' needs 4 entries a,b,c,d");
    return Mat2(parse_rational(trim(parts[0])), parse_rational(trim(parts[1])), parse_rational(trim(parts[2])),
                parse_rational(trim(parts[3])));
}

long parse_long(const std::string& text, const std::string& what)
{
    try {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ArgError("invalid integer for " + what + ": '" + text + "'");
    }
}

double parse_double(const std::string& text, const std::string& what)
{
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ArgError("invalid number for " + what + ": '" + text + "'");
    }
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw)
{
    std::map<std::string, std::string> out;
    for (const auto& kv : raw) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ArgError("--param expects key=value, got '" + kv + "'");
        out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
}

Mode resolve_mode(const RunConfig& cfg)
{
    std::string text = cfg.mode;
    if (!cfg.has_mode) {
        const char* env = std::getenv("FLATCURVE_MODE");
        text = env && *env ? env : "exact";
    }
    if (text != "exact" && text != "float") throw ArgError("mode must be exact or float, got '" + text + "'");
    return parse_mode(text);
}

ZeroWindow load_window(const RunConfig& cfg, bool check = true)
{
    if (!cfg.sequence.empty() && !cfg.input.empty()) throw ArgError("--sequence and --input are exclusive");
    if (cfg.sequence.empty() && cfg.input.empty()) throw ArgError("a window is required: --sequence NAME or --input FILE");
    if (!cfg.input.empty()) {
        if (cfg.has_radius) throw ArgError("--radius comes from the window file when --input is used");
        if (!cfg.params.empty()) throw ArgError("--param applies to --sequence only");
        ZeroWindow w = read_window_file(cfg.input, check);
        if (cfg.has_mode && parse_mode(cfg.mode) != w.mode())
            throw ArgError("--mode " + cfg.mode + " conflicts with the window file mode");
        return w;
    }
    if (!cfg.has_radius) throw ArgError("--radius is required with --sequence");
    if (!(cfg.radius > 0)) throw ArgError("--radius must be positive");
    if (cfg.has_eps && !(cfg.eps > 0)) throw ArgError("--eps must be positive");
    GeneratorSpec spec;
    try {
        spec = parse_sequence(cfg.sequence, parse_params(cfg.params));
    } catch (const FlatError& e) {
        throw ArgError(e.detail());
    }
    return generate(spec, cfg.radius, resolve_mode(cfg), cfg.eps);
}

StabilizerSearchConfig search_config(const RunConfig& cfg, const ZeroWindow& w)
{
    StabilizerSearchConfig s;
    if (cfg.has_inner) {
        if (!(cfg.inner > 0)) throw ArgError("--inner must be positive");
        if (!(cfg.inner < w.radius())) throw ArgError("--inner must be smaller than the window radius");
        s.inner_radius = cfg.inner;
    }
    if (cfg.has_entry_bound) {
        if (!(cfg.entry_bound > 0)) throw ArgError("--entry-bound must be positive");
        s.entry_bound = cfg.entry_bound;
    }
    return s;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed)
{
    for (const char* f : allowed)
        if (cfg.format == f) return;
    throw ArgError("format '" + cfg.format + "' is not available for this subcommand");
}

void require_m(const RunConfig& cfg)
{
    if (cfg.m < 2) throw ArgError("--m must be >= 2");
}

json cplx_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json points_json(const std::vector<ZPoint>& pts, Mode mode)
{
    json a = json::array();
    for (const auto& p : pts) a.push_back(detail::point_json(p, mode));
    return a;
}

json matrices_json(const std::vector<Mat2>& ms, Mode mode)
{
    json a = json::array();
    for (const auto& m : ms) a.push_back(detail::matrix_json(m, mode));
    return a;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_field(const Rational& q, Mode mode)
{
    return mode == Mode::Exact ? to_string(q) : fmt::format("{}", q.get_d());
}

// ---- subcommands ----------------------------------------------------------

std::string cmd_gen(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    return window_to_json(load_window(cfg));
}

std::string cmd_validate(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    ZeroWindow w = load_window(cfg, false);
    auto v = validate(w);
    json j;
    j["valid"] = v.empty();
    json list = json::array();
    for (const auto& x : v) list.push_back({{"code", x.code}, {"index", x.index}, {"detail", x.detail}});
    j["violations"] = std::move(list);
    return dump(j);
}

std::string cmd_eval(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    if (cfg.at.empty()) throw ArgError("eval needs --at re,im");
    ZeroWindow w = load_window(cfg);
    ZPoint at;
    try {
        at = parse_point(cfg.at);
    } catch (const FlatError& e) {
        throw ArgError("--at: " + e.detail());
    }
    std::optional<std::size_t> n;
    if (!cfg.factors.empty()) {
        long v = parse_long(cfg.factors, "--factors");
        if (v <= 0) throw ArgError("--factors must be positive");
        n = static_cast<std::size_t>(v);
    }
    DegreeRule rule = DegreeRule::Default;
    int fixed = 0;
    if (cfg.degree == "auto")
        rule = DegreeRule::Uniform;
    else if (cfg.degree != "default") {
        rule = DegreeRule::Fixed;
        long d = parse_long(cfg.degree, "--degree");
        if (d < 0) throw ArgError("--degree must be nonnegative");
        fixed = static_cast<int>(d);
    }
    ProductSpec spec = make_product(w, n, rule, fixed);
    ProductValue v = eval_f(spec, at.to_complex());
    json j;
    j["value"] = cplx_json(v.value);
    if (v.exact_zero)
        j["log10mag"] = nullptr;
    else
        j["log10mag"] = v.log10_magnitude();
    j["exact_zero"] = v.exact_zero;
    j["factors"] = spec.factors();
    j["origin_exponent"] = spec.origin_exponent;
    j["degree_rule"] = cfg.degree;
    if (rule == DegreeRule::Uniform) j["degree"] = spec.degrees.empty() ? 0 : spec.degrees.front();
    return dump(j);
}

Rect parse_box(const std::string& text)
{
    auto parts = split(text, ',');
    if (parts.size() != 4) throw ArgError("--box expects x0,y0,x1,y1");
    Rect r{parse_double(trim(parts[0]), "--box"), parse_double(trim(parts[1]), "--box"),
           parse_double(trim(parts[2]), "--box"), parse_double(trim(parts[3]), "--box")};
    if (!(r.x1 > r.x0 && r.y1 > r.y0)) throw ArgError("--box needs x0 < x1 and y0 < y1");
    return r;
}

std::string cmd_verify_zeros(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    if (cfg.box.empty()) throw ArgError("verify-zeros needs --box x0,y0,x1,y1");
    if (cfg.samples < 64) throw ArgError("--samples must be at least 64");
    Rect box = parse_box(cfg.box);
    ZeroWindow w = load_window(cfg);
    std::optional<std::size_t> n;
    if (!cfg.factors.empty()) n = static_cast<std::size_t>(std::max(1L, parse_long(cfg.factors, "--factors")));
    ProductSpec spec = make_product(w, n, cfg.degree == "auto" ? DegreeRule::Uniform : DegreeRule::Default);
    json j;
    j["winding"] = count_zeros(spec, box, cfg.samples);
    j["box"] = json::array({box.x0, box.y0, box.x1, box.y1});
    j["samples"] = cfg.samples;
    if (!cfg.refine.empty()) {
        ZPoint g;
        try {
            g = parse_point(cfg.refine);
        } catch (const FlatError& e) {
            throw ArgError("--refine: " + e.detail());
        }
        ZeroCheck zc = refine_zero(spec, g.to_complex());
        j["zero_check"] = {{"zero", cplx_json(zc.zero)},
                           {"refined", cplx_json(zc.refined)},
                           {"residual", zc.residual},
                           {"winding", zc.winding},
                           {"iterations", zc.iterations}};
    }
    return dump(j);
}

std::string cmd_saddles(const RunConfig& cfg)
{
    require_format(cfg, {"json", "csv", "svg"});
    require_m(cfg);
    ZeroWindow w = load_window(cfg);
    auto segs = saddle_connections(w, cfg.m);
    if (cfg.format == "svg") return saddles_svg(w, segs, holonomy(w));
    if (cfg.format == "csv") {
        std::string s = "from_re,from_im,to_re,to_im,hol_re,hol_im,provisional\n";
        for (const auto& g : segs) {
            const ZPoint& a = w[g.from_idx];
            const ZPoint& b = w[g.to_idx];
            s += fmt::format("{},{},{},{},{},{},{}\n", csv_field(a.re, w.mode()), csv_field(a.im, w.mode()),
                             csv_field(b.re, w.mode()), csv_field(b.im, w.mode()), csv_field(g.holonomy.re, w.mode()),
                             csv_field(g.holonomy.im, w.mode()), g.provisional ? "true" : "false");
        }
        return s;
    }
    json list = json::array();
    for (const auto& g : segs)
        list.push_back({{"from", g.from_idx},
                        {"to", g.to_idx},
                        {"holonomy", detail::point_json(g.holonomy, w.mode())},
                        {"length", g.length},
                        {"direction", g.direction},
                        {"multiplicity", g.multiplicity},
                        {"provisional", g.provisional}});
    json j;
    j["m"] = cfg.m;
    j["count"] = segs.size();
    j["segments"] = std::move(list);
    return dump(j);
}

std::string cmd_hol(const RunConfig& cfg)
{
    require_format(cfg, {"json", "csv"});
    ZeroWindow w = load_window(cfg);
    HolonomySet h = holonomy(w);
    if (cfg.format == "csv") {
        std::string s = "hol_re,hol_im,certified\n";
        for (const auto& v : h.vectors)
            s += fmt::format("{},{},{}\n", csv_field(v.v.re, w.mode()), csv_field(v.v.im, w.mode()),
                             v.certified ? "true" : "false");
        return s;
    }
    json certified = json::array();
    for (const auto& v : h.vectors) certified.push_back(v.certified);
    json j;
    j["count"] = h.size();
    j["window_radius"] = h.window_radius;
    j["complete_radius"] = h.complete_radius;
    j["vectors"] = points_json(h.points(), w.mode());
    j["certified"] = std::move(certified);
    return dump(j);
}

std::string cmd_directions(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    ZeroWindow w = load_window(cfg);
    DirectionProfile p = direction_profile(holonomy(w));
    json j;
    j["count"] = p.directions.size();
    j["directions"] = p.directions;
    j["max_gap"] = p.max_gap;
    j["min_gap"] = p.min_gap;
    j["mean_gap"] = p.mean_gap;
    j["accumulation"] = p.accumulation;
    return dump(j);
}

json cover_point_json(const CoverPoint& c, Mode mode)
{
    return {{"base", detail::point_json(c.base, mode)}, {"sheet", c.sheet}, {"is_cone", c.is_cone}};
}

json crossings_json(const std::vector<Crossing>& cs, const CutSystem& cuts)
{
    json a = json::array();
    for (const auto& c : cs)
        a.push_back({{"edge", c.edge},
                     {"zero", c.zero},
                     {"zero_point", detail::point_json(cuts.zeros[c.zero], cuts.mode)},
                     {"sign", c.sign}});
    return a;
}

std::string cmd_lift(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    require_m(cfg);
    if (cfg.path.empty()) throw ArgError("lift needs --path \"x0,y0;x1,y1;...\"");
    if (cfg.start_sheet < 0 || cfg.start_sheet >= cfg.m) throw ArgError("--start-sheet must lie in 0..m-1");
    std::vector<ZPoint> poly;
    try {
        poly = parse_point_list(cfg.path);
    } catch (const FlatError& e) {
        throw ArgError("--path: " + e.detail());
    }
    if (poly.empty()) throw ArgError("--path has no vertices");
    ZeroWindow w = load_window(cfg);
    if (w.mode() == Mode::Float)
        for (auto& p : poly) p = p.rounded();
    CutSystem cuts = make_cuts(w, cfg.m);
    LiftResult r = lift_path(poly, CoverPoint{poly.front(), cfg.start_sheet, false}, cuts);
    json j;
    j["m"] = cfg.m;
    j["start"] = cover_point_json(CoverPoint{poly.front(), cfg.start_sheet, false}, w.mode());
    j["end"] = cover_point_json(r.end, w.mode());
    j["crossings"] = crossings_json(r.crossings, cuts);
    j["perturbed"] = r.perturbed;
    return dump(j);
}

std::string cmd_cone_angle(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    require_m(cfg);
    if (cfg.zero_index < 0) throw ArgError("cone-angle needs --zero-index i");
    ZeroWindow w = load_window(cfg);
    if (static_cast<std::size_t>(cfg.zero_index) >= w.size())
        throw ArgError(fmt::format("--zero-index {} outside 0..{}", cfg.zero_index, w.size() - 1));
    std::optional<double> r;
    if (cfg.has_circle_radius) r = cfg.circle_radius;
    ConeAngle c = cone_angle(static_cast<std::size_t>(cfg.zero_index), w, cfg.m, r);
    json j;
    j["zero"] = detail::point_json(w[cfg.zero_index], w.mode());
    j["m"] = cfg.m;
    j["turns"] = c.turns;
    j["angle"] = c.angle;
    j["angle_over_pi"] = 2 * c.turns;
    j["circle_radius"] = c.radius;
    return dump(j);
}

std::string cmd_classify(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    ZeroWindow w = load_window(cfg);
    VeechClass v = classify(w, search_config(cfg, w));
    json j;
    j["kind"] = std::string(kind_name(v.kind));
    if (v.kind == VeechKind::Countable)
        j["theta"] = nullptr;
    else
        j["theta"] = v.theta;
    if (v.center)
        j["center"] = detail::point_json(*v.center, w.mode());
    else
        j["center"] = nullptr;
    j["lower"] = matrices_json(v.lower, w.mode());
    j["upper"] = matrices_json(v.upper, w.mode());
    j["window_consistent"] = v.window_consistent;
    return dump(j);
}

std::string cmd_sandwich(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    ZeroWindow w = load_window(cfg);
    if (!w[0].is_zero()) w = canonicalize(w);
    StabilizerSearchConfig sc = search_config(cfg, w);
    SandwichReport r = sandwich_report(w, sc);
    ClosureReport c = group_closure_check(r.lower, w, sc);
    json violations = json::array();
    for (const auto& v : c.violations)
        violations.push_back({{"left", detail::matrix_json(v.left, w.mode())},
                              {"right", detail::matrix_json(v.right, w.mode())},
                              {"product", detail::matrix_json(v.product, w.mode())}});
    json j;
    j["lower"] = matrices_json(r.lower, w.mode());
    j["upper"] = matrices_json(r.upper, w.mode());
    j["missing"] = matrices_json(r.missing, w.mode());
    j["containment_ok"] = r.containment_ok;
    j["closure"] = {{"tested", c.tested}, {"skipped", c.skipped}, {"violations", std::move(violations)}};
    return dump(j);
}

std::string cmd_equiv(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    if (cfg.left.empty() || cfg.right.empty()) throw ArgError("equiv needs --left FILE and --right FILE");
    if (!cfg.sequence.empty() || !cfg.input.empty()) throw ArgError("equiv takes --left/--right instead of a window");
    ZeroWindow a = read_window_file(cfg.left);
    ZeroWindow b = read_window_file(cfg.right);
    EquivResult r = translation_equiv(a, b);
    json j;
    j["equivalent"] = r.equivalent;
    if (r.translation)
        j["translation"] = detail::point_json(*r.translation, a.mode());
    else
        j["translation"] = nullptr;
    j["matched_fraction"] = r.matched_fraction;
    j["compared"] = r.compared;
    return dump(j);
}

std::string cmd_moduli(const RunConfig& cfg)
{
    require_format(cfg, {"json"});
    ZeroWindow w = load_window(cfg);
    ModuliForm f = moduli_canonical(w);
    json j;
    j["translation"] = detail::point_json(f.translation, w.mode());
    j["canonical_points"] = points_json(f.canonical_points, w.mode());
    j["c0_coords"] = points_json(f.c0_coords, w.mode());
    j["sup_norm"] = f.sup_norm;
    j["empty"] = f.empty;
    return dump(j);
}

std::string cmd_plot(const RunConfig& cfg)
{
    if (cfg.has_format) require_format(cfg, {"svg"});
    require_m(cfg);
    ZeroWindow w = load_window(cfg);
    return saddles_svg(w, saddle_connections(w, cfg.m), holonomy(w));
}

void add_common(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--sequence", cfg.sequence, "built-in sequence name");
    sub->add_option("--input", cfg.input, "window JSON file");
    sub->add_option("--param", cfg.params, "sequence parameter key=value")->take_all();
    sub->add_option("--radius", cfg.radius, "window radius R");
    sub->add_option("--inner", cfg.inner, "inner radius r");
    sub->add_option("--entry-bound", cfg.entry_bound, "bound on stabilizer entries");
    sub->add_option("--m", cfg.m, "curve degree m");
    sub->add_option("--mode", cfg.mode, "exact or float");
    sub->add_option("--eps", cfg.eps, "float tolerance");
    sub->add_option("--format", cfg.format, "json, csv or svg");
    sub->add_option("--out", cfg.out_path, "output file");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
}

}  // namespace

GeneratorSpec parse_sequence(const std::string& name, const std::map<std::string, std::string>& params)
{
    GeneratorSpec spec;
    auto allow = [&](std::initializer_list<const char*> keys) {
        for (const auto& [k, v] : params) {
            bool ok = std::any_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; });
            if (!ok) throw FlatError("InvalidArgument", "sequence '" + name + "' has no parameter '" + k + "'");
        }
    };
    auto get = [&](const char* key) -> std::optional<std::string> {
        auto it = params.find(key);
        if (it == params.end()) return std::nullopt;
        return it->second;
    };

    if (name == "positive-integers") {
        spec.kind = SequenceKind::PositiveIntegers;
        allow({});
    } else if (name == "all-integers") {
        spec.kind = SequenceKind::AllIntegers;
        allow({});
    } else if (name == "odd-4n13") {
        spec.kind = SequenceKind::Odd4n13;
        allow({"n"});
        std::string n = get("n").value_or("positive");
        if (n == "all")
            spec.all_n = true;
        else if (n != "positive")
            throw FlatError("InvalidArgument", "odd-4n13 parameter n must be 'positive' or 'all'");
    } else if (name == "gaussian-lattice") {
        spec.kind = SequenceKind::GaussianLattice;
        allow({});
    } else if (name == "integers-minus-i") {
        spec.kind = SequenceKind::IntegersPlusMinusI;
        allow({});
    } else if (name == "orbit") {
        spec.kind = SequenceKind::Orbit;
        allow({"seeds", "gens", "wordlen"});
        auto gens = get("gens");
        if (!gens || gens->empty()) throw FlatError("InvalidArgument", "orbit needs gens=a,b,c,d;...");
        for (const auto& g : split(*gens, ';'))
            if (!trim(g).empty()) spec.generators.push_back(parse_matrix(trim(g)));
        auto seeds = get("seeds");
        if (!seeds || *seeds == "default")
            spec.default_seeds = true;
        else
            spec.points = parse_point_list(*seeds);
        std::string wl = get("wordlen").value_or("4");
        try {
            spec.max_word_length = std::stoi(wl);
        } catch (const std::exception&) {
            throw FlatError("InvalidArgument", "wordlen must be an integer");
        }
        if (spec.max_word_length < 0) throw FlatError("InvalidArgument", "wordlen must be >= 0");
    } else if (name == "explicit") {
        spec.kind = SequenceKind::Explicit;
        allow({"points"});
        auto pts = get("points");
        if (!pts) throw FlatError("InvalidArgument", "explicit needs points=\"re,im;re,im;...\"");
        spec.points = parse_point_list(*pts);
    } else {
        throw FlatError("InvalidArgument", "unknown sequence '" + name + "'");
    }
    return spec;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"flatcurve: flat geometry of infinite hyperelliptic curves", "flatcurve"};
    app.require_subcommand(1);

    using Handler = std::function<std::string(const RunConfig&)>;
    std::vector<std::pair<CLI::App*, Handler>> subs;
    auto add = [&](const char* name, const char* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, cfg);
        subs.emplace_back(sub, std::move(h));
        return sub;
    };
    add("gen", "generate a window", cmd_gen);
    add("validate", "check window invariants", cmd_validate);
    auto* eval = add("eval", "evaluate the Weierstrass product", cmd_eval);
    eval->add_option("--at", cfg.at, "evaluation point re,im");
    eval->add_option("--factors", cfg.factors, "number of window terms used");
    eval->add_option("--degree", cfg.degree, "default, auto or an integer d");
    auto* vz = add("verify-zeros", "count zeros inside a box", cmd_verify_zeros);
    vz->add_option("--box", cfg.box, "x0,y0,x1,y1");
    vz->add_option("--samples", cfg.samples, "initial contour samples (>= 64)");
    vz->add_option("--factors", cfg.factors, "number of window terms used");
    vz->add_option("--degree", cfg.degree, "default or auto");
    vz->add_option("--refine", cfg.refine, "Newton start point re,im");
    add("saddles", "saddle connections", cmd_saddles);
    add("hol", "holonomy vectors", cmd_hol);
    add("directions", "holonomy direction profile", cmd_directions);
    auto* lift = add("lift", "lift a polyline to the cover", cmd_lift);
    lift->add_option("--path", cfg.path, "x0,y0;x1,y1;...");
    lift->add_option("--start-sheet", cfg.start_sheet, "sheet of the first vertex");
    auto* cone = add("cone-angle", "cone angle at a zero", cmd_cone_angle);
    cone->add_option("--zero-index", cfg.zero_index, "window index of the zero");
    cone->add_option("--circle-radius", cfg.circle_radius, "radius of the lifted circle");
    add("classify", "Veech group classification", cmd_classify);
    add("sandwich", "stabilizer bounds of the Veech group", cmd_sandwich);
    auto* eq = add("equiv", "translation equivalence of two windows", cmd_equiv);
    eq->add_option("--left", cfg.left, "window JSON file");
    eq->add_option("--right", cfg.right, "window JSON file");
    add("moduli", "canonical form and null-sequence coordinates", cmd_moduli);
    add("plot", "SVG of zeros, saddle connections and holonomy directions", cmd_plot);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << kUsage;
        return 2;
    }

    for (auto& [sub, handler] : subs) {
        if (!sub->parsed()) continue;
        cfg.has_radius = sub->count("--radius") > 0;
        cfg.has_inner = sub->count("--inner") > 0;
        cfg.has_entry_bound = sub->count("--entry-bound") > 0;
        cfg.has_mode = sub->count("--mode") > 0;
        cfg.has_eps = sub->count("--eps") > 0;
        cfg.has_format = sub->count("--format") > 0;
        if (sub->get_name() == "cone-angle") cfg.has_circle_radius = sub->count("--circle-radius") > 0;
        if (sub->get_name() == "plot" && !cfg.has_format) cfg.format = "svg";
        try {
            std::string text = handler(cfg);
            if (cfg.out_path.empty())
                out << text;
            else
                write_text_file(cfg.out_path, text);
            return 0;
        } catch (const ArgError& e) {
            err << "error: " << e.what() << "\n" << kUsage;
            return 2;
        } catch (const NonFiniteError& e) {
            json j{{"error", e.code()}, {"detail", e.detail()}, {"log10mag", e.log10_magnitude()}};
            out << j.dump() << "\n";
            return 1;
        } catch (const FlatError& e) {
            json j{{"error", e.code()}, {"detail", e.detail()}};
            out << j.dump() << "\n";
            return 1;
        } catch (const std::exception& e) {
            json j{{"error", "Internal"}, {"detail", e.what()}};
            out << j.dump() << "\n";
            return 1;
        }
    }
    err << "error: no subcommand\n" << kUsage;
    return 2;
}

}  // namespace flatcurve
