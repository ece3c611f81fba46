#include "flatcurve/veech.hpp"

#include "frame.hpp"
#include "search.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

namespace flatcurve {

using detail::DPoint;
using detail::IPoint;

ResolvedSearch resolve(const StabilizerSearchConfig& cfg, double outer)
{
    ResolvedSearch r;
    r.outer = outer;
    r.inner = cfg.inner_radius.value_or(outer / 3);
    if (!(r.inner > 0) || !(r.inner < outer))
        throw FlatError("InvalidArgument", fmt::format("inner radius {} must lie in (0, {})", r.inner, outer));
    r.entry_bound = cfg.entry_bound.value_or(outer / r.inner);
    if (!(r.entry_bound > 0) || !std::isfinite(r.entry_bound))
        throw FlatError("InvalidArgument", "entry bound must be positive and finite");
    r.require_non_contracting = cfg.require_non_contracting;
    return r;
}

std::string_view kind_name(VeechKind kind)
{
    switch (kind) {
    case VeechKind::UncountableP: return "P";
    case VeechKind::UncountablePPrime: return "Pprime";
    case VeechKind::Countable: return "Countable";
    }
    return "Countable";
}

namespace {

std::optional<ZPoint> exact_symmetry(const ZeroWindow& w, double r)
{
    std::vector<ZPoint> extra{w.translation()};
    auto frame = detail::make_exact_frame(w.points(), extra);
    const auto& p = frame.pts;
    const IPoint o = frame.to_frame(w.translation());
    const IPoint o2{2 * o.x, 2 * o.y};
    const detail::ExactIndex index(p);

    std::unordered_set<IPoint, detail::IPointHash> seen;
    std::vector<IPoint> centers;  // doubled: 2c
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i; j < p.size(); ++j) {
            IPoint c2 = p[i] + p[j];
            if (!detail::norm_within(detail::norm2(c2 - o2), 2 * r, frame.denom)) continue;
            if (seen.insert(c2).second) centers.push_back(c2);
        }
    auto as_point = [&](IPoint c2) {
        ZPoint z = frame.from_frame(c2);
        return ZPoint(z.re / 2, z.im / 2);
    };
    std::vector<std::pair<ZPoint, IPoint>> ordered;
    for (IPoint c2 : centers) ordered.emplace_back(as_point(c2), c2);
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });

    for (const auto& [c, c2] : ordered) {
        bool ok = true;
        for (std::size_t k = 0; k < p.size() && ok; ++k) {
            IPoint x = c2 - p[k];
            if (!detail::norm_within(detail::norm2(x - o), w.radius(), frame.denom)) continue;
            ok = index.contains(x);
        }
        if (ok) return c;
    }
    return std::nullopt;
}

std::optional<ZPoint> float_symmetry(const ZeroWindow& w, double r)
{
    auto p = detail::make_float_frame(w.points());
    auto oc = w.translation().to_complex();
    const DPoint o{oc.real(), oc.imag()};
    const double eps = w.eps();
    const detail::FloatIndex index(p, eps);

    struct Center {
        double x, y, norm, arg;
    };
    std::vector<Center> centers;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i; j < p.size(); ++j) {
            double cx = (p[i].x + p[j].x) / 2;
            double cy = (p[i].y + p[j].y) / 2;
            if (std::hypot(cx - o.x, cy - o.y) > r) continue;
            double a = std::atan2(cy, cx);
            if (a < 0) a += 2 * std::numbers::pi;
            centers.push_back({cx, cy, std::hypot(cx, cy), a});
        }
    std::sort(centers.begin(), centers.end(), [](const Center& a, const Center& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.arg < b.arg;
    });
    for (const auto& c : centers) {
        bool ok = true;
        for (std::size_t k = 0; k < p.size() && ok; ++k) {
            DPoint x{2 * c.x - p[k].x, 2 * c.y - p[k].y};
            if (std::hypot(x.x - o.x, x.y - o.y) > w.radius() - eps) continue;
            ok = index.contains(x);
        }
        if (ok) return ZPoint::from_double(c.x, c.y);
    }
    return std::nullopt;
}

std::vector<ZPoint> inside(const std::vector<ZPoint>& pts, double radius)
{
    std::vector<ZPoint> out;
    for (const auto& z : pts)
        if (within_radius(z, radius)) out.push_back(z);
    return out;
}

std::vector<Mat2> linear_parts(const std::vector<detail::AffineCandidate>& c)
{
    std::vector<Mat2> out;
    out.reserve(c.size());
    for (const auto& x : c) out.push_back(x.linear);
    return out;
}

std::vector<Mat2> window_stabilizers(const ZeroWindow& w, const StabilizerSearchConfig& cfg, bool reference)
{
    ResolvedSearch rs = resolve(cfg, w.radius());
    detail::SearchProblem pr;
    pr.cloud = w.points();
    pr.inner = inside(w.points(), rs.inner);
    pr.origins = {ZPoint(0L, 0L)};
    pr.entry_bound = rs.entry_bound;
    pr.require_non_contracting = rs.require_non_contracting;
    pr.mode = w.mode();
    pr.eps = w.eps();
    return linear_parts(detail::search_affine(pr, reference));
}

bool member(const std::vector<Mat2>& sorted, const Mat2& m, Mode mode, double eps)
{
    if (mode == Mode::Exact) return std::binary_search(sorted.begin(), sorted.end(), m, mat_less);
    return std::any_of(sorted.begin(), sorted.end(), [&](const Mat2& x) { return approx_equal(x, m, eps); });
}

/// Entries within bound and both m and m⁻¹ keep B(0, r) inside B(0, reach).
bool testable(const Mat2& m, double entry_bound, double r, double reach)
{
    if (sgn(m.det()) <= 0) return false;
    if (m.max_abs_entry() > Rational(entry_bound)) return false;
    double limit = reach * (1 - 1e-12);
    return m.sigma_max() * r <= limit && m.inverse().sigma_max() * r <= limit;
}

}  // namespace

std::optional<ZPoint> pprime_symmetry(const ZeroWindow& w, std::optional<double> inner_radius)
{
    if (w.empty()) throw FlatError("EmptyWindow", "symmetry test on an empty window");
    if (!collinear(w)) throw FlatError("InvalidArgument", "point symmetry test needs a collinear window");
    double r = inner_radius.value_or(w.radius() / 3);
    if (!(r > 0)) throw FlatError("InvalidArgument", "inner radius must be positive");
    return w.mode() == Mode::Exact ? exact_symmetry(w, r) : float_symmetry(w, r);
}

std::vector<Mat2> stabilizer_candidates(const ZeroWindow& w, const StabilizerSearchConfig& cfg)
{
    return window_stabilizers(w, cfg, false);
}

std::vector<Mat2> stabilizer_candidates_reference(const ZeroWindow& w, const StabilizerSearchConfig& cfg)
{
    return window_stabilizers(w, cfg, true);
}

std::vector<Mat2> hol_stabilizer(const HolonomySet& h, const StabilizerSearchConfig& cfg)
{
    ResolvedSearch rs = resolve(cfg, h.complete_radius);
    detail::SearchProblem pr;
    for (const auto& v : h.vectors)
        if (v.certified && within_radius(v.v, rs.outer)) pr.cloud.push_back(v.v);
    pr.inner = inside(pr.cloud, rs.inner);
    pr.origins = {ZPoint(0L, 0L)};
    pr.entry_bound = rs.entry_bound;
    pr.require_non_contracting = rs.require_non_contracting;
    pr.mode = h.mode;
    pr.eps = h.eps;
    try {
        return linear_parts(detail::search_affine(pr));
    } catch (const FlatError& e) {
        if (e.code() == "DegenerateWindow")
            throw FlatError("DegenerateWindow", "all certified holonomy vectors are parallel");
        throw;
    }
}

SandwichReport sandwich_report(const ZeroWindow& w, const StabilizerSearchConfig& cfg)
{
    if (collinear(w)) throw FlatError("InvalidArgument", "sandwich bounds apply to non-collinear windows only");
    ResolvedSearch lower_rs = resolve(cfg, w.radius());
    SandwichReport rep;
    rep.lower = stabilizer_candidates(w, cfg);

    HolonomySet h = holonomy(w);
    StabilizerSearchConfig upper_cfg = cfg;
    upper_cfg.inner_radius = lower_rs.inner;
    ResolvedSearch upper_rs = resolve(upper_cfg, h.complete_radius);
    rep.upper = hol_stabilizer(h, upper_cfg);

    for (const auto& a : rep.lower) {
        if (!testable(a, upper_rs.entry_bound, upper_rs.inner, upper_rs.outer)) continue;
        if (!member(rep.upper, a, w.mode(), w.eps())) rep.missing.push_back(a);
    }
    rep.containment_ok = rep.missing.empty();
    return rep;
}

ClosureReport group_closure_check(const std::vector<Mat2>& candidates, const ZeroWindow& w,
                                  const StabilizerSearchConfig& cfg)
{
    if (candidates.empty()) throw FlatError("InvalidArgument", "closure check needs at least one candidate");
    ResolvedSearch rs = resolve(cfg, w.radius());
    std::vector<Mat2> sorted = candidates;
    std::sort(sorted.begin(), sorted.end(), mat_less);
    double reach = w.origin_ball_radius();
    ClosureReport rep;
    for (const auto& a : sorted)
        for (const auto& b : sorted) {
            Mat2 c = a * b;
            if (!testable(c, rs.entry_bound, rs.inner, reach)) {
                ++rep.skipped;
                continue;
            }
            ++rep.tested;
            if (!member(sorted, c, w.mode(), w.eps())) rep.violations.push_back({a, b, c});
        }
    return rep;
}

VeechClass classify(const ZeroWindow& w_in, const StabilizerSearchConfig& cfg)
{
    if (w_in.size() < 2) throw FlatError("TooFewPoints", "classification needs at least 2 points");
    const ZeroWindow w = w_in[0].is_zero() ? w_in : canonicalize(w_in);
    VeechClass out;
    if (collinear(w)) {
        out.theta = line_direction(w);
        out.center = pprime_symmetry(w, cfg.inner_radius);
        out.kind = out.center ? VeechKind::UncountablePPrime : VeechKind::UncountableP;
        out.window_consistent = true;
        return out;
    }
    SandwichReport rep = sandwich_report(w, cfg);
    out.kind = VeechKind::Countable;
    out.lower = std::move(rep.lower);
    out.upper = std::move(rep.upper);
    out.window_consistent = rep.containment_ok;
    return out;
}

}  // namespace flatcurve
