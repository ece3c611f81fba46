#include "flatcurve/equiv.hpp"

#include "flatcurve/flatgeom.hpp"

#include "frame.hpp"
#include "search.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace flatcurve {

using detail::DPoint;
using detail::IPoint;

namespace {

struct Tally {
    std::size_t agree = 0;
    std::size_t compared = 0;
};

std::vector<ZPoint> translation_candidates(const ZeroWindow& w1, const ZeroWindow& w2)
{
    const ZPoint z1 = w1.raw(0);
    std::set<ZPoint, LexLess> uniq;
    for (std::size_t i = 0; i < w2.size(); ++i) {
        ZPoint q = w2.raw(i);
        if (within_radius(q, w2.radius() / 2)) uniq.insert(q - z1);
    }
    std::vector<ZPoint> out(uniq.begin(), uniq.end());
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

EquivResult exact_equiv(const ZeroWindow& w1, const ZeroWindow& w2, const std::vector<ZPoint>& cands)
{
    auto raw1 = w1.raw_points();
    auto raw2 = w2.raw_points();
    std::vector<ZPoint> extra = raw2;
    extra.insert(extra.end(), cands.begin(), cands.end());
    auto frame = detail::make_exact_frame(raw1, extra);
    const auto& a = frame.pts;
    std::vector<IPoint> b;
    for (const auto& z : raw2) b.push_back(frame.to_frame(z));
    const detail::ExactIndex set1(a), set2(b);
    const std::int64_t D = frame.denom;

    EquivResult best;
    for (const auto& cand : cands) {
        IPoint t = frame.to_frame(cand);
        Tally tally;
        for (const IPoint& x : a) {
            IPoint y = x + t;
            if (!detail::norm_within(detail::norm2(y), w2.radius(), D)) continue;
            ++tally.compared;
            if (set2.contains(y)) ++tally.agree;
        }
        for (const IPoint& y : b) {
            IPoint x = y - t;
            if (!detail::norm_within(detail::norm2(x), w1.radius(), D)) continue;
            if (!set1.contains(x)) ++tally.compared;
        }
        double frac = tally.compared ? double(tally.agree) / double(tally.compared) : 0.0;
        if (tally.agree == tally.compared && tally.compared > 0)
            return EquivResult{true, cand, 1.0, tally.compared};
        if (frac > best.matched_fraction || best.compared == 0) {
            best.matched_fraction = frac;
            best.compared = tally.compared;
        }
    }
    return best;
}

EquivResult float_equiv(const ZeroWindow& w1, const ZeroWindow& w2, const std::vector<ZPoint>& cands)
{
    auto a = detail::make_float_frame(w1.raw_points());
    auto b = detail::make_float_frame(w2.raw_points());
    const double eps = std::max(w1.eps(), w2.eps());
    const detail::FloatIndex set1(a, eps), set2(b, eps);
    const double r1 = w1.radius() - eps;
    const double r2 = w2.radius() - eps;

    EquivResult best;
    for (const auto& cand : cands) {
        auto tc = cand.to_complex();
        DPoint t{tc.real(), tc.imag()};
        Tally tally;
        for (const DPoint& x : a) {
            DPoint y{x.x + t.x, x.y + t.y};
            if (std::hypot(y.x, y.y) > r2) continue;
            ++tally.compared;
            if (set2.contains(y)) ++tally.agree;
        }
        for (const DPoint& y : b) {
            DPoint x = y - t;
            if (std::hypot(x.x, x.y) > r1) continue;
            if (!set1.contains(x)) ++tally.compared;
        }
        double frac = tally.compared ? double(tally.agree) / double(tally.compared) : 0.0;
        if (tally.agree == tally.compared && tally.compared > 0)
            return EquivResult{true, cand, 1.0, tally.compared};
        if (frac > best.matched_fraction || best.compared == 0) {
            best.matched_fraction = frac;
            best.compared = tally.compared;
        }
    }
    return best;
}

// Collinear windows: points s·d on a line; maps s ↦ λ s + τ with 1 ≤ |λ| ≤ bound.
std::vector<AffineMap> line_automorphisms(const ZeroWindow& w, const ResolvedSearch& rs)
{
    ZPoint d;
    for (const auto& p : w.points())
        if (!p.is_zero()) {
            d = p;
            break;
        }
    const Rational dn = d.norm2();
    const bool exact = w.mode() == Mode::Exact;
    const double eps = w.eps();

    std::vector<Rational> s;
    for (const auto& p : w.points()) s.push_back(dot(p, d) / dn);
    std::vector<Rational> inner;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (within_radius(w[i], rs.inner)) inner.push_back(s[i]);

    std::vector<double> sd;
    for (const auto& v : s) sd.push_back(v.get_d());
    std::vector<double> sorted_d = sd;
    std::sort(sorted_d.begin(), sorted_d.end());
    std::set<Rational> set(s.begin(), s.end());
    auto contains = [&](const Rational& v) {
        if (exact) return set.count(v) > 0;
        double x = v.get_d();
        auto it = std::lower_bound(sorted_d.begin(), sorted_d.end(), x - eps);
        return it != sorted_d.end() && *it <= x + eps;
    };

    std::optional<Rational> anchor;
    for (const auto& v : inner)
        if (sgn(v) != 0) {
            anchor = v;
            break;
        }
    if (!anchor) throw FlatError("DegenerateWindow", "inner points contain no nonzero point");

    const Rational bound(rs.entry_bound);
    std::vector<AffineMap> out;
    for (const auto& tau : inner)
        for (const auto& img : s) {
            Rational lambda = (img - tau) / *anchor;
            if (sgn(lambda) == 0) continue;
            Rational mag = abs(lambda);
            if (mag > bound) continue;
            if (rs.require_non_contracting && mag < 1) continue;
            bool ok = true;
            for (std::size_t i = 0; i < inner.size() && ok; ++i) ok = contains(lambda * inner[i] + tau);
            for (std::size_t i = 0; i < inner.size() && ok; ++i) ok = contains((inner[i] - tau) / lambda);
            if (!ok) continue;
            out.push_back({Mat2(lambda, 0, 0, lambda), tau * d});
        }
    return out;
}

bool affine_less(const AffineMap& x, const AffineMap& y)
{
    if (mat_less(x.linear, y.linear)) return true;
    if (mat_less(y.linear, x.linear)) return false;
    return LexLess{}(x.translation, y.translation);
}

}  // namespace

EquivResult translation_equiv(const ZeroWindow& w1, const ZeroWindow& w2)
{
    if (w1.mode() != w2.mode())
        throw FlatError("ModeMismatch", fmt::format("windows are in {} and {} mode", mode_name(w1.mode()), mode_name(w2.mode())));
    if (w1.empty() || w2.empty()) throw FlatError("EmptyWindow", "equivalence test on an empty window");
    auto cands = translation_candidates(w1, w2);
    return w1.mode() == Mode::Exact ? exact_equiv(w1, w2, cands) : float_equiv(w1, w2, cands);
}

std::vector<AffineMap> affine_automorphisms(const ZeroWindow& w_in, const StabilizerSearchConfig& cfg)
{
    if (w_in.size() < 3) throw FlatError("TooFewPoints", "affine automorphisms need at least 3 points");
    const ZeroWindow w = w_in[0].is_zero() ? w_in : canonicalize(w_in);
    ResolvedSearch rs = resolve(cfg, w.radius());

    std::vector<AffineMap> out;
    if (collinear(w)) {
        out = line_automorphisms(w, rs);
    } else {
        detail::SearchProblem pr;
        pr.cloud = w.points();
        for (const auto& z : w.points())
            if (within_radius(z, rs.inner)) pr.inner.push_back(z);
        pr.origins = pr.inner;
        pr.entry_bound = rs.entry_bound;
        pr.require_non_contracting = rs.require_non_contracting;
        pr.mode = w.mode();
        pr.eps = w.eps();
        for (auto& c : detail::search_affine(pr)) out.push_back({std::move(c.linear), std::move(c.translation)});
    }
    bool has_identity = std::any_of(out.begin(), out.end(), [](const AffineMap& m) {
        return m.linear == Mat2::identity() && m.translation.is_zero();
    });
    if (!has_identity) out.push_back(AffineMap{});
    std::sort(out.begin(), out.end(), affine_less);
    return out;
}

ModuliForm moduli_canonical(const ZeroWindow& w)
{
    if (w.empty()) throw FlatError("EmptyWindow", "moduli form of an empty window");
    ZeroWindow c = canonicalize(w);
    ModuliForm out;
    out.canonical_points = c.points();
    out.translation = c.translation();
    for (const auto& z : c.points())
        if (!z.is_zero()) out.c0_coords.push_back(ZPoint(1L, 0L) / z);
    out.empty = out.c0_coords.empty();
    out.sup_norm = out.empty ? 0.0 : sup_norm(out.c0_coords);
    return out;
}

std::vector<ZPoint> moduli_action(const std::vector<ZPoint>& c0, const ZPoint& b)
{
    std::vector<ZPoint> out;
    out.reserve(c0.size());
    const ZPoint one(1L, 0L);
    for (std::size_t k = 0; k < c0.size(); ++k) {
        ZPoint den = one + b * c0[k];
        if (den.is_zero())
            throw FlatError("PoleInAction", fmt::format("1 + b·w vanishes at index {} (w = {})", k, to_string(c0[k])));
        out.push_back(c0[k] / den);
    }
    return out;
}

}  // namespace flatcurve
