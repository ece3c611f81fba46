#include "flatcurve/cover.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace flatcurve {

namespace {

void require_degree(int m)
{
    if (m < 2) throw FlatError("InvalidArgument", "curve degree m must be >= 2");
}

int wrap_sheet(long s, int m) { return static_cast<int>(((s % m) + m) % m); }

bool is_zero_of(const ZPoint& base, const ZeroWindow& w)
{
    if (w.mode() == Mode::Exact)
        return std::any_of(w.points().begin(), w.points().end(), [&](const ZPoint& z) { return z == base; });
    auto b = base.to_complex();
    return std::any_of(w.points().begin(), w.points().end(),
                       [&](const ZPoint& z) { return std::abs(z.to_complex() - b) <= w.eps(); });
}

// Squared distance from z to the closed segment [p, q], exact.
Rational segment_distance2(const ZPoint& p, const ZPoint& q, const ZPoint& z)
{
    ZPoint d = q - p;
    Rational len2 = d.norm2();
    if (sgn(len2) == 0) return (z - p).norm2();
    Rational t = dot(d, z - p) / len2;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    return (p + t * d - z).norm2();
}

double segment_distance(std::complex<double> p, std::complex<double> q, std::complex<double> z)
{
    auto d = q - p;
    double len2 = std::norm(d);
    if (len2 == 0) return std::abs(z - p);
    double t = std::clamp(((z - p).real() * d.real() + (z - p).imag() * d.imag()) / len2, 0.0, 1.0);
    return std::abs(p + t * d - z);
}

struct CutCache {
    std::vector<std::complex<double>> z;
    double scale = 1;
};

CutCache cache_of(const CutSystem& cuts)
{
    CutCache c;
    for (const auto& z : cuts.zeros) {
        c.z.push_back(z.to_complex());
        c.scale = std::max({c.scale, std::abs(c.z.back().real()), std::abs(c.z.back().imag())});
    }
    return c;
}

}  // namespace

CutSystem make_cuts(const ZeroWindow& w, int m)
{
    require_degree(m);
    return CutSystem{w.points(), m, w.mode(), w.eps()};
}

SingularitySets singularities(const ZeroWindow& w)
{
    SingularitySets s;
    for (const auto& z : w.points()) s.finite_cone_points.push_back({z, 0, true});
    return s;
}

std::vector<CoverPoint> fiber(const ZPoint& base, const ZeroWindow& w, int m)
{
    require_degree(m);
    if (is_zero_of(base, w)) return {CoverPoint{base, 0, true}};
    std::vector<CoverPoint> out;
    for (int s = 0; s < m; ++s) out.push_back({base, s, false});
    return out;
}

LiftResult lift_path(const std::vector<ZPoint>& poly_in, const CoverPoint& start, const CutSystem& cuts)
{
    require_degree(cuts.m);
    if (poly_in.empty()) throw FlatError("InvalidArgument", "empty path");
    if (!(start.base == poly_in.front()))
        throw FlatError("InvalidArgument", "start point " + to_string(start.base) + " is not the first path vertex");
    if (start.is_cone) throw FlatError("PathThroughBranchPoint", "path starts at a cone point");
    if (start.sheet < 0 || start.sheet >= cuts.m)
        throw FlatError("InvalidArgument", fmt::format("start sheet {} outside 0..{}", start.sheet, cuts.m - 1));

    LiftResult out;
    std::vector<ZPoint> poly = poly_in;
    const Rational shift(cuts.eps);
    for (std::size_t v = 0; v < poly.size(); ++v) {
        bool on_cut = std::any_of(cuts.zeros.begin(), cuts.zeros.end(),
                                  [&](const ZPoint& z) { return poly[v].re == z.re && poly[v].im < z.im; });
        if (on_cut) {
            poly[v].re += shift;
            out.perturbed.push_back(v);
        }
    }

    const CutCache cache = cache_of(cuts);
    const double eps = cuts.eps;
    const double slack = 1e-9 * cache.scale + eps;
    const Rational eps2 = Rational(eps) * Rational(eps);

    // A lone vertex still has to avoid the zeros.
    if (poly.size() == 1) {
        for (std::size_t k = 0; k < cuts.zeros.size(); ++k)
            if ((poly[0] - cuts.zeros[k]).norm2() <= eps2)
                throw FlatError("PathThroughBranchPoint", "path vertex " + to_string(poly[0]) + " is a zero");
    }

    long sheet = start.sheet;
    for (std::size_t e = 0; e + 1 < poly.size(); ++e) {
        const ZPoint& p = poly[e];
        const ZPoint& q = poly[e + 1];
        auto pc = p.to_complex();
        auto qc = q.to_complex();
        double xlo = std::min(pc.real(), qc.real()) - slack;
        double xhi = std::max(pc.real(), qc.real()) + slack;
        double ylo = std::min(pc.imag(), qc.imag()) - slack;
        double yhi = std::max(pc.imag(), qc.imag()) + slack;
        for (std::size_t k = 0; k < cuts.zeros.size(); ++k) {
            const auto& zc = cache.z[k];
            if (zc.real() < xlo || zc.real() > xhi) continue;
            const ZPoint& z = cuts.zeros[k];
            if (zc.imag() >= ylo && zc.imag() <= yhi && segment_distance(pc, qc, zc) <= 2 * slack &&
                segment_distance2(p, q, z) <= eps2)
                throw FlatError("PathThroughBranchPoint",
                                "edge " + std::to_string(e) + " passes within eps of zero " + to_string(z));
            int sign = 0;
            if (p.re < z.re && z.re <= q.re)
                sign = 1;
            else if (q.re < z.re && z.re <= p.re)
                sign = -1;
            if (sign == 0) continue;
            Rational y = p.im + (q.im - p.im) * (z.re - p.re) / (q.re - p.re);
            if (y < z.im) {
                sheet += sign;
                out.crossings.push_back({e, k, sign});
            }
        }
    }
    out.end = CoverPoint{poly_in.back(), wrap_sheet(sheet, cuts.m), false};
    return out;
}

namespace {

double nearest_other(const ZeroWindow& w, std::size_t idx)
{
    double best = std::numeric_limits<double>::infinity();
    auto z = w[idx].to_complex();
    for (std::size_t i = 0; i < w.size(); ++i)
        if (i != idx) best = std::min(best, std::abs(w[i].to_complex() - z));
    return best;
}

}  // namespace

ConeAngle cone_angle(std::size_t zero_idx, const ZeroWindow& w, int m, std::optional<double> radius)
{
    require_degree(m);
    if (zero_idx >= w.size()) throw FlatError("InvalidArgument", "zero index outside the window");
    double nearest = nearest_other(w, zero_idx);
    double r = radius.value_or(std::isfinite(nearest) ? nearest / 4 : 1.0);
    if (!(r > 0)) throw FlatError("InvalidArgument", "circle radius must be positive");
    if (std::isfinite(nearest) && r > nearest / 2)
        throw FlatError("RadiusTooLarge", fmt::format("radius {} exceeds half the gap {} to the nearest zero", r, nearest));

    constexpr int kSides = 16;
    const ZPoint& c = w[zero_idx];
    std::vector<ZPoint> loop;
    for (int j = 0; j <= kSides; ++j) {
        double t = (j % kSides + 0.5) * 2 * std::numbers::pi / kSides;
        loop.push_back(c + ZPoint::from_double(r * std::cos(t), r * std::sin(t)));
    }
    CutSystem cuts = make_cuts(w, m);
    CoverPoint at{loop.front(), 0, false};
    ConeAngle out;
    out.radius = r;
    do {
        at = lift_path(loop, at, cuts).end;
        ++out.turns;
        if (out.turns > m) throw FlatError("NoConvergence", "lifted circle did not close");
    } while (at.sheet != 0);
    out.angle = 2 * std::numbers::pi * out.turns;
    return out;
}

std::vector<LiftedSaddle> lift_saddle(const SaddleSegment& seg, const ZeroWindow& w, const CutSystem& cuts)
{
    if (seg.from_idx >= w.size() || seg.to_idx >= w.size() || seg.from_idx == seg.to_idx)
        throw FlatError("InvalidArgument", "segment indices outside the window");
    if (!is_visible(w, seg.from_idx, seg.to_idx))
        throw FlatError("NotVisible", fmt::format("zeros {} and {} do not see each other", seg.from_idx, seg.to_idx));

    const ZPoint& a = w[seg.from_idx];
    const ZPoint& b = w[seg.to_idx];
    // Interior sub-segment [a + δ(b-a), b - δ(b-a)] stays clear of both cone points.
    double gap = std::min(nearest_other(w, seg.from_idx), nearest_other(w, seg.to_idx));
    double len = (b - a).abs();
    Rational delta(std::min(0.25, gap / (4 * len)));
    ZPoint d = b - a;
    std::vector<ZPoint> path{a + delta * d, b - delta * d};
    LiftResult probe = lift_path(path, CoverPoint{path.front(), 0, false}, cuts);
    int shift = probe.end.sheet;

    std::vector<LiftedSaddle> out;
    for (int s = 0; s < cuts.m; ++s)
        out.push_back({seg.from_idx, seg.to_idx, s, (s + shift) % cuts.m, probe.crossings});
    return out;
}

}  // namespace flatcurve
