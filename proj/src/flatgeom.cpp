#include "flatcurve/flatgeom.hpp"

#include "frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace flatcurve {

using detail::DPoint;
using detail::IPoint;

namespace {

using Pair = std::pair<std::uint32_t, std::uint32_t>;

void require_index(const ZeroWindow& w, std::size_t i)
{
    if (i >= w.size()) throw FlatError("InvalidArgument", "index " + std::to_string(i) + " outside the window");
}

void require_degree(int m)
{
    if (m < 2) throw FlatError("InvalidArgument", "curve degree m must be >= 2");
}

bool float_blocked(const std::vector<DPoint>& p, std::size_t a, std::size_t b, std::size_t k, double eps)
{
    std::size_t lo = std::min(a, b);
    std::size_t hi = std::max(a, b);
    return detail::blocks(p[lo], p[hi], p[k], eps);
}

std::vector<Pair> flatten(std::vector<std::vector<std::uint32_t>>& per_anchor)
{
    std::size_t total = 0;
    for (const auto& v : per_anchor) total += v.size();
    std::vector<Pair> out;
    out.reserve(total);
    for (std::uint32_t a = 0; a < per_anchor.size(); ++a) {
        std::sort(per_anchor[a].begin(), per_anchor[a].end());
        for (std::uint32_t b : per_anchor[a]) out.emplace_back(a, b);
    }
    return out;
}

// For each anchor, sort the others by direction then distance; the nearest
// point in every direction class is exactly the visible one.
std::vector<Pair> exact_pairs_parallel(const ZeroWindow& w)
{
    auto frame = detail::make_exact_frame(w.points());
    const auto& p = frame.pts;
    const std::uint32_t n = static_cast<std::uint32_t>(p.size());
    std::vector<std::vector<std::uint32_t>> per_anchor(n);

#pragma omp parallel
    {
        std::vector<std::uint32_t> order;
        std::vector<IPoint> v(n);
#pragma omp for schedule(dynamic, 8)
        for (std::uint32_t a = 0; a < n; ++a) {
            order.clear();
            for (std::uint32_t j = 0; j < n; ++j) {
                v[j] = p[j] - p[a];
                if (j != a) order.push_back(j);
            }
            std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
                if (detail::angle_less(v[i], v[j])) return true;
                if (detail::angle_less(v[j], v[i])) return false;
                return detail::norm2(v[i]) < detail::norm2(v[j]);
            });
            for (std::size_t s = 0; s < order.size(); ++s) {
                bool first = s == 0 || !detail::same_direction(v[order[s - 1]], v[order[s]]);
                if (first && order[s] > a) per_anchor[a].push_back(order[s]);
            }
        }
    }
    return flatten(per_anchor);
}

double min_pair_distance(const std::vector<DPoint>& p)
{
    std::vector<std::uint32_t> idx(p.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return p[i].x < p[j].x; });
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size() && p[idx[j]].x - p[idx[i]].x < best; ++j)
            best = std::min(best, std::hypot(p[idx[i]].x - p[idx[j]].x, p[idx[i]].y - p[idx[j]].y));
    return best;
}

// Blockers of (a, j) lie within eps of the segment and at distance ≥ dmin from a,
// so their direction from a differs by at most asin(eps / dmin). Only that
// angular window is tested, with the same predicate as the brute force.
std::vector<Pair> float_pairs_parallel(const ZeroWindow& w)
{
    auto p = detail::make_float_frame(w.points());
    const std::uint32_t n = static_cast<std::uint32_t>(p.size());
    const double eps = w.eps();
    std::vector<std::vector<std::uint32_t>> per_anchor(n);
    if (n < 2) return {};
    double dmin = min_pair_distance(p);
    double half_width = std::asin(std::min(1.0, 2 * eps / dmin)) + 1e-9;
    constexpr double two_pi = 2 * std::numbers::pi;

#pragma omp parallel
    {
        std::vector<std::uint32_t> order;
        std::vector<double> angle(n);
#pragma omp for schedule(dynamic, 8)
        for (std::uint32_t a = 0; a < n; ++a) {
            order.clear();
            for (std::uint32_t j = 0; j < n; ++j) {
                if (j == a) continue;
                angle[j] = std::atan2(p[j].y - p[a].y, p[j].x - p[a].x);
                order.push_back(j);
            }
            std::sort(order.begin(), order.end(), [&](auto i, auto j) { return angle[i] < angle[j]; });
            const std::size_t m = order.size();
            for (std::size_t s = 0; s < m; ++s) {
                std::uint32_t j = order[s];
                if (j < a) continue;
                bool blocked = false;
                // Walk outward both ways around the circle while inside the window.
                for (std::size_t t = 1; t < m && !blocked; ++t) {
                    std::uint32_t k = order[(s + t) % m];
                    double d = angle[k] - angle[j];
                    if (d < 0) d += two_pi;
                    if (d > half_width) break;
                    blocked = float_blocked(p, a, j, k, eps);
                }
                for (std::size_t t = 1; t < m && !blocked; ++t) {
                    std::uint32_t k = order[(s + m - t) % m];
                    double d = angle[j] - angle[k];
                    if (d < 0) d += two_pi;
                    if (d > half_width) break;
                    blocked = float_blocked(p, a, j, k, eps);
                }
                if (!blocked) per_anchor[a].push_back(j);
            }
        }
    }
    return flatten(per_anchor);
}

std::vector<bool> inside_flags(const ZeroWindow& w, double radius)
{
    std::vector<bool> inside(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) inside[i] = within_radius(w[i], radius);
    return inside;
}

std::vector<SaddleSegment> to_segments(const ZeroWindow& w, const std::vector<Pair>& pairs, int m)
{
    auto inside = inside_flags(w, w.origin_ball_radius());
    std::vector<SaddleSegment> out;
    out.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        SaddleSegment s;
        s.from_idx = a;
        s.to_idx = b;
        s.holonomy = w[b] - w[a];
        if (half_plane(s.holonomy.re, s.holonomy.im) == 1) {
            std::swap(s.from_idx, s.to_idx);
            s.holonomy = -s.holonomy;
        }
        s.length = s.holonomy.abs();
        s.direction = s.holonomy.arg();
        s.multiplicity = m;
        s.provisional = !(inside[a] && inside[b]);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

bool HolonomySet::contains(const ZPoint& v) const
{
    if (mode == Mode::Exact) {
        auto it = std::lower_bound(vectors.begin(), vectors.end(), v,
                                   [](const HolonomyVector& h, const ZPoint& z) { return canonical_less(h.v, z); });
        return it != vectors.end() && it->v == v;
    }
    auto c = v.to_complex();
    return std::any_of(vectors.begin(), vectors.end(),
                       [&](const HolonomyVector& h) { return std::abs(h.v.to_complex() - c) <= eps; });
}

std::vector<ZPoint> HolonomySet::points() const
{
    std::vector<ZPoint> out;
    out.reserve(vectors.size());
    for (const auto& h : vectors) out.push_back(h.v);
    return out;
}

std::vector<ZPoint> HolonomySet::certified_points() const
{
    std::vector<ZPoint> out;
    for (const auto& h : vectors)
        if (h.certified) out.push_back(h.v);
    return out;
}

bool is_visible(const ZeroWindow& w, std::size_t r, std::size_t l)
{
    require_index(w, r);
    require_index(w, l);
    if (r == l) throw FlatError("InvalidArgument", "visibility needs two distinct indices");
    if (w.mode() == Mode::Exact) {
        auto frame = detail::make_exact_frame(w.points());
        const auto& p = frame.pts;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (k != r && k != l && detail::blocks(p[r], p[l], p[k])) return false;
        return true;
    }
    auto p = detail::make_float_frame(w.points());
    for (std::size_t k = 0; k < p.size(); ++k)
        if (k != r && k != l && float_blocked(p, r, l, k, w.eps())) return false;
    return true;
}

std::vector<Pair> visible_pairs(const ZeroWindow& w)
{
    if (w.size() < 2) return {};
    return w.mode() == Mode::Exact ? exact_pairs_parallel(w) : float_pairs_parallel(w);
}

std::vector<Pair> visible_pairs_reference(const ZeroWindow& w)
{
    std::vector<Pair> out;
    const std::size_t n = w.size();
    if (w.mode() == Mode::Exact) {
        auto frame = detail::make_exact_frame(w.points());
        const auto& p = frame.pts;
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b) {
                bool blocked = false;
                for (std::size_t k = 0; k < n && !blocked; ++k)
                    blocked = k != a && k != b && detail::blocks(p[a], p[b], p[k]);
                if (!blocked) out.emplace_back(a, b);
            }
        return out;
    }
    auto p = detail::make_float_frame(w.points());
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b) {
            bool blocked = false;
            for (std::size_t k = 0; k < n && !blocked; ++k)
                blocked = k != a && k != b && float_blocked(p, a, b, k, w.eps());
            if (!blocked) out.emplace_back(a, b);
        }
    return out;
}

std::vector<SaddleSegment> saddle_connections(const ZeroWindow& w, int m)
{
    require_degree(m);
    return to_segments(w, visible_pairs(w), m);
}

std::vector<SaddleSegment> saddle_connections_reference(const ZeroWindow& w, int m)
{
    require_degree(m);
    return to_segments(w, visible_pairs_reference(w), m);
}

namespace {

void sort_and_close(HolonomySet& h)
{
    std::vector<HolonomyVector> both;
    both.reserve(h.vectors.size() * 2);
    for (auto& v : h.vectors) {
        both.push_back({-v.v, v.certified});
        both.push_back(std::move(v));
    }
    std::sort(both.begin(), both.end(),
              [](const HolonomyVector& x, const HolonomyVector& y) { return canonical_less(x.v, y.v); });
    h.vectors = std::move(both);
}

}  // namespace

HolonomySet holonomy(const ZeroWindow& w)
{
    HolonomySet h;
    h.window_radius = w.radius();
    h.complete_radius = w.origin_ball_radius();
    h.mode = w.mode();
    h.eps = w.eps();
    if (w.size() < 2) return h;

    auto pairs = visible_pairs(w);
    auto inside = inside_flags(w, h.complete_radius);

    if (w.mode() == Mode::Exact) {
        auto frame = detail::make_exact_frame(w.points());
        std::unordered_map<IPoint, bool, detail::IPointHash> seen;
        std::vector<IPoint> order;
        for (auto [a, b] : pairs) {
            IPoint v = frame.pts[b] - frame.pts[a];
            if (detail::half_plane(v) == 1) v = -v;
            bool cert = inside[a] && inside[b];
            auto [it, fresh] = seen.emplace(v, cert);
            if (fresh)
                order.push_back(v);
            else
                it->second = it->second || cert;
        }
        h.vectors.reserve(order.size());
        for (const auto& v : order) h.vectors.push_back({frame.from_frame(v), seen[v]});
    } else {
        auto p = detail::make_float_frame(w.points());
        const double eps = w.eps();
        const double cell = 2 * eps;
        using Cell = std::pair<std::int64_t, std::int64_t>;
        struct CellHash {
            std::size_t operator()(const Cell& c) const noexcept { return detail::IPointHash{}(IPoint{c.first, c.second}); }
        };
        std::unordered_map<Cell, std::vector<std::size_t>, CellHash> grid;
        std::vector<DPoint> reps;
        std::vector<bool> cert_flags;
        for (auto [a, b] : pairs) {
            DPoint v = p[b] - p[a];
            if (!(v.y > 0 || (v.y == 0 && v.x > 0))) v = {-v.x, -v.y};
            bool cert = inside[a] && inside[b];
            Cell c{static_cast<std::int64_t>(std::floor(v.x / cell)), static_cast<std::int64_t>(std::floor(v.y / cell))};
            std::optional<std::size_t> hit;
            for (std::int64_t dx = -1; dx <= 1 && !hit; ++dx)
                for (std::int64_t dy = -1; dy <= 1 && !hit; ++dy) {
                    auto it = grid.find({c.first + dx, c.second + dy});
                    if (it == grid.end()) continue;
                    for (std::size_t r : it->second)
                        if (std::hypot(reps[r].x - v.x, reps[r].y - v.y) <= eps) {
                            hit = r;
                            break;
                        }
                }
            if (hit) {
                cert_flags[*hit] = cert_flags[*hit] || cert;
            } else {
                grid[c].push_back(reps.size());
                reps.push_back(v);
                cert_flags.push_back(cert);
            }
        }
        for (std::size_t i = 0; i < reps.size(); ++i)
            h.vectors.push_back({ZPoint::from_double(reps[i].x, reps[i].y), cert_flags[i]});
    }
    sort_and_close(h);
    return h;
}

namespace {

bool exact_angle_less(const ZPoint& u, const ZPoint& v)
{
    int hu = half_plane(u.re, u.im);
    int hv = half_plane(v.re, v.im);
    if (hu != hv) return hu < hv;
    return sgn(cross(u, v)) > 0;
}

}  // namespace

DirectionProfile direction_profile(const HolonomySet& h)
{
    if (h.empty()) throw FlatError("InvalidArgument", "direction profile of an empty holonomy set");
    DirectionProfile out;
    if (h.mode == Mode::Exact) {
        auto v = h.points();
        std::sort(v.begin(), v.end(), exact_angle_less);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i == 0 || exact_angle_less(v[i - 1], v[i])) out.directions.push_back(v[i].arg());
    } else {
        std::vector<double> a;
        for (const auto& x : h.vectors) a.push_back(x.v.arg());
        std::sort(a.begin(), a.end());
        for (double t : a)
            if (out.directions.empty() || t - out.directions.back() > 1e-12) out.directions.push_back(t);
        if (out.directions.size() > 1 && out.directions.front() + 2 * std::numbers::pi - out.directions.back() <= 1e-12)
            out.directions.pop_back();
    }

    const auto& d = out.directions;
    const std::size_t n = d.size();
    std::vector<double> gap(n);
    for (std::size_t i = 0; i < n; ++i)
        gap[i] = (i + 1 < n ? d[i + 1] : d[0] + 2 * std::numbers::pi) - d[i];
    out.max_gap = *std::max_element(gap.begin(), gap.end());
    out.min_gap = *std::min_element(gap.begin(), gap.end());
    out.mean_gap = 2 * std::numbers::pi / double(n);

    // gap[i] spans d[i] .. d[i+1]. A run of ≥ 5 directions whose gaps shrink
    // strictly toward a dense end suggests a limit just beyond that end.
    constexpr std::size_t kRun = 5;
    std::vector<double> cand;
    if (n >= kRun + 1) {
        auto g = [&](std::ptrdiff_t i) { return gap[((i % std::ptrdiff_t(n)) + n) % n]; };
        auto dir = [&](std::ptrdiff_t i) { return d[((i % std::ptrdiff_t(n)) + n) % n]; };
        for (std::ptrdiff_t e = 0; e < std::ptrdiff_t(n); ++e) {
            // Increasing directions d[e-4..e], limit above d[e].
            bool up = g(e) > g(e - 1);
            for (std::size_t k = 1; k < kRun - 1 && up; ++k) up = g(e - k - 1) > g(e - k);
            if (up) cand.push_back(dir(e + 1));
            // Decreasing toward d[e] from above: d[e..e+4], limit below d[e].
            bool down = g(e - 1) > g(e);
            for (std::size_t k = 0; k < kRun - 2 && down; ++k) down = g(e + k + 1) > g(e + k);
            if (down) cand.push_back(dir(e - 1));
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    out.accumulation = std::move(cand);
    return out;
}

namespace {

std::optional<ZPoint> line_vector(const ZeroWindow& w)
{
    if (w.size() < 2) return std::nullopt;
    if (w.mode() == Mode::Exact) {
        for (std::size_t i = 1; i < w.size(); ++i)
            if (!(w[i] == w[0])) return w[i] - w[0];
        return std::nullopt;
    }
    std::size_t far = 1;
    for (std::size_t i = 2; i < w.size(); ++i)
        if (sgn((w[i] - w[0]).norm2() - (w[far] - w[0]).norm2()) > 0) far = i;
    return w[far] - w[0];
}

}  // namespace

bool collinear(const ZeroWindow& w)
{
    auto dir = line_vector(w);
    if (!dir) return true;
    if (w.mode() == Mode::Exact) {
        for (std::size_t i = 1; i < w.size(); ++i)
            if (sgn(cross(*dir, w[i] - w[0])) != 0) return false;
        return true;
    }
    auto d = dir->to_complex();
    double len = std::abs(d);
    auto o = w[0].to_complex();
    for (std::size_t i = 1; i < w.size(); ++i) {
        auto q = w[i].to_complex() - o;
        if (std::abs(d.real() * q.imag() - d.imag() * q.real()) / len > w.eps()) return false;
    }
    return true;
}

double line_direction(const ZeroWindow& w)
{
    if (!collinear(w)) throw FlatError("InvalidArgument", "window is not collinear");
    auto dir = line_vector(w);
    if (!dir) return 0.0;
    ZPoint v = *dir;
    if (half_plane(v.re, v.im) == 1) v = -v;
    double t = v.arg();
    return t >= std::numbers::pi ? t - std::numbers::pi : t;
}

namespace {

bool parallel_vectors(const std::vector<ZPoint>& v, Mode mode, double eps)
{
    if (v.size() < 2) return true;
    if (mode == Mode::Exact) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (sgn(cross(v[0], v[i])) != 0) return false;
        return true;
    }
    auto a = v[0].to_complex();
    for (std::size_t i = 1; i < v.size(); ++i) {
        auto b = v[i].to_complex();
        double c = std::abs(a.real() * b.imag() - a.imag() * b.real());
        if (c > eps * std::abs(a) * std::abs(b)) return false;
    }
    return true;
}

}  // namespace

bool all_parallel(const std::vector<SaddleSegment>& segments, Mode mode, double eps)
{
    std::vector<ZPoint> v;
    v.reserve(segments.size());
    for (const auto& s : segments) v.push_back(s.holonomy);
    return parallel_vectors(v, mode, eps);
}

bool all_parallel(const HolonomySet& h) { return parallel_vectors(h.points(), h.mode, h.eps); }

}  // namespace flatcurve
