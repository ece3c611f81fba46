#include "frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flatcurve::detail {

namespace {

const mpz_class& coordinate_limit()
{
    static const mpz_class limit = mpz_class(1) << 60;
    return limit;
}

std::int64_t scaled(const Rational& q, const mpz_class& denom)
{
    mpz_class v = q.get_num() * (denom / q.get_den());
    if (abs(v) > coordinate_limit())
        throw FlatError("ExactOverflow", "coordinate " + to_string(q) + " does not fit the exact kernel");
    return v.get_si();
}

}  // namespace

ExactFrame make_exact_frame(std::span<const ZPoint> points, std::span<const ZPoint> extra)
{
    mpz_class l = 1;
    auto absorb = [&](const ZPoint& z) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.re.get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.im.get_den_mpz_t());
    };
    for (const auto& z : points) absorb(z);
    for (const auto& z : extra) absorb(z);
    if (l > coordinate_limit())
        throw FlatError("ExactOverflow", "common denominator " + l.get_str() + " is too large for the exact kernel");

    ExactFrame frame;
    frame.denom = l.get_si();
    frame.pts.reserve(points.size());
    for (const auto& z : points) frame.pts.push_back({scaled(z.re, l), scaled(z.im, l)});
    return frame;
}

std::optional<IPoint> ExactFrame::try_to_frame(const ZPoint& z) const
{
    mpz_class l = denom;
    mpz_class xr = z.re.get_num() * l;
    mpz_class yr = z.im.get_num() * l;
    if (!mpz_divisible_p(xr.get_mpz_t(), z.re.get_den_mpz_t()) ||
        !mpz_divisible_p(yr.get_mpz_t(), z.im.get_den_mpz_t()))
        return std::nullopt;
    mpz_class x = xr / z.re.get_den();
    mpz_class y = yr / z.im.get_den();
    if (abs(x) > coordinate_limit() || abs(y) > coordinate_limit()) return std::nullopt;
    return IPoint{x.get_si(), y.get_si()};
}

IPoint ExactFrame::to_frame(const ZPoint& z) const
{
    auto p = try_to_frame(z);
    if (!p) throw FlatError("ExactOverflow", "point " + to_string(z) + " is not representable in the kernel frame");
    return *p;
}

ZPoint ExactFrame::from_frame(IPoint p) const
{
    Rational x(mpz_class(static_cast<long>(p.x)), mpz_class(static_cast<long>(denom)));
    Rational y(mpz_class(static_cast<long>(p.y)), mpz_class(static_cast<long>(denom)));
    x.canonicalize();
    y.canonicalize();
    return ZPoint(x, y);
}

std::vector<DPoint> make_float_frame(std::span<const ZPoint> points)
{
    std::vector<DPoint> out;
    out.reserve(points.size());
    for (const auto& z : points) out.push_back({z.re.get_d(), z.im.get_d()});
    return out;
}

mpz_class to_mpz(i128 v)
{
    bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
    mpz_class r(static_cast<unsigned long>(u >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull);
    return negative ? mpz_class(-r) : r;
}

Rational ratio(i128 num, i128 den)
{
    Rational q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    return q;
}

bool norm_within(i128 n2, double radius, std::int64_t scale)
{
    long double bound = static_cast<long double>(radius) * scale;
    bound *= bound;
    long double v = static_cast<long double>(n2);
    if (v < bound * (1 - 1e-12L)) return true;
    if (v > bound * (1 + 1e-12L)) return false;
    Rational r = Rational(radius) * Rational(mpz_class(static_cast<long>(scale)));
    return Rational(to_mpz(n2)) <= r * r;
}

ExactIndex::ExactIndex(std::span<const IPoint> pts)
{
    map_.reserve(pts.size() * 2);
    for (std::uint32_t i = 0; i < pts.size(); ++i) map_.emplace(pts[i], i);
}

std::optional<std::uint32_t> ExactIndex::find(IPoint p) const
{
    auto it = map_.find(p);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

FloatIndex::FloatIndex(std::span<const DPoint> pts, double eps) : pts_(pts.begin(), pts.end()), eps_(eps)
{
    double extent = 1.0;
    for (const auto& p : pts_) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    cell_ = std::max({2 * eps, extent * 1e-12, std::numeric_limits<double>::min()});
    grid_.reserve(pts_.size() * 2);
    for (std::uint32_t i = 0; i < pts_.size(); ++i) grid_[cell(pts_[i])].push_back(i);
}

std::pair<std::int64_t, std::int64_t> FloatIndex::cell(DPoint p) const
{
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)), static_cast<std::int64_t>(std::floor(p.y / cell_))};
}

std::optional<std::uint32_t> FloatIndex::find(DPoint p) const
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
    double lim = 9e18 * cell_;
    if (std::abs(p.x) > lim || std::abs(p.y) > lim) return std::nullopt;
    auto [cx, cy] = cell(p);
    std::optional<std::uint32_t> best;
    double best_d = eps_;
    for (std::int64_t dx = -1; dx <= 1; ++dx)
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
            auto it = grid_.find({cx + dx, cy + dy});
            if (it == grid_.end()) continue;
            for (std::uint32_t i : it->second) {
                double d = std::hypot(pts_[i].x - p.x, pts_[i].y - p.y);
                if (d <= best_d) {
                    best_d = d;
                    best = i;
                }
            }
        }
    return best;
}

}  // namespace flatcurve::detail
