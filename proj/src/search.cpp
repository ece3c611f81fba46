#include "search.hpp"

#include "frame.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace flatcurve::detail {

bool candidate_less(const AffineCandidate& x, const AffineCandidate& y)
{
    if (mat_less(x.linear, y.linear)) return true;
    if (mat_less(y.linear, x.linear)) return false;
    return LexLess{}(x.translation, y.translation);
}

namespace {

struct Anchors {
    std::size_t p = 0;
    std::size_t q = 0;
};

Anchors pick_anchors(const SearchProblem& pr)
{
    const auto& in = pr.inner;
    std::optional<std::size_t> p;
    for (std::size_t i = 0; i < in.size() && !p; ++i) {
        bool nonzero = pr.mode == Mode::Exact ? !in[i].is_zero() : in[i].abs() > pr.eps;
        if (nonzero) p = i;
    }
    if (p) {
        for (std::size_t j = *p + 1; j < in.size(); ++j) {
            bool independent;
            if (pr.mode == Mode::Exact) {
                independent = sgn(cross(in[*p], in[j])) != 0;
            } else {
                auto a = in[*p].to_complex();
                auto b = in[j].to_complex();
                independent = std::abs(a.real() * b.imag() - a.imag() * b.real()) / std::abs(a) > pr.eps;
            }
            if (independent) return {*p, j};
        }
    }
    throw FlatError("DegenerateWindow", "inner points do not contain two independent vectors");
}

// ---- exact kernel, generic over the integer type --------------------------

mpz_class as_mpz(const i128& v) { return to_mpz(v); }
const mpz_class& as_mpz(const mpz_class& v) { return v; }

template <class Int>
Int lift(std::int64_t v)
{
    if constexpr (std::is_same_v<Int, i128>)
        return v;
    else
        return mpz_class(static_cast<long>(v));
}

int sign_of(const i128& v) { return (v > 0) - (v < 0); }
int sign_of(const mpz_class& v) { return sgn(v); }

long double approx(const i128& v) { return static_cast<long double>(v); }
long double approx(const mpz_class& v) { return v.get_d(); }

std::optional<IPoint> narrow(const i128& x, const i128& y)
{
    constexpr i128 lim = i128(1) << 62;
    if (x > lim || x < -lim || y > lim || y < -lim) return std::nullopt;
    return IPoint{static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)};
}

std::optional<IPoint> narrow(const mpz_class& x, const mpz_class& y)
{
    if (!x.fits_slong_p() || !y.fits_slong_p()) return std::nullopt;
    return IPoint{x.get_si(), y.get_si()};
}

template <class Int>
struct IVec {
    Int x, y;
};

template <class Int>
IVec<Int> widen(IPoint p)
{
    return {lift<Int>(p.x), lift<Int>(p.y)};
}

/// |m| ≤ eb·|d|, exactly.
template <class Int>
bool within_bound(const Int& m, const Int& d, double eb)
{
    long double lhs = std::fabs(approx(m));
    long double rhs = static_cast<long double>(eb) * std::fabs(approx(d));
    if (lhs < rhs * (1 - 1e-15L)) return true;
    if (lhs > rhs * (1 + 1e-15L)) return false;
    return Rational(abs(as_mpz(m))) <= Rational(eb) * Rational(abs(as_mpz(d)));
}

/// A = M / d contracting  ⟺  S < 2d² and S·d² < d⁴ + det(M)², S = Σ M_ij².
template <class Int>
bool contracting(const Int (&m)[4], const Int& d)
{
    mpz_class a = as_mpz(m[0]), b = as_mpz(m[1]), c = as_mpz(m[2]), e = as_mpz(m[3]);
    mpz_class dd = as_mpz(d);
    mpz_class s = a * a + b * b + c * c + e * e;
    mpz_class d2 = dd * dd;
    mpz_class det = a * e - b * c;
    return s < 2 * d2 && s * d2 < d2 * d2 + det * det;
}

struct ExactContext {
    std::vector<IPoint> cloud;
    std::vector<IPoint> inner;
    std::vector<IPoint> origins;
    ExactIndex index;
    IPoint p, q;
    const ExactFrame* frame = nullptr;
};

template <class Int>
bool maps_into(const Int (&m)[4], const Int& d, const IVec<Int>& shift_after, const IVec<Int>& shift_before,
               const ExactContext& ctx)
{
    // x ↦ (M (x - before) + d·after) / d must land in the cloud for every inner x.
    for (const IPoint& x0 : ctx.inner) {
        IVec<Int> x = widen<Int>(x0);
        Int ux = x.x - shift_before.x;
        Int uy = x.y - shift_before.y;
        Int nx = m[0] * ux + m[1] * uy + d * shift_after.x;
        Int ny = m[2] * ux + m[3] * uy + d * shift_after.y;
        Int rx = nx % d;
        Int ry = ny % d;
        if (sign_of(rx) != 0 || sign_of(ry) != 0) return false;
        Int qx = nx / d;
        Int qy = ny / d;
        auto img = narrow(qx, qy);
        if (!img || !ctx.index.contains(*img)) return false;
    }
    return true;
}

template <class Int>
void exact_pass(const ExactContext& ctx, const SearchProblem& pr, bool reference, std::vector<AffineCandidate>& out)
{
    const IVec<Int> P = widen<Int>(ctx.p);
    const IVec<Int> Q = widen<Int>(ctx.q);
    const Int delta = P.x * Q.y - P.y * Q.x;
    const int delta_sign = sign_of(delta);
    const IVec<Int> zero{lift<Int>(0), lift<Int>(0)};
    const long double reach = 4.0L * pr.entry_bound * pr.entry_bound * (1 + 1e-9L);
    const long double p2 = approx(P.x * P.x + P.y * P.y);
    const long double q2 = approx(Q.x * Q.x + Q.y * Q.y);
    const std::size_t n = ctx.cloud.size();
    const std::size_t tasks = ctx.origins.size() * n;

#pragma omp parallel if (!reference)
    {
        std::vector<AffineCandidate> local;
#pragma omp for schedule(dynamic, 16)
        for (std::size_t t = 0; t < tasks; ++t) {
            const IVec<Int> Y = widen<Int>(ctx.origins[t / n]);
            const IVec<Int> Cp = widen<Int>(ctx.cloud[t % n]);
            const IVec<Int> Pp{Cp.x - Y.x, Cp.y - Y.y};
            if (!reference && approx(Pp.x * Pp.x + Pp.y * Pp.y) > reach * p2) continue;
            for (std::size_t b = 0; b < n; ++b) {
                const IVec<Int> Cq = widen<Int>(ctx.cloud[b]);
                const IVec<Int> Qp{Cq.x - Y.x, Cq.y - Y.y};
                if (!reference && approx(Qp.x * Qp.x + Qp.y * Qp.y) > reach * q2) continue;
                const Int dprime = Pp.x * Qp.y - Pp.y * Qp.x;
                if (sign_of(dprime) != delta_sign) continue;
                const Int m[4] = {Pp.x * Q.y - Qp.x * P.y, Qp.x * P.x - Pp.x * Q.x, Pp.y * Q.y - Qp.y * P.y,
                                  Qp.y * P.x - Pp.y * Q.x};
                bool bounded = true;
                for (const Int& e : m) bounded = bounded && within_bound(e, delta, pr.entry_bound);
                if (!bounded) continue;
                if (pr.require_non_contracting && contracting(m, delta)) continue;
                if (!maps_into(m, delta, Y, zero, ctx)) continue;
                const Int nm[4] = {P.x * Qp.y - Q.x * Pp.y, Q.x * Pp.x - P.x * Qp.x, P.y * Qp.y - Q.y * Pp.y,
                                   Q.y * Pp.x - P.y * Qp.x};
                if (!maps_into(nm, dprime, zero, Y, ctx)) continue;
                AffineCandidate c;
                c.linear = Mat2(Rational(as_mpz(m[0]), as_mpz(delta)), Rational(as_mpz(m[1]), as_mpz(delta)),
                                Rational(as_mpz(m[2]), as_mpz(delta)), Rational(as_mpz(m[3]), as_mpz(delta)));
                c.linear.a.canonicalize();
                c.linear.b.canonicalize();
                c.linear.c.canonicalize();
                c.linear.d.canonicalize();
                c.translation = ctx.frame->from_frame(ctx.origins[t / n]);
                local.push_back(std::move(c));
            }
        }
#pragma omp critical(flatcurve_search_merge)
        out.insert(out.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
}

void exact_search(const SearchProblem& pr, const Anchors& an, bool reference, std::vector<AffineCandidate>& out)
{
    std::vector<ZPoint> extra = pr.inner;
    extra.insert(extra.end(), pr.origins.begin(), pr.origins.end());
    ExactFrame frame = make_exact_frame(pr.cloud, extra);
    ExactContext ctx;
    ctx.frame = &frame;
    ctx.cloud = frame.pts;
    for (const auto& z : pr.inner) ctx.inner.push_back(frame.to_frame(z));
    for (const auto& z : pr.origins) ctx.origins.push_back(frame.to_frame(z));
    ctx.index = ExactIndex(ctx.cloud);
    ctx.p = ctx.inner[an.p];
    ctx.q = ctx.inner[an.q];

    std::int64_t extent = 0;
    for (const auto* v : {&ctx.cloud, &ctx.inner, &ctx.origins})
        for (const auto& p : *v) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    // Products stay below 2^127 for coordinates up to 2^39.
    if (extent <= (std::int64_t(1) << 39))
        exact_pass<i128>(ctx, pr, reference, out);
    else
        exact_pass<mpz_class>(ctx, pr, reference, out);
}

// ---- float kernel ---------------------------------------------------------

void float_search(const SearchProblem& pr, const Anchors& an, bool reference, std::vector<AffineCandidate>& out)
{
    const auto cloud = make_float_frame(pr.cloud);
    const auto inner = make_float_frame(pr.inner);
    const auto origins = make_float_frame(pr.origins);
    const FloatIndex index(cloud, pr.eps);
    const DPoint P = inner[an.p];
    const DPoint Q = inner[an.q];
    const double delta = cross(P, Q);
    const double eps = pr.eps;
    const double eb = pr.entry_bound + eps;
    const double reach = 2 * eb * (1 + 1e-9);
    const double pn = std::hypot(P.x, P.y);
    const double qn = std::hypot(Q.x, Q.y);
    const std::size_t n = cloud.size();
    const std::size_t tasks = origins.size() * n;

    auto maps = [&](const double (&a)[4], DPoint after, DPoint before) {
        for (const DPoint& x : inner) {
            double ux = x.x - before.x;
            double uy = x.y - before.y;
            if (!index.contains({a[0] * ux + a[1] * uy + after.x, a[2] * ux + a[3] * uy + after.y})) return false;
        }
        return true;
    };

#pragma omp parallel if (!reference)
    {
        std::vector<AffineCandidate> local;
#pragma omp for schedule(dynamic, 16)
        for (std::size_t t = 0; t < tasks; ++t) {
            const DPoint Y = origins[t / n];
            const DPoint Pp = cloud[t % n] - Y;
            if (!reference && std::hypot(Pp.x, Pp.y) > reach * pn) continue;
            for (std::size_t b = 0; b < n; ++b) {
                const DPoint Qp = cloud[b] - Y;
                if (!reference && std::hypot(Qp.x, Qp.y) > reach * qn) continue;
                const double dprime = cross(Pp, Qp);
                if (!(dprime * delta > 0)) continue;
                const double a[4] = {(Pp.x * Q.y - Qp.x * P.y) / delta, (Qp.x * P.x - Pp.x * Q.x) / delta,
                                     (Pp.y * Q.y - Qp.y * P.y) / delta, (Qp.y * P.x - Pp.y * Q.x) / delta};
                if (std::abs(a[0]) > eb || std::abs(a[1]) > eb || std::abs(a[2]) > eb || std::abs(a[3]) > eb)
                    continue;
                Mat2 lin{Rational(a[0]), Rational(a[1]), Rational(a[2]), Rational(a[3])};
                if (pr.require_non_contracting && lin.sigma_max() < 1 - eps) continue;
                if (!maps(a, Y, DPoint{0, 0})) continue;
                const double det = a[0] * a[3] - a[1] * a[2];
                const double inv[4] = {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
                if (!maps(inv, DPoint{0, 0}, Y)) continue;
                local.push_back({std::move(lin), ZPoint::from_double(Y.x, Y.y)});
            }
        }
#pragma omp critical(flatcurve_search_merge)
        out.insert(out.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
}

}  // namespace

std::vector<AffineCandidate> search_affine(const SearchProblem& pr, bool reference)
{
    if (!(pr.entry_bound > 0) || !std::isfinite(pr.entry_bound))
        throw FlatError("InvalidArgument", "entry bound must be positive and finite");
    Anchors an = pick_anchors(pr);
    std::vector<AffineCandidate> out;
    if (pr.mode == Mode::Exact)
        exact_search(pr, an, reference, out);
    else
        float_search(pr, an, reference, out);

    // The identity always stabilizes; it is listed even when the entry bound excludes it.
    bool has_origin = std::any_of(pr.origins.begin(), pr.origins.end(), [](const ZPoint& z) { return z.is_zero(); });
    bool has_identity = std::any_of(out.begin(), out.end(), [](const AffineCandidate& c) {
        return c.linear == Mat2::identity() && c.translation.is_zero();
    });
    if (has_origin && !has_identity) out.push_back(AffineCandidate{});
    std::sort(out.begin(), out.end(), candidate_less);
    return out;
}

}  // namespace flatcurve::detail
