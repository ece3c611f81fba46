#include "flatcurve/weierstrass.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace flatcurve {

namespace {

constexpr double kLogMax = 709.0;  // exp overflows a double just above 709.78

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double wrap(double a)
{
    a = std::remainder(a, 2 * std::numbers::pi);
    return a;
}

}  // namespace

double ProductValue::log10_magnitude() const
{
    if (exact_zero) return -std::numeric_limits<double>::infinity();
    return log_magnitude / std::numbers::ln10;
}

DegreeEstimate estimate_uniform_degree(const ZeroWindow& w)
{
    std::vector<double> norms;
    for (std::size_t i = 0; i < w.size(); ++i) {
        ZPoint r = w.raw(i);
        if (!r.is_zero()) norms.push_back(r.abs());
    }
    DegreeEstimate est;
    if (norms.size() < 4) return est;
    std::sort(norms.begin(), norms.end());
    std::size_t n = norms.size();
    std::size_t half = n / 2;
    double growth = std::log(norms[n - 1] / norms[half - 1]);
    if (!(growth > 0)) throw FlatError("InvalidArgument", "degree estimate needs growing norms");
    est.exponent = std::log(double(n) / double(half)) / growth;
    est.degree = static_cast<int>(std::floor(est.exponent + 0.5));
    return est;
}

std::vector<int> choose_degrees(const ZeroWindow& w, DegreeRule rule, int fixed)
{
    std::vector<int> d(w.size());
    switch (rule) {
    case DegreeRule::Default:
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<int>(std::min<std::size_t>(i + 1, INT32_MAX));
        break;
    case DegreeRule::Uniform:
        std::fill(d.begin(), d.end(), estimate_uniform_degree(w).degree);
        break;
    case DegreeRule::Fixed:
        if (fixed < 0) throw FlatError("InvalidArgument", "degree must be nonnegative");
        std::fill(d.begin(), d.end(), fixed);
        break;
    }
    return d;
}

ProductSpec make_product(const ZeroWindow& w, std::optional<std::size_t> n_terms, DegreeRule rule, int fixed_degree)
{
    if (w.empty()) throw FlatError("EmptyWindow", "product over an empty window");
    std::size_t n = n_terms.value_or(w.size());
    if (n == 0 || n > w.size())
        throw FlatError("InvalidArgument", fmt::format("factor count {} outside 1..{}", n, w.size()));
    auto degrees = choose_degrees(w, rule, fixed_degree);
    ProductSpec spec;
    spec.eps = w.eps();
    for (std::size_t i = 0; i < n; ++i) {
        ZPoint r = w.raw(i);
        if (r.is_zero()) {
            spec.origin_exponent = 1;
            continue;
        }
        spec.zeros.push_back(r.to_complex());
        spec.degrees.push_back(degrees[i]);
    }
    return spec;
}

cplx elementary_factor(cplx z, cplx z_n, int d)
{
    if (z_n == cplx(0, 0)) throw FlatError("ZeroDivisor", "elementary factor with z_n = 0");
    if (d < 0) throw FlatError("InvalidArgument", "degree must be nonnegative");
    cplx u = z / z_n;
    cplx sum = 0;
    cplx p = 1;
    for (int k = 1; k <= d; ++k) {
        p *= u;
        sum += p / double(k);
    }
    return std::exp(sum);
}

cplx log_factor(cplx z, cplx z_n, int d)
{
    cplx u = z / z_n;
    double au = std::abs(u);
    if (au < 0.5) {
        // log(1 - u) + Σ_{k≤d} u^k/k = -Σ_{k>d} u^k/k, summed directly to avoid cancellation.
        double mag = std::pow(au, d + 1);
        if (mag == 0) return 0;
        cplx p = std::polar(mag, (d + 1) * std::arg(u));
        cplx sum = 0;
        for (long k = d + 1;; ++k) {
            cplx term = p / double(k);
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
            p *= u;
        }
        return -sum;
    }
    cplx sum = std::log(cplx(1, 0) - u);
    cplx p = 1;
    for (int k = 1; k <= d; ++k) {
        p *= u;
        sum += p / double(k);
    }
    return sum;
}

ProductValue eval_f(const ProductSpec& spec, cplx z)
{
    if (!finite(z)) throw FlatError("InvalidArgument", "evaluation point is not finite");
    ProductValue out;
    auto zero = [&] {
        out.value = 0;
        out.exact_zero = true;
        out.log_magnitude = -std::numeric_limits<double>::infinity();
        return out;
    };
    if (spec.origin_exponent > 0) {
        if (z == cplx(0, 0)) return zero();
        out.log_magnitude += spec.origin_exponent * std::log(std::abs(z));
        out.argument += spec.origin_exponent * std::arg(z);
    }
    for (std::size_t n = 0; n < spec.zeros.size(); ++n) {
        if (z == spec.zeros[n]) return zero();
        cplx l = log_factor(z, spec.zeros[n], spec.degrees[n]);
        out.log_magnitude += l.real();
        out.argument += l.imag();
    }
    if (!std::isfinite(out.log_magnitude) || out.log_magnitude > kLogMax) {
        double l10 = out.log_magnitude / std::numbers::ln10;
        throw NonFiniteError(l10, fmt::format("|f| overflows a double (log10|f| = {:.6g})", l10));
    }
    out.value = std::polar(std::exp(out.log_magnitude), out.argument);
    return out;
}

namespace {

double boundary_distance(cplx p, const Rect& b)
{
    double x = p.real();
    double y = p.imag();
    bool inside = x >= b.x0 && x <= b.x1 && y >= b.y0 && y <= b.y1;
    if (inside) return std::min({x - b.x0, b.x1 - x, y - b.y0, b.y1 - y});
    double dx = std::max({b.x0 - x, 0.0, x - b.x1});
    double dy = std::max({b.y0 - y, 0.0, y - b.y1});
    return std::hypot(dx, dy);
}

cplx perimeter_point(const Rect& b, double s)
{
    double w = b.x1 - b.x0;
    double h = b.y1 - b.y0;
    if (s < w) return {b.x0 + s, b.y0};
    s -= w;
    if (s < h) return {b.x1, b.y0 + s};
    s -= h;
    if (s < w) return {b.x1 - s, b.y1};
    s -= w;
    return {b.x0, b.y1 - std::min(s, h)};
}

double total_phase_change(const ProductSpec& spec, const Rect& box, int samples)
{
    double perimeter = 2 * ((box.x1 - box.x0) + (box.y1 - box.y0));
    std::vector<double> phase(samples);
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < samples; ++i) {
        try {
            phase[i] = eval_f(spec, perimeter_point(box, perimeter * i / samples)).argument;
        } catch (...) {
#pragma omp critical(flatcurve_phase_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    double total = 0;
    for (int i = 0; i < samples; ++i) total += wrap(phase[(i + 1) % samples] - phase[i]);
    return total;
}

}  // namespace

int count_zeros(const ProductSpec& spec, const Rect& box, int samples)
{
    if (samples < 64) throw FlatError("InvalidArgument", "count_zeros needs at least 64 samples");
    if (!(box.x1 > box.x0 && box.y1 > box.y0)) throw FlatError("InvalidArgument", "contour box is empty");
    double eps = spec.eps;
    auto check = [&](cplx zero) {
        if (boundary_distance(zero, box) <= eps)
            throw FlatError("ContourThroughZero",
                            fmt::format("zero ({}, {}) lies within eps of the contour", zero.real(), zero.imag()));
    };
    if (spec.origin_exponent > 0) check(0);
    for (const auto& z : spec.zeros) check(z);

    constexpr int kMaxSamples = 1 << 20;
    double previous = total_phase_change(spec, box, samples);
    for (int s = samples * 2; s <= kMaxSamples; s *= 2) {
        double current = total_phase_change(spec, box, s);
        if (std::abs(current - previous) < 0.25) return static_cast<int>(std::lround(current / (2 * std::numbers::pi)));
        previous = current;
    }
    throw FlatError("NoConvergence", "argument change did not stabilize");
}

namespace {

struct Nearest {
    cplx zero;
    double gap;
};

Nearest nearest_zero(const ProductSpec& spec, cplx p)
{
    std::vector<cplx> all = spec.zeros;
    if (spec.origin_exponent > 0) all.push_back(0);
    if (all.empty()) throw FlatError("InvalidArgument", "product has no zeros");
    std::size_t best = 0;
    for (std::size_t i = 1; i < all.size(); ++i)
        if (std::abs(all[i] - p) < std::abs(all[best] - p)) best = i;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < all.size(); ++i)
        if (i != best) gap = std::min(gap, std::abs(all[i] - all[best]));
    if (!std::isfinite(gap)) gap = std::max(1.0, std::abs(all[best]));
    return {all[best], gap};
}

}  // namespace

ZeroCheck refine_zero(const ProductSpec& spec, cplx guess, int max_iterations, double tol)
{
    if (!finite(guess)) throw FlatError("InvalidArgument", "guess is not finite");
    ZeroCheck out;
    cplx z = guess;
    bool converged = false;
    int it = 0;
    try {
        for (; it < max_iterations; ++it) {
            ProductValue fz = eval_f(spec, z);
            if (fz.exact_zero) {
                converged = true;
                break;
            }
            double h = 1e-6 * std::max(1.0, std::abs(z));
            cplx df = (eval_f(spec, z + h).value - eval_f(spec, z - h).value) / (2 * h);
            if (df == cplx(0, 0) || !finite(df)) break;
            cplx step = fz.value / df;
            z -= step;
            if (!finite(z)) break;
            if (std::abs(step) <= tol * std::max(1.0, std::abs(z))) {
                converged = true;
                ++it;
                break;
            }
        }
    } catch (const FlatError& e) {
        if (e.code() != "NonFinite") throw;
    }
    if (!converged)
        throw FlatError("NoConvergence", fmt::format("Newton from ({}, {}) did not converge in {} iterations",
                                                     guess.real(), guess.imag(), max_iterations));
    out.refined = z;
    out.iterations = it;
    out.residual = std::abs(eval_f(spec, z).value);
    Nearest nz = nearest_zero(spec, z);
    out.zero = nz.zero;
    double half = nz.gap / 4;
    Rect box{nz.zero.real() - half, nz.zero.imag() - half, nz.zero.real() + half, nz.zero.imag() + half};
    out.winding = count_zeros(spec, box, 64);
    return out;
}

}  // namespace flatcurve
