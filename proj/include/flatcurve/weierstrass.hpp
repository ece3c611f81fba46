/**
 * @file weierstrass.hpp
 * @brief Truncated Weierstrass products with prescribed simple zeros.
 *
 * f(z) = z^{e0} · Π (1 - z/z_n) E_n(z),  E_n(z) = exp(Σ_{k=1}^{d(n)} (z/z_n)^k / k).
 * The zero-free factor is fixed to 1. Values are accumulated as a
 * log-magnitude plus an unwrapped argument.
 */

#pragma once

#include "flatcurve/numeric.hpp"
#include "flatcurve/zseq.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace flatcurve {

using cplx = std::complex<double>;

struct ProductSpec {
    std::vector<cplx> zeros;    ///< nonzero zeros, in window order
    std::vector<int> degrees;   ///< d(n) for each entry of zeros
    int origin_exponent = 0;    ///< e0
    double eps = kDefaultEps;

    std::size_t factors() const { return zeros.size(); }
};

struct ProductValue {
    cplx value;
    double log_magnitude = 0;  ///< natural log of |f|; -inf for an exact zero
    double argument = 0;       ///< unwrapped sum of factor arguments
    bool exact_zero = false;

    double log10_magnitude() const;
};

/// Overflow of |f|; carries the log10 magnitude reached.
class NonFiniteError : public FlatError {
public:
    NonFiniteError(double log10mag, std::string detail)
        : FlatError("NonFinite", std::move(detail)), log10mag_(log10mag) {}
    double log10_magnitude() const { return log10mag_; }

private:
    double log10mag_;
};

struct DegreeEstimate {
    double exponent = 0;  ///< estimated convergence exponent λ of Σ |z_n|^{-s}
    int degree = 0;       ///< uniform d; Σ |z_n|^{-(d+1)} converges for d + 1 > λ
};

enum class DegreeRule { Default, Uniform, Fixed };

/// d(n) = n for the Default rule, the uniform estimate otherwise. One entry per
/// window term, indexed by window position (n = index + 1).
std::vector<int> choose_degrees(const ZeroWindow& w, DegreeRule rule = DegreeRule::Default, int fixed = 0);

/// λ ≈ log(N / N_half) / log(|z_N| / |z_half|) over the nonzero raw norms.
/// Fewer than 4 nonzero terms give λ = 0.
DegreeEstimate estimate_uniform_degree(const ZeroWindow& w);

/// Product over the first n_terms raw window terms (all when nullopt).
ProductSpec make_product(const ZeroWindow& w, std::optional<std::size_t> n_terms = std::nullopt,
                         DegreeRule rule = DegreeRule::Default, int fixed_degree = 0);

/// Throws ZeroDivisor when z_n = 0.
cplx elementary_factor(cplx z, cplx z_n, int d);

/// log(E_n(z) (1 - z/z_n)) on the principal branch of each piece.
cplx log_factor(cplx z, cplx z_n, int d);

/// Throws NonFiniteError when |f| overflows a double,
/// InvalidArgument on a non-finite z.
ProductValue eval_f(const ProductSpec& spec, cplx z);

struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

/// Winding number of f along the counterclockwise boundary of the rectangle.
/// Throws ContourThroughZero, InvalidArgument (samples < 64 or empty box).
int count_zeros(const ProductSpec& spec, const Rect& box, int samples = 256);

struct ZeroCheck {
    cplx zero;             ///< nearest prescribed zero to the refined point
    int winding = 0;       ///< around that zero, on a square of half-size gap/4
    cplx refined;
    double residual = 0;   ///< |f(refined)|
    int iterations = 0;
};

/// Newton iteration with a central-difference derivative. Throws NoConvergence.
ZeroCheck refine_zero(const ProductSpec& spec, cplx guess, int max_iterations = 100, double tol = 1e-12);

}  // namespace flatcurve
