#pragma once

#include "flatcurve/numeric.hpp"

#include <array>

namespace flatcurve {

/// 2×2 matrix [[a, b], [c, d]] acting on ℂ ≅ ℝ² by A·(x + iy).
struct Mat2 {
    Rational a, b, c, d;

    Mat2() : a(1), b(0), c(0), d(1) {}
    Mat2(Rational a_, Rational b_, Rational c_, Rational d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    Mat2(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return Mat2(); }
    /// Matrix with columns u and v.
    static Mat2 from_columns(const ZPoint& u, const ZPoint& v) { return Mat2(u.re, v.re, u.im, v.im); }

    Rational det() const { return a * d - b * c; }
    /// Throws FlatError("SingularMatrix") when det = 0.
    Mat2 inverse() const;
    ZPoint apply(const ZPoint& z) const { return ZPoint(a * z.re + b * z.im, c * z.re + d * z.im); }

    /// Largest singular value, closed form.
    double sigma_max() const;
    double sigma_min() const;
    /// Largest absolute entry.
    Rational max_abs_entry() const;
    bool is_integral() const;
    std::array<double, 4> to_doubles() const { return {a.get_d(), b.get_d(), c.get_d(), d.get_d()}; }

    friend bool operator==(const Mat2& x, const Mat2& y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

Mat2 operator*(const Mat2& x, const Mat2& y);

/// Lexicographic order on (a, b, c, d).
bool mat_less(const Mat2& x, const Mat2& y);

/// Entry-wise |x - y| ≤ tol.
bool approx_equal(const Mat2& x, const Mat2& y, double tol);

/// Exact rotation by the Pythagorean angle with cos = p, sin = q (p² + q² = 1).
Mat2 rotation(const Rational& cos_t, const Rational& sin_t);

/// True iff ‖A·z‖ < ‖z‖ for every nonzero z, i.e. the largest singular value is < 1.
/// Exact for rational entries. Throws FlatError("SingularMatrix") when det = 0.
bool is_contracting(const Mat2& m);

std::string to_string(const Mat2& m);

}  // namespace flatcurve
