/**
 * @file numeric.hpp
 * @brief Exact Gaussian-rational points and the error type shared by every module.
 *
 * Points of the plane are stored as pairs of GMP rationals in both modes. In
 * float mode the coordinates are rounded to doubles on construction, so the
 * rational value is always the double actually used by the float predicates.
 */

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flatcurve {

using Rational = mpq_class;

enum class Mode { Exact, Float };

inline constexpr double kDefaultEps = 1e-9;

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view text);

class FlatError : public std::runtime_error {
public:
    FlatError(std::string code, std::string detail);

    const std::string& code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    std::string code_;
    std::string detail_;
};

/// Complex number with exact rational coordinates.
struct ZPoint {
    Rational re;
    Rational im;

    ZPoint() = default;
    ZPoint(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    ZPoint(long r, long i) : re(r), im(i) {}

    static ZPoint from_double(double r, double i);
    static ZPoint from_complex(std::complex<double> z) { return from_double(z.real(), z.imag()); }

    Rational norm2() const;
    double abs() const;
    /// Argument in [0, 2π); 0 for the origin.
    double arg() const;
    std::complex<double> to_complex() const;
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    /// Nearest-double rounding of both coordinates.
    ZPoint rounded() const;

    friend bool operator==(const ZPoint& a, const ZPoint& b) { return a.re == b.re && a.im == b.im; }
};

ZPoint operator+(const ZPoint& a, const ZPoint& b);
ZPoint operator-(const ZPoint& a, const ZPoint& b);
ZPoint operator-(const ZPoint& a);
ZPoint operator*(const ZPoint& a, const ZPoint& b);
ZPoint operator*(const Rational& s, const ZPoint& a);
/// Complex division; throws FlatError("ZeroDivisor") when b = 0.
ZPoint operator/(const ZPoint& a, const ZPoint& b);

Rational cross(const ZPoint& a, const ZPoint& b);
Rational dot(const ZPoint& a, const ZPoint& b);

/// Lexicographic (re, im) order, used for set containers.
struct LexLess {
    bool operator()(const ZPoint& a, const ZPoint& b) const;
};

/// Norm ascending, ties by argument in [0, 2π). Exact.
bool canonical_less(const ZPoint& a, const ZPoint& b);

/// 0 for arguments in [0, π), 1 for [π, 2π) (the origin reports 0).
int half_plane(const Rational& re, const Rational& im);

/// "p/q", or "p" for integers.
std::string to_string(const Rational& q);
std::string to_string(const ZPoint& z);

/// Accepts "p/q", integers and plain decimals ("4.5", "-1e-3"); exact.
Rational parse_rational(std::string_view text);
/// "re,im" with rational components.
ZPoint parse_point(std::string_view text);

/// Exact test ‖z‖ ≤ radius (radius converted exactly from double).
bool within_radius(const ZPoint& z, double radius);

}  // namespace flatcurve
