#include "flatcurve/numeric.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace flatcurve {

std::string_view mode_name(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text)
{
    if (text == "exact") return Mode::Exact;
    if (text == "float") return Mode::Float;
    throw FlatError("InvalidArgument", "unknown mode '" + std::string(text) + "'");
}

FlatError::FlatError(std::string code, std::string detail)
    : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(std::move(detail))
{
}

ZPoint ZPoint::from_double(double r, double i)
{
    if (!std::isfinite(r) || !std::isfinite(i))
        throw FlatError("NonFinite", "point coordinates must be finite");
    return ZPoint(Rational(r), Rational(i));
}

Rational ZPoint::norm2() const { return re * re + im * im; }

double ZPoint::abs() const { return std::hypot(re.get_d(), im.get_d()); }

double ZPoint::arg() const
{
    if (is_zero()) return 0.0;
    double a = std::atan2(im.get_d(), re.get_d());
    if (a < 0) a += 2 * std::numbers::pi;
    if (a >= 2 * std::numbers::pi) a = 0.0;
    return a;
}

std::complex<double> ZPoint::to_complex() const { return {re.get_d(), im.get_d()}; }

ZPoint ZPoint::rounded() const { return ZPoint(Rational(re.get_d()), Rational(im.get_d())); }

ZPoint operator+(const ZPoint& a, const ZPoint& b) { return ZPoint(a.re + b.re, a.im + b.im); }
ZPoint operator-(const ZPoint& a, const ZPoint& b) { return ZPoint(a.re - b.re, a.im - b.im); }
ZPoint operator-(const ZPoint& a) { return ZPoint(-a.re, -a.im); }

ZPoint operator*(const ZPoint& a, const ZPoint& b)
{
    return ZPoint(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

ZPoint operator*(const Rational& s, const ZPoint& a) { return ZPoint(s * a.re, s * a.im); }

ZPoint operator/(const ZPoint& a, const ZPoint& b)
{
    Rational n2 = b.norm2();
    if (sgn(n2) == 0) throw FlatError("ZeroDivisor", "division by the zero point");
    return ZPoint((a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2);
}

Rational cross(const ZPoint& a, const ZPoint& b) { return a.re * b.im - a.im * b.re; }
Rational dot(const ZPoint& a, const ZPoint& b) { return a.re * b.re + a.im * b.im; }

bool LexLess::operator()(const ZPoint& a, const ZPoint& b) const
{
    int c = cmp(a.re, b.re);
    if (c != 0) return c < 0;
    return a.im < b.im;
}

int half_plane(const Rational& re, const Rational& im)
{
    int s = sgn(im);
    if (s > 0) return 0;
    if (s < 0) return 1;
    return sgn(re) >= 0 ? 0 : 1;
}

bool canonical_less(const ZPoint& a, const ZPoint& b)
{
    int c = cmp(a.norm2(), b.norm2());
    if (c != 0) return c < 0;
    int ha = half_plane(a.re, a.im);
    int hb = half_plane(b.re, b.im);
    if (ha != hb) return ha < hb;
    return sgn(cross(a, b)) > 0;
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

std::string to_string(const ZPoint& z) { return to_string(z.re) + "," + to_string(z.im); }

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Rational parse_decimal(std::string_view s)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
    std::string digits;
    long exponent = 0;
    bool any = false;
    bool dot_seen = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any = true;
            if (dot_seen) --exponent;
        } else if (c == '.' && !dot_seen) {
            dot_seen = true;
        } else {
            break;
        }
    }
    if (!any) throw FlatError("InvalidArgument", "not a number: '" + std::string(s) + "'");
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        std::string exp_text(s.substr(pos));
        if (exp_text.empty()) throw FlatError("InvalidArgument", "bad exponent in '" + std::string(s) + "'");
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(exp_text, &used);
        } catch (const std::exception&) {
            throw FlatError("InvalidArgument", "bad exponent in '" + std::string(s) + "'");
        }
        if (used != exp_text.size()) throw FlatError("InvalidArgument", "trailing characters in '" + std::string(s) + "'");
        exponent += e;
        pos = s.size();
    }
    if (pos != s.size()) throw FlatError("InvalidArgument", "trailing characters in '" + std::string(s) + "'");
    if (exponent > 4096 || exponent < -4096) throw FlatError("InvalidArgument", "exponent out of range");

    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s);
    Rational p = parse_decimal(s.substr(0, slash));
    Rational q = parse_decimal(s.substr(slash + 1));
    if (sgn(q) == 0) throw FlatError("InvalidArgument", "zero denominator in '" + std::string(s) + "'");
    return p / q;
}

ZPoint parse_point(std::string_view text)
{
    auto comma = text.find(',');
    if (comma == std::string_view::npos)
        throw FlatError("InvalidArgument", "expected 're,im' but got '" + std::string(text) + "'");
    return ZPoint(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

bool within_radius(const ZPoint& z, double radius)
{
    Rational r(radius);
    return z.norm2() <= r * r;
}

}  // namespace flatcurve
