#include "flatcurve/mat2.hpp"

#include <algorithm>
#include <cmath>

namespace flatcurve {

Mat2 Mat2::inverse() const
{
    Rational dt = det();
    if (sgn(dt) == 0) throw FlatError("SingularMatrix", "matrix " + to_string(*this) + " is singular");
    return Mat2(d / dt, -b / dt, -c / dt, a / dt);
}

namespace {

// Singular values of [[a,b],[c,d]] are sqrt((S ± sqrt(S² - 4D²)) / 2) with
// S the squared Frobenius norm and D the determinant.
std::pair<double, double> singular_values(const Mat2& m)
{
    auto [a, b, c, d] = m.to_doubles();
    double s = a * a + b * b + c * c + d * d;
    double det = a * d - b * c;
    double disc = std::sqrt(std::max(0.0, s * s - 4 * det * det));
    double hi = std::sqrt((s + disc) / 2);
    double lo = hi > 0 ? std::abs(det) / hi : 0.0;
    return {hi, lo};
}

}  // namespace

double Mat2::sigma_max() const { return singular_values(*this).first; }
double Mat2::sigma_min() const { return singular_values(*this).second; }

Rational Mat2::max_abs_entry() const
{
    Rational m = abs(a);
    for (const Rational* e : {&b, &c, &d})
        if (abs(*e) > m) m = abs(*e);
    return m;
}

bool Mat2::is_integral() const
{
    return a.get_den() == 1 && b.get_den() == 1 && c.get_den() == 1 && d.get_den() == 1;
}

Mat2 operator*(const Mat2& x, const Mat2& y)
{
    return Mat2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

bool mat_less(const Mat2& x, const Mat2& y)
{
    if (int c = cmp(x.a, y.a)) return c < 0;
    if (int c = cmp(x.b, y.b)) return c < 0;
    if (int c = cmp(x.c, y.c)) return c < 0;
    return x.d < y.d;
}

bool approx_equal(const Mat2& x, const Mat2& y, double tol)
{
    auto p = x.to_doubles();
    auto q = y.to_doubles();
    for (int i = 0; i < 4; ++i)
        if (std::abs(p[i] - q[i]) > tol) return false;
    return true;
}

Mat2 rotation(const Rational& cos_t, const Rational& sin_t) { return Mat2(cos_t, -sin_t, sin_t, cos_t); }

bool is_contracting(const Mat2& m)
{
    // σ_max < 1  ⟺  S < 2 and S < 1 + D²   (S = Σ entries², D = det).
    Rational det = m.det();
    if (sgn(det) == 0) throw FlatError("SingularMatrix", "matrix " + to_string(m) + " is singular");
    Rational s = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
    return s < 2 && s < 1 + det * det;
}

std::string to_string(const Mat2& m)
{
    return "[[" + to_string(m.a) + "," + to_string(m.b) + "],[" + to_string(m.c) + "," + to_string(m.d) + "]]";
}

}  // namespace flatcurve
