#pragma once

#include "flatcurve/zseq.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace th {

using namespace flatcurve;

inline ZPoint z(long re, long im = 0) { return ZPoint(re, im); }
inline ZPoint zq(const char* re, const char* im) { return ZPoint(parse_rational(re), parse_rational(im)); }
inline Rational q(const char* text) { return parse_rational(text); }

inline ZeroWindow seq(SequenceKind kind, double radius, Mode mode = Mode::Exact)
{
    GeneratorSpec spec;
    spec.kind = kind;
    return generate(spec, radius, mode);
}

inline ZeroWindow odd(bool all_n, double radius)
{
    GeneratorSpec spec;
    spec.kind = SequenceKind::Odd4n13;
    spec.all_n = all_n;
    return generate(spec, radius);
}

inline ZeroWindow explicit_window(std::vector<ZPoint> pts, double radius, Mode mode = Mode::Exact)
{
    return make_window(std::move(pts), radius, mode);
}

inline std::set<ZPoint, LexLess> as_set(const std::vector<ZPoint>& v) { return {v.begin(), v.end()}; }

inline bool contains(const std::vector<Mat2>& v, const Mat2& m) { return std::find(v.begin(), v.end(), m) != v.end(); }

/// Error code of the FlatError thrown by f, or "" when nothing is thrown.
template <class F>
std::string error_code(F&& f)
{
    try {
        f();
    } catch (const FlatError& e) {
        return e.code();
    }
    return "";
}

}  // namespace th
