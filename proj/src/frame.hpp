// Kernel coordinates for the geometric predicates.
//
// Exact mode scales every point by the lcm of its denominators so that the
// predicates run on 64-bit integers with 128-bit products. Float mode uses
// plain doubles with an eps tolerance.

#pragma once

#include "flatcurve/numeric.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace flatcurve::detail {

using i128 = __int128;

struct IPoint {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const IPoint&, const IPoint&) = default;
};

struct DPoint {
    double x = 0;
    double y = 0;
};

inline IPoint operator-(IPoint a, IPoint b) { return {a.x - b.x, a.y - b.y}; }
inline IPoint operator+(IPoint a, IPoint b) { return {a.x + b.x, a.y + b.y}; }
inline IPoint operator-(IPoint a) { return {-a.x, -a.y}; }

inline i128 cross(IPoint a, IPoint b) { return i128(a.x) * b.y - i128(a.y) * b.x; }
inline i128 dot(IPoint a, IPoint b) { return i128(a.x) * b.x + i128(a.y) * b.y; }
inline i128 norm2(IPoint a) { return dot(a, a); }

inline double cross(DPoint a, DPoint b) { return a.x * b.y - a.y * b.x; }
inline double dot(DPoint a, DPoint b) { return a.x * b.x + a.y * b.y; }
inline DPoint operator-(DPoint a, DPoint b) { return {a.x - b.x, a.y - b.y}; }

inline int half_plane(IPoint v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

/// Exact angular order on nonzero vectors, starting at direction 0.
inline bool angle_less(IPoint u, IPoint v)
{
    int hu = half_plane(u);
    int hv = half_plane(v);
    if (hu != hv) return hu < hv;
    return cross(u, v) > 0;
}

inline bool same_direction(IPoint u, IPoint v) { return cross(u, v) == 0 && dot(u, v) > 0; }

/// k lies strictly inside the open segment (a, b).
inline bool blocks(IPoint a, IPoint b, IPoint k)
{
    IPoint ab = b - a;
    IPoint ak = k - a;
    if (cross(ab, ak) != 0) return false;
    i128 t = dot(ab, ak);
    return t > 0 && t < norm2(ab);
}

/// k within eps of the segment and strictly inside the (eps, 1 - eps) parameter range.
inline bool blocks(DPoint a, DPoint b, DPoint k, double eps)
{
    DPoint ab = b - a;
    DPoint ak = k - a;
    double len2 = dot(ab, ab);
    if (len2 == 0) return false;
    double t = dot(ab, ak) / len2;
    if (!(t > eps && t < 1 - eps)) return false;
    double perp = std::abs(cross(ab, ak)) / std::sqrt(len2);
    return perp <= eps;
}

struct ExactFrame {
    std::vector<IPoint> pts;
    std::int64_t denom = 1;  ///< point = pts / denom

    IPoint to_frame(const ZPoint& z) const;  ///< throws ExactOverflow if not representable
    std::optional<IPoint> try_to_frame(const ZPoint& z) const;
    ZPoint from_frame(IPoint p) const;
};

/// Common-denominator integer coordinates for points ∪ extra.
/// Throws FlatError("ExactOverflow") when they do not fit in ±2^60.
ExactFrame make_exact_frame(std::span<const ZPoint> points, std::span<const ZPoint> extra = {});

std::vector<DPoint> make_float_frame(std::span<const ZPoint> points);

mpz_class to_mpz(i128 v);
Rational ratio(i128 num, i128 den);

/// Exact ‖v‖² ≤ (radius · scale)² with radius a double.
bool norm_within(i128 n2, double radius, std::int64_t scale);

struct IPointHash {
    std::size_t operator()(const IPoint& p) const noexcept
    {
        std::uint64_t h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(p.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

class ExactIndex {
public:
    ExactIndex() = default;
    explicit ExactIndex(std::span<const IPoint> pts);
    std::optional<std::uint32_t> find(IPoint p) const;
    bool contains(IPoint p) const { return find(p).has_value(); }

private:
    std::unordered_map<IPoint, std::uint32_t, IPointHash> map_;
};

/// Nearest-point lookup within eps, on a uniform grid of cell size ≥ eps.
class FloatIndex {
public:
    FloatIndex() = default;
    FloatIndex(std::span<const DPoint> pts, double eps);
    std::optional<std::uint32_t> find(DPoint p) const;
    bool contains(DPoint p) const { return find(p).has_value(); }

private:
    struct CellHash {
        std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const noexcept
        {
            return IPointHash{}(IPoint{c.first, c.second});
        }
    };
    std::pair<std::int64_t, std::int64_t> cell(DPoint p) const;

    std::vector<DPoint> pts_;
    double eps_ = 0;
    double cell_ = 1;
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::uint32_t>, CellHash> grid_;
};

}  // namespace flatcurve::detail
