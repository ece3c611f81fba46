/**
 * @file cover.hpp
 * @brief Combinatorial model of the cyclic branched cover (z, w) ↦ z of w^m = f(z).
 *
 * Sheets are labelled 0..m-1 and separated by one vertical downward cut per
 * zero. Crossing a cut from left to right adds 1 to the sheet index, so a
 * counterclockwise turn around a single zero advances the sheet by one.
 */

#pragma once

#include "flatcurve/flatgeom.hpp"
#include "flatcurve/numeric.hpp"
#include "flatcurve/zseq.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace flatcurve {

struct CoverPoint {
    ZPoint base;
    int sheet = 0;        ///< in 0..m-1; 0 for cone points
    bool is_cone = false;

    friend bool operator==(const CoverPoint&, const CoverPoint&) = default;
};

struct CutSystem {
    std::vector<ZPoint> zeros;  ///< cut k is {x = zeros[k].re, y < zeros[k].im}
    int m = 2;
    Mode mode = Mode::Exact;
    double eps = kDefaultEps;
};

/// Throws InvalidArgument for m < 2.
CutSystem make_cuts(const ZeroWindow& w, int m);

struct SingularitySets {
    std::vector<CoverPoint> finite_cone_points;
    std::vector<CoverPoint> infinite_cone_points;  ///< always empty
};

SingularitySets singularities(const ZeroWindow& w);

/// One cone point over a zero (exact match, or within eps in float mode), m points elsewhere.
std::vector<CoverPoint> fiber(const ZPoint& base, const ZeroWindow& w, int m);

struct Crossing {
    std::size_t edge = 0;
    std::size_t zero = 0;
    int sign = 0;  ///< +1 left to right
};

struct LiftResult {
    CoverPoint end;
    std::vector<Crossing> crossings;
    std::vector<std::size_t> perturbed;  ///< vertices moved by +eps in x off a cut
};

/// Throws PathThroughBranchPoint when an edge passes within eps of a zero,
/// InvalidArgument when start.base differs from the first vertex.
LiftResult lift_path(const std::vector<ZPoint>& poly, const CoverPoint& start, const CutSystem& cuts);

struct ConeAngle {
    double angle = 0;   ///< 2π · turns
    int turns = 0;      ///< counterclockwise turns until the lifted circle closes
    double radius = 0;
};

/// Default radius is a quarter of the distance to the nearest other zero.
/// Throws RadiusTooLarge beyond half that distance.
ConeAngle cone_angle(std::size_t zero_idx, const ZeroWindow& w, int m, std::optional<double> radius = std::nullopt);

struct LiftedSaddle {
    std::size_t from_idx = 0;
    std::size_t to_idx = 0;
    int start_sheet = 0;  ///< sheet of the lift as it leaves the cone point over from_idx
    int end_sheet = 0;    ///< sheet as it arrives at the cone point over to_idx
    std::vector<Crossing> crossings;
};

/// The m lifts of a saddle connection, one per start sheet. Throws NotVisible.
std::vector<LiftedSaddle> lift_saddle(const SaddleSegment& seg, const ZeroWindow& w, const CutSystem& cuts);

}  // namespace flatcurve
