/**
 * @file flatgeom.hpp
 * @brief Saddle connections, holonomy vectors and direction statistics of a zero window.
 *
 * A segment between two zeros is a saddle connection when no third zero lies
 * in its open interior. Each one lifts to m saddle connections of the curve
 * and contributes the pair ±(z_r - z_l) to the holonomy set.
 */

#pragma once

#include "flatcurve/numeric.hpp"
#include "flatcurve/zseq.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace flatcurve {

struct SaddleSegment {
    std::size_t from_idx = 0;
    std::size_t to_idx = 0;
    ZPoint holonomy;         ///< points[to] - points[from], argument in [0, π)
    double length = 0;
    double direction = 0;    ///< argument of holonomy
    int multiplicity = 2;    ///< number of lifts, the curve degree m
    bool provisional = false;
};

struct HolonomyVector {
    ZPoint v;
    bool certified = false;
};

/// Closed under negation, never contains 0, canonically ordered.
struct HolonomySet {
    std::vector<HolonomyVector> vectors;
    double window_radius = 0;
    /// Segments with both endpoints in B(0, complete_radius) have every
    /// potential blocker inside the window; their vectors are certified.
    double complete_radius = 0;
    Mode mode = Mode::Exact;
    double eps = kDefaultEps;

    std::size_t size() const { return vectors.size(); }
    bool empty() const { return vectors.empty(); }
    /// Exact membership, or within eps in float mode.
    bool contains(const ZPoint& v) const;
    std::vector<ZPoint> points() const;
    std::vector<ZPoint> certified_points() const;
};

struct DirectionProfile {
    std::vector<double> directions;   ///< sorted unique, in [0, 2π)
    double max_gap = 0;               ///< circular gaps between consecutive directions
    double min_gap = 0;
    double mean_gap = 0;
    std::vector<double> accumulation; ///< sorted unique candidate limit directions
};

/// Exact orientation plus betweenness, or the eps-tube test in float mode.
bool is_visible(const ZeroWindow& w, std::size_t r, std::size_t l);

/// Throws InvalidArgument for m < 2. Sorted by (from_idx, to_idx) of the unordered pair.
std::vector<SaddleSegment> saddle_connections(const ZeroWindow& w, int m);

/// All pairs against all potential blockers, single-threaded.
std::vector<SaddleSegment> saddle_connections_reference(const ZeroWindow& w, int m);

/// Visible unordered pairs (a < b) as window indices, sorted.
std::vector<std::pair<std::uint32_t, std::uint32_t>> visible_pairs(const ZeroWindow& w);
std::vector<std::pair<std::uint32_t, std::uint32_t>> visible_pairs_reference(const ZeroWindow& w);

HolonomySet holonomy(const ZeroWindow& w);

DirectionProfile direction_profile(const HolonomySet& h);

/// All points on one line. Windows of one or two points are collinear.
bool collinear(const ZeroWindow& w);
/// Direction in [0, π) of the line carrying a collinear window (0 for a single point).
double line_direction(const ZeroWindow& w);

bool all_parallel(const std::vector<SaddleSegment>& segments, Mode mode, double eps = kDefaultEps);
bool all_parallel(const HolonomySet& h);

}  // namespace flatcurve
