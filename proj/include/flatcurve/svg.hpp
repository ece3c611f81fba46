/**
 * @file svg.hpp
 * @brief Deterministic SVG rendering of a window, its saddle connections and holonomy directions.
 *
 * Zeros are <circle class="zero">, segments are <line class="saddle"> (or
 * class="saddle provisional", dashed) carrying a data-slope attribute, and the
 * holonomy directions form one <path class="fan"> of unit ticks.
 */

#pragma once

#include "flatcurve/flatgeom.hpp"
#include "flatcurve/zseq.hpp"

#include <string>
#include <vector>

namespace flatcurve {

/// Slope im/re of a holonomy vector as the attribute text: "p/q" in exact mode,
/// a shortest round-trip decimal in float mode, "inf" for vertical vectors.
std::string slope_label(const ZPoint& v, Mode mode);

std::string saddles_svg(const ZeroWindow& w, const std::vector<SaddleSegment>& segments, const HolonomySet& h);

}  // namespace flatcurve
