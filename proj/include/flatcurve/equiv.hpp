/**
 * @file equiv.hpp
 * @brief Translation equivalence of zero windows, affine automorphisms and moduli coordinates.
 */

#pragma once

#include "flatcurve/mat2.hpp"
#include "flatcurve/veech.hpp"
#include "flatcurve/zseq.hpp"

#include <optional>
#include <vector>

namespace flatcurve {

struct EquivResult {
    bool equivalent = false;
    std::optional<ZPoint> translation;  ///< raw z ↦ z + b, when equivalent
    double matched_fraction = 0;        ///< |agree| / |compared| on the overlap, best candidate
    std::size_t compared = 0;
};

/// Candidates b = q - z₁ (raw coordinates) for raw points q of w2 with |q| ≤ R₂/2,
/// tried in canonical order. b is accepted when raw(w1) + b and raw(w2) agree on
/// the intersection of the two known balls. Throws ModeMismatch.
EquivResult translation_equiv(const ZeroWindow& w1, const ZeroWindow& w2);

struct AffineMap {
    Mat2 linear;
    ZPoint translation{0L, 0L};
};

/// Maps z ↦ A z + t (canonical coordinates) with det A > 0 that send the inner
/// points into the window, with inverses doing the same. For a collinear window
/// the maps act on the line and are reported as (λ·Id, t). Throws TooFewPoints.
std::vector<AffineMap> affine_automorphisms(const ZeroWindow& w, const StabilizerSearchConfig& cfg = {});

struct ModuliForm {
    std::vector<ZPoint> canonical_points;
    std::vector<ZPoint> c0_coords;  ///< 1/z for the nonzero canonical points, same order
    double sup_norm = 0;            ///< 0 with empty = true when there are no nonzero points
    bool empty = false;
    ZPoint translation{0L, 0L};
};

ModuliForm moduli_canonical(const ZeroWindow& w);

/// w_k ↦ w_k / (1 + b w_k). Throws PoleInAction naming the first offending index.
std::vector<ZPoint> moduli_action(const std::vector<ZPoint>& c0, const ZPoint& b);

}  // namespace flatcurve
