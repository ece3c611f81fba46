// Stabilizer search shared by the Veech and automorphism code.
//
// An affine map x ↦ A x + y is pinned down by the image of 0 (y) and the
// images p', q' of two independent anchor points p, q, so the search runs over
// y ∈ origins and (p', q') ∈ cloud². A candidate survives when det A > 0, its
// entries are bounded, it is non-contracting (optional), it sends every inner
// point into the cloud and its inverse sends every inner point into the cloud.

#pragma once

#include "flatcurve/mat2.hpp"
#include "flatcurve/numeric.hpp"

#include <vector>

namespace flatcurve::detail {

struct SearchProblem {
    std::vector<ZPoint> cloud;    ///< target set
    std::vector<ZPoint> inner;    ///< points that must map into the cloud, canonical order
    std::vector<ZPoint> origins;  ///< images of 0 to try; {0} for a linear search
    double entry_bound = 1;
    bool require_non_contracting = true;
    Mode mode = Mode::Exact;
    double eps = kDefaultEps;
};

struct AffineCandidate {
    Mat2 linear;
    ZPoint translation{0L, 0L};
};

bool candidate_less(const AffineCandidate& x, const AffineCandidate& y);

/// Sorted by (linear, translation). Throws DegenerateWindow when the inner
/// points do not contain two independent vectors.
/// The reference path is serial and skips the norm pruning of p'.
std::vector<AffineCandidate> search_affine(const SearchProblem& problem, bool reference = false);

}  // namespace flatcurve::detail
