/**
 * @file veech.hpp
 * @brief Veech group classification from a zero window.
 *
 * Collinear windows have an uncountable Veech group, conjugate to P or to P'
 * (P' when the zero set has a point symmetry). Otherwise the group is
 * countable and is bracketed by the window stabilizers of the zero set
 * (lower) and of the holonomy set (upper). All answers hold on the window
 * only, with an inner radius r controlling boundary effects.
 */

#pragma once

#include "flatcurve/flatgeom.hpp"
#include "flatcurve/mat2.hpp"
#include "flatcurve/zseq.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace flatcurve {

struct StabilizerSearchConfig {
    std::optional<double> inner_radius;  ///< default R/3
    std::optional<double> entry_bound;   ///< default R/r (r_c/r for holonomy)
    bool require_non_contracting = true;
};

/// Defaults filled in against an outer radius. Throws InvalidArgument unless 0 < r < outer.
struct ResolvedSearch {
    double outer = 0;
    double inner = 0;
    double entry_bound = 0;
    bool require_non_contracting = true;
};
ResolvedSearch resolve(const StabilizerSearchConfig& cfg, double outer);

enum class VeechKind { UncountableP, UncountablePPrime, Countable };
std::string_view kind_name(VeechKind kind);  ///< "P", "Pprime", "Countable"

struct VeechClass {
    VeechKind kind = VeechKind::Countable;
    double theta = 0;                 ///< line direction in [0, π), uncountable kinds
    std::optional<ZPoint> center;     ///< symmetry center, P' only
    std::vector<Mat2> lower;          ///< Countable only
    std::vector<Mat2> upper;
    bool window_consistent = true;
};

/// Center c (canonical coordinates) with W invariant under z ↦ 2c - z on the
/// known region, taken among point and midpoint candidates with |c - o| ≤ r,
/// o the center of the known region. Throws InvalidArgument for a non-collinear window.
std::optional<ZPoint> pprime_symmetry(const ZeroWindow& w, std::optional<double> inner_radius = std::nullopt);

/// Linear window stabilizers, sorted by mat_less, identity included.
/// Throws DegenerateWindow when the inner points are collinear.
std::vector<Mat2> stabilizer_candidates(const ZeroWindow& w, const StabilizerSearchConfig& cfg = {});
std::vector<Mat2> stabilizer_candidates_reference(const ZeroWindow& w, const StabilizerSearchConfig& cfg = {});

/// Same search over the certified holonomy vectors of norm ≤ complete_radius.
/// Throws DegenerateWindow when all vectors are parallel.
std::vector<Mat2> hol_stabilizer(const HolonomySet& h, const StabilizerSearchConfig& cfg = {});

struct SandwichReport {
    std::vector<Mat2> lower;
    std::vector<Mat2> upper;
    std::vector<Mat2> missing;  ///< testable lower candidates absent from upper
    bool containment_ok = true;
};

/// Throws InvalidArgument for a collinear window.
SandwichReport sandwich_report(const ZeroWindow& w, const StabilizerSearchConfig& cfg = {});

struct ClosureViolation {
    Mat2 left, right, product;
};

struct ClosureReport {
    std::size_t tested = 0;
    std::size_t skipped = 0;  ///< products outside the testable range
    std::vector<ClosureViolation> violations;

    bool closed() const { return violations.empty(); }
};

/// A product C = A·B is testable when its entries are within the entry bound and
/// both C and C⁻¹ keep the inner ball inside the known region.
ClosureReport group_closure_check(const std::vector<Mat2>& candidates, const ZeroWindow& w,
                                  const StabilizerSearchConfig& cfg = {});

/// Throws TooFewPoints for windows with fewer than 2 points.
VeechClass classify(const ZeroWindow& w, const StabilizerSearchConfig& cfg = {});

}  // namespace flatcurve
