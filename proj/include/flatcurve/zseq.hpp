/**
 * @file zseq.hpp
 * @brief Finite windows of zero sequences that converge to infinity.
 *
 * A ZeroWindow is the truncation Z ∩ B(0, R) of a sequence, stored in
 * canonical order (norm ascending, then argument in [0, 2π)) and translated
 * so that its first term is 0. The translation that was applied is kept, so
 * raw coordinates are points() - translation() and the region in which the
 * window is known to agree with the full sequence is the closed ball
 * B(translation(), R) in window coordinates.
 */

#pragma once

#include "flatcurve/mat2.hpp"
#include "flatcurve/numeric.hpp"

#include <span>
#include <string>
#include <vector>

namespace flatcurve {

enum class SequenceKind {
    PositiveIntegers,
    AllIntegers,
    Odd4n13,             ///< 4n+1 and 4n+3, for n ≥ 1 or n ∈ ℤ
    GaussianLattice,
    IntegersPlusMinusI,  ///< ℤ ∪ {-i}
    Orbit,               ///< G·K for a finitely generated matrix group G
    Explicit,
};

struct GeneratorSpec {
    SequenceKind kind = SequenceKind::PositiveIntegers;
    bool all_n = false;               ///< Odd4n13: n ∈ ℤ instead of n ≥ 1
    std::vector<ZPoint> points;       ///< Orbit seeds K, or the Explicit list
    bool default_seeds = false;       ///< Orbit: K = {p, qi : p, q ∈ ℕ₀}
    std::vector<Mat2> generators;     ///< Orbit
    int max_word_length = 0;          ///< Orbit

    std::string describe() const;
};

class ZeroWindow {
public:
    ZeroWindow() = default;
    /// Stores the data as given; use make_window() or generate() for canonical windows.
    ZeroWindow(std::vector<ZPoint> points, double radius, ZPoint translation, Mode mode,
               double eps = kDefaultEps, std::string source = "explicit");

    const std::vector<ZPoint>& points() const { return points_; }
    const ZPoint& operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    double radius() const { return radius_; }
    const ZPoint& translation() const { return translation_; }
    Mode mode() const { return mode_; }
    double eps() const { return eps_; }
    const std::string& source() const { return source_; }

    ZPoint raw(std::size_t i) const { return points_[i] - translation_; }
    std::vector<ZPoint> raw_points() const;

    /// Exact test ‖p - translation‖ ≤ R.
    bool in_known_region(const ZPoint& p) const;
    /// Radius of the largest ball about 0 inside the known region.
    double origin_ball_radius() const;

    /// The window under z ↦ mul·z + add (a similarity), re-sorted canonically
    /// but not re-translated. The known region moves with the points.
    ZeroWindow mapped(const ZPoint& mul, const ZPoint& add) const;

private:
    std::vector<ZPoint> points_;
    double radius_ = 0.0;
    ZPoint translation_{0L, 0L};
    Mode mode_ = Mode::Exact;
    double eps_ = kDefaultEps;
    std::string source_;
};

/// Sorts by norm, ties by argument in [0, 2π). Throws FlatError("DuplicatePoint").
std::vector<ZPoint> canonical_order(std::vector<ZPoint> points);

/// Filters raw points to the closed ball B(0, R), sorts canonically and
/// translates by minus the first term. Float mode rounds coordinates to
/// doubles and rejects points closer than eps. Throws EmptyWindow / DuplicatePoint.
ZeroWindow make_window(std::vector<ZPoint> raw, double radius, Mode mode = Mode::Exact,
                       double eps = kDefaultEps, std::string source = "explicit");

/// Throws ContractingGenerator, EmptyWindow, InvalidArgument (R ≤ 0).
ZeroWindow generate(const GeneratorSpec& spec, double radius, Mode mode = Mode::Exact,
                    double eps = kDefaultEps);

/// Canonical form of an arbitrary (e.g. mapped) window: re-sorted and
/// translated so its first term is 0, translation accumulated.
ZeroWindow canonicalize(const ZeroWindow& w);

struct Violation {
    std::string code;   ///< DuplicatePoint, OrderingViolation, NotCanonical, OutOfRadius, EmptyWindow
    std::size_t index;
    std::string detail;
};

std::vector<Violation> validate(const ZeroWindow& w);

/// sup of the norms; throws FlatError("EmptyWindow") on an empty list.
double sup_norm(std::span<const ZPoint> terms);

}  // namespace flatcurve
