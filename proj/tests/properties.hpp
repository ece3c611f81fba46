// Randomized invariant checks shared by the property tests and the acceptance
// runner. Each check draws its own cases from a seeded generator and reports
// how many cases ran and the first failure.
#pragma once

#include "oracles.hpp"

#include "flatcurve/cover.hpp"
#include "flatcurve/equiv.hpp"
#include "flatcurve/flatgeom.hpp"
#include "flatcurve/veech.hpp"
#include "flatcurve/zseq.hpp"

#include <fmt/format.h>

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace props {

using namespace flatcurve;

struct Outcome {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0 && cases > 0; }
    void fail(std::string what)
    {
        if (failures++ == 0) first_failure = std::move(what);
    }
    std::string summary() const
    {
        return failures == 0 ? fmt::format("{} cases", cases)
                             : fmt::format("{} of {} cases failed, first: {}", failures, cases, first_failure);
    }
};

inline Rational ratio(long p, long q)
{
    Rational r{mpz_class(p), mpz_class(q)};
    r.canonicalize();
    return r;
}

inline ZPoint zp(long re, long im = 0) { return ZPoint(re, im); }

inline ZPoint random_point(std::mt19937_64& rng, long span, long den)
{
    std::uniform_int_distribution<long> c(-span, span);
    return ZPoint(ratio(c(rng), den), ratio(c(rng), den));
}

inline std::set<ZPoint, LexLess> point_set(const std::vector<ZPoint>& v) { return {v.begin(), v.end()}; }

/// Small random windows on a coarse grid, some of them forced onto a line.
inline ZeroWindow random_window(std::mt19937_64& rng, std::size_t max_points = 24)
{
    std::uniform_int_distribution<std::size_t> size(1, max_points);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<long> small(-3, 3);
    std::vector<ZPoint> pts;
    if (kind(rng) == 0) {
        ZPoint d(small(rng), small(rng));
        if (d.is_zero()) d = zp(1, 2);
        ZPoint base = random_point(rng, 4, 2);
        std::uniform_int_distribution<long> k(-12, 12);
        std::set<long> used;
        std::size_t n = size(rng);
        for (std::size_t i = 0; i < 3 * n && used.size() < n; ++i) used.insert(k(rng));
        for (long t : used) pts.push_back(base + Rational(t) * d);
    } else {
        long den = std::uniform_int_distribution<long>(1, 3)(rng);
        pts = oracle::random_points(rng, size(rng), 8 * den, den);
    }
    return make_window(std::move(pts), 1000);
}

/// z ↦ mul·z + add on the window, recomputing holonomy on the mapped window.
inline bool hol_equivariant(const ZeroWindow& w, const ZPoint& mul, const ZPoint& add)
{
    auto h = holonomy(w).points();
    auto hm = holonomy(w.mapped(mul, add)).points();
    std::vector<ZPoint> expect;
    for (const auto& v : h) expect.push_back(mul * v);
    return point_set(hm) == point_set(expect) && hm.size() == h.size();
}

inline Outcome holonomy_negation(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    Outcome o;
    for (; o.cases < n; ++o.cases) {
        auto w = random_window(rng);
        auto h = holonomy(w);
        for (const auto& v : h.points()) {
            if (v.is_zero() || !h.contains(-v)) {
                o.fail(fmt::format("vector {} in window of {} points", to_string(v), w.size()));
                break;
            }
        }
    }
    return o;
}

inline Outcome holonomy_equivariance(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    // Exact rotations: i, (3+4i)/5, (5+12i)/13, (8+15i)/17.
    const std::vector<ZPoint> rotations{zp(0, 1), ZPoint(ratio(3, 5), ratio(4, 5)), ZPoint(ratio(5, 13), ratio(12, 13)),
                                        ZPoint(ratio(8, 17), ratio(15, 17))};
    std::uniform_int_distribution<std::size_t> pick(0, rotations.size() - 1);
    std::uniform_int_distribution<long> num(1, 9);
    Outcome o;
    for (; o.cases < n; ++o.cases) {
        auto w = random_window(rng);
        ZPoint shift = random_point(rng, 20, 7);
        ZPoint rot = rotations[pick(rng)];
        ZPoint scale(ratio(num(rng), num(rng)), Rational(0));
        if (!hol_equivariant(w, zp(1), shift)) o.fail("translation by " + to_string(shift));
        else if (!hol_equivariant(w, rot, zp(0))) o.fail("rotation by " + to_string(rot));
        else if (!hol_equivariant(w, scale, zp(0))) o.fail("scaling by " + to_string(scale));
    }
    return o;
}

/// Agreement with the sampled stretch wherever the sample is decisive
/// (|s - 1| > 1e-3), and with the exact eigenvalue test everywhere.
inline Outcome contracting_agreement(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-12, 12);
    std::uniform_int_distribution<long> den(1, 12);
    Outcome o;
    std::size_t decisive = 0;
    while (o.cases < n) {
        Mat2 a(ratio(num(rng), den(rng)), ratio(num(rng), den(rng)), ratio(num(rng), den(rng)),
               ratio(num(rng), den(rng)));
        if (a.det() == 0) continue;
        ++o.cases;
        bool got = is_contracting(a);
        if (got != oracle::contracting_exact(a)) {
            o.fail("exact disagreement at " + to_string(a));
            continue;
        }
        double s = oracle::sampled_stretch(a);
        if (std::abs(s - 1) <= 1e-3) continue;
        ++decisive;
        if (got != (s < 1)) o.fail(fmt::format("sampled stretch {} at {}", s, to_string(a)));
    }
    if (decisive < n / 2) o.fail(fmt::format("only {} decisive samples", decisive));
    return o;
}

/// Images B·(ℤ² ∩ box) of random rational bases, which carry conjugated
/// lattice symmetries, occasionally with one extra point.
inline ZeroWindow random_lattice_window(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> e(-2, 2);
    std::uniform_int_distribution<long> den(1, 2);
    Mat2 b;
    do {
        b = Mat2(ratio(e(rng), den(rng)), ratio(e(rng), den(rng)), ratio(e(rng), den(rng)), ratio(e(rng), den(rng)));
    } while (b.det() == 0 || b.sigma_min() < 0.4);
    double radius = std::min(6 * b.sigma_min(), 4.0);
    std::vector<ZPoint> pts;
    for (long x = -12; x <= 12; ++x)
        for (long y = -12; y <= 12; ++y) pts.push_back(b.apply(zp(x, y)));
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        ZPoint extra = random_point(rng, 6, 5);
        if (std::find(pts.begin(), pts.end(), extra) == pts.end()) pts.push_back(extra);
    }
    return make_window(std::move(pts), radius);
}

inline Outcome stabilizer_shape(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    Outcome o;
    std::size_t nontrivial = 0;
    while (o.cases < n) {
        auto w = random_lattice_window(rng);
        StabilizerSearchConfig cfg;
        cfg.inner_radius = w.radius() / 2;
        cfg.entry_bound = 3;
        std::vector<Mat2> c;
        try {
            c = stabilizer_candidates(w, cfg);
        } catch (const FlatError& e) {
            if (e.code() == "DegenerateWindow") continue;
            throw;
        }
        ++o.cases;
        nontrivial += c.size() > 1;
        for (const auto& a : c)
            if (a.det() <= 0 || a.sigma_max() < 1 - 1e-12) {
                o.fail("candidate " + to_string(a));
                break;
            }
    }
    if (nontrivial == 0) o.fail("no window had a nontrivial stabilizer");
    return o;
}

/// With the entry bound fixed, growing the inner radius only adds constraints.
inline Outcome stabilizer_monotone(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    Outcome o;
    while (o.cases < n) {
        auto w = random_lattice_window(rng);
        StabilizerSearchConfig small, large;
        small.inner_radius = w.radius() / 3;
        large.inner_radius = 2 * w.radius() / 3;
        small.entry_bound = large.entry_bound = 3;
        std::vector<Mat2> cs, cl;
        try {
            cs = stabilizer_candidates(w, small);
            cl = stabilizer_candidates(w, large);
        } catch (const FlatError& e) {
            if (e.code() == "DegenerateWindow") continue;
            throw;
        }
        ++o.cases;
        for (const auto& a : cl)
            if (std::find(cs.begin(), cs.end(), a) == cs.end()) {
                o.fail("candidate " + to_string(a) + " lost at the smaller radius");
                break;
            }
    }
    return o;
}

inline bool same_class(const VeechClass& a, const VeechClass& b, bool full)
{
    if (a.kind != b.kind || a.theta != b.theta) return false;
    if (!full) return true;
    return a.center == b.center && a.lower == b.lower && a.upper == b.upper &&
           a.window_consistent == b.window_consistent;
}

inline ZeroWindow generated(SequenceKind kind, double radius, bool all_n = false)
{
    GeneratorSpec spec;
    spec.kind = kind;
    spec.all_n = all_n;
    return generate(spec, radius);
}

/// classify sees the same configuration whatever raw frame it came from.
/// The whole result must agree when the canonical origin is kept; kind and
/// line direction must agree for any shift.
inline Outcome classify_translation(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    const std::vector<ZeroWindow> collinear_pool{
        generated(SequenceKind::PositiveIntegers, 12), generated(SequenceKind::AllIntegers, 12),
        generated(SequenceKind::Odd4n13, 20), generated(SequenceKind::Odd4n13, 20, true),
        make_window({zp(1, 1), zp(2, 2), zp(3, 3), zp(5, 5), zp(-1, -1)}, 9)};
    const std::vector<ZeroWindow> planar_pool{generated(SequenceKind::GaussianLattice, 6),
                                              generated(SequenceKind::IntegersPlusMinusI, 6)};
    std::vector<VeechClass> collinear_ref, planar_ref;
    StabilizerSearchConfig cfg;
    cfg.inner_radius = 2;
    for (const auto& w : collinear_pool) collinear_ref.push_back(classify(w));
    for (const auto& w : planar_pool) planar_ref.push_back(classify(w, cfg));

    std::uniform_int_distribution<int> which(0, 9);
    Outcome o;
    for (; o.cases < n; ++o.cases) {
        int k = which(rng);
        if (k < 8) {
            std::size_t i = std::size_t(k) % collinear_pool.size();
            bool near = k % 2 == 0;
            ZPoint c = near ? random_point(rng, 2, 7) : random_point(rng, 40, 3);  // |c| < 1/2 when near
            auto moved = canonicalize(collinear_pool[i].mapped(zp(1), c));
            if (!same_class(classify(moved), collinear_ref[i], near && moved.points() == collinear_pool[i].points()))
                o.fail(fmt::format("collinear window {} shifted by {}", i, to_string(c)));
        } else {
            std::size_t i = std::size_t(k - 8);
            ZPoint c = random_point(rng, 2, 7);
            auto moved = canonicalize(planar_pool[i].mapped(zp(1), c));
            if (!(moved.points() == planar_pool[i].points())) o.fail("canonical origin moved");
            else if (!same_class(classify(moved, cfg), planar_ref[i], true))
                o.fail(fmt::format("planar window {} shifted by {}", i, to_string(c)));
        }
    }
    return o;
}

/// Every generator at several radii plus random windows.
inline Outcome collinear_iff_parallel(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    Outcome o;
    auto check = [&](const ZeroWindow& w, const std::string& what) {
        ++o.cases;
        if (collinear(w) != all_parallel(holonomy(w))) o.fail(what);
    };
    for (double r : {1.0, 2.5, 6.0, 11.0}) {
        check(generated(SequenceKind::PositiveIntegers, r), "positive integers");
        check(generated(SequenceKind::AllIntegers, r), "integers");
        check(generated(SequenceKind::Odd4n13, r + 5), "odd");
        check(generated(SequenceKind::Odd4n13, r, true), "odd, n in Z");
        check(generated(SequenceKind::GaussianLattice, r), "lattice");
        check(generated(SequenceKind::IntegersPlusMinusI, r), "integers and -i");
    }
    while (o.cases < n) {
        auto w = random_window(rng);
        check(w, fmt::format("random window of {} points", w.size()));
    }
    return o;
}

inline Outcome visibility_symmetry(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    Outcome o;
    while (o.cases < n) {
        auto w = random_window(rng);
        if (w.size() < 2) continue;
        std::uniform_int_distribution<std::size_t> idx(0, w.size() - 1);
        std::size_t a = idx(rng), b = idx(rng);
        if (a == b) continue;
        ++o.cases;
        if (is_visible(w, a, b) != is_visible(w, b, a)) o.fail(fmt::format("pair ({}, {})", a, b));
    }
    return o;
}

inline oracle::Pairs segment_pairs(const std::vector<SaddleSegment>& s)
{
    oracle::Pairs out;
    for (const auto& x : s)
        out.emplace_back(std::uint32_t(std::min(x.from_idx, x.to_idx)), std::uint32_t(std::max(x.from_idx, x.to_idx)));
    std::sort(out.begin(), out.end());
    return out;
}

/// Saddle enumeration (parallel and reference) against the cubic oracle.
inline Outcome saddles_vs_oracle(std::uint64_t seed, std::size_t windows, std::size_t max_points, Mode mode)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(2, max_points);
    std::uniform_int_distribution<long> den(1, 4);
    Outcome o;
    for (; o.cases < windows; ++o.cases) {
        long d = den(rng);
        std::size_t target = size(rng);
        // Grid side chosen so that the window is about half full: many collinear triples.
        long span = std::max<long>(2, long(std::sqrt(double(target)) * 0.75));
        auto pts = oracle::random_points(rng, target, span, d);
        if (mode == Mode::Float) {
            // Irrational-looking offsets so that float coordinates are not exact grid values.
            for (auto& p : pts) p = ZPoint::from_double(p.re.get_d() * std::sqrt(2.0), p.im.get_d() * std::sqrt(2.0));
        }
        auto w = make_window(pts, 1e6, mode);
        auto fast = segment_pairs(saddle_connections(w, 2));
        auto ref = segment_pairs(saddle_connections_reference(w, 2));
        auto expect = mode == Mode::Exact ? oracle::visible_pairs_exact(w.points())
                                          : oracle::visible_pairs_float(w.points(), w.eps());
        if (fast != expect) o.fail(fmt::format("parallel path, window {} of {} points", o.cases, w.size()));
        else if (ref != expect) o.fail(fmt::format("reference path, window {} of {} points", o.cases, w.size()));
        else if (visible_pairs(w) != expect) o.fail(fmt::format("visible_pairs, window {}", o.cases));
    }
    return o;
}

/// Polyline vertices with x in (1/14)(2ℤ + 1): never on the cut of an integer zero.
inline std::vector<ZPoint> random_path(std::mt19937_64& rng, std::size_t vertices, long span)
{
    std::uniform_int_distribution<long> x(-span, span), y(-14 * span, 14 * span);
    std::vector<ZPoint> out;
    for (std::size_t i = 0; i < vertices; ++i) out.emplace_back(ratio(2 * x(rng) + 1, 14), ratio(y(rng), 14));
    return out;
}

/// lift(p · q) ends where lift(q) ends when started at the end of lift(p).
inline Outcome cover_concatenation(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    const std::vector<ZeroWindow> pool{generated(SequenceKind::AllIntegers, 6),
                                       generated(SequenceKind::GaussianLattice, 3),
                                       generated(SequenceKind::IntegersPlusMinusI, 4)};
    const int degrees[] = {2, 3, 5};
    std::uniform_int_distribution<int> pick(0, 2), len(2, 7);
    Outcome o;
    while (o.cases < n) {
        const auto& w = pool[std::size_t(pick(rng))];
        int m = degrees[pick(rng)];
        auto cuts = make_cuts(w, m);
        auto p = random_path(rng, std::size_t(len(rng)), 5);
        auto q = random_path(rng, std::size_t(len(rng)), 5);
        q.front() = p.back();
        std::vector<ZPoint> pq = p;
        pq.insert(pq.end(), q.begin() + 1, q.end());
        int s0 = std::uniform_int_distribution<int>(0, m - 1)(rng);
        try {
            auto whole = lift_path(pq, {pq.front(), s0, false}, cuts);
            auto first = lift_path(p, {p.front(), s0, false}, cuts);
            auto second = lift_path(q, first.end, cuts);
            ++o.cases;
            if (!(whole.end == second.end) || whole.crossings.size() != first.crossings.size() + second.crossings.size())
                o.fail(fmt::format("m = {}, sheets {} vs {}", m, whole.end.sheet, second.end.sheet));
        } catch (const FlatError& e) {
            if (e.code() != "PathThroughBranchPoint") throw;
        }
    }
    return o;
}

/// m points over random non-zero bases, one over each zero.
inline Outcome fiber_cardinality(std::uint64_t seed, std::size_t n, int m)
{
    std::mt19937_64 rng(seed);
    auto w = generated(SequenceKind::GaussianLattice, 4);
    Outcome o;
    while (o.cases < n) {
        ZPoint b = random_point(rng, 40, 7);
        if (std::find(w.points().begin(), w.points().end(), b) != w.points().end()) continue;
        ++o.cases;
        auto f = fiber(b, w, m);
        std::set<int> sheets;
        for (const auto& c : f) sheets.insert(c.sheet);
        if (f.size() != std::size_t(m) || sheets.size() != std::size_t(m)) o.fail("base " + to_string(b));
    }
    for (const auto& z : w.points()) {
        ++o.cases;
        auto f = fiber(z, w, m);
        if (f.size() != 1 || !f.front().is_cone) o.fail("zero " + to_string(z));
    }
    return o;
}

/// Applying b₁ then b₂ equals applying b₁ + b₂, with poles on both sides together.
inline Outcome moduli_composition(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    Outcome o;
    std::size_t poles = 0;
    for (; o.cases < n; ++o.cases) {
        std::vector<ZPoint> c0;
        std::size_t k = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        while (c0.size() < k) {
            ZPoint w = random_point(rng, 6, 4);
            if (!w.is_zero()) c0.push_back(w);
        }
        // Small coordinates make poles 1 + b w = 0 reachable.
        ZPoint b1 = random_point(rng, 4, 4), b2 = random_point(rng, 4, 4);
        std::vector<ZPoint> two, one;
        bool two_pole = false, one_pole = false;
        try {
            two = moduli_action(moduli_action(c0, b1), b2);
        } catch (const FlatError& e) {
            if (e.code() != "PoleInAction") throw;
            two_pole = true;
        }
        try {
            one = moduli_action(c0, b1 + b2);
        } catch (const FlatError& e) {
            if (e.code() != "PoleInAction") throw;
            one_pole = true;
        }
        if (two_pole || one_pole) {
            ++poles;
            // A pole of b₁ alone may hide a regular composite; the converse never happens.
            if (one_pole && !two_pole) o.fail("composite has a pole the two-step action missed");
            continue;
        }
        if (two != one) o.fail(fmt::format("b1 = {}, b2 = {}", to_string(b1), to_string(b2)));
    }
    return o;
}

/// Random planted translations b with exact recovery, for b whose image of
/// the first term lies in the candidate disk.
inline Outcome planted_translations(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    Outcome o;
    while (o.cases < n) {
        auto base = oracle::random_points(rng, 300, 40, 2);
        ZPoint b = random_point(rng, 12, 3);  // |b| ≤ 4√2
        auto w1 = make_window(base, 12);
        // Candidates are the points of w2 within R/2 of the origin.
        if (!within_radius(w1.raw(0) + b, 6)) continue;
        ++o.cases;
        std::vector<ZPoint> moved;
        for (const auto& p : base) moved.push_back(p + b);
        auto w2 = make_window(moved, 12);
        auto r = translation_equiv(w1, w2);
        if (!r.equivalent || !r.translation || !(*r.translation == b))
            o.fail(fmt::format("planted {}, got {}", to_string(b), r.translation ? to_string(*r.translation) : "none"));
    }
    return o;
}

}  // namespace props
