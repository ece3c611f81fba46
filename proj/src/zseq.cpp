#include "flatcurve/zseq.hpp"

#include "frame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace flatcurve {

std::string GeneratorSpec::describe() const
{
    switch (kind) {
    case SequenceKind::PositiveIntegers: return "positive-integers";
    case SequenceKind::AllIntegers: return "all-integers";
    case SequenceKind::Odd4n13: return all_n ? "odd-4n13(n in Z)" : "odd-4n13(n >= 1)";
    case SequenceKind::GaussianLattice: return "gaussian-lattice";
    case SequenceKind::IntegersPlusMinusI: return "integers-minus-i";
    case SequenceKind::Orbit: {
        std::string s = "orbit(gens=";
        for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ";" : "") + to_string(generators[i]);
        return s + ",wordlen=" + std::to_string(max_word_length) + ")";
    }
    case SequenceKind::Explicit: return "explicit(" + std::to_string(points.size()) + " points)";
    }
    return "unknown";
}

ZeroWindow::ZeroWindow(std::vector<ZPoint> points, double radius, ZPoint translation, Mode mode, double eps,
                       std::string source)
    : points_(std::move(points)),
      radius_(radius),
      translation_(std::move(translation)),
      mode_(mode),
      eps_(eps),
      source_(std::move(source))
{
}

std::vector<ZPoint> ZeroWindow::raw_points() const
{
    std::vector<ZPoint> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p - translation_);
    return out;
}

bool ZeroWindow::in_known_region(const ZPoint& p) const { return within_radius(p - translation_, radius_); }

double ZeroWindow::origin_ball_radius() const { return std::max(0.0, radius_ - translation_.abs()); }

namespace {

void round_if_float(std::vector<ZPoint>& pts, Mode mode)
{
    if (mode != Mode::Float) return;
    for (auto& p : pts) p = p.rounded();
}

void check_float_distinct(const std::vector<ZPoint>& pts, double eps)
{
    auto frame = detail::make_float_frame(pts);
    std::vector<std::size_t> order(frame.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frame[a].x < frame[b].x; });
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size() && frame[order[j]].x - frame[order[i]].x <= eps; ++j) {
            const auto& p = frame[order[i]];
            const auto& q = frame[order[j]];
            if (std::hypot(p.x - q.x, p.y - q.y) <= eps)
                throw FlatError("DuplicatePoint", "points " + to_string(pts[order[i]]) + " and " +
                                                      to_string(pts[order[j]]) + " are within eps");
        }
}

void check_radius(double radius)
{
    if (!(radius > 0) || !std::isfinite(radius))
        throw FlatError("InvalidArgument", "radius must be positive and finite");
}

}  // namespace

std::vector<ZPoint> canonical_order(std::vector<ZPoint> points)
{
    struct Key {
        Rational n2;
        int half;
        std::size_t idx;
    };
    std::vector<Key> keys;
    keys.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        keys.push_back({points[i].norm2(), half_plane(points[i].re, points[i].im), i});

    auto less = [&](const Key& a, const Key& b) {
        int c = cmp(a.n2, b.n2);
        if (c != 0) return c < 0;
        if (a.half != b.half) return a.half < b.half;
        return sgn(cross(points[a.idx], points[b.idx])) > 0;
    };
    std::sort(keys.begin(), keys.end(), less);

    for (std::size_t i = 1; i < keys.size(); ++i)
        if (!less(keys[i - 1], keys[i]))
            throw FlatError("DuplicatePoint", "point " + to_string(points[keys[i].idx]) + " appears twice");
    std::vector<ZPoint> out;
    out.reserve(points.size());
    for (const auto& k : keys) out.push_back(std::move(points[k.idx]));
    return out;
}

ZeroWindow make_window(std::vector<ZPoint> raw, double radius, Mode mode, double eps, std::string source)
{
    check_radius(radius);
    if (mode == Mode::Float && !(eps > 0)) throw FlatError("InvalidArgument", "eps must be positive in float mode");
    round_if_float(raw, mode);
    std::erase_if(raw, [&](const ZPoint& p) { return !within_radius(p, radius); });
    if (raw.empty()) throw FlatError("EmptyWindow", "no points of norm <= " + std::to_string(radius));

    auto sorted = canonical_order(std::move(raw));
    if (mode == Mode::Float) check_float_distinct(sorted, eps);

    ZPoint shift = -sorted.front();
    for (auto& p : sorted) p = p + shift;
    round_if_float(sorted, mode);
    sorted = canonical_order(std::move(sorted));
    return ZeroWindow(std::move(sorted), radius, shift, mode, eps, std::move(source));
}

namespace {

std::vector<ZPoint> orbit_points(const GeneratorSpec& spec, double radius)
{
    if (spec.max_word_length < 0) throw FlatError("InvalidArgument", "max word length must be >= 0");
    std::vector<Mat2> moves;
    double shrink = 1.0;
    for (const auto& g : spec.generators) {
        if (is_contracting(g)) throw FlatError("ContractingGenerator", "generator " + to_string(g) + " is contracting");
        moves.push_back(g);
        moves.push_back(g.inverse());
    }
    // One step can shrink a norm by at most the factor 1/σ_min of the move.
    for (const auto& mv : moves) shrink = std::max(shrink, 1.0 / mv.sigma_min());

    const int depth_cap = spec.max_word_length;
    auto reach = [&](int remaining) { return radius * std::pow(shrink, remaining) * (1 + 1e-9); };

    std::vector<ZPoint> seeds = spec.points;
    if (spec.default_seeds) {
        double bound = reach(depth_cap);
        if (bound > 1e6) throw FlatError("InvalidArgument", "default seed set too large; lower the word length");
        long top = static_cast<long>(std::floor(bound));
        for (long p = 0; p <= top; ++p) {
            seeds.emplace_back(p, 0L);
            if (p > 0) seeds.emplace_back(0L, p);
        }
    }

    std::set<ZPoint, LexLess> visited;
    std::vector<ZPoint> frontier;
    for (auto& s : seeds)
        if (s.abs() <= reach(depth_cap) && visited.insert(s).second) frontier.push_back(s);

    for (int depth = 0; depth < depth_cap && !frontier.empty(); ++depth) {
        std::vector<ZPoint> next;
        double bound = reach(depth_cap - depth - 1);
        for (const auto& p : frontier)
            for (const auto& mv : moves) {
                ZPoint q = mv.apply(p);
                if (q.abs() > bound) continue;
                if (visited.insert(q).second) next.push_back(std::move(q));
            }
        frontier = std::move(next);
    }
    return {visited.begin(), visited.end()};
}

}  // namespace

ZeroWindow generate(const GeneratorSpec& spec, double radius, Mode mode, double eps)
{
    check_radius(radius);
    std::vector<ZPoint> raw;
    long top = static_cast<long>(std::floor(radius));
    switch (spec.kind) {
    case SequenceKind::PositiveIntegers:
        for (long k = 1; k <= top; ++k) raw.emplace_back(k, 0L);
        break;
    case SequenceKind::AllIntegers:
        for (long k = -top; k <= top; ++k) raw.emplace_back(k, 0L);
        break;
    case SequenceKind::Odd4n13:
        for (long v = -top; v <= top; ++v) {
            if (v % 2 == 0) continue;
            if (!spec.all_n && v < 5) continue;  // 4n+1, 4n+3 with n ≥ 1 start at 5
            raw.emplace_back(v, 0L);
        }
        break;
    case SequenceKind::GaussianLattice:
        for (long a = -top; a <= top; ++a)
            for (long b = -top; b <= top; ++b) raw.emplace_back(a, b);
        break;
    case SequenceKind::IntegersPlusMinusI:
        for (long k = -top; k <= top; ++k) raw.emplace_back(k, 0L);
        raw.emplace_back(0L, -1L);
        break;
    case SequenceKind::Orbit:
        raw = orbit_points(spec, radius);
        break;
    case SequenceKind::Explicit:
        raw = spec.points;
        break;
    }
    return make_window(std::move(raw), radius, mode, eps, spec.describe());
}

ZeroWindow ZeroWindow::mapped(const ZPoint& mul, const ZPoint& add) const
{
    if (mul.is_zero()) throw FlatError("InvalidArgument", "similarity multiplier must be nonzero");
    std::vector<ZPoint> pts;
    pts.reserve(points_.size());
    for (const auto& p : points_) pts.push_back(mul * p + add);
    ZPoint t = mul * translation_ + add;
    if (mode_ == Mode::Float) {
        round_if_float(pts, mode_);
        t = t.rounded();
    }
    return ZeroWindow(canonical_order(std::move(pts)), radius_ * mul.abs(), std::move(t), mode_, eps_, source_);
}

ZeroWindow canonicalize(const ZeroWindow& w)
{
    if (w.empty()) throw FlatError("EmptyWindow", "cannot canonicalize an empty window");
    auto sorted = canonical_order(w.points());
    if (sorted.front().is_zero())
        return ZeroWindow(std::move(sorted), w.radius(), w.translation(), w.mode(), w.eps(), w.source());
    ZPoint shift = -sorted.front();
    for (auto& p : sorted) p = p + shift;
    round_if_float(sorted, w.mode());
    ZPoint t = w.translation() + shift;
    if (w.mode() == Mode::Float) t = t.rounded();
    return ZeroWindow(canonical_order(std::move(sorted)), w.radius(), std::move(t), w.mode(), w.eps(), w.source());
}

std::vector<Violation> validate(const ZeroWindow& w)
{
    std::vector<Violation> out;
    if (w.empty()) {
        out.push_back({"EmptyWindow", 0, "window has no points"});
        return out;
    }
    if (!w[0].is_zero()) out.push_back({"NotCanonical", 0, "first point is " + to_string(w[0]) + ", not 0"});

    for (std::size_t i = 0; i < w.size(); ++i)
        if (!w.in_known_region(w[i]))
            out.push_back({"OutOfRadius", i, "point " + to_string(w[i]) + " lies outside the window radius"});

    // Duplicates: exact equality, or distance ≤ eps in float mode.
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    auto frame = detail::make_float_frame(w.points());
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return LexLess{}(w[a], w[b]); });
    std::vector<bool> flagged(w.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            std::size_t a = order[i];
            std::size_t b = order[j];
            bool dup;
            if (w.mode() == Mode::Exact) {
                dup = w[a] == w[b];
            } else {
                if (frame[b].x - frame[a].x > w.eps()) break;
                dup = std::hypot(frame[a].x - frame[b].x, frame[a].y - frame[b].y) <= w.eps();
            }
            if (w.mode() == Mode::Exact && !dup) break;
            if (dup && !flagged[std::max(a, b)]) {
                flagged[std::max(a, b)] = true;
                out.push_back({"DuplicatePoint", std::max(a, b), "point " + to_string(w[std::max(a, b)]) + " repeats"});
            }
        }
    }

    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!(w[i] == w[i + 1]) && !canonical_less(w[i], w[i + 1]))
            out.push_back({"OrderingViolation", i + 1, "point " + to_string(w[i + 1]) + " precedes " + to_string(w[i])});

    std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        return a.index != b.index ? a.index < b.index : a.code < b.code;
    });
    return out;
}

double sup_norm(std::span<const ZPoint> terms)
{
    if (terms.empty()) throw FlatError("EmptyWindow", "sup norm of an empty sequence");
    Rational best = 0;
    for (const auto& z : terms) {
        Rational n2 = z.norm2();
        if (n2 > best) best = n2;
    }
    return std::sqrt(best.get_d());
}

}  // namespace flatcurve
