#include "flatcurve/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace flatcurve {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 600;
constexpr double kPlotSize = 560;  // square plot area on the left
constexpr double kMargin = 20;

struct Viewport {
    double cx = 0, cy = 0, scale = 1;

    std::pair<double, double> map(const ZPoint& z) const
    {
        double x = kMargin + kPlotSize / 2 + (z.re.get_d() - cx) * scale;
        double y = kMargin + kPlotSize / 2 - (z.im.get_d() - cy) * scale;
        return {x, y};
    }
};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string slope_label(const ZPoint& v, Mode mode)
{
    if (sgn(v.re) == 0) return "inf";
    Rational s = v.im / v.re;
    if (mode == Mode::Exact) return to_string(s);
    return fmt::format("{}", s.get_d());
}

std::string saddles_svg(const ZeroWindow& w, const std::vector<SaddleSegment>& segments, const HolonomySet& h)
{
    Viewport vp;
    auto t = w.translation().to_complex();
    vp.cx = t.real();
    vp.cy = t.imag();
    vp.scale = kPlotSize / (2 * std::max(w.radius(), 1e-12) * 1.05);

    std::string s;
    s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
                     kWidth, kHeight, kWidth, kHeight);
    s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    auto [ox, oy] = vp.map(w.translation());
    s += fmt::format("<circle class=\"window\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" fill=\"none\" stroke=\"#bbbbbb\"/>\n",
                     ox, oy, w.radius() * vp.scale);

    s += "<g class=\"segments\" stroke=\"#1f5fa8\" stroke-width=\"1\">\n";
    for (const auto& seg : segments) {
        auto [x1, y1] = vp.map(w[seg.from_idx]);
        auto [x2, y2] = vp.map(w[seg.to_idx]);
        s += fmt::format("<line class=\"{}\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" data-slope=\"{}\"{}/>\n",
                         seg.provisional ? "saddle provisional" : "saddle", x1, y1, x2, y2,
                         escape(slope_label(seg.holonomy, w.mode())),
                         seg.provisional ? " stroke-dasharray=\"4 3\"" : "");
    }
    s += "</g>\n";

    s += "<g class=\"zeros\" fill=\"black\">\n";
    for (const auto& z : w.points()) {
        auto [x, y] = vp.map(z);
        s += fmt::format("<circle class=\"zero\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"2.5\"/>\n", x, y);
    }
    s += "</g>\n";

    // Direction fan: one unit tick per holonomy direction, drawn at the right.
    const double fx = kMargin + kPlotSize + 110;
    const double fy = kMargin + 110;
    const double fr = 90;
    std::string d;
    for (const auto& v : h.vectors) {
        double a = v.v.arg();
        d += fmt::format("M{:.3f} {:.3f}L{:.3f} {:.3f}", fx, fy, fx + fr * std::cos(a), fy - fr * std::sin(a));
    }
    s += fmt::format("<path class=\"fan\" d=\"{}\" stroke=\"#a83232\" stroke-width=\"0.5\" fill=\"none\"/>\n", d);

    const double lx = kMargin + kPlotSize + 20;
    s += fmt::format("<text class=\"legend\" x=\"{:.0f}\" y=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"14\">window radius {}</text>\n",
                     lx, kHeight - 40, w.radius());
    std::string note = segments.empty() ? std::string("no saddle connections")
                                        : fmt::format("{} segments, {} zeros", segments.size(), w.size());
    s += fmt::format("<text class=\"legend\" x=\"{:.0f}\" y=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                     lx, kHeight - 20, note);
    s += "</svg>\n";
    return s;
}

}  // namespace flatcurve
