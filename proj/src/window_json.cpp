#include "flatcurve/window_json.hpp"

#include "jsonio.hpp"

#include <fstream>
#include <sstream>

namespace flatcurve {

namespace detail {

json rational_json(const Rational& q, Mode mode)
{
    if (mode == Mode::Exact) return to_string(q);
    return q.get_d();
}

json point_json(const ZPoint& z, Mode mode) { return json::array({rational_json(z.re, mode), rational_json(z.im, mode)}); }

json matrix_json(const Mat2& m, Mode mode)
{
    return json::array({json::array({rational_json(m.a, mode), rational_json(m.b, mode)}),
                        json::array({rational_json(m.c, mode), rational_json(m.d, mode)})});
}

Rational rational_from_json(const json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (!std::isfinite(v)) throw FlatError("NonFinite", "coordinate is not finite");
        return Rational(v);
    }
    throw FlatError("InvalidWindow", "coordinate must be a string or a number");
}

ZPoint point_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2) throw FlatError("InvalidWindow", "point must be [re, im]");
    return ZPoint(rational_from_json(j[0]), rational_from_json(j[1]));
}

}  // namespace detail

std::string window_to_json(const ZeroWindow& w)
{
    using detail::json;
    json j;
    j["mode"] = std::string(mode_name(w.mode()));
    j["radius"] = w.radius();
    if (w.mode() == Mode::Float) j["eps"] = w.eps();
    j["source"] = w.source();
    j["translation"] = detail::point_json(w.translation(), w.mode());
    json pts = json::array();
    for (const auto& p : w.points()) pts.push_back(detail::point_json(p, w.mode()));
    j["points"] = std::move(pts);
    return j.dump(2) + "\n";
}

ZeroWindow window_from_json(std::string_view text, bool check)
{
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FlatError("InvalidWindow", std::string("malformed JSON: ") + e.what());
    }
    try {
        Mode mode = parse_mode(j.at("mode").get<std::string>());
        double radius = j.at("radius").get<double>();
        if (!(radius > 0) || !std::isfinite(radius)) throw FlatError("InvalidWindow", "radius must be positive");
        double eps = j.contains("eps") ? j["eps"].get<double>() : kDefaultEps;
        ZPoint t = j.contains("translation") ? detail::point_from_json(j["translation"]) : ZPoint(0L, 0L);
        std::vector<ZPoint> pts;
        for (const auto& p : j.at("points")) pts.push_back(detail::point_from_json(p));
        if (mode == Mode::Float) {
            for (auto& p : pts) p = p.rounded();
            t = t.rounded();
        }
        std::string source = j.contains("source") ? j["source"].get<std::string>() : "file";
        ZeroWindow w(std::move(pts), radius, std::move(t), mode, eps, std::move(source));
        auto violations = check ? validate(w) : std::vector<Violation>{};
        if (!violations.empty()) {
            const auto& v = violations.front();
            throw FlatError("InvalidWindow", v.code + " at index " + std::to_string(v.index) + ": " + v.detail);
        }
        return w;
    } catch (const json::exception& e) {
        throw FlatError("InvalidWindow", std::string("bad window field: ") + e.what());
    } catch (const FlatError& e) {
        if (e.code() == "InvalidWindow") throw;
        throw FlatError("InvalidWindow", e.code() + ": " + e.detail());
    }
}

ZeroWindow read_window_file(const std::filesystem::path& path, bool check)
{
    std::ifstream in(path);
    if (!in) throw FlatError("IoError", "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return window_from_json(ss.str(), check);
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FlatError("IoError", "cannot write " + path.string());
    out << text;
    if (!out) throw FlatError("IoError", "write to " + path.string() + " failed");
}

}  // namespace flatcurve
