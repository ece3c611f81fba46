#include "helpers.hpp"

#include "flatcurve/flatgeom.hpp"
#include "flatcurve/svg.hpp"
#include "flatcurve/window_json.hpp"

#include <catch_amalgamated.hpp>

using namespace th;

TEST_CASE("window JSON round trip", "[json]")
{
    auto w = make_window({zq("1/3", "2"), z(-4, 1), zq("7/2", "-1/5")}, 5);
    std::string text = window_to_json(w);
    CHECK(text.find("\"1/3\"") == std::string::npos);  // translated away
    CHECK(text.find("\"eps\"") == std::string::npos);
    auto back = window_from_json(text);
    CHECK(back.points() == w.points());
    CHECK(back.translation() == w.translation());
    CHECK(back.radius() == w.radius());
    CHECK(window_to_json(back) == text);

    auto f = seq(SequenceKind::GaussianLattice, 2, Mode::Float);
    std::string ft = window_to_json(f);
    CHECK(ft.find("\"eps\"") != std::string::npos);
    auto fb = window_from_json(ft);
    CHECK(fb.mode() == Mode::Float);
    CHECK(fb.points() == f.points());
}

TEST_CASE("exact coordinates are p/q strings", "[json]")
{
    auto w = make_window({z(0), zq("1/2", "-3/4")}, 2);
    std::string text = window_to_json(w);
    CHECK(text.find("\"1/2\"") != std::string::npos);
    CHECK(text.find("\"-3/4\"") != std::string::npos);
    CHECK(text.find("\"mode\": \"exact\"") != std::string::npos);
}

TEST_CASE("malformed windows are rejected", "[json]")
{
    CHECK(error_code([] { window_from_json("{"); }) == "InvalidWindow");
    CHECK(error_code([] { window_from_json(R"({"mode":"exact","radius":2})"); }) == "InvalidWindow");
    CHECK(error_code([] { window_from_json(R"({"mode":"other","radius":2,"points":[]})"); }) == "InvalidWindow");
    CHECK(error_code([] { window_from_json(R"({"mode":"exact","radius":-2,"points":[]})"); }) == "InvalidWindow");
    CHECK(error_code([] { window_from_json(R"({"mode":"exact","radius":2,"points":[["1","x"]]})"); }) ==
          "InvalidWindow");
    // Readable but not canonical.
    std::string unsorted = R"({"mode":"exact","radius":3,"translation":["0","0"],"points":[["0","0"],["2","0"],["1","0"]]})";
    CHECK(error_code([&] { window_from_json(unsorted); }) == "InvalidWindow");
    CHECK(window_from_json(unsorted, false).size() == 3);
    CHECK(error_code([] { read_window_file("/nonexistent/w.json"); }) == "IoError");
}

TEST_CASE("SVG structure", "[json]")
{
    auto w = seq(SequenceKind::GaussianLattice, 2);
    auto segs = saddle_connections(w, 2);
    std::string svg = saddles_svg(w, segs, holonomy(w));
    std::size_t certified = 0;
    for (const auto& s : segs) certified += !s.provisional;
    std::size_t lines = 0;
    for (std::size_t pos = 0; (pos = svg.find("<line class=\"saddle\"", pos)) != std::string::npos; ++pos) ++lines;
    CHECK(lines == certified);
    CHECK(svg.find("window radius 2") != std::string::npos);
    CHECK(svg == saddles_svg(w, segs, holonomy(w)));

    auto line = seq(SequenceKind::AllIntegers, 4);
    std::string lsvg = saddles_svg(line, saddle_connections(line, 2), holonomy(line));
    CHECK(lsvg.find("data-slope=\"0\"") != std::string::npos);
    CHECK(lsvg.find("data-slope=\"inf\"") == std::string::npos);

    auto single = explicit_window({z(0)}, 1);
    std::string ssvg = saddles_svg(single, {}, holonomy(single));
    CHECK(ssvg.find("no saddle connections") != std::string::npos);

    CHECK(slope_label(z(0, 2), Mode::Exact) == "inf");
    CHECK(slope_label(z(2, 1), Mode::Exact) == "1/2");
    CHECK(slope_label(z(4, 1), Mode::Float) == "0.25");
}
