#include "helpers.hpp"

#include "flatcurve/cli.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace th;
using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Result r;
    r.code = flatcurve::run(std::move(args), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

json parsed(const Result& r)
{
    INFO(r.out << r.err);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "flatcurve_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (std::size_t pos = 0; (pos = text.find(needle, pos)) != std::string::npos; pos += needle.size()) ++n;
    return n;
}

}  // namespace

TEST_CASE("classify examples", "[cli]")
{
    auto ints = parsed(cli({"classify", "--sequence", "all-integers", "--radius", "20"}));
    CHECK(ints["kind"] == "Pprime");
    CHECK(ints["theta"] == 0.0);

    auto pos = parsed(cli({"classify", "--sequence", "positive-integers", "--radius", "20"}));
    CHECK(pos["kind"] == "P");
    CHECK(pos["center"].is_null());

    auto odd = parsed(cli({"classify", "--sequence", "odd-4n13", "--param", "n=all", "--radius", "20"}));
    CHECK(odd["kind"] == "Pprime");
}

TEST_CASE("hol and sandwich examples", "[cli]")
{
    auto h = parsed(cli({"hol", "--sequence", "positive-integers", "--radius", "20"}));
    CHECK(h["vectors"] == json::parse(R"([["1","0"],["-1","0"]])"));

    auto s = parsed(cli({"sandwich", "--sequence", "gaussian-lattice", "--radius", "8", "--inner", "3"}));
    auto shear = json::parse(R"([["1","1"],["0","1"]])");
    bool found = false;
    for (const auto& m : s["lower"]) found = found || m == shear;
    CHECK(found);
    CHECK(s["containment_ok"] == true);
}

TEST_CASE("csv output", "[cli]")
{
    auto r = cli({"saddles", "--sequence", "positive-integers", "--radius", "3.5", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("from_re,from_im,to_re,to_im,hol_re,hol_im,provisional\n", 0) == 0);
    CHECK(count(r.out, "\n") == 3);  // header plus 0-1, 1-2

    auto h = cli({"hol", "--sequence", "positive-integers", "--radius", "5", "--format", "csv"});
    REQUIRE(h.code == 0);
    CHECK(h.out == "hol_re,hol_im,certified\n1,0,true\n-1,0,true\n");
}

TEST_CASE("exit codes and error objects", "[cli]")
{
    auto missing_radius = cli({"hol", "--sequence", "positive-integers"});
    CHECK(missing_radius.code == 2);
    CHECK_FALSE(missing_radius.err.empty());

    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"hol", "--sequence", "positive-integers", "--radius", "5", "--format", "svg"}).code == 2);
    CHECK(cli({"hol", "--radius", "5"}).code == 2);
    CHECK(cli({"cone-angle", "--sequence", "all-integers", "--radius", "5", "--m", "1"}).code == 2);

    auto unknown = cli({"hol", "--sequence", "no-such-sequence", "--radius", "5"});
    CHECK(unknown.code == 2);

    auto collinear = cli({"sandwich", "--sequence", "all-integers", "--radius", "8"});
    CHECK(collinear.code == 1);
    auto j = json::parse(collinear.out);
    CHECK(j["error"] == "InvalidArgument");
    CHECK(j.contains("detail"));

    auto io = cli({"hol", "--input", "/nonexistent/window.json"});
    CHECK(io.code == 1);
    CHECK(json::parse(io.out)["error"] == "IoError");

    auto pole = cli({"eval", "--sequence", "positive-integers", "--radius", "200", "--at", "150,0", "--degree", "auto"});
    if (pole.code == 1) CHECK(json::parse(pole.out).contains("error"));

    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("gen then --input equals --sequence", "[cli]")
{
    auto path = temp_file("lattice.json");
    REQUIRE(cli({"gen", "--sequence", "gaussian-lattice", "--radius", "5", "--out", path.string()}).code == 0);
    auto direct = cli({"gen", "--sequence", "gaussian-lattice", "--radius", "5"});
    CHECK(slurp(path) == direct.out);
    for (const char* sub : {"saddles", "hol", "directions", "moduli"}) {
        auto a = cli({sub, "--sequence", "gaussian-lattice", "--radius", "5"});
        auto b = cli({sub, "--input", path.string()});
        INFO(sub);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    CHECK(cli({"hol", "--input", path.string(), "--radius", "3"}).code == 2);
}

TEST_CASE("outputs are deterministic", "[cli]")
{
    std::vector<std::string> args{"classify", "--sequence", "gaussian-lattice", "--radius", "8", "--inner", "3",
                                  "--seed", "7"};
    auto a = cli(args), b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::vector<std::string> plot{"plot", "--sequence", "gaussian-lattice", "--radius", "3"};
    CHECK(cli(plot).out == cli(plot).out);
}

TEST_CASE("plot structure", "[cli]")
{
    auto svg = cli({"plot", "--sequence", "all-integers", "--radius", "4"});
    REQUIRE(svg.code == 0);
    CHECK(svg.out.rfind("<svg", 0) == 0);
    CHECK(count(svg.out, "data-slope=\"0\"") == count(svg.out, "data-slope="));

    auto single = cli({"plot", "--sequence", "explicit", "--param", "points=2,1", "--radius", "3"});
    REQUIRE(single.code == 0);
    CHECK(single.out.find("no saddle connections") != std::string::npos);
}

TEST_CASE("equiv and lift through the command line", "[cli]")
{
    auto left = temp_file("pos.json"), right = temp_file("nonneg.json");
    REQUIRE(cli({"gen", "--sequence", "positive-integers", "--radius", "10", "--out", left.string()}).code == 0);
    REQUIRE(cli({"gen", "--sequence", "explicit", "--param", "points=0,0;1,0;2,0;3,0;4,0;5,0;6,0;7,0;8,0;9,0;10,0;11,0",
                 "--radius", "10", "--out", right.string()})
                .code == 0);
    auto e = parsed(cli({"equiv", "--left", left.string(), "--right", right.string()}));
    CHECK(e["equivalent"] == true);
    CHECK(e["translation"] == json::parse(R"(["-1","0"])"));

    auto l = parsed(cli({"lift", "--sequence", "all-integers", "--radius", "5", "--m", "3", "--path",
                         "-1/3,-1/3;1/3,-1/3;1/3,1/3;-1/3,1/3;-1/3,-1/3"}));
    CHECK(l["end"]["sheet"] == 1);

    auto c = parsed(cli({"cone-angle", "--sequence", "gaussian-lattice", "--radius", "3", "--m", "5",
                         "--zero-index", "0"}));
    CHECK(c["turns"] == 5);
    CHECK(c["angle_over_pi"] == 10);
}

TEST_CASE("the installed binary", "[cli]")
{
    std::string cmd = std::string(FLATCURVE_CLI_PATH) + " hol --sequence positive-integers --radius 5 > " +
                      temp_file("bin_out.json").string();
    CHECK(std::system(cmd.c_str()) == 0);
    auto j = json::parse(slurp(temp_file("bin_out.json")));
    CHECK(j["count"] == 2);
    std::string bad = std::string(FLATCURVE_CLI_PATH) + " hol --radius 5 2> /dev/null";
    int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
