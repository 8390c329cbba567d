#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fbrd/runio.hpp"
#include "fbrd/svg.hpp"

using namespace fbrd;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("key=value config: comments, blanks, whitespace, overrides") {
    const auto cfg = KeyValueConfig::parse_text(
        "# run setup\n"
        "theta = 0.25\n"
        "\n"
        "mu=1.5   # front coefficient\n"
        "  sigma  =  2  \n");
    CHECK(cfg.values.at("theta") == "0.25");
    CHECK(cfg.values.at("mu") == "1.5");
    CHECK(cfg.values.at("sigma") == "2");
    CHECK_THROWS_AS(KeyValueConfig::parse_text("not an assignment\n"), UsageError);
    CHECK_THROWS_AS(KeyValueConfig::parse_text("=3\n"), UsageError);
}

TEST_CASE("ranges expand as start:stop:count") {
    const auto r = Range::parse("0.2:2.0:10");
    const auto v = r.expand();
    REQUIRE(v.size() == 10);
    CHECK(v.front() == doctest::Approx(0.2));
    CHECK(v.back() == doctest::Approx(2.0));
    CHECK(Range::parse("1.5").expand() == std::vector<double>{1.5});
    CHECK_THROWS_AS(Range::parse("1:2"), UsageError);
    CHECK_THROWS_AS(Range::parse("1:2:0"), UsageError);
}

TEST_CASE("17-significant-digit formatting round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 3.141592653589793, 1e-17, 123456.789012345678}) {
        const std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("csv writer: header, LF endings, lossless numbers") {
    const auto dir = std::filesystem::temp_directory_path() / "fbrd_test_csv";
    std::filesystem::create_directories(dir);
    const auto path = dir / "t.csv";
    write_csv(path, {"t", "h"}, {{0.0, 2.0}, {0.1, 1.0 / 3.0}});
    const auto text = slurp(path);
    CHECK(text.find("t,h\n") == 0);
    CHECK(text.find("\r") == std::string::npos);
    CHECK(text.find(format_g17(1.0 / 3.0)) != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("manifest: deterministic checksums over outputs") {
    const auto dir = std::filesystem::temp_directory_path() / "fbrd_test_manifest";
    std::filesystem::create_directories(dir);
    write_csv(dir / "a.csv", {"x"}, {{1.0}, {2.0}});
    RunManifest m;
    m.command = "criticals";
    m.version = kVersion;
    m.params["theta"] = "0.25";
    m.outputs.push_back({"a.csv", ""});
    write_manifest(dir, m);
    const auto text1 = slurp(dir / "manifest.json");
    CHECK(text1.find("criticals") != std::string::npos);
    CHECK(text1.find("fnv1a64") != std::string::npos);

    // Re-writing the same outputs yields the same checksums.
    write_csv(dir / "a.csv", {"x"}, {{1.0}, {2.0}});
    write_manifest(dir, m);
    CHECK(slurp(dir / "manifest.json") == text1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("svg emitters: well-formed output, errors on empty input") {
    const auto dir = std::filesystem::temp_directory_path() / "fbrd_test_svg";
    std::filesystem::create_directories(dir);

    PlotSeries s;
    for (int i = 0; i <= 100; ++i) {
        s.xs.push_back(0.1 * i);
        s.ys.push_back(2.0 + 0.35 * 0.1 * i);
    }
    s.label = "h(t)";
    write_line_chart_svg(dir / "line.svg", {s}, "front path", "t", "h", "deadbeef");
    const auto text = slurp(dir / "line.svg");
    CHECK(text.find("<svg") == 0);
    CHECK(text.find("manifest-checksum:deadbeef") != std::string::npos);
    CHECK(text.find("polyline") != std::string::npos);
    CHECK(text.find("</svg>") != std::string::npos);

    CHECK_THROWS_AS(write_line_chart_svg(dir / "bad.svg", {}, "", "", "", ""), UsageError);
    CHECK_FALSE(std::filesystem::exists(dir / "bad.svg"));

    OutcomeMatrix m;
    m.Ls = {0.3, 2.0};
    m.sigmas = {0.1, 1.0};
    m.cells.resize(4);
    m.cells[0].kind = OutcomeKind::Vanishing;
    m.cells[1].kind = OutcomeKind::Spreading;
    write_outcome_heatmap_svg(dir / "heat.svg", m, "outcomes", "cafe");
    const auto heat = slurp(dir / "heat.svg");
    CHECK(heat.find("Vanishing") != std::string::npos);
    CHECK(heat.find("legend") == std::string::npos);  // plain rect legend, no group id
    std::filesystem::remove_all(dir);
}
