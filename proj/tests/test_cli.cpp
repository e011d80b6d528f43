#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "qtr/cli.hpp"
#include "qtr/io.hpp"

using namespace qtr::cli;
namespace fs = std::filesystem;

namespace {

RunConfig parse(std::vector<std::string> args)
{
    args.insert(args.begin(), "qtranslates");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream sink;
    auto cfg = parse_arguments(static_cast<int>(argv.size()), argv.data(), sink);
    REQUIRE(cfg.has_value());
    return *cfg;
}

int exit_code(std::vector<std::string> args)
{
    args.insert(args.begin(), "qtranslates");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    return main_entry(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch_dir(const std::string &name)
{
    auto dir = fs::temp_directory_path() / ("qtr_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("argument parsing")
{
    const auto cfg = parse({"counterexample"});
    CHECK(cfg.command == Command::counterexample);
    CHECK(cfg.resolved_levels() == 128);
    CHECK(cfg.resolved_nodes() == 2000);

    const auto c2 = parse({"transform-check", "--N", "32", "--L", "10", "--M", "80", "--p", "2, 4,inf", "--seed", "9"});
    CHECK(c2.resolved_levels() == 32);
    CHECK(c2.resolved_side() == 10.0);
    CHECK(c2.resolved_points_per_axis() == 80);
    REQUIRE(c2.p_list.size() == 3);
    CHECK(std::isinf(c2.p_list[2]));
    CHECK(c2.seed == 9);

    CHECK_THROWS_AS(parse({"no-such-command"}), UsageError);
    CHECK_THROWS_AS(parse({"repr-check", "--M", "7"}), UsageError);
    CHECK_THROWS_AS(parse({"counterexample", "--N", "32"}), UsageError);
    CHECK_THROWS_AS(parse({"counterexample", "--n", "2"}), UsageError);
    CHECK_THROWS_AS(parse({"counterexample", "--nodes", "2001"}), UsageError);
    CHECK_THROWS_AS(parse({"intertwine-check", "--N", "16"}), UsageError);
    CHECK_THROWS_AS(parse({"intertwine-check", "--n", "3"}), UsageError);
    CHECK(parse({"repr-check"}).resolved_levels() == 64);
    CHECK(parse({"repr-check", "--n", "2"}).resolved_levels() == 32);
    CHECK(parse({"independence", "--n", "3"}).resolved_levels() == 16);
    CHECK(parse({"repr-check", "--n", "4"}).resolved_levels() == 8);
    CHECK_THROWS_AS(parse({"repr-check", "--p", "0.5"}), UsageError);
    CHECK_THROWS_AS(parse({"repr-check", "--operator", "nope"}), UsageError);
    CHECK_THROWS_AS(parse({"repr-check", "--bogus"}), CLI::ParseError);
    CHECK_THROWS_AS(parse({"repr-check", "--N", "abc"}), CLI::ParseError);

    CHECK(parse_p_list("1,2.5") == std::vector<double>{1.0, 2.5});
    CHECK_THROWS_AS(parse_p_list("2,x"), UsageError);
}

TEST_CASE("config files")
{
    const auto dir = scratch_dir("config");
    const auto path = (dir / "run.cfg").string();
    {
        std::ofstream os(path);
        os << "# recorded run\nN = 48\nseed=77\np=3,5\ndump=true\n";
    }
    const auto cfg = parse({"repr-check", "--config", path, "--N", "40"});
    CHECK(cfg.resolved_levels() == 40); // flag wins
    CHECK(cfg.seed == 77);
    CHECK(cfg.p_list == std::vector<double>{3.0, 5.0});
    CHECK(cfg.dump);

    {
        std::ofstream os(path);
        os << "N=32\ncolour=blue\n";
    }
    CHECK(parse({"repr-check", "--config", path}).resolved_levels() == 32);
    CHECK_THROWS_AS(parse({"repr-check", "--config", path, "--strict"}), UsageError);

    {
        std::ofstream os(path);
        os << "N 32\n";
    }
    CHECK_THROWS_WITH_AS(parse({"repr-check", "--config", path}), doctest::Contains(":1:"), UsageError);
    CHECK_THROWS_AS(parse({"repr-check", "--config", (dir / "missing.cfg").string()}), UsageError);
}

TEST_CASE("exit codes")
{
    const auto dir = scratch_dir("exit");
    CHECK(exit_code({"repr-check", "--N", "16", "--out", dir.string()}) == 0);
    CHECK(fs::exists(dir / "repr-check.json"));
    CHECK(exit_code({"repr-check", "--bogus"}) == 2);
    CHECK(exit_code({"frobnicate"}) == 2);
    CHECK(exit_code({"zero-scan", "--M", "5"}) == 2);
    CHECK(exit_code({"independence", "--points", (dir / "none.csv").string(), "--out", dir.string()}) == 2);
    CHECK(exit_code({"--help"}) == 0);

    // Coincident points have zero margin: the run fails and names the metric.
    {
        std::ofstream os(dir / "same.csv");
        os << "x,y\n0.1,0.2\n0.1,0.2\n";
    }
    CHECK(exit_code({"independence", "--points", (dir / "same.csv").string(), "--out", dir.string()}) == 1);
    const auto doc = nlohmann::json::parse(std::ifstream(dir / "independence.json"));
    CHECK(doc.at("pass") == false);
    CHECK(doc.at("failures").at(0) == "thm11_independence.margin");
}

TEST_CASE("reports")
{
    RunConfig cfg;
    cfg.command = Command::repr_check;
    cfg.levels = 16;
    const auto r = execute(cfg);
    CHECK(r.pass);
    const auto &doc = r.document;
    CHECK(doc.at("command") == "repr-check");
    CHECK(doc.at("params").at("N") == 16);
    CHECK(doc.at("metrics").contains("eq1_representation"));
    CHECK(qtr::io::to_json_string(execute(cfg).document) == qtr::io::to_json_string(doc));

    const auto dir = scratch_dir("points");
    {
        std::ofstream os(dir / "points.csv");
        os << "x,y\n0,0\n0.5,0\n0,0.5\n-0.4,-0.3\n";
    }
    RunConfig ind;
    ind.command = Command::independence;
    ind.points_file = (dir / "points.csv").string();
    ind.out_dir = dir;
    std::ostringstream log;
    CHECK(run(ind, log) == 0);
    const auto js = nlohmann::json::parse(std::ifstream(report_path(ind)));
    CHECK(js.at("metrics").at("thm11_independence").at("margin").get<double>() > 0.0);

    RunConfig scan;
    scan.command = Command::zero_scan;
    const auto s = execute(scan);
    CHECK(s.pass);
    CHECK(s.document.at("metrics").at("zero_set_components").at("negative_components") == 1);

    RunConfig ce;
    ce.command = Command::counterexample;
    ce.dump = true;
    ce.out_dir = scratch_dir("counterexample");
    CHECK(run(ce, log) == 0);
    for (const char *name : {"counterexample.json", "counterexample_curve.csv", "counterexample_spectrum.csv",
                             "counterexample_spectrum_fit.json", "counterexample_operator.txt",
                             "counterexample_operator.json"})
        CHECK(fs::exists(ce.out_dir / name));
    const auto cj = nlohmann::json::parse(std::ifstream(report_path(ce)));
    CHECK(cj.at("metrics").at("eq4_residual").at("residual_rel").get<double>() < 5e-2);
}
