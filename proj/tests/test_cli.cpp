#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cli_runner.hpp"
#include "support.hpp"

using support::run_cli;

namespace {

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / ("ctree_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("predicates answer through the exit status") {
    CHECK(run_cli({"loweriso", "Z^3", "w*.Z^2 + Z^2"}).status == 0);
    CHECK(run_cli({"iso", "Z^3", "w*.Z^2 + Z^2"}).status == 1);
    CHECK(run_cli({"iso", "Z^3", "Z.Z.Z"}).status == 0);
    CHECK(run_cli({"loweriso", "Z^2", "Q_2(w*, Z)"}).status == 1);
    for (const auto& group : {support::kZ3Class, support::kZ2Class, support::kQ2Class})
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                CHECK(run_cli({"loweriso", group[i], group[j]}).status == 0);
                CHECK(run_cli({"iso", group[i], group[j]}).status == 1);
            }
}

TEST_CASE("compare") {
    const auto r = run_cli({"compare", "Z^2", "--p", "(0,0)", "--q", "(0,1)"});
    CHECK(r.status == 0);
    CHECK(r.out == "Less\n");
    CHECK(run_cli({"compare", "Qd.Z + Z", "--p", "(top, 3)", "--q", "(1/2, 9)"}).out == "Greater\n");
    CHECK(run_cli({"compare", "Q.Z", "--p", "(1, 3)", "--q", "(1, 3)"}).out == "Equal\n");
    CHECK(run_cli({"compare", "Z^2", "--p", "(0)", "--q", "(0,1)"}).status == 2);
}

TEST_CASE("errors exit with 2") {
    CHECK(run_cli({"parse", "Z^"}).status == 2);
    CHECK(run_cli({"compile", "Q_2(Z, Z)"}).status == 2);
    CHECK(run_cli({"validate", "/nonexistent/tree.json"}).status == 2);
    CHECK(run_cli({"frobnicate"}).status == 2);
    CHECK(run_cli({}).status == 2);
    const auto bad = scratch() / "bad.json";
    std::ofstream(bad) << "{\"root\": 0";
    CHECK(run_cli({"validate", bad.string()}).status == 2);
    CHECK(run_cli({"iso", bad.string(), "Z"}).status == 2);
}

TEST_CASE("files round-trip through compile, validate and canon") {
    const auto dir = scratch();
    const auto json = (dir / "t.json").string();
    const auto dot = (dir / "t.dot").string();
    REQUIRE(run_cli({"compile", "w*.Z^2 + w*.Z + w*", "--json", json, "--dot", dot}).status == 0);
    CHECK(run_cli({"validate", json}).status == 0);
    CHECK(run_cli({"iso", json, "w*.Z^2 + w*.Z + w*"}).status == 0);
    CHECK(std::filesystem::file_size(dot) > 0);

    // a tree with isomorphic left siblings
    const auto dup = (dir / "dup.json").string();
    std::ofstream(dup) << R"({"root": 0, "vertices": [
        {"id": 0, "label": {"Qn": 3}, "level": 1, "children": [1, 2, 3], "right_child": null},
        {"id": 1, "label": "1", "level": 0, "children": [], "right_child": null},
        {"id": 2, "label": "1", "level": 0, "children": [], "right_child": null},
        {"id": 3, "label": "1", "level": 0, "children": [], "right_child": null}]})";
    const auto invalid = run_cli({"validate", dup});
    CHECK(invalid.status == 1);
    CHECK(invalid.out.find("V6") != std::string::npos);
    const auto fixed = (dir / "fixed.json").string();
    CHECK(run_cli({"canon", dup, "--json", fixed}).status == 0);
    CHECK(run_cli({"validate", fixed}).status == 0);
    CHECK(run_cli({"iso", fixed, "Q"}).status == 0);
}

TEST_CASE("seeded commands are deterministic") {
    const std::vector<std::vector<std::string>> cmds = {
        {"sample", "Q_2(w*, Z) + w*", "--seed", "4", "--count", "20", "--magnitude", "6"},
        {"witness", "w*.Z^2 + Z^2", "--f", "(0,0,0)", "--g", "(-1,3,4)", "--probes", "200", "--seed", "2"},
        {"check", "Q.Z", "--suite", "order", "--seed", "3"},
    };
    for (const auto& c : cmds) {
        const auto a = run_cli(c), b = run_cli(c);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
    const auto lines = run_cli({"sample", "Z^2", "--seed", "1", "--count", "5"}).out;
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 5);

    const auto trace = (scratch() / "trace.json").string();
    CHECK(run_cli({"witness", "Q.Z", "--f", "(0,0)", "--g", "(3,1)", "--probes", "10", "--seed", "1", "--trace",
                   trace})
              .status == 0);
    CHECK(std::filesystem::file_size(trace) > 0);
}

TEST_CASE("property suites") {
    for (const std::string suite : {"order", "transitivity", "invariance"}) {
        const auto r = run_cli({"check", "w*.Z^2 + w*.Z + Z", "--suite", suite, "--seed", "1"});
        CHECK(r.status == 0);
        CHECK(r.out.find("failed 0") != std::string::npos);
    }
    CHECK(run_cli({"check", "Z", "--suite", "bogus"}).status == 2);
}
