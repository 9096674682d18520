#include "permsep/cli.hpp"
#include "permsep/states.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace permsep;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("permsep_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("usage errors exit with 2, help with 0") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"classify"}).code == cli::kUsage);
    CHECK(run({"classify", "--parties", "0"}).code == cli::kUsage);
    CHECK(run({"classify", "--parties", "6"}).code == cli::kUsage);
    CHECK(run({"classify", "--parties", "3", "--format", "xml"}).code == cli::kUsage);
    CHECK(run({"classify", "--parties", "3", "--oracle", "--ensemble", "real"}).code == cli::kUsage);
    CHECK(run({"classify", "--parties", "5", "--oracle", "--dim", "3"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({"gen-state", "--name", "werner:2", "-o", scratch("x.json")}).code == cli::kUsage);
    CHECK(run({"gen-state", "--name", "werner:abc", "-o", scratch("x.json")}).code == cli::kUsage);
    CHECK(run({"gen-state", "--name", "bell", "--dims", "2,x", "-o", scratch("x.json")}).code == cli::kUsage);
    CHECK(run({"gen-state", "--name", "teleporter", "-o", scratch("x.json")}).code == cli::kUsage);
}

TEST_CASE("classify") {
    SUBCASE("tripartite summary and general-matrix oracle") {
        const auto r = run({"classify", "--parties", "3", "--oracle", "--ensemble", "general"});
        CHECK(r.code == cli::kOk);
        CHECK(contains(r.out, "719 candidate criteria, 9 non-equivalent non-trivial"));
        CHECK(contains(r.out, "10 groups (general"));
        CHECK(contains(r.out, "MATCH"));
        CHECK_FALSE(contains(r.out, "MISMATCH"));
        CHECK(contains(r.out, "Realign(B={2},Z={1})"));
    }
    SUBCASE("tripartite density-matrix oracle reports the partner merge") {
        const auto r = run({"classify", "--parties", "3", "--oracle"});
        CHECK(r.code == cli::kMismatch);
        CHECK(contains(r.out, "7 groups (density"));
        CHECK(contains(r.out, "partner: MATCH"));
    }
    SUBCASE("bipartite density-matrix oracle matches") {
        CHECK(run({"classify", "--parties", "2", "--oracle"}).code == cli::kOk);
    }
    SUBCASE("bipartite") {
        const auto r = run({"classify", "--parties", "2"});
        CHECK(contains(r.out, "23 candidate criteria, 2 non-equivalent non-trivial"));
    }
    SUBCASE("json report") {
        const auto r = run({"classify", "--parties", "4", "--format", "json"});
        REQUIRE(r.code == cli::kOk);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["schema"] == "permsep.report/1");
        CHECK(j["candidate_criteria"] == 40319);
        CHECK(j["non_equivalent"] == 34);
        CHECK(j["classes"].size() == 35);
        CHECK(j["classes"][0]["kind"] == "trivial");
        CHECK(j["classes"][0]["population"] == 1152);
    }
}

TEST_CASE("gen-state, evaluate and witness") {
    const auto bell = scratch("bell.json"), ghz = scratch("ghz.json"), sep = scratch("sep.json"),
               werner = scratch("werner.json");
    REQUIRE(run({"gen-state", "--name", "bell", "-o", bell}).code == cli::kOk);
    REQUIRE(run({"gen-state", "--name", "ghz", "--dims", "2,2,2", "-o", ghz}).code == cli::kOk);
    REQUIRE(run({"gen-state", "--name", "random-separable", "--dims", "2,2,2", "--seed", "9", "-o", sep}).code ==
            cli::kOk);
    REQUIRE(run({"gen-state", "--name", "werner:0.3", "-o", werner}).code == cli::kOk);

    SUBCASE("gen-state is reproducible") {
        const auto again = scratch("sep2.json");
        REQUIRE(run({"gen-state", "--name", "random-separable", "--dims", "2,2,2", "--seed", "9", "-o", again}).code ==
                cli::kOk);
        CHECK(slurp(again) == slurp(sep));
        std::filesystem::remove(again);
    }
    SUBCASE("evaluate table") {
        const auto r = run({"evaluate", "--state", bell});
        CHECK(r.code == cli::kOk);
        CHECK(contains(r.out, "2.000000000000"));
        CHECK(contains(r.out, "PT({2})"));
        const auto g = run({"evaluate", "--state", ghz, "--criteria", "realign"});
        CHECK(g.code == cli::kOk);
        CHECK(contains(g.out, "yes"));
        const auto s = run({"evaluate", "--state", sep});
        CHECK(s.code == cli::kOk);
        CHECK_FALSE(contains(s.out, "yes"));
    }
    SUBCASE("evaluate by class id") {
        const auto r = run({"evaluate", "--state", ghz, "--criteria", "k1,b1,b3"});
        CHECK(r.code == cli::kOk);
        CHECK(contains(r.out, "Realign"));
        CHECK(run({"evaluate", "--state", ghz, "--criteria", "k1,k2"}).code == cli::kUsage);
        CHECK(run({"evaluate", "--state", ghz, "--tol", "0"}).code == cli::kUsage);
    }
    SUBCASE("evaluate json replays to identical values") {
        const auto a = nlohmann::json::parse(run({"evaluate", "--state", ghz, "--format", "json"}).out);
        const auto b = nlohmann::json::parse(run({"evaluate", "--state", ghz, "--format", "json"}).out);
        CHECK(a["schema"] == "permsep.report/1");
        CHECK(a["trivial_class"]["kind"] == "trivial");
        REQUIRE(a["results"].size() == 9);
        CHECK(a["results"] == b["results"]);
        CHECK(a["inputs"]["dims"] == nlohmann::json::array({2, 2, 2}));
    }
    SUBCASE("witness") {
        const auto e = run({"witness", "--state", bell});
        CHECK(e.code == cli::kOk);
        CHECK(contains(e.out, "ENTANGLED (detected by: "));
        const auto n = run({"witness", "--state", werner});
        CHECK(n.code == cli::kNotDetected);
        CHECK(contains(n.out, "NOT DETECTED"));
    }
    SUBCASE("invalid and missing state files") {
        const auto bad = scratch("bad.json");
        std::ofstream(bad) << R"({"dims":[2],"matrix":[[[0.45,0],[0,0]],[[0,0],[0.45,0]]]})";
        const auto r = run({"witness", "--state", bad});
        CHECK(r.code == cli::kInvalidState);
        CHECK(contains(r.err, "trace"));
        CHECK(run({"evaluate", "--state", bad}).code == cli::kInvalidState);
        std::filesystem::remove(bad);
        CHECK(run({"evaluate", "--state", scratch("missing.json")}).code == cli::kIoError);
        CHECK(run({"gen-state", "--name", "bell", "-o", "/nonexistent-dir/x.json"}).code == cli::kIoError);
    }

    for (const auto& p : {bell, ghz, sep, werner}) std::filesystem::remove(p);
}
