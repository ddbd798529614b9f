#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcluster/cli.hpp"

using namespace dcluster;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "dcluster");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "dcluster-cli-test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("verify on C_2(A_2) exits 0")
{
    const auto r = cli({"verify", "--diagram", "A", "--rank", "2", "--d", "2", "--all"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 fail") != std::string::npos);
    CHECK(r.out.find("PASSED") != std::string::npos);
}

TEST_CASE("tilting enumerate on A_1, d = 3 lists 4 facets")
{
    const auto r = cli({"tilting", "enumerate", "--diagram", "A", "--rank", "1", "--d", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "root#0[0]\nroot#0[1]\nroot#0[2]\nroot#0[3]\n4 facets\n");
}

TEST_CASE("usage errors exit 2 and name the problem")
{
    auto r = cli({"verify", "--diagram", "Z"});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown diagram") != std::string::npos);

    r = cli({"verify", "--diagram", "A"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--rank") != std::string::npos);

    r = cli({"verify", "--diagram", "A", "--rank", "2", "--prime", "4"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--prime") != std::string::npos);

    r = cli({"verify", "--diagram", "A", "--rank", "2", "--d", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--d") != std::string::npos);

    r = cli({"verify", "--diagram", "E", "--rank", "5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--rank") != std::string::npos);

    r = cli({"verify", "--diagram", "A", "--rank", "2", "--check", "nope"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--check") != std::string::npos);

    r = cli({"verify", "--diagram", "A", "--rank", "2", "--bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--bogus") != std::string::npos);

    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("verify --out writes byte-identical reports")
{
    const auto a = scratch("a.json"), b = scratch("b.json");
    REQUIRE(cli({"verify", "--diagram", "A", "--rank", "3", "--d", "2", "--all", "--out", a.string()}).code == 0);
    REQUIRE(cli({"verify", "--diagram", "A", "--rank", "3", "--d", "2", "--all", "--out", b.string()}).code == 0);
    const std::string ja = slurp(a);
    CHECK(!ja.empty());
    CHECK(ja == slurp(b));
    CHECK(nlohmann::json::parse(ja)["schema"] == "dcluster.verify/1");
}

TEST_CASE("verify with a cache directory reports the same")
{
    const auto dir = scratch("cache");
    std::filesystem::remove_all(dir);
    const auto a = scratch("cold.json"), b = scratch("warm.json");
    const std::vector<std::string> base{"verify", "--diagram", "D", "--rank", "4", "--d", "1", "--cache-dir", dir.string(), "--out"};
    auto args = base;
    args.push_back(a.string());
    REQUIRE(cli(args).code == 0);
    args = base;
    args.push_back(b.string());
    REQUIRE(cli(args).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
}

TEST_CASE("selected checks only")
{
    const auto r = cli({"verify", "--diagram", "A", "--rank", "2", "--d", "2", "--check", "facet-count,cy-duality"});
    CHECK(r.code == 0);
    CHECK(r.out.find("cy-duality") != std::string::npos);
    CHECK(r.out.find("facet-count") != std::string::npos);
    CHECK(r.out.find("euler-identity") == std::string::npos);
    CHECK(cli({"verify", "--diagram", "A", "--rank", "2", "--all", "--check", "cy-duality"}).code == 2);
}

TEST_CASE("indecomposables of A_2")
{
    const auto r = cli({"indecomposables", "--diagram", "A", "--rank", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "0  (0,1)  P2  S2\n1  (1,0)  I1  S1\n2  (1,1)  P1  I2\n");
}

TEST_CASE("orientation and config files")
{
    const auto arrows = scratch("arrows.txt");
    std::ofstream(arrows) << "2->1\n";
    auto r = cli({"indecomposables", "--diagram", "A", "--rank", "2", "--orientation", arrows.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "0  (0,1)  I2  S2\n1  (1,0)  P1  S1\n2  (1,1)  P2  I1\n");

    const auto full = scratch("quiver.json");
    std::ofstream(full) << R"({"diagram":"D","rank":4,"arrows":[[2,1],[2,3],[2,4]]})";
    r = cli({"tilting", "enumerate", "--orientation", full.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("50 facets") != std::string::npos);
    CHECK(cli({"tilting", "enumerate", "--diagram", "A", "--orientation", full.string()}).code == 2);

    const auto cfg = scratch("run.toml");
    std::ofstream(cfg) << "diagram = \"A\"\nrank = 2\nd = 2\n";
    r = cli({"--config", cfg.string(), "tilting", "enumerate"});
    CHECK(r.code == 0);
    CHECK(r.out.find("12 facets") != std::string::npos);
}

TEST_CASE("ext-table")
{
    const auto r = cli({"ext-table", "--diagram", "A", "--rank", "1", "--d", "1", "--degree", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "Ext^1\nroot#0[0]: 0 1\nroot#0[1]: 1 0\n");
    CHECK(cli({"ext-table", "--diagram", "A", "--rank", "1", "--degree", "3"}).code == 2);
}

TEST_CASE("complements, mutate and mutation-graph")
{
    auto r = cli({"complements", "--diagram", "A", "--rank", "2", "--d", "1", "--facet", "root#2[0]"});
    CHECK(r.code == 0);
    CHECK(r.out.find("X0 = root#0[0]") != std::string::npos);
    CHECK(r.out.find("X1 = root#1[0]") != std::string::npos);
    CHECK(r.out.find("B1 = root#2[0]") != std::string::npos);

    r = cli({"complements", "--diagram", "A", "--rank", "2", "--d", "1", "--facet", "root#0[0],root#2[0]", "--drop", "root#0[0]"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("base: root#2[0]\n", 0) == 0);

    CHECK(cli({"complements", "--diagram", "A", "--rank", "2", "--facet", "root#9[0]"}).code == 2);
    CHECK(cli({"complements", "--diagram", "A", "--rank", "2", "--facet", "root#0[0],root#1[0]", "--drop", "root#0[0]"}).code == 2);

    r = cli({"mutate", "--diagram", "A", "--rank", "2", "--d", "1", "--facet", "root#0[0],root#2[0]", "--drop", "root#0[0]"});
    CHECK(r.code == 0);
    CHECK(r.out == "root#1[0], root#2[0]\n");
    CHECK(cli({"mutate", "--diagram", "A", "--rank", "2", "--d", "1", "--facet", "root#0[0],root#2[0]", "--drop", "root#0[0]", "--pick", "2"})
              .code == 2);

    const auto dot = scratch("g.dot");
    r = cli({"mutation-graph", "--diagram", "A", "--rank", "2", "--d", "1", "--dot", dot.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "5 vertices, 5 edges, connected, regular of degree 2\n");
    CHECK(slurp(dot).rfind("graph mutation {", 0) == 0);
}

TEST_CASE("complex exports")
{
    auto r = cli({"complex", "--diagram", "A", "--rank", "2", "--d", "2"});
    CHECK(r.out == "1 8 12\n");
    r = cli({"complex", "--diagram", "A", "--rank", "2", "--d", "1", "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["f_vector"] == nlohmann::json::array({1, 5, 5}));
    r = cli({"complex", "--diagram", "A", "--rank", "2", "--d", "1", "--format", "dot"});
    CHECK(r.out.rfind("graph mutation {", 0) == 0);
    CHECK(cli({"complex", "--diagram", "A", "--rank", "2", "--format", "svg"}).code == 2);
}

TEST_CASE("fans")
{
    auto r = cli({"fans", "--diagram", "A", "--rank", "2", "--d", "1"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
    const auto js = scratch("fans.json");
    r = cli({"fans", "--diagram", "A", "--rank", "3", "--d", "2", "--verify-all", "--json", js.string()});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(slurp(js))["checks"].size() == 11);
}
