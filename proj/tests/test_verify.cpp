#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "dcluster/verify.hpp"

using namespace dcluster;

namespace {

VerificationReport run(const std::string& q, int d, VerifyOptions opts = {})
{
    return verify_all(parse_quiver(q), d, 101, opts);
}

std::filesystem::path fresh_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("dcluster-test-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("catalog ids are unique and every check runs once")
{
    std::set<std::string> ids;
    for (const auto& c : check_catalog()) {
        CHECK(ids.insert(c.id).second);
        CHECK(is_known_check(c.id));
    }
    CHECK_FALSE(is_known_check("no-such-check"));
    const auto rep = run("A 2", 2);
    REQUIRE(rep.checks.size() == check_catalog().size());
    for (std::size_t i = 0; i < rep.checks.size(); ++i) CHECK(rep.checks[i].id == check_catalog()[i].id);
}

TEST_CASE("unknown check ids and d < 1 are rejected")
{
    VerifyOptions opts;
    opts.checks = {"nope"};
    CHECK_THROWS_AS(run("A 2", 1, opts), std::invalid_argument);
    CHECK_THROWS_AS(run("A 2", 0), std::invalid_argument);
}

TEST_CASE("full suite passes on C_2(A_2)")
{
    const auto rep = run("A 2", 2);
    CHECK(rep.passed());
    for (const auto& r : rep.checks) CHECK_MESSAGE(r.status != CheckStatus::fail, r.id);
    CHECK(rep.find("hom-degree-constraints")->status == CheckStatus::not_applicable);
    CHECK(rep.find("one-directional-hom")->status == CheckStatus::not_applicable);
    CHECK(rep.find("facet-count")->detail == "12 facets, formula 12");
}

TEST_CASE("gated checks are reported as n/a, never omitted")
{
    const auto rep = run("A 2", 1);
    for (const char* id : {"endomorphisms-division", "low-degree-hom", "degree-profile", "middle-disjoint",
                           "one-directional-hom", "consecutive-hom", "hom-degree-constraints"}) {
        REQUIRE(rep.find(id) != nullptr);
        CHECK(rep.find(id)->status == CheckStatus::not_applicable);
    }
    CHECK(rep.passed());
}

TEST_CASE("complement counts on A_2, d = 1")
{
    const auto rep = run("A 2", 1);
    const auto* r = rep.find("complement-count");
    CHECK(r->status == CheckStatus::pass);
    CHECK(r->instances == 5);
    CHECK(r->detail == "5 almost complete objects, each with 2 complements");
}

TEST_CASE("disjoint middles are vacuous on A_1, d = 2")
{
    const auto rep = run("A 1", 2);
    const auto* r = rep.find("middle-disjoint");
    CHECK(r->status == CheckStatus::pass);
    CHECK(r->detail.rfind("vacuous (all middle terms empty)", 0) == 0);
}

TEST_CASE("facet count on D_4, d = 2")
{
    VerifyOptions opts;
    opts.checks = {"facet-count"};
    const auto rep = run("D 4", 2, opts);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].status == CheckStatus::pass);
    CHECK(rep.checks[0].detail == "336 facets, formula 336");
}

TEST_CASE("Hom vanishing between distinct complements is refuted, not failed")
{
    const auto rep = run("A 3", 2);
    const auto* r = rep.find("hom-pattern");
    CHECK(r->status == CheckStatus::refuted);
    CHECK(r->detail == "refuted by 5 of 55 fans");
    CHECK_FALSE(r->counterexample.is_null());
    CHECK(rep.passed());
    CHECK(rep.to_json()["summary"]["refuted"] == 1);
}

TEST_CASE("every check passes on the small grid")
{
    for (const char* q : {"A 1", "A 2", "A 3", "D 4"})
        for (int d = 1; d <= 3; ++d) {
            if (std::string(q) == "D 4" && d == 3) continue; // covered by the acceptance run
            const auto rep = run(q, d);
            for (const auto& r : rep.checks) CHECK_MESSAGE(r.status != CheckStatus::fail, q << " d=" << d << " " << r.id);
        }
}

TEST_CASE("reports are deterministic and carry no timings by default")
{
    const std::string a = run("A 3", 2).to_json().dump(2);
    const std::string b = run("A 3", 2).to_json().dump(2);
    CHECK(a == b);
    CHECK(a.find("wall_ms") == std::string::npos);
    VerifyOptions opts;
    opts.timings = true;
    CHECK(run("A 2", 1, opts).to_json().dump().find("wall_ms") != std::string::npos);
}

TEST_CASE("report JSON layout")
{
    const auto j = run("A 2", 1).to_json();
    CHECK(j["schema"] == "dcluster.verify/1");
    CHECK(j["instance"]["d"] == 1);
    CHECK(j["instance"]["prime"] == 101);
    CHECK(j["instance"]["orientation_hash"].get<std::string>().size() == 16);
    CHECK(j["passed"] == true);
    CHECK(j["checks"][0].contains("statement"));
    CHECK(j["checks"][0].contains("instances"));
}

TEST_CASE("cache hits and cold runs give identical reports")
{
    const auto dir = fresh_dir("cache");
    VerifyOptions opts;
    opts.cache_dir = dir;
    const auto cold = run("A 3", 2, opts);
    CHECK_FALSE(cold.cache_hit);
    const auto warm = run("A 3", 2, opts);
    CHECK(warm.cache_hit);
    CHECK(cold.to_json().dump() == warm.to_json().dump());

    const EnumerationCache cache{dir};
    CHECK(cache.load(parse_quiver("A 3"), 2, 101).has_value());
    CHECK_FALSE(cache.load(parse_quiver("A 3"), 3, 101).has_value());
    CHECK_FALSE(cache.load(parse_quiver("A 3"), 2, 7).has_value());
    CHECK_FALSE(cache.load(parse_quiver("A 3, arrows: 2->1, 2->3"), 2, 101).has_value());
}

TEST_CASE("damaged cache entries are ignored")
{
    const auto dir = fresh_dir("damaged");
    const EnumerationCache cache{dir};
    const auto q = parse_quiver("A 2");
    std::filesystem::create_directories(dir);
    std::ofstream(cache.file_for(q, 1, 101)) << "{not json";
    CHECK_FALSE(cache.load(q, 1, 101).has_value());

    // a well-formed entry listing a non-rigid set is rejected on use
    cache.store(q, 1, 101, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}});
    VerifyOptions opts;
    opts.cache_dir = dir;
    opts.checks = {"facet-count"};
    const auto rep = verify_all(q, 1, 101, opts);
    CHECK_FALSE(rep.cache_hit);
    CHECK(rep.passed());
}
