#include <doctest.h>

#include <set>

#include "common.hpp"
#include "dcluster/complex.hpp"

using namespace dcluster;
using testing_support::obj;

namespace {

std::shared_ptr<const TiltingTheory> theory(const std::string& q, int d)
{
    return std::make_shared<const TiltingTheory>(
        std::make_shared<const OrbitCategory>(testing_support::modules(q), d));
}

// prod (d h + e_i - 1) / (e_i + 1), counting facets without negative simples.
long long positive_count(const DynkinQuiver& q, int d)
{
    const auto cd = coxeter_data(q);
    long long num = 1, den = 1;
    for (int e : cd.exponents) {
        num *= static_cast<long long>(d) * cd.h + e - 1;
        den *= e + 1;
    }
    return num / den;
}

const std::vector<std::pair<std::string, int>> kGrid = {{"A 1", 2}, {"A 2", 1}, {"A 2", 2}, {"A 2", 3}, {"A 3", 1},
                                                        {"A 3", 2}, {"A 3", 3}, {"D 4", 1}, {"D 4", 2}};

} // namespace

TEST_CASE("gamma examples")
{
    const auto t = theory("A 2, arrows: 1->2", 2);
    const auto& c = t->category();
    CHECK(gamma(c, obj(c, {1, 0}, 1)) == ColoredRoot{{1, 0}, 2, false});
    CHECK(gamma(c, obj(c, {0, 1}, 2)) == ColoredRoot{{0, 1}, 1, true});
    for (int d = 1; d <= 3; ++d) {
        const auto td = theory("A 2, arrows: 1->2", d);
        CHECK(gamma(td->category(), obj(td->category(), {1, 1}, 0)) == ColoredRoot{{1, 1}, 1, false});
    }
    CHECK(to_string(gamma(c, obj(c, {0, 1}, 2))) == "(-0,1)^1");
    const auto j = to_json(ColoredRoot{{1, 1}, 2, false});
    CHECK(j["color"] == 2);
    CHECK(j["sign"] == "positive");
}

TEST_CASE("gamma is a bijection onto colored almost positive roots")
{
    for (const auto& [q, d] : kGrid) {
        const auto t = theory(q, d);
        const auto& c = t->category();
        std::vector<ColoredRoot> labels;
        for (int x = 0; x < c.size(); ++x) labels.push_back(gamma(c, x));
        std::sort(labels.begin(), labels.end());
        CHECK(labels == colored_almost_positive_roots(c.modules().dynkin(), d));
    }
}

TEST_CASE("product formula")
{
    const auto a2 = parse_quiver("A 2");
    CHECK(fomin_reading_count(a2, 1) == 5);
    CHECK(fomin_reading_count(a2, 2) == 12);
    CHECK(fomin_reading_count(parse_quiver("A 3"), 1) == 14);
    CHECK(fomin_reading_count(parse_quiver("A 3"), 2) == 55);
    CHECK(fomin_reading_count(parse_quiver("D 4"), 1) == 50);
    CHECK(fomin_reading_count(parse_quiver("D 4"), 2) == 336);
    CHECK(fomin_reading_count(parse_quiver("E 8"), 1) == 25080);
    for (const auto& [q, d] : kGrid) {
        const auto t = theory(q, d);
        CHECK(static_cast<long long>(t->tilting_objects().size()) == fomin_reading_count(t->category().modules().dynkin(), d));
    }
}

TEST_CASE("complex examples and f-vectors")
{
    const ClusterComplex a21(theory("A 2", 1));
    CHECK(a21.vertices().size() == 5);
    CHECK(a21.facets().size() == 5);
    CHECK(a21.f_vector() == std::vector<long long>{1, 5, 5});
    CHECK(ClusterComplex(theory("A 1", 2)).f_vector() == std::vector<long long>{1, 3});
    const ClusterComplex a22(theory("A 2", 2));
    CHECK(a22.vertices().size() == 8);
    CHECK(a22.f_vector() == std::vector<long long>{1, 8, 12});
    CHECK(ClusterComplex(theory("A 3", 1)).f_vector() == std::vector<long long>{1, 9, 21, 14});
}

TEST_CASE("facet statistics")
{
    for (const auto& [q, d] : kGrid) {
        CAPTURE(q);
        CAPTURE(d);
        const ClusterComplex cx(theory(q, d));
        const auto s = cx.facet_stats();
        CHECK(s.ok());
        CHECK(s.facets == static_cast<long long>(cx.facets().size()));
        // each ridge lies in d + 1 facets and each facet has n ridges
        CHECK(s.ridges * (d + 1) == s.facets * cx.tilting().rank());
    }
    const auto s = ClusterComplex(theory("A 1", 2)).facet_stats();
    CHECK(s.ridges == 1);
}

TEST_CASE("positive part")
{
    for (const auto& [q, d] : kGrid) {
        const ClusterComplex pos(theory(q, d), true);
        const auto& c = pos.category();
        CHECK(static_cast<int>(pos.vertices().size()) == d * c.modules().size());
        CHECK(static_cast<long long>(pos.facets().size()) == positive_count(c.modules().dynkin(), d));
        for (const auto& f : pos.facets())
            for (int x : f) CHECK(c.degree(x) < d);
    }
}

TEST_CASE("facet adjacency is the mutation graph")
{
    for (const auto& [q, d] : kGrid) {
        const auto t = theory(q, d);
        const ClusterComplex cx(t);
        const MutationEngine e(t);
        CHECK(cx.facet_adjacency() == e.mutation_graph().edges);
    }
}

TEST_CASE("exports")
{
    const ClusterComplex cx(theory("A 2", 1));
    const auto j = cx.to_json();
    CHECK(j["schema"] == "dcluster.complex/1");
    CHECK(j["facets"].size() == 5);
    CHECK(j["vertices"][0]["gamma"]["sign"] == "positive");
    CHECK(j["f_vector"] == nlohmann::json::array({1, 5, 5}));
    const auto dot = cx.to_dot();
    CHECK(dot.rfind("graph mutation {", 0) == 0);
    CHECK(std::count(dot.begin(), dot.end(), '-') == 2 * 5);
}
