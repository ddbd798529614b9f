#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "common.hpp"
#include "dcluster/mutation.hpp"

using namespace dcluster;
using testing_support::obj;

namespace {

MutationEngine engine(const std::string& q, int d)
{
    return MutationEngine(std::make_shared<const TiltingTheory>(
        std::make_shared<const OrbitCategory>(testing_support::modules(q), d)));
}

const std::vector<std::pair<std::string, int>> kGrid = {{"A 1", 2}, {"A 2", 1}, {"A 2", 2}, {"A 2", 3}, {"A 3", 1},
                                                        {"A 3", 2}, {"A 3", 3}, {"D 4", 1}, {"D 4", 2}};

} // namespace

TEST_CASE("complements and fans in small cases")
{
    const auto a1 = engine("A 1", 2);
    const auto& c1 = a1.category();
    const int s0 = c1.index_of({0, 0}), s1 = c1.index_of({0, 1}), s2 = c1.index_of({0, 2});
    CHECK(a1.complements({}) == std::vector<int>{s0, s1, s2});
    const auto f1 = a1.fan({});
    CHECK(f1.cycle == std::vector<int>{s0, s2, s1});
    for (const auto& tri : f1.triangles) {
        CHECK(tri.middle.total() == 0);
        CHECK(tri.next == c1.shifted(tri.x, -1));
    }
    CHECK(a1.mutate({s0}, s0, 1) == ObjectSet{s2});
    const auto p1 = degree_profile(c1, f1.cycle);
    CHECK(p1.applicable);
    CHECK(p1.rotation == 0);
    CHECK(p1.k == 0);

    const auto a2 = engine("A 2, arrows: 1->2", 1);
    const auto& c2 = a2.category();
    const int P1 = obj(c2, {1, 1}, 0), P2 = obj(c2, {0, 1}, 0), S1 = obj(c2, {1, 0}, 0);
    CHECK(a2.complements({P1}) == std::vector<int>{P2, S1});
    const auto f2 = a2.fan({P1});
    CHECK(f2.cycle == std::vector<int>{P2, S1});
    CHECK(a2.mutate({P1, P2}, P2, 1) == ObjectSet{S1, P1});
    // S_1[1] is P_2 in this category, so the triangle ending in P_2 has zero middle term
    CHECK(f2.triangles[0].middle.total() == 0);
    CHECK(f2.triangles[1].middle.objects == std::vector<int>{P1});
    CHECK(f2.triangles[1].middle.multiplicity == std::vector<int>{1});
    CHECK(degree_profile(c2, f2.cycle).applicable == false);

    const auto a22 = engine("A 2, arrows: 1->2", 2);
    const int q1 = obj(a22.category(), {1, 1}, 0);
    CHECK(a22.complements({q1}).size() == 3);
    const auto p = degree_profile(a22.category(), a22.fan({q1}).cycle);
    CHECK(p.applicable);
    CHECK(p.k.has_value());
}

TEST_CASE("approximation examples")
{
    const auto e = engine("A 2, arrows: 1->2", 1);
    const auto& c = e.category();
    const int P1 = obj(c, {1, 1}, 0), P2 = obj(c, {0, 1}, 0), S1 = obj(c, {1, 0}, 0);
    CHECK(c.hom_dim(P1, P2) == 0);
    CHECK(minimal_right_approximation(c, P2, {P1}).total() == 0);
    const auto a = minimal_right_approximation(c, S1, {P1});
    CHECK(a.objects == std::vector<int>{P1});
    CHECK(is_right_approximation(c, a, {P1}));
    CHECK_THROWS_AS(minimal_right_approximation(c, P1, {P1}), std::invalid_argument);

    const auto a1 = engine("A 1", 2);
    CHECK(minimal_right_approximation(a1.category(), 0, {}).total() == 0);
}

TEST_CASE("approximations of every fan are right approximations")
{
    for (const auto& [q, d] : kGrid) {
        CAPTURE(q);
        CAPTURE(d);
        const auto e = engine(q, d);
        for (const auto& a : e.almost_complete_objects()) {
            const auto f = e.fan(a);
            for (const auto& tri : f.triangles) {
                CHECK(is_right_approximation(e.category(), tri.middle, a));
                // dropping a summand breaks the approximation property
                for (std::size_t b = 0; b < tri.middle.maps.size(); ++b) {
                    Approximation smaller = tri.middle;
                    smaller.maps.erase(smaller.maps.begin() + b);
                    smaller.summand.erase(smaller.summand.begin() + b);
                    CHECK_FALSE(is_right_approximation(e.category(), smaller, a));
                }
            }
        }
    }
}

TEST_CASE("every almost complete object has d + 1 complements forming a fan")
{
    for (const auto& [q, d] : kGrid) {
        CAPTURE(q);
        CAPTURE(d);
        const auto e = engine(q, d);
        const auto& c = e.category();
        for (const auto& a : e.almost_complete_objects()) {
            const auto comps = e.complements(a);
            REQUIRE(static_cast<int>(comps.size()) == d + 1);
            const auto f = e.fan(a);
            CHECK_FALSE(ext_pattern(c, f.cycle, false));
            CHECK_FALSE(composites_nonzero(c, f.cycle));
            CHECK(is_exchange_team(c, f.cycle));
            CHECK_FALSE(check_degree_bounds(c, f.cycle));
            CHECK_FALSE(check_first_row(c, f.cycle));
            CHECK_FALSE(check_endomorphisms(c, f.cycle));
            CHECK_FALSE(check_middle_rigid(e.tilting(), f));
            if (d >= 2) {
                CHECK_FALSE(check_disjoint_middles(f));
                const auto p = degree_profile(c, f.cycle);
                if (p.applicable) CHECK(p.k.has_value());
            }
            if (d >= 3) CHECK_FALSE(check_consecutive_hom(c, f.cycle));
        }
        if (d >= 3)
            for (const auto& t : e.tilting().tilting_objects()) CHECK_FALSE(check_one_directional(c, t));
    }
}

TEST_CASE("exchange teams are exactly the fans")
{
    for (int d = 1; d <= 2; ++d) {
        const auto e = engine("A 2", d);
        const auto& c = e.category();
        const int n = c.size();
        std::set<std::vector<int>> fans;
        for (const auto& a : e.almost_complete_objects()) fans.insert(e.fan(a).cycle);
        int teams = 0;
        std::vector<int> cur;
        std::function<void()> rec = [&] {
            if (static_cast<int>(cur.size()) == d + 1) {
                if (!is_exchange_team(c, cur)) return;
                ++teams;
                const auto base = e.find_base(cur);
                REQUIRE(base.has_value());
                // the fan of the base is a rotation of the team
                auto cycle = e.fan(*base).cycle;
                bool rotation = false;
                for (int r = 0; r <= d && !rotation; ++r) {
                    std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
                    rotation = cycle == cur;
                }
                CHECK(rotation);
                return;
            }
            for (int x = 0; x < n; ++x) {
                cur.push_back(x);
                rec();
                cur.pop_back();
            }
        };
        rec();
        CHECK(teams == static_cast<int>(fans.size()) * (d + 1));
    }
    const auto e = engine("A 2", 2);
    CHECK_FALSE(is_exchange_team(e.category(), {0, 0, 1}));
}

TEST_CASE("mutation cycles and the mutation graph")
{
    for (const auto& [q, d] : kGrid) {
        CAPTURE(q);
        const auto e = engine(q, d);
        const auto g = e.mutation_graph();
        CHECK(g.connected());
        CHECK(g.regular_degree() == e.tilting().rank() * d);
        for (const auto& t : g.vertices)
            for (int x : t) {
                ObjectSet cur = t;
                int obj_now = x;
                for (int step = 0; step <= d; ++step) {
                    const auto next = e.mutate(cur, obj_now, 1);
                    CHECK(std::binary_search(g.vertices.begin(), g.vertices.end(), next));
                    std::vector<int> added;
                    std::set_difference(next.begin(), next.end(), cur.begin(), cur.end(), std::back_inserter(added));
                    REQUIRE(added.size() == 1);
                    obj_now = added[0];
                    cur = next;
                }
                CHECK(cur == t);
            }
    }
    const auto pent = engine("A 2", 1).mutation_graph();
    CHECK(pent.vertices.size() == 5);
    CHECK(pent.edges.size() == 5);
    CHECK(pent.regular_degree() == 2);
    const auto tri = engine("A 1", 2).mutation_graph();
    CHECK(tri.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
    const auto e = engine("A 2", 2);
    CHECK_THROWS_AS(e.mutate(e.tilting().tilting_objects()[0], 99, 1), std::invalid_argument);
    CHECK_THROWS_AS(e.mutate(e.tilting().tilting_objects()[0], e.tilting().tilting_objects()[0][0], 3), std::invalid_argument);
}

TEST_CASE("hom between distinct complements need not vanish")
{
    const auto e = engine("A 3", 2);
    const auto& c = e.category();
    int offenders = 0;
    for (const auto& a : e.almost_complete_objects()) {
        const auto cycle = e.fan(a).cycle;
        CHECK_FALSE(ext_pattern(c, cycle, false));
        if (ext_pattern(c, cycle, true)) ++offenders;
    }
    CHECK(offenders == 5);
    // P_2[0], P_2[2], P_2[1] with Hom(P_2[2], P_2[0]) = Hom(P_2, I_2)
    const int x0 = obj(c, {0, 1, 1}, 0), x1 = obj(c, {0, 1, 1}, 2), x2 = obj(c, {0, 1, 1}, 1);
    CHECK(c.hom_dim(x1, x0) == 1);
    CHECK(is_exchange_team(c, {x0, x1, x2}));
    CHECK(e.find_base({x0, x1, x2}).has_value());
}
