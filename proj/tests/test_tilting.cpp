#include <doctest.h>

#include "common.hpp"
#include "dcluster/tilting.hpp"

using namespace dcluster;
using testing_support::obj;

namespace {

std::shared_ptr<const TiltingTheory> theory(const std::string& q, int d)
{
    return std::make_shared<const TiltingTheory>(
        std::make_shared<const OrbitCategory>(testing_support::modules(q), d));
}

bool rigid_by_table(const OrbitCategory& c, const ObjectSet& s)
{
    for (int x : s)
        for (int y : s)
            for (int i = 1; i <= c.d(); ++i)
                if (c.ext_dim(x, y, i) != 0) return false;
    return true;
}

// All n-subsets checked pairwise against the Ext table.
long long brute_force_tilting(const OrbitCategory& c)
{
    const int n = c.rank(), total = c.size();
    long long count = 0;
    ObjectSet cur;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(cur.size()) == n) {
            count += rigid_by_table(c, cur);
            return;
        }
        for (int y = from; y < total; ++y) {
            cur.push_back(y);
            rec(y + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return count;
}

} // namespace

TEST_CASE("rigidity examples")
{
    const auto t = theory("A 2, arrows: 1->2", 2);
    const auto& c = t->category();
    const int s1 = obj(c, {1, 0}, 0), p2 = obj(c, {0, 1}, 1);
    for (int x = 0; x < c.size(); ++x) CHECK(t->is_rigid({x}));
    CHECK(t->is_rigid({s1, p2}));
    const auto f = t->classify({s1, p2});
    CHECK(f == RigidFlags{true, true, true});
    CHECK(t->classify({s1}) == RigidFlags{false, false, false});
    // greedy picks P_1[0] before P_2[1]
    const int p1 = obj(c, {1, 1}, 0);
    CHECK(t->complete({s1}) == ObjectSet{std::min(s1, p1), std::max(s1, p1)});
    CHECK(t->classify(t->complete({s1})).tilting);
    CHECK(t->complete({s1, p2}) == ObjectSet{s1, p2});
    CHECK(t->complete({}) == t->tilting_objects().front());

    const auto a1 = theory("A 1", 2);
    CHECK_FALSE(a1->is_rigid({0, 1}));
    CHECK(a1->classify({0}) == RigidFlags{true, true, true});
    CHECK_THROWS_AS(a1->classify({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(a1->complete({0, 1}), std::invalid_argument);
}

TEST_CASE("tilting counts")
{
    CHECK(theory("A 1", 2)->tilting_objects() == std::vector<ObjectSet>{{0}, {1}, {2}});
    CHECK(theory("A 1", 3)->tilting_objects().size() == 4);
    CHECK(theory("A 2", 1)->tilting_objects().size() == 5);
    CHECK(theory("A 2", 2)->tilting_objects().size() == 12);
    CHECK(theory("A 3", 1)->tilting_objects().size() == 14);
    CHECK(theory("A 3", 2)->tilting_objects().size() == 55);
    CHECK(theory("D 4", 1)->tilting_objects().size() == 50);
}

TEST_CASE("enumeration agrees with brute force over subsets")
{
    for (const auto& [q, d] : std::vector<std::pair<std::string, int>>{
             {"A 2", 1}, {"A 2", 3}, {"A 3, arrows: 2->1, 2->3", 2}, {"A 3", 3}, {"D 4, arrows: 2->1, 2->3, 4->2", 1}}) {
        CAPTURE(q);
        const auto t = theory(q, d);
        const auto& list = t->tilting_objects();
        CHECK(static_cast<long long>(list.size()) == brute_force_tilting(t->category()));
        CHECK(std::is_sorted(list.begin(), list.end()));
        CHECK(std::adjacent_find(list.begin(), list.end()) == list.end());
    }
}

TEST_CASE("compatibility is symmetric and rigid sets extend to tilting sets")
{
    for (const auto& [q, d] : std::vector<std::pair<std::string, int>>{{"A 2", 2}, {"A 3", 2}, {"D 4", 1}}) {
        const auto t = theory(q, d);
        for (int x = 0; x < t->size(); ++x) {
            CHECK(t->ext_free(x, x));
            for (int y = 0; y < t->size(); ++y) CHECK(t->ext_free(x, y) == t->ext_free(y, x));
        }
        const auto& tilts = t->tilting_objects();
        t->for_each_rigid([&](const ObjectSet& s) {
            const auto full = t->complete(s);
            CHECK(std::binary_search(tilts.begin(), tilts.end(), full));
            CHECK(std::includes(full.begin(), full.end(), s.begin(), s.end()));
        });
    }
}

TEST_CASE("maximal, complete and tilting coincide")
{
    const auto r = theory("A 2", 2)->verify_equivalence();
    CHECK(r.holds());
    CHECK(r.maximal == 12);
    CHECK(r.complete == 12);
    CHECK(r.tilting == 12);
    CHECK(r.rigid_by_size == std::vector<long long>{1, 8, 12});

    const auto a1 = theory("A 1", 3)->verify_equivalence();
    CHECK(a1.maximal == 4);
    CHECK(a1.complete == 4);
    CHECK(a1.tilting == 4);

    const auto a3 = theory("A 3", 1)->verify_equivalence();
    CHECK(a3.holds());
    CHECK(a3.tilting == 14);
}

TEST_CASE("rigid set enumeration by size")
{
    const auto t = theory("A 3", 2);
    long long all = 0;
    std::vector<long long> by(4, 0);
    t->for_each_rigid([&](const ObjectSet& s) {
        ++all;
        ++by[s.size()];
        CHECK(rigid_by_table(t->category(), s));
    });
    for (int k = 0; k <= 3; ++k) {
        long long c = 0;
        t->for_each_rigid_of_size(k, [&](const ObjectSet&) { ++c; });
        CHECK(c == by[k]);
    }
    CHECK(by[3] == 55);
    CHECK(all == by[0] + by[1] + by[2] + by[3]);
}
