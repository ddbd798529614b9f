// Acceptance run: one PASS/FAIL line per criterion 1..12, exit 1 on any FAIL.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dcluster/cli.hpp"
#include "dcluster/complex.hpp"
#include "dcluster/mutation.hpp"
#include "dcluster/verify.hpp"

using namespace dcluster;

namespace {

// Runtime limits in seconds.
constexpr double kFastLimit = 1.0;      // criteria 1 and 3, per instance
constexpr double kSecondsLimit = 30.0;  // criterion 2, whole sweep
constexpr double kMinutesLimit = 300.0; // criteria 4, 5, 6, 10, per instance

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Instance {
    std::string quiver;
    int d;
};

std::vector<Instance> grid(const std::vector<std::string>& quivers)
{
    std::vector<Instance> g;
    for (const auto& q : quivers)
        for (int d = 1; d <= 3; ++d) g.push_back({q, d});
    return g;
}

const std::vector<Instance> kFullGrid = grid({"A 1", "A 2", "A 3", "D 4"});
const std::vector<Instance> kTiltGrid = grid({"A 2", "A 3", "D 4"});

std::string label(const Instance& i) { return i.quiver.substr(0, 1) + i.quiver.substr(2) + " d=" + std::to_string(i.d); }

// Runs the named checks; a failing check or a check exceeding `limit` seconds fails the outcome.
Outcome run_checks(const std::vector<Instance>& instances, const std::set<std::string>& ids, double limit, bool gated_ok = true)
{
    Outcome o;
    long long total = 0;
    double worst = 0;
    for (const auto& in : instances) {
        VerifyOptions opts;
        opts.checks = ids;
        const auto start = Clock::now();
        const auto rep = verify_all(parse_quiver(in.quiver), in.d, 101, opts);
        const double secs = since(start);
        worst = std::max(worst, secs);
        if (secs > limit) {
            o.ok = false;
            o.detail += " [" + label(in) + " took " + std::to_string(secs) + " s]";
        }
        for (const auto& r : rep.checks) {
            total += r.instances;
            const bool bad = r.status == CheckStatus::fail || r.status == CheckStatus::refuted ||
                             (!gated_ok && r.status == CheckStatus::not_applicable);
            if (bad) {
                o.ok = false;
                o.detail += " [" + label(in) + " " + r.id + ": " + r.detail + "]";
            }
        }
    }
    std::ostringstream os;
    os << instances.size() << " instances, " << total << " checked cases, slowest " << std::fixed << std::setprecision(3) << worst
       << " s (limit " << limit << " s)";
    o.detail = os.str() + o.detail;
    return o;
}

std::vector<Instance> with_min_d(const std::vector<Instance>& g, int d)
{
    std::vector<Instance> out;
    for (const auto& i : g)
        if (i.d >= d) out.push_back(i);
    return out;
}

long long expected_roots(const DynkinQuiver& q)
{
    const long long n = q.rank();
    switch (q.type()) {
    case Diagram::A: return n * (n + 1) / 2;
    case Diagram::D: return n * (n - 1);
    case Diagram::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    }
    return -1;
}

Outcome criterion1()
{
    Outcome o;
    double worst = 0;
    for (const auto& in : kFullGrid) {
        const auto start = Clock::now();
        const DynkinQuiver q = parse_quiver(in.quiver);
        const OrbitCategory c(std::make_shared<const ModuleCategory>(q), in.d);
        const double secs = since(start);
        worst = std::max(worst, secs);
        const long long want = in.d * expected_roots(q) + q.rank();
        if (c.size() != want || secs >= kFastLimit) {
            o.ok = false;
            o.detail += " [" + label(in) + ": " + std::to_string(c.size()) + " objects, expected " + std::to_string(want) + "]";
        }
    }
    std::ostringstream os;
    os << "|ind C_d| = d |Phi+| + n on " << kFullGrid.size() << " instances, slowest " << std::fixed << std::setprecision(3) << worst
       << " s (limit " << kFastLimit << " s)";
    o.detail = os.str() + o.detail;
    return o;
}

Outcome criterion2()
{
    std::vector<Instance> all;
    for (const char* q : {"A 1", "A 2", "A 3", "A 4", "D 4", "A 3, arrows: 2->1, 2->3", "A 4, arrows: 2->1, 2->3, 4->3",
                          "D 4, arrows: 2->1, 3->2, 2->4"})
        for (int d = 1; d <= 3; ++d) all.push_back({q, d});
    const auto start = Clock::now();
    Outcome o = run_checks(all, {"cy-duality"}, kSecondsLimit);
    const double secs = since(start);
    if (secs > kSecondsLimit) o.ok = false;
    o.detail += "; sweep " + std::to_string(secs).substr(0, 5) + " s";
    return o;
}

Outcome criterion3()
{
    std::vector<Instance> all;
    for (const char* q : {"A 1", "A 2", "A 3", "A 4", "D 4", "A 4, arrows: 2->1, 2->3, 4->3"}) all.push_back({q, 1});
    return run_checks(all, {"euler-identity", "field-independence"}, kFastLimit);
}

Outcome criterion9()
{
    Outcome o = run_checks(kFullGrid, {"mutation-graph"}, kMinutesLimit);
    auto mc = std::make_shared<const ModuleCategory>(parse_quiver("A 2"));
    auto t = std::make_shared<const TiltingTheory>(std::make_shared<const OrbitCategory>(mc, 1));
    const MutationGraph g = MutationEngine(t).mutation_graph();
    // a connected 2-regular graph on 5 vertices is the 5-cycle
    const bool cycle = g.vertices.size() == 5 && g.edges.size() == 5 && g.regular_degree() == 2 && g.connected();
    if (!cycle) o.ok = false;
    o.detail += cycle ? "; A2 d=1 is the 5-cycle" : "; A2 d=1 is not the 5-cycle";
    return o;
}

Outcome criterion10()
{
    struct Row {
        const char* q;
        int d;
        long long facets;
    };
    const Row rows[] = {{"A 2", 1, 5}, {"A 2", 2, 12}, {"A 3", 1, 14}, {"A 3", 2, 55}, {"D 4", 1, 50}, {"D 4", 2, 336}};
    Outcome o;
    std::ostringstream os;
    for (const auto& r : rows) {
        const auto start = Clock::now();
        const DynkinQuiver q = parse_quiver(r.q);
        auto oc = std::make_shared<const OrbitCategory>(std::make_shared<const ModuleCategory>(q), r.d);
        const long long got = static_cast<long long>(TiltingTheory(oc).tilting_objects().size());
        const long long formula = fomin_reading_count(q, r.d);
        const double secs = since(start);
        os << " " << label({r.q, r.d}) << ": " << got << "/" << formula;
        if (got != r.facets || formula != r.facets || secs > kMinutesLimit) {
            o.ok = false;
            os << " (expected " << r.facets << ")";
        }
    }
    o.detail = "enumerated/formula" + os.str();
    return o;
}

Outcome criterion12()
{
    const auto dir = std::filesystem::temp_directory_path() / "dcluster-acceptance";
    std::filesystem::create_directories(dir);
    Outcome o;
    int compared = 0;
    for (const auto& in : kFullGrid) {
        std::string texts[2], files[2];
        for (int k = 0; k < 2; ++k) {
            const auto path = (dir / ("report" + std::to_string(k) + ".json")).string();
            std::vector<std::string> args{"dcluster", "verify", "--diagram", in.quiver.substr(0, 1), "--rank", in.quiver.substr(2),
                                          "--d", std::to_string(in.d), "--all", "--out", path};
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            texts[k] = out.str();
            std::ifstream f(path);
            std::ostringstream body;
            body << f.rdbuf();
            files[k] = body.str();
        }
        ++compared;
        if (files[0].empty() || files[0] != files[1] || texts[0] != texts[1]) {
            o.ok = false;
            o.detail += " [" + label(in) + " differs]";
        }
    }
    o.detail = std::to_string(compared) + " instances, two verify --all runs each, reports byte-identical" + o.detail;
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"fundamental domain size", criterion1},
        {"CY duality", criterion2},
        {"Euler identity and field independence", criterion3},
        {"maximal rigid = complete rigid = tilting",
         [] { return run_checks(kTiltGrid, {"rigidity-equivalence"}, kMinutesLimit); }},
        {"d+1 complements", [] { return run_checks(kTiltGrid, {"complement-count"}, kMinutesLimit); }},
        {"fan Ext pattern and exchange teams",
         [] { return run_checks(kTiltGrid, {"ext-pattern", "exchange-teams"}, kMinutesLimit); }},
        {"degree profile", [] { return run_checks(with_min_d(kFullGrid, 2), {"degree-profile"}, kMinutesLimit, false); }},
        {"middle supports and Hom vanishing",
         [] {
             Outcome a = run_checks(with_min_d(kFullGrid, 2), {"middle-disjoint"}, kMinutesLimit, false);
             Outcome b = run_checks(with_min_d(kFullGrid, 3), {"consecutive-hom", "one-directional-hom"}, kMinutesLimit, false);
             return Outcome{a.ok && b.ok, "disjoint: " + a.detail + "; Hom vanishing: " + b.detail};
         }},
        {"mutation graph", criterion9},
        {"facet counts", criterion10},
        {"complex purity and colors", [] { return run_checks(kFullGrid, {"complex-purity", "gamma-bijection"}, kMinutesLimit); }},
        {"determinism", criterion12},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.ok;
        std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << ": " << o.detail
                  << "  (" << std::fixed << std::setprecision(2) << since(start) << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
