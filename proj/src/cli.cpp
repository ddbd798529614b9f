#include "dcluster/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dcluster/complex.hpp"
#include "dcluster/mutation.hpp"
#include "dcluster/verify.hpp"

namespace dcluster {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string diagram;
    int rank = 0;
    std::string orientation = "default";
    int d = 1;
    std::uint32_t prime = 101;
    std::string out;
};

std::string read_file(const std::string& path, const std::string& flag)
{
    std::ifstream in(path);
    if (!in) throw UsageError(flag + ": cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

DynkinQuiver build_quiver(const RunConfig& cfg)
{
    std::optional<Diagram> type;
    if (!cfg.diagram.empty()) {
        try {
            type = diagram_from_string(cfg.diagram);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--diagram: ") + e.what());
        }
    }
    if (cfg.orientation != "default") {
        std::string text = read_file(cfg.orientation, "--orientation");
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) throw UsageError("--orientation: file is empty");
        if (text[first] == '{' || std::isalpha(static_cast<unsigned char>(text[first]))) {
            try {
                DynkinQuiver q = parse_quiver(text);
                if ((type && *type != q.type()) || (cfg.rank != 0 && cfg.rank != q.rank()))
                    throw UsageError("--orientation: file describes " + q.name() + ", flags disagree");
                return q;
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--orientation: ") + e.what());
            }
        }
        if (!type) throw UsageError("--diagram is required");
        if (cfg.rank == 0) throw UsageError("--rank is required");
        std::replace(text.begin(), text.end(), '\n', ',');
        try {
            return parse_quiver(to_string(*type) + " " + std::to_string(cfg.rank) + ", arrows: " + text);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--orientation: ") + e.what());
        }
    }
    if (!type) throw UsageError("--diagram is required");
    if (cfg.rank == 0) throw UsageError("--rank is required");
    try {
        return DynkinQuiver::standard(*type, cfg.rank);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--rank: ") + e.what());
    }
}

void check_numbers(const RunConfig& cfg)
{
    if (cfg.d < 1) throw UsageError("--d: must be at least 1");
    if (!is_prime(cfg.prime)) throw UsageError("--prime: " + std::to_string(cfg.prime) + " is not prime");
}

struct Instance {
    DynkinQuiver quiver;
    std::shared_ptr<const ModuleCategory> modules;
    std::shared_ptr<const OrbitCategory> orbit;
    std::shared_ptr<const TiltingTheory> tilting;
};

Instance build_instance(const RunConfig& cfg)
{
    check_numbers(cfg);
    DynkinQuiver q = build_quiver(cfg);
    auto mc = std::make_shared<const ModuleCategory>(q, cfg.prime);
    auto oc = std::make_shared<const OrbitCategory>(mc, cfg.d);
    return {q, mc, oc, std::make_shared<const TiltingTheory>(oc)};
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

std::string join_names(const OrbitCategory& c, const std::vector<int>& objs, const char* sep = ", ")
{
    std::string s;
    for (std::size_t i = 0; i < objs.size(); ++i) s += (i ? sep : "") + c.name(objs[i]);
    return s;
}

nlohmann::json name_list(const OrbitCategory& c, const std::vector<int>& objs)
{
    nlohmann::json j = nlohmann::json::array();
    for (int x : objs) j.push_back(c.name(x));
    return j;
}

std::vector<int> parse_objects(const OrbitCategory& c, const std::vector<std::string>& names, const std::string& flag)
{
    std::vector<int> objs;
    for (const auto& n : names) {
        const int x = c.index_of_name(n);
        if (x < 0) throw UsageError(flag + ": unknown object '" + n + "'");
        objs.push_back(x);
    }
    std::sort(objs.begin(), objs.end());
    if (std::adjacent_find(objs.begin(), objs.end()) != objs.end()) throw UsageError(flag + ": repeated object");
    return objs;
}

std::string root_text(const Root& r)
{
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
}

std::string describe(const OrbitCategory& c, int x)
{
    return c.name(x) + "  degree " + std::to_string(c.degree(x)) + "  " + to_string(gamma(c, x));
}

// Almost complete object from --facet and an optional --drop.
ObjectSet almost_from(const TiltingTheory& t, const std::vector<std::string>& facet, const std::string& drop)
{
    const OrbitCategory& c = t.category();
    ObjectSet s = parse_objects(c, facet, "--facet");
    if (!t.is_rigid(s)) throw UsageError("--facet: objects are not rigid");
    if (drop.empty()) {
        if (static_cast<int>(s.size()) != t.rank() - 1)
            throw UsageError("--facet: give " + std::to_string(t.rank() - 1) + " objects or add --drop");
        return s;
    }
    if (static_cast<int>(s.size()) != t.rank()) throw UsageError("--facet: a tilting object has " + std::to_string(t.rank()) + " summands");
    const int x = c.index_of_name(drop);
    const auto it = std::find(s.begin(), s.end(), x);
    if (it == s.end()) throw UsageError("--drop: '" + drop + "' is not in the facet");
    s.erase(it);
    return s;
}

nlohmann::json fan_json(const OrbitCategory& c, const ComplementFan& f)
{
    nlohmann::json fan = nlohmann::json::array();
    for (const auto& tri : f.triangles) {
        nlohmann::json middle = nlohmann::json::array();
        for (std::size_t k = 0; k < tri.middle.objects.size(); ++k)
            middle.push_back({{"object", c.name(tri.middle.objects[k])}, {"multiplicity", tri.middle.multiplicity[k]}});
        fan.push_back({{"object", c.name(tri.x)},
                       {"degree", c.degree(tri.x)},
                       {"gamma", to_json(gamma(c, tri.x))},
                       {"next", c.name(tri.next)},
                       {"middle", middle}});
    }
    return {{"base", name_list(c, f.base)}, {"fan", fan}};
}

std::string fan_text(const OrbitCategory& c, const ComplementFan& f)
{
    std::ostringstream os;
    os << "base: " << join_names(c, f.base) << "\n";
    for (const auto& tri : f.triangles) {
        os << "X" << tri.index << " = " << describe(c, tri.x) << "\n";
        os << "  " << c.name(tri.next) << " -> B" << tri.index << " -> " << c.name(tri.x) << " -> " << c.name(c.shifted(tri.next, 1)) << ",  B"
           << tri.index << " = ";
        if (tri.middle.objects.empty()) os << "0";
        for (std::size_t k = 0; k < tri.middle.objects.size(); ++k) {
            if (k) os << " + ";
            if (tri.middle.multiplicity[k] > 1) os << tri.middle.multiplicity[k] << " ";
            os << c.name(tri.middle.objects[k]);
        }
        os << "\n";
    }
    return os.str();
}

std::string summary_line(const VerificationReport& rep)
{
    std::map<CheckStatus, int> n;
    for (const auto& r : rep.checks) ++n[r.status];
    std::ostringstream os;
    os << n[CheckStatus::pass] << " pass, " << n[CheckStatus::fail] << " fail, " << n[CheckStatus::not_applicable] << " n/a, "
       << n[CheckStatus::refuted] << " refuted: " << (rep.passed() ? "PASSED" : "FAILED") << "\n";
    return os.str();
}

const std::set<std::string> kFanChecks = {"approximations", "degree-bounds",   "first-row",       "endomorphism-dims",
                                          "ext-pattern",    "hom-pattern",     "middle-rigid",    "exchange-teams",
                                          "degree-profile", "middle-disjoint", "consecutive-hom"};

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Verification workbench for d-cluster categories of Dynkin quivers", "dcluster"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML or INI file whose keys mirror the long flags");

    RunConfig cfg;
    app.add_option("--diagram", cfg.diagram, "Dynkin diagram: A, D or E");
    app.add_option("--rank", cfg.rank, "Number of vertices");
    app.add_option("--orientation", cfg.orientation, "Quiver file (arrow list or full quiver), or 'default'");
    app.add_option("--d", cfg.d, "Cluster category parameter d >= 1")->capture_default_str();
    app.add_option("--prime", cfg.prime, "Characteristic of the ground field")->capture_default_str();
    app.add_option("--out", cfg.out, "Write machine-readable output to this file");

    std::function<int()> action;
    auto sub = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    sub("indecomposables", "List the indecomposable modules")->callback([&] {
        action = [&] {
            check_numbers(cfg);
            const DynkinQuiver q = build_quiver(cfg);
            const ModuleCategory mc(q, cfg.prime);
            std::ostringstream os;
            nlohmann::json j = nlohmann::json::array();
            for (int m = 0; m < mc.size(); ++m) {
                os << m << "  " << root_text(mc.roots()[m]);
                if (mc.is_projective(m)) os << "  P" << mc.projective_vertex(m) + 1;
                if (mc.is_injective(m)) os << "  I" << mc.injective_vertex(m) + 1;
                const auto& r = mc.roots()[m];
                if (std::count(r.begin(), r.end(), 0) == static_cast<long>(r.size()) - 1)
                    os << "  S" << std::find(r.begin(), r.end(), 1) - r.begin() + 1;
                os << "\n";
                j.push_back(to_json(mc.rep(m), q.quiver()));
            }
            out << os.str();
            if (!cfg.out.empty()) emit(cfg.out, nlohmann::json{{"quiver", to_json(q)}, {"modules", j}}.dump(2) + "\n", out);
            return int(exit_ok);
        };
    });

    std::optional<int> degree;
    auto* ext = sub("ext-table", "Ext^i dimensions between the indecomposable objects of C_d");
    ext->add_option("--degree", degree, "Only this degree i in 0..d+1");
    ext->callback([&] {
        action = [&] {
            check_numbers(cfg);
            const DynkinQuiver q = build_quiver(cfg);
            const OrbitCategory c(std::make_shared<const ModuleCategory>(q, cfg.prime), cfg.d);
            if (degree && (*degree < 0 || *degree > cfg.d + 1)) throw UsageError("--degree: must lie in 0..d+1");
            const int lo = degree ? *degree : 0, hi = degree ? *degree : cfg.d + 1;
            std::ostringstream os;
            nlohmann::json tables = nlohmann::json::object();
            for (int i = lo; i <= hi; ++i) {
                os << "Ext^" << i << "\n";
                nlohmann::json rows = nlohmann::json::array();
                for (int x = 0; x < c.size(); ++x) {
                    os << c.name(x) << ":";
                    nlohmann::json row = nlohmann::json::array();
                    for (int y = 0; y < c.size(); ++y) {
                        os << " " << c.ext_dim(x, y, i);
                        row.push_back(c.ext_dim(x, y, i));
                    }
                    os << "\n";
                    rows.push_back(row);
                }
                tables[std::to_string(i)] = rows;
            }
            out << os.str();
            if (!cfg.out.empty()) {
                std::vector<int> all(c.size());
                for (int x = 0; x < c.size(); ++x) all[x] = x;
                emit(cfg.out, nlohmann::json{{"quiver", to_json(q)}, {"d", cfg.d}, {"objects", name_list(c, all)}, {"ext", tables}}.dump(2) + "\n", out);
            }
            return int(exit_ok);
        };
    });

    auto* tilting = sub("tilting", "Tilting objects");
    tilting->require_subcommand(1);
    auto* enumerate = tilting->add_subcommand("enumerate", "List every d-cluster tilting object");
    enumerate->fallthrough();
    enumerate->callback([&] {
        action = [&] {
            const Instance in = build_instance(cfg);
            const auto& list = in.tilting->tilting_objects();
            nlohmann::json j = nlohmann::json::array();
            for (const auto& t : list) {
                out << join_names(*in.orbit, t) << "\n";
                j.push_back(name_list(*in.orbit, t));
            }
            out << list.size() << " facets\n";
            if (!cfg.out.empty()) emit(cfg.out, j.dump(2) + "\n", out);
            return int(exit_ok);
        };
    });

    std::vector<std::string> facet;
    std::string drop;
    int pick = 1;
    auto* comps = sub("complements", "Complement fan of an almost complete tilting object");
    comps->add_option("--facet", facet, "Comma-separated object names")->delimiter(',')->required();
    comps->add_option("--drop", drop, "Summand removed from a tilting --facet");
    comps->callback([&] {
        action = [&] {
            const Instance in = build_instance(cfg);
            const MutationEngine e(in.tilting);
            const ComplementFan f = e.fan(almost_from(*in.tilting, facet, drop));
            out << fan_text(*in.orbit, f);
            if (!cfg.out.empty()) emit(cfg.out, fan_json(*in.orbit, f).dump(2) + "\n", out);
            return int(exit_ok);
        };
    });

    auto* mut = sub("mutate", "Replace one summand of a tilting object");
    mut->add_option("--facet", facet, "Comma-separated object names of a tilting object")->delimiter(',')->required();
    mut->add_option("--drop", drop, "Summand to replace")->required();
    mut->add_option("--pick", pick, "Step along the complement fan, 1..d")->capture_default_str();
    mut->callback([&] {
        action = [&] {
            const Instance in = build_instance(cfg);
            if (pick < 1 || pick > cfg.d) throw UsageError("--pick: must lie in 1..d");
            const ObjectSet t = parse_objects(*in.orbit, facet, "--facet");
            const auto& list = in.tilting->tilting_objects();
            if (!std::binary_search(list.begin(), list.end(), t)) throw UsageError("--facet: not a tilting object");
            const int x = in.orbit->index_of_name(drop);
            if (!std::binary_search(t.begin(), t.end(), x)) throw UsageError("--drop: '" + drop + "' is not in the facet");
            const ObjectSet next = MutationEngine(in.tilting).mutate(t, x, pick);
            out << join_names(*in.orbit, next) << "\n";
            if (!cfg.out.empty()) emit(cfg.out, name_list(*in.orbit, next).dump(2) + "\n", out);
            return int(exit_ok);
        };
    });

    std::string dot;
    auto* graph = sub("mutation-graph", "Graph of tilting objects joined by mutation");
    graph->add_option("--dot", dot, "Write the graph in DOT format to this file");
    graph->callback([&] {
        action = [&] {
            const Instance in = build_instance(cfg);
            const MutationGraph g = MutationEngine(in.tilting).mutation_graph();
            const auto deg = g.regular_degree();
            out << g.vertices.size() << " vertices, " << g.edges.size() << " edges, "
                << (g.connected() ? "connected" : "disconnected") << ", "
                << (deg ? "regular of degree " + std::to_string(*deg) : std::string("not regular")) << "\n";
            if (!dot.empty()) emit(dot, to_dot(g, *in.orbit), out);
            if (!cfg.out.empty()) {
                nlohmann::json v = nlohmann::json::array();
                for (const auto& t : g.vertices) v.push_back(name_list(*in.orbit, t));
                emit(cfg.out, nlohmann::json{{"vertices", v}, {"edges", g.edges}}.dump(2) + "\n", out);
            }
            return int(exit_ok);
        };
    });

    std::string format = "fvector";
    bool positive = false;
    auto* cx = sub("complex", "Generalized cluster complex");
    cx->add_option("--format", format, "json, dot or fvector")->check(CLI::IsMember({"json", "dot", "fvector"}))->capture_default_str();
    cx->add_flag("--positive", positive, "Restrict to the positive part");
    cx->callback([&] {
        action = [&] {
            const Instance in = build_instance(cfg);
            const ClusterComplex k(in.tilting, positive);
            std::string text;
            if (format == "json") text = k.to_json().dump(2) + "\n";
            else if (format == "dot") text = k.to_dot();
            else {
                for (auto f : k.f_vector()) text += (text.empty() ? "" : " ") + std::to_string(f);
                text += "\n";
            }
            emit(cfg.out, text, out);
            return int(exit_ok);
        };
    });

    bool all = false, timings = false;
    std::vector<std::string> checks;
    std::string cache_dir;
    auto* ver = sub("verify", "Run the verification suite");
    auto* all_opt = ver->add_flag("--all", all, "Run every check (the default)");
    ver->add_option("--check", checks, "Comma-separated check ids")->delimiter(',')->excludes(all_opt);
    ver->add_option("--cache-dir", cache_dir, "Directory for cached tilting enumerations");
    ver->add_flag("--timings", timings, "Include wall times in the report");
    ver->callback([&] {
        action = [&] {
            check_numbers(cfg);
            const DynkinQuiver q = build_quiver(cfg);
            VerifyOptions opts;
            for (const auto& id : checks) {
                if (!is_known_check(id)) throw UsageError("--check: unknown check '" + id + "'");
                opts.checks.insert(id);
            }
            opts.timings = timings;
            if (!cache_dir.empty()) opts.cache_dir = cache_dir;
            const VerificationReport rep = verify_all(q, cfg.d, cfg.prime, opts);
            out << rep.to_text() << summary_line(rep);
            if (!cfg.out.empty()) emit(cfg.out, rep.to_json().dump(2) + "\n", out);
            return int(rep.passed() ? exit_ok : exit_failed);
        };
    });

    bool verify_fans = false;
    std::string json_path;
    auto* fans = sub("fans", "Complement fans of every almost complete tilting object");
    fans->add_flag("--verify-all", verify_fans, "Run the fan checks instead of listing fans");
    fans->add_option("--json", json_path, "Write the fan report as JSON to this file");
    fans->callback([&] {
        action = [&] {
            if (verify_fans) {
                check_numbers(cfg);
                VerifyOptions opts;
                opts.checks = kFanChecks;
                const VerificationReport rep = verify_all(build_quiver(cfg), cfg.d, cfg.prime, opts);
                out << rep.to_text() << summary_line(rep);
                if (!json_path.empty()) emit(json_path, rep.to_json().dump(2) + "\n", out);
                return int(rep.passed() ? exit_ok : exit_failed);
            }
            const Instance in = build_instance(cfg);
            const MutationEngine e(in.tilting);
            nlohmann::json j = nlohmann::json::array();
            for (const auto& a : e.almost_complete_objects()) {
                const ComplementFan f = e.fan(a);
                out << join_names(*in.orbit, f.base) << "  |  " << join_names(*in.orbit, f.cycle, " -> ") << "\n";
                j.push_back(fan_json(*in.orbit, f));
            }
            if (!json_path.empty()) emit(json_path, j.dump(2) + "\n", out);
            return int(exit_ok);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int(exit_ok) : int(exit_usage);
    }

    try {
        return action ? action() : int(exit_usage);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const FanError& e) {
        err << "error: " << e.what() << "\n";
        return exit_failed;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failed;
    }
}

} // namespace dcluster
