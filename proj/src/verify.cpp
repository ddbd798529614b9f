#include "dcluster/verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "dcluster/complex.hpp"
#include "dcluster/mutation.hpp"

namespace dcluster {

namespace {

const std::vector<CheckInfo> kCatalog = {
    {"euler-identity", "dim Hom - dim Ext^1 equals the Euler form on indecomposable modules"},
    {"field-independence", "Hom and Ext^1 dimensions do not depend on the prime"},
    {"tau-coxeter", "the AR translate acts on dimension vectors by the Coxeter transformation"},
    {"domain-size", "the fundamental domain has d |Phi+| + n objects"},
    {"graded-pieces", "orbit sums have only the pieces l = 0, 1 on canonical objects"},
    {"normalize-consistency", "stalk-rule normalization agrees with the F-orbit walk"},
    {"cy-duality", "dim Ext^i(X,Y) = dim Ext^{d+1-i}(Y,X)"},
    {"indecomposables-rigid", "every indecomposable object is rigid"},
    {"endomorphisms-division", "End(X) is a division algebra for indecomposable X (d >= 2)"},
    {"hom-degree-constraints", "nonzero Hom(X,Y) forces deg X in {deg Y, deg Y - 1} or deg Y = 0, deg X in {0, d-1, d} (d >= 3)"},
    {"low-degree-hom", "Hom(X, Y[k]) and Hom(X, tau^-1 Y[k]) equal their derived counterparts when 0 <= j+k-i <= d-1 (d >= 2)"},
    {"rigidity-equivalence", "maximal rigid, complete rigid and d-cluster tilting coincide"},
    {"rigid-completion", "every rigid set extends to a tilting set"},
    {"complement-count", "every almost complete tilting object has exactly d+1 complements"},
    {"approximations", "middle terms come from minimal right add X-approximations"},
    {"degree-bounds", "deg X_0 = 0 forces deg X_1 in {0, d-1, d} and deg X_i >= d - i"},
    {"first-row", "Ext^i(X_0, X_i) = Ext^1(X_0, X_1) = End(X_0) and other Ext^k(X_0, X_i) vanish"},
    {"endomorphism-dims", "End(X_i) and End(X_0) have the same dimension"},
    {"ext-pattern", "dim Ext^k(X_i, X_j) = [j = i+k mod d+1] for 1 <= k <= d, with nonzero composites of connecting maps"},
    {"hom-pattern", "Hom(X_i, X_j) = 0 for distinct complements"},
    {"middle-rigid", "B + X_i is rigid for the sum B of all middle terms"},
    {"exchange-teams", "exchange teams are exactly the complement fans"},
    {"degree-profile", "after rotation the fan degrees are d-i up to some k and d+1-i after it (d >= 2)"},
    {"middle-disjoint", "the middle terms B_0, ..., B_d have disjoint supports (d >= 2)"},
    {"one-directional-hom", "Hom(T_1,T_2) = 0 or Hom(T_2,T_1) = 0 for summands of a tilting object (d >= 3)"},
    {"consecutive-hom", "Hom(X_i, X_{i+1}) = 0 (d >= 3)"},
    {"mutation-graph", "the mutation graph is connected and n d-regular; mutating d+1 times returns"},
    {"complex-purity", "facets have n vertices, ridges lie in d+1 facets, complements of a ridge carry every color"},
    {"gamma-bijection", "gamma is a bijection onto the colored almost positive roots"},
    {"facet-count", "the number of facets matches the product formula prod (dh + e_i + 1)/(e_i + 1)"},
    {"adjacency-identity", "the facet adjacency graph of the complex is the mutation graph"},
};

int mod(int a, int m) { return ((a % m) + m) % m; }

nlohmann::json names(const OrbitCategory& c, const std::vector<int>& objs)
{
    nlohmann::json j = nlohmann::json::array();
    for (int x : objs) j.push_back(c.name(x));
    return j;
}

int stalk_hom(const ModuleCategory& mc, int m, int i, int n, int j)
{
    if (j - i == 0) return mc.hom_dim(m, n);
    if (j - i == 1) return mc.ext1_dim(m, n);
    return 0;
}

std::string hex(std::uint64_t v)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

nlohmann::json cache_key(const DynkinQuiver& q, int d, std::uint32_t prime)
{
    return {{"diagram", to_string(q.type())},
            {"rank", q.rank()},
            {"orientation_hash", hex(q.orientation_hash())},
            {"d", d},
            {"prime", prime}};
}

// Objects shared between checks, built on first use.
class Context {
public:
    Context(const DynkinQuiver& q, int d, std::uint32_t prime, const VerifyOptions& opts)
        : q_(q), d_(d), prime_(prime), opts_(opts)
    {
    }

    int d() const { return d_; }
    std::uint32_t prime() const { return prime_; }
    const DynkinQuiver& quiver() const { return q_; }

    std::shared_ptr<const ModuleCategory> modules()
    {
        if (!modules_) modules_ = std::make_shared<const ModuleCategory>(q_, prime_);
        return modules_;
    }
    std::shared_ptr<const ModuleCategory> other_modules()
    {
        if (!other_) other_ = std::make_shared<const ModuleCategory>(q_, prime_ == 2 ? 3 : 2);
        return other_;
    }
    const OrbitCategory& orbit()
    {
        if (!orbit_) orbit_ = std::make_shared<const OrbitCategory>(modules(), d_);
        return *orbit_;
    }
    std::shared_ptr<const TiltingTheory> tilting()
    {
        if (tilting_) return tilting_;
        orbit();
        if (opts_.cache_dir) {
            const EnumerationCache cache{*opts_.cache_dir};
            if (auto list = cache.load(q_, d_, prime_)) {
                try {
                    tilting_ = std::make_shared<const TiltingTheory>(orbit_, std::move(*list));
                    cache_hit_ = true;
                    return tilting_;
                } catch (const std::invalid_argument&) {
                    // stale or damaged entry: enumerate afresh
                }
            }
            tilting_ = std::make_shared<const TiltingTheory>(orbit_);
            cache.store(q_, d_, prime_, tilting_->tilting_objects());
            return tilting_;
        }
        tilting_ = std::make_shared<const TiltingTheory>(orbit_);
        return tilting_;
    }
    const MutationEngine& engine()
    {
        if (!engine_) engine_ = std::make_unique<MutationEngine>(tilting());
        return *engine_;
    }
    const std::vector<ObjectSet>& almost_complete()
    {
        if (!almost_) almost_ = engine().almost_complete_objects();
        return *almost_;
    }
    // Fans of all almost complete objects that have one; failures are kept for reporting.
    const std::vector<ComplementFan>& fans()
    {
        if (fans_) return *fans_;
        fans_.emplace();
        for (const auto& a : almost_complete()) {
            try {
                fans_->push_back(engine().fan(a));
            } catch (const FanError& e) {
                fan_errors_.push_back({a, e.what()});
            }
        }
        return *fans_;
    }
    const std::vector<std::pair<ObjectSet, std::string>>& fan_errors()
    {
        fans();
        return fan_errors_;
    }
    const MutationGraph& graph()
    {
        if (!graph_) graph_ = engine().mutation_graph();
        return *graph_;
    }
    const ClusterComplex& complex()
    {
        if (!complex_) complex_ = std::make_unique<ClusterComplex>(tilting());
        return *complex_;
    }
    bool cache_hit() const { return cache_hit_; }

private:
    DynkinQuiver q_;
    int d_;
    std::uint32_t prime_;
    VerifyOptions opts_;
    std::shared_ptr<const ModuleCategory> modules_, other_;
    std::shared_ptr<const OrbitCategory> orbit_;
    std::shared_ptr<const TiltingTheory> tilting_;
    std::unique_ptr<MutationEngine> engine_;
    std::optional<std::vector<ObjectSet>> almost_;
    std::optional<std::vector<ComplementFan>> fans_;
    std::vector<std::pair<ObjectSet, std::string>> fan_errors_;
    std::optional<MutationGraph> graph_;
    std::unique_ptr<ClusterComplex> complex_;
    bool cache_hit_ = false;
};

// Accumulates one check's outcome; the first failure becomes the counterexample.
struct Tally {
    long long instances = 0;
    long long failures = 0;
    nlohmann::json counterexample;
    void fail(nlohmann::json payload)
    {
        if (failures++ == 0) counterexample = std::move(payload);
    }
};

void finish(CheckRecord& r, const Tally& t, const std::string& detail)
{
    r.instances = t.instances;
    r.status = t.failures == 0 ? CheckStatus::pass : CheckStatus::fail;
    r.detail = t.failures == 0 ? detail : std::to_string(t.failures) + " violations; " + detail;
    r.counterexample = t.counterexample;
}

void gate(CheckRecord& r, int need)
{
    r.status = CheckStatus::not_applicable;
    r.detail = "requires d >= " + std::to_string(need);
}

void fan_check(CheckRecord& r, Context& ctx, const std::function<Violation(const ComplementFan&)>& check)
{
    const OrbitCategory& c = ctx.orbit();
    Tally t;
    for (const auto& f : ctx.fans()) {
        ++t.instances;
        if (auto v = check(f)) t.fail({{"message", *v}, {"base", names(c, f.base)}, {"fan", names(c, f.cycle)}});
    }
    finish(r, t, std::to_string(t.instances) + " fans");
}

using Runner = std::function<void(CheckRecord&, Context&)>;

const std::vector<std::pair<std::string, Runner>>& runners()
{
    static const std::vector<std::pair<std::string, Runner>> table = {
        {"euler-identity",
         [](CheckRecord& r, Context& ctx) {
             const auto& mc = *ctx.modules();
             Tally t;
             for (int m = 0; m < mc.size(); ++m)
                 for (int n = 0; n < mc.size(); ++n) {
                     ++t.instances;
                     const int lhs = mc.hom_dim(m, n) - mc.ext1_dim(m, n);
                     const int rhs = euler_form(mc.dynkin(), mc.roots()[m], mc.roots()[n]);
                     if (lhs != rhs) t.fail({{"source", mc.roots()[m]}, {"target", mc.roots()[n]}, {"hom_minus_ext", lhs}, {"euler", rhs}});
                 }
             finish(r, t, std::to_string(t.instances) + " module pairs");
         }},
        {"field-independence",
         [](CheckRecord& r, Context& ctx) {
             const auto& a = *ctx.modules();
             const auto& b = *ctx.other_modules();
             Tally t;
             for (int m = 0; m < a.size(); ++m)
                 for (int n = 0; n < a.size(); ++n) {
                     ++t.instances;
                     if (a.hom_dim(m, n) != b.hom_dim(m, n) || a.ext1_dim(m, n) != b.ext1_dim(m, n))
                         t.fail({{"source", a.roots()[m]}, {"target", a.roots()[n]}});
                 }
             finish(r, t, "primes " + std::to_string(a.field().modulus()) + " and " + std::to_string(b.field().modulus()));
         }},
        {"tau-coxeter",
         [](CheckRecord& r, Context& ctx) {
             const auto& mc = *ctx.modules();
             const IntMatrix phi = coxeter_transformation(mc.dynkin());
             Tally t;
             for (int m = 0; m < mc.size(); ++m) {
                 ++t.instances;
                 const auto tm = mc.tau_rep(mc.rep(m));
                 if (tm.has_value() == mc.is_projective(m)) {
                     t.fail({{"module", mc.roots()[m]}, {"message", "tau defined exactly off the projectives"}});
                     continue;
                 }
                 if (!tm) continue;
                 const auto back = mc.tau_inverse_rep(*tm);
                 if (tm->dims != int_apply(phi, mc.roots()[m]) || !back || back->dims != mc.roots()[m])
                     t.fail({{"module", mc.roots()[m]}, {"tau", tm->dims}});
             }
             finish(r, t, std::to_string(t.instances) + " modules");
         }},
        {"domain-size",
         [](CheckRecord& r, Context& ctx) {
             const auto& c = ctx.orbit();
             const long long roots = static_cast<long long>(positive_roots(ctx.quiver()).size());
             const long long want = ctx.d() * roots + ctx.quiver().rank();
             Tally t;
             t.instances = 1;
             if (c.size() != want) t.fail({{"objects", c.size()}, {"expected", want}});
             finish(r, t, std::to_string(c.size()) + " objects");
         }},
        {"graded-pieces",
         [](CheckRecord& r, Context& ctx) {
             const auto& c = ctx.orbit();
             Tally t;
             for (int x = 0; x < c.size(); ++x)
                 for (int y = 0; y < c.size(); ++y) {
                     ++t.instances;
                     bool ok = c.piece_dim(x, y, -1) == 0 && c.piece_dim(x, y, 2) == 0;
                     for (int l = -1; l <= 2 && ok; ++l) ok = c.piece_dim(x, y, l) == c.piece_dim_modules(x, y, l);
                     if (!ok) t.fail(names(c, {x, y}));
                 }
             finish(r, t, std::to_string(t.instances) + " object pairs");
         }},
        {"normalize-consistency",
         [](CheckRecord& r, Context& ctx) {
             const auto& c = ctx.orbit();
             const int d = ctx.d();
             Tally t;
             for (int root = 0; root < c.modules().size(); ++root)
                 for (int k = -2 * d - 2; k <= 2 * d + 2; ++k) {
                     ++t.instances;
                     const auto a = c.normalize(root, k);
                     const auto b = c.normalize_mesh(root, k);
                     const auto again = c.normalize(a.object.root, a.object.shift);
                     if (a.object != b.object || a.power != b.power || again.object != a.object || again.power != 0)
                         t.fail({{"root", root}, {"shift", k}});
                 }
             finish(r, t, std::to_string(t.instances) + " shifted modules");
         }},
        {"cy-duality",
         [](CheckRecord& r, Context& ctx) {
             const auto& c = ctx.orbit();
             Tally t;
             for (int x = 0; x < c.size(); ++x)
                 for (int y = 0; y < c.size(); ++y)
                     for (int i = 0; i <= ctx.d() + 1; ++i) {
                         ++t.instances;
                         const auto [a, b] = c.serre_dual_dim(x, y, i);
                         if (a != b) t.fail({{"objects", names(c, {x, y})}, {"i", i}, {"dims", {a, b}}});
                     }
             finish(r, t, std::to_string(t.instances) + " (X, Y, i) triples");
         }},
        {"indecomposables-rigid",
         [](CheckRecord& r, Context& ctx) {
             const auto& c = ctx.orbit();
             Tally t;
             for (int x = 0; x < c.size(); ++x) {
                 ++t.instances;
                 for (int i = 1; i <= ctx.d(); ++i)
                     if (c.ext_dim(x, x, i) != 0) {
                         t.fail({{"object", c.name(x)}, {"i", i}});
                         break;
                     }
             }
             finish(r, t, std::to_string(t.instances) + " objects");
         }},
        {"endomorphisms-division",
         [](CheckRecord& r, Context& ctx) {
             if (ctx.d() < 2) return gate(r, 2);
             const auto& c = ctx.orbit();
             Tally t;
             for (int x = 0; x < c.size(); ++x) {
                 ++t.instances;
                 if (c.hom_dim(x, x) != 1) t.fail({{"object", c.name(x)}, {"dim_end", c.hom_dim(x, x)}});
             }
             finish(r, t, std::to_string(t.instances) + " objects with End = F_p");
         }},
        {"hom-degree-constraints",
         [](CheckRecord& r, Context& ctx) {
             const int d = ctx.d();
             if (d < 3) return gate(r, 3);
             const auto& c = ctx.orbit();
             Tally t;
             for (int x = 0; x < c.size(); ++x)
                 for (int y = 0; y < c.size(); ++y) {
                     if (c.hom_dim(x, y) == 0) continue;
                     ++t.instances;
                     const int i = c.degree(x), j = c.degree(y);
                     if (!(i == j || (j >= 1 && i == j - 1) || (j == 0 && (i == d || i == d - 1))))
                         t.fail(names(c, {x, y}));
                 }
             finish(r, t, std::to_string(t.instances) + " nonzero Hom spaces");
         }},
        {"low-degree-hom",
         [](CheckRecord& r, Context& ctx) {
             const int d = ctx.d();
             if (d < 2) return gate(r, 2);
             const auto& c = ctx.orbit();
             const auto& mc = c.modules();
             Tally t;
             for (int x = 0; x < c.size(); ++x)
                 for (int y = 0; y < c.size(); ++y) {
                     const auto [m, i] = c.object(x);
                     const auto [n, j] = c.object(y);
                     for (int k = 0; k <= d + 1; ++k) {
                         if (j + k - i < 0 || j + k - i > d - 1) continue;
                         ++t.instances;
                         if (c.hom_dim(x, c.shifted(y, k)) != stalk_hom(mc, m, i, n, j + k))
                             t.fail({{"objects", names(c, {x, y})}, {"k", k}, {"part", 1}});
                         // tau^-1 (N[j+k]) as a stalk
                         int root = n, shift = j + k;
                         if (auto u = mc.tau_inverse(n)) root = *u;
                         else {
                             root = mc.projective(mc.injective_vertex(n));
                             ++shift;
                         }
                         const int z = c.index_of(c.normalize(root, shift).object);
                         if (c.hom_dim(x, z) != stalk_hom(mc, m, i, root, shift))
                             t.fail({{"objects", names(c, {x, y})}, {"k", k}, {"part", 2}});
                     }
                 }
             finish(r, t, std::to_string(t.instances) + " (X, Y, k) triples");
         }},
        {"rigidity-equivalence",
         [](CheckRecord& r, Context& ctx) {
             const auto rep = ctx.tilting()->verify_equivalence();
             Tally t;
             for (auto v : rep.rigid_by_size) t.instances += v;
             for (const auto& s : rep.counterexamples) t.fail(names(ctx.orbit(), s));
             std::ostringstream os;
             os << t.instances << " rigid sets; maximal " << rep.maximal << ", complete " << rep.complete << ", tilting "
                << rep.tilting;
             finish(r, t, os.str());
         }},
        {"rigid-completion",
         [](CheckRecord& r, Context& ctx) {
             const auto tl = ctx.tilting();
             const auto& list = tl->tilting_objects();
             Tally t;
             tl->for_each_rigid([&](const ObjectSet& s) {
                 ++t.instances;
                 const auto full = tl->complete(s);
                 if (!std::binary_search(list.begin(), list.end(), full) || !std::includes(full.begin(), full.end(), s.begin(), s.end()))
                     t.fail(names(ctx.orbit(), s));
             });
             finish(r, t, std::to_string(t.instances) + " rigid sets completed");
         }},
        {"complement-count",
         [](CheckRecord& r, Context& ctx) {
             const auto& e = ctx.engine();
             Tally t;
             for (const auto& a : ctx.almost_complete()) {
                 ++t.instances;
                 const auto comps = e.complements(a);
                 if (static_cast<int>(comps.size()) != ctx.d() + 1)
                     t.fail({{"base", names(ctx.orbit(), a)}, {"complements", names(ctx.orbit(), comps)}});
             }
             for (const auto& [a, msg] : ctx.fan_errors()) t.fail({{"base", names(ctx.orbit(), a)}, {"message", msg}});
             finish(r, t,
                    std::to_string(t.instances) + " almost complete objects, each with " + std::to_string(ctx.d() + 1) +
                        " complements");
         }},
        {"approximations",
         [](CheckRecord& r, Context& ctx) {
             const auto& c = ctx.orbit();
             Tally t;
             for (const auto& f : ctx.fans())
                 for (const auto& tri : f.triangles) {
                     ++t.instances;
                     bool ok = is_right_approximation(c, tri.middle, f.base);
                     for (std::size_t b = 0; b < tri.middle.maps.size() && ok; ++b) {
                         Approximation smaller = tri.middle;
                         smaller.maps.erase(smaller.maps.begin() + b);
                         smaller.summand.erase(smaller.summand.begin() + b);
                         ok = !is_right_approximation(c, smaller, f.base);
                     }
                     if (!ok) t.fail({{"base", names(c, f.base)}, {"target", c.name(tri.x)}});
                 }
             finish(r, t, std::to_string(t.instances) + " triangles");
         }},
        {"degree-bounds",
         [](CheckRecord& r, Context& ctx) {
             fan_check(r, ctx, [&](const ComplementFan& f) { return check_degree_bounds(ctx.orbit(), f.cycle); });
         }},
        {"first-row",
         [](CheckRecord& r, Context& ctx) {
             fan_check(r, ctx, [&](const ComplementFan& f) { return check_first_row(ctx.orbit(), f.cycle); });
         }},
        {"endomorphism-dims",
         [](CheckRecord& r, Context& ctx) {
             fan_check(r, ctx, [&](const ComplementFan& f) { return check_endomorphisms(ctx.orbit(), f.cycle); });
         }},
        {"ext-pattern",
         [](CheckRecord& r, Context& ctx) {
             fan_check(r, ctx, [&](const ComplementFan& f) -> Violation {
                 if (auto v = ext_pattern(ctx.orbit(), f.cycle, false)) return v;
                 return composites_nonzero(ctx.orbit(), f.cycle);
             });
         }},
        {"hom-pattern",
         [](CheckRecord& r, Context& ctx) {
             fan_check(r, ctx, [&](const ComplementFan& f) { return ext_pattern(ctx.orbit(), f.cycle, true); });
             // The claim fails in general; a failure here is a finding, not a defect.
             if (r.status == CheckStatus::fail) {
                 r.status = CheckStatus::refuted;
                 const auto bad = r.detail.substr(0, r.detail.find(' '));
                 r.detail = "refuted by " + bad + " of " + std::to_string(r.instances) + " fans";
             }
         }},
        {"middle-rigid",
         [](CheckRecord& r, Context& ctx) {
             fan_check(r, ctx, [&](const ComplementFan& f) { return check_middle_rigid(*ctx.tilting(), f); });
         }},
        {"exchange-teams",
         [](CheckRecord& r, Context& ctx) {
             const auto& c = ctx.orbit();
             const auto& e = ctx.engine();
             const int d = ctx.d(), m = d + 1;
             Tally t;
             std::set<std::vector<int>> fans;
             for (const auto& f : ctx.fans()) {
                 ++t.instances;
                 fans.insert(f.cycle);
                 if (!is_exchange_team(c, f.cycle)) t.fail({{"message", "fan is not an exchange team"}, {"fan", names(c, f.cycle)}});
             }
             // all ordered tuples, pruned by the pairwise Ext pattern
             long long teams = 0;
             std::vector<int> cur;
             std::function<void()> rec = [&] {
                 const int len = static_cast<int>(cur.size());
                 if (len == m) {
                     if (!is_exchange_team(c, cur)) return;
                     ++teams;
                     ++t.instances;
                     const auto base = e.find_base(cur);
                     std::vector<int> rot = cur;
                     std::rotate(rot.begin(), std::min_element(rot.begin(), rot.end()), rot.end());
                     if (!base || !fans.count(rot)) t.fail({{"message", "exchange team without a base"}, {"team", names(c, cur)}});
                     return;
                 }
                 for (int x = 0; x < c.size(); ++x) {
                     bool ok = true;
                     for (int a = 0; a <= len && ok; ++a) {
                         const int xa = a < len ? cur[a] : x;
                         for (int k = 1; k <= d && ok; ++k) {
                             const int end = c.hom_dim(xa, xa);
                             ok = c.ext_dim(xa, x, k) == (mod(a + k - len, m) == 0 ? end : 0);
                             if (ok && a < len) ok = c.ext_dim(x, xa, k) == (mod(len + k - a, m) == 0 ? c.hom_dim(x, x) : 0);
                         }
                     }
                     if (!ok) continue;
                     cur.push_back(x);
                     rec();
                     cur.pop_back();
                 }
             };
             rec();
             const long long expected = static_cast<long long>(fans.size()) * m;
             if (teams != expected) t.fail({{"message", "team count differs from fans times rotations"}, {"teams", teams}, {"expected", expected}});
             finish(r, t, std::to_string(fans.size()) + " distinct fans; " + std::to_string(teams) + " ordered teams found exhaustively");
         }},
        {"degree-profile",
         [](CheckRecord& r, Context& ctx) {
             if (ctx.d() < 2) return gate(r, 2);
             const auto& c = ctx.orbit();
             Tally t;
             long long vacuous = 0;
             for (const auto& f : ctx.fans()) {
                 const auto p = degree_profile(c, f.cycle);
                 if (!p.applicable) {
                     ++vacuous;
                     continue;
                 }
                 ++t.instances;
                 if (!p.k) t.fail({{"fan", names(c, f.cycle)}, {"rotation", p.rotation}});
             }
             finish(r, t, std::to_string(t.instances) + " fans with a degree-0 start; " + std::to_string(vacuous) + " without one");
         }},
        {"middle-disjoint",
         [](CheckRecord& r, Context& ctx) {
             if (ctx.d() < 2) return gate(r, 2);
             long long empty = 0;
             for (const auto& f : ctx.fans())
                 empty += std::all_of(f.triangles.begin(), f.triangles.end(), [](const auto& tri) { return tri.middle.total() == 0; });
             fan_check(r, ctx, [](const ComplementFan& f) { return check_disjoint_middles(f); });
             if (r.status == CheckStatus::pass && empty == r.instances) r.detail = "vacuous (all middle terms empty); " + r.detail;
         }},
        {"one-directional-hom",
         [](CheckRecord& r, Context& ctx) {
             if (ctx.d() < 3) return gate(r, 3);
             Tally t;
             for (const auto& s : ctx.tilting()->tilting_objects()) {
                 ++t.instances;
                 if (auto v = check_one_directional(ctx.orbit(), s)) t.fail({{"message", *v}, {"tilting", names(ctx.orbit(), s)}});
             }
             finish(r, t, std::to_string(t.instances) + " tilting objects");
         }},
        {"consecutive-hom",
         [](CheckRecord& r, Context& ctx) {
             if (ctx.d() < 3) return gate(r, 3);
             fan_check(r, ctx, [&](const ComplementFan& f) { return check_consecutive_hom(ctx.orbit(), f.cycle); });
         }},
        {"mutation-graph",
         [](CheckRecord& r, Context& ctx) {
             const auto& g = ctx.graph();
             const auto& e = ctx.engine();
             const int want = ctx.quiver().rank() * ctx.d();
             Tally t;
             t.instances = static_cast<long long>(g.vertices.size());
             if (!g.connected()) t.fail({{"message", "not connected"}});
             if (g.regular_degree() != want) t.fail({{"message", "not regular of degree n d"}});
             for (const auto& v : g.vertices)
                 for (int x : v) {
                     ObjectSet cur = v;
                     int now = x;
                     for (int step = 0; step <= ctx.d(); ++step) {
                         const auto next = e.mutate(cur, now, 1);
                         std::vector<int> added;
                         std::set_difference(next.begin(), next.end(), cur.begin(), cur.end(), std::back_inserter(added));
                         now = added.at(0);
                         cur = next;
                     }
                     if (cur != v) t.fail({{"message", "mutation does not cycle"}, {"tilting", names(ctx.orbit(), v)}, {"summand", ctx.orbit().name(x)}});
                 }
             finish(r, t,
                    std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.edges.size()) + " edges, degree " +
                        std::to_string(want));
         }},
        {"complex-purity",
         [](CheckRecord& r, Context& ctx) {
             const auto s = ctx.complex().facet_stats();
             Tally t;
             t.instances = s.ridges;
             if (!s.pure) t.fail({{"message", "impure"}});
             for (long long i = 0; i < s.ridge_violations + s.color_violations; ++i) {
                 nlohmann::json ex = nlohmann::json::array();
                 for (const auto& e : s.examples) ex.push_back(names(ctx.orbit(), e));
                 t.fail({{"message", "ridge incidence or colors"}, {"ridges", ex}});
             }
             finish(r, t, std::to_string(s.facets) + " facets, " + std::to_string(s.ridges) + " ridges");
         }},
        {"gamma-bijection",
         [](CheckRecord& r, Context& ctx) {
             const auto& c = ctx.orbit();
             std::vector<ColoredRoot> labels;
             for (int x = 0; x < c.size(); ++x) labels.push_back(gamma(c, x));
             std::sort(labels.begin(), labels.end());
             Tally t;
             t.instances = c.size();
             if (labels != colored_almost_positive_roots(ctx.quiver(), ctx.d())) t.fail({{"message", "labels differ"}});
             finish(r, t, std::to_string(labels.size()) + " colored almost positive roots");
         }},
        {"facet-count",
         [](CheckRecord& r, Context& ctx) {
             const long long got = static_cast<long long>(ctx.tilting()->tilting_objects().size());
             const long long want = fomin_reading_count(ctx.quiver(), ctx.d());
             Tally t;
             t.instances = 1;
             if (got != want) t.fail({{"enumerated", got}, {"formula", want}});
             finish(r, t, std::to_string(got) + " facets, formula " + std::to_string(want));
         }},
        {"adjacency-identity",
         [](CheckRecord& r, Context& ctx) {
             Tally t;
             const auto adj = ctx.complex().facet_adjacency();
             t.instances = static_cast<long long>(adj.size());
             if (adj != ctx.graph().edges) t.fail({{"message", "edge sets differ"}});
             finish(r, t, std::to_string(adj.size()) + " edges");
         }},
    };
    return table;
}

} // namespace

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "n/a";
    case CheckStatus::refuted: return "refuted";
    }
    return "?";
}

const std::vector<CheckInfo>& check_catalog() { return kCatalog; }

bool is_known_check(const std::string& id)
{
    return std::any_of(kCatalog.begin(), kCatalog.end(), [&](const CheckInfo& c) { return c.id == id; });
}

bool VerificationReport::passed() const
{
    return std::none_of(checks.begin(), checks.end(), [](const CheckRecord& r) { return r.status == CheckStatus::fail; });
}

const CheckRecord* VerificationReport::find(const std::string& id) const
{
    for (const auto& r : checks)
        if (r.id == id) return &r;
    return nullptr;
}

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json list = nlohmann::json::array();
    std::map<std::string, int> summary{{"pass", 0}, {"fail", 0}, {"n/a", 0}, {"refuted", 0}};
    for (const auto& r : checks) {
        nlohmann::json j = {{"id", r.id},
                            {"statement", r.statement},
                            {"status", to_string(r.status)},
                            {"instances", r.instances},
                            {"detail", r.detail}};
        if (!r.counterexample.is_null()) j["counterexample"] = r.counterexample;
        if (timings) j["wall_ms"] = r.wall_ms;
        list.push_back(j);
        ++summary[to_string(r.status)];
    }
    return {{"schema", "dcluster.verify/1"}, {"instance", instance}, {"checks", list}, {"summary", summary}, {"passed", passed()}};
}

std::string VerificationReport::to_text() const
{
    std::ostringstream os;
    for (const auto& r : checks) {
        os << std::left << std::setw(8) << to_string(r.status) << std::setw(24) << r.id << r.detail;
        if (timings) os << " [" << std::fixed << std::setprecision(1) << r.wall_ms << " ms]";
        os << "\n";
    }
    return os.str();
}

VerificationReport verify_all(const DynkinQuiver& q, int d, std::uint32_t prime, const VerifyOptions& opts)
{
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    for (const auto& id : opts.checks)
        if (!is_known_check(id)) throw std::invalid_argument("unknown check '" + id + "'");
    Context ctx(q, d, prime, opts);
    VerificationReport rep;
    rep.timings = opts.timings;
    rep.instance = {{"quiver", to_json(q)}, {"orientation_hash", hex(q.orientation_hash())}, {"d", d}, {"prime", prime}};
    for (const auto& [id, run] : runners()) {
        if (!opts.checks.empty() && !opts.checks.count(id)) continue;
        CheckRecord r;
        r.id = id;
        r.statement = std::find_if(kCatalog.begin(), kCatalog.end(), [&](const CheckInfo& c) { return c.id == id; })->statement;
        const auto start = std::chrono::steady_clock::now();
        run(r, ctx);
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        rep.checks.push_back(std::move(r));
    }
    rep.cache_hit = ctx.cache_hit();
    return rep;
}

std::filesystem::path EnumerationCache::file_for(const DynkinQuiver& q, int d, std::uint32_t prime) const
{
    return dir / (q.name() + "-" + hex(q.orientation_hash()) + "-d" + std::to_string(d) + "-p" + std::to_string(prime) + ".json");
}

std::optional<std::vector<ObjectSet>> EnumerationCache::load(const DynkinQuiver& q, int d, std::uint32_t prime) const
{
    std::ifstream in(file_for(q, d, prime));
    if (!in) return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(in);
        if (j.at("schema") != "dcluster.cache/1" || j.at("key") != cache_key(q, d, prime)) return std::nullopt;
        return j.at("tilting").get<std::vector<ObjectSet>>();
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
}

void EnumerationCache::store(const DynkinQuiver& q, int d, std::uint32_t prime, const std::vector<ObjectSet>& tilting) const
{
    std::filesystem::create_directories(dir);
    const auto path = file_for(q, d, prime);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp);
        out << nlohmann::json{{"schema", "dcluster.cache/1"}, {"key", cache_key(q, d, prime)}, {"tilting", tilting}}.dump() << "\n";
    }
    std::filesystem::rename(tmp, path);
}

} // namespace dcluster
