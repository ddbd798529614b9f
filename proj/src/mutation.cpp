#include "dcluster/mutation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace dcluster {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

std::string describe(const OrbitCategory& c, const std::vector<int>& objs)
{
    std::string s = "(";
    for (std::size_t i = 0; i < objs.size(); ++i) s += (i ? ", " : "") + c.name(objs[i]);
    return s + ")";
}

Matrix columns_of(const std::vector<GradedMorphism>& maps, std::size_t rows)
{
    std::vector<Vec> cols;
    for (const auto& m : maps) cols.push_back(m.coords());
    return from_columns(rows, cols);
}

} // namespace

Approximation minimal_right_approximation(const OrbitCategory& c, int target, const ObjectSet& addset)
{
    if (std::find(addset.begin(), addset.end(), target) != addset.end())
        throw std::invalid_argument("approximation: target lies in the additive set");
    const PrimeField& f = c.mesh().field();
    Approximation a;
    a.target = target;
    for (int t : addset) {
        const int h = c.hom_dim(t, target);
        if (h == 0) continue;
        if (c.hom_dim(t, t) != 1) throw std::logic_error("approximation: endomorphism ring is not the field");
        // maps t -> target that factor through a radical map t -> t'
        std::vector<GradedMorphism> radical;
        for (int u : addset) {
            if (u == t) continue;
            for (const auto& r : c.hom_basis(t, u))
                for (const auto& g : c.hom_basis(u, target)) radical.push_back(c.compose(g, r));
        }
        const Quotient q = quotient_by_columns(f, columns_of(radical, h));
        if (q.lifts.empty()) continue;
        const auto basis = c.hom_basis(t, target);
        a.objects.push_back(t);
        a.multiplicity.push_back(static_cast<int>(q.lifts.size()));
        for (auto k : q.lifts) {
            a.summand.push_back(t);
            a.maps.push_back(basis[k]);
        }
    }
    return a;
}

bool is_right_approximation(const OrbitCategory& c, const Approximation& a, const ObjectSet& addset)
{
    const PrimeField& f = c.mesh().field();
    for (int t : addset) {
        const int h = c.hom_dim(t, a.target);
        if (h == 0) continue;
        std::vector<GradedMorphism> through;
        for (std::size_t b = 0; b < a.maps.size(); ++b)
            for (const auto& g : c.hom_basis(t, a.summand[b])) through.push_back(c.compose(a.maps[b], g));
        if (static_cast<int>(rank(f, columns_of(through, h))) != h) return false;
    }
    return true;
}

Violation ext_pattern(const OrbitCategory& c, const std::vector<int>& cycle, bool with_hom)
{
    const int m = static_cast<int>(cycle.size());
    const int d = c.d();
    if (m != d + 1) return "expected " + std::to_string(d + 1) + " objects, got " + std::to_string(m);
    for (int i = 0; i < m; ++i) {
        const int end = c.hom_dim(cycle[i], cycle[i]);
        for (int j = 0; j < m; ++j)
            for (int k = with_hom ? 0 : 1; k <= d; ++k) {
                const int want = mod(i + k - j, d + 1) == 0 ? end : 0;
                const int got = c.ext_dim(cycle[i], cycle[j], k);
                if (got != want) {
                    std::ostringstream os;
                    os << "dim Ext^" << k << "(X_" << i << ", X_" << j << ") = " << got << ", expected " << want
                       << " in " << describe(c, cycle);
                    return os.str();
                }
            }
    }
    return std::nullopt;
}

std::vector<GradedMorphism> connecting_classes(const OrbitCategory& c, const std::vector<int>& cycle)
{
    const int m = static_cast<int>(cycle.size());
    std::vector<GradedMorphism> deltas;
    for (int i = 0; i < m; ++i) {
        const int target = c.shifted(cycle[(i + 1) % m], 1);
        const auto basis = c.hom_basis(cycle[i], target);
        if (basis.size() != 1)
            throw FanError("Ext^1(X_" + std::to_string(i) + ", X_" + std::to_string((i + 1) % m) + ") has dimension " +
                           std::to_string(basis.size()));
        deltas.push_back(basis[0]);
    }
    return deltas;
}

Violation composites_nonzero(const OrbitCategory& c, const std::vector<int>& cycle)
{
    const int m = static_cast<int>(cycle.size());
    std::vector<GradedMorphism> deltas;
    try {
        deltas = connecting_classes(c, cycle);
    } catch (const FanError& e) {
        return std::string(e.what());
    }
    for (int i = 0; i < m; ++i) {
        GradedMorphism comp = deltas[i];
        for (int len = 1; len <= m; ++len) {
            if (len > 1) comp = c.compose(c.shift(deltas[(i + len - 1) % m], len - 1), comp);
            if (comp.target != c.shifted(cycle[(i + len) % m], len))
                return "composite of length " + std::to_string(len) + " from X_" + std::to_string(i) + " has the wrong target";
            if (comp.is_zero())
                return "composite of length " + std::to_string(len) + " from X_" + std::to_string(i) + " vanishes in " +
                       describe(c, cycle);
        }
    }
    return std::nullopt;
}

bool is_exchange_team(const OrbitCategory& c, const std::vector<int>& objs)
{
    if (ext_pattern(c, objs, false)) return false;
    return !composites_nonzero(c, objs);
}

Violation check_degree_bounds(const OrbitCategory& c, const std::vector<int>& cycle)
{
    const int m = static_cast<int>(cycle.size());
    const int d = c.d();
    for (int r = 0; r < m; ++r) {
        if (c.degree(cycle[r]) != 0) continue;
        const int d1 = c.degree(cycle[(r + 1) % m]);
        if (d1 != 0 && d1 != d && d1 != d - 1)
            return "degree " + std::to_string(d1) + " follows degree 0 in " + describe(c, cycle);
        for (int i = 2; i <= d; ++i)
            if (c.degree(cycle[(r + i) % m]) < d - i)
                return "degree of X_" + std::to_string(i) + " below d - i after rotation " + std::to_string(r) + " in " +
                       describe(c, cycle);
    }
    return std::nullopt;
}

Violation check_first_row(const OrbitCategory& c, const std::vector<int>& cycle)
{
    const int m = static_cast<int>(cycle.size());
    const int d = c.d();
    for (int r = 0; r < m; ++r) {
        const int x0 = cycle[r];
        const int end = c.hom_dim(x0, x0);
        if (c.ext_dim(x0, cycle[(r + 1) % m], 1) != end) return "Ext^1(X_0, X_1) differs from End(X_0) in " + describe(c, cycle);
        for (int i = 1; i <= d; ++i)
            for (int k = 1; k <= d; ++k) {
                const int got = c.ext_dim(x0, cycle[(r + i) % m], k);
                if (got != (k == i ? end : 0))
                    return "Ext^" + std::to_string(k) + "(X_0, X_" + std::to_string(i) + ") has dimension " + std::to_string(got) +
                           " after rotation " + std::to_string(r);
            }
    }
    return std::nullopt;
}

Violation check_endomorphisms(const OrbitCategory& c, const std::vector<int>& cycle)
{
    for (int x : cycle)
        if (c.hom_dim(x, x) != c.hom_dim(cycle[0], cycle[0])) return "End(" + c.name(x) + ") has a different dimension";
    return std::nullopt;
}

Violation check_middle_rigid(const TiltingTheory& t, const ComplementFan& fan)
{
    std::set<int> b;
    for (const auto& tri : fan.triangles) b.insert(tri.middle.objects.begin(), tri.middle.objects.end());
    for (int x : fan.cycle) {
        if (b.count(x)) return t.category().name(x) + " occurs in a middle term";
        ObjectSet s(b.begin(), b.end());
        s.push_back(x);
        if (!t.is_rigid(s)) return "B + " + t.category().name(x) + " is not rigid";
    }
    return std::nullopt;
}

Violation check_disjoint_middles(const ComplementFan& fan)
{
    std::map<int, int> seen;
    for (const auto& tri : fan.triangles)
        for (int o : tri.middle.objects) {
            auto [it, fresh] = seen.emplace(o, tri.index);
            if (!fresh)
                return "object " + std::to_string(o) + " lies in B_" + std::to_string(it->second) + " and B_" +
                       std::to_string(tri.index);
        }
    return std::nullopt;
}

Violation check_consecutive_hom(const OrbitCategory& c, const std::vector<int>& cycle)
{
    const int m = static_cast<int>(cycle.size());
    for (int i = 0; i < m; ++i)
        if (c.hom_dim(cycle[i], cycle[(i + 1) % m]) != 0)
            return "Hom(X_" + std::to_string(i) + ", X_" + std::to_string((i + 1) % m) + ") != 0 in " + describe(c, cycle);
    return std::nullopt;
}

Violation check_one_directional(const OrbitCategory& c, const ObjectSet& tilting)
{
    for (std::size_t a = 0; a < tilting.size(); ++a)
        for (std::size_t b = a + 1; b < tilting.size(); ++b)
            if (c.hom_dim(tilting[a], tilting[b]) != 0 && c.hom_dim(tilting[b], tilting[a]) != 0)
                return "nonzero Hom both ways between " + c.name(tilting[a]) + " and " + c.name(tilting[b]);
    return std::nullopt;
}

DegreeProfile degree_profile(const OrbitCategory& c, const std::vector<int>& cycle)
{
    const int m = static_cast<int>(cycle.size());
    const int d = c.d();
    DegreeProfile p;
    for (int r = 0; r < m && !p.applicable; ++r)
        if (c.degree(cycle[r]) == 0 && c.degree(cycle[(r + 1) % m]) != 0) {
            p.applicable = true;
            p.rotation = r;
        }
    if (!p.applicable) return p;
    for (int k = 0; k <= d && !p.k; ++k) {
        bool fits = true;
        for (int i = 1; i <= d && fits; ++i) {
            const int want = i <= k ? d - i : d + 1 - i;
            fits = c.degree(cycle[(p.rotation + i) % m]) == want;
        }
        if (fits) p.k = k;
    }
    return p;
}

bool MutationGraph::connected() const
{
    if (vertices.empty()) return true;
    std::vector<char> seen(vertices.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : adjacency[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push(w);
            }
    }
    return count == vertices.size();
}

std::optional<int> MutationGraph::regular_degree() const
{
    if (adjacency.empty()) return 0;
    const auto deg = adjacency[0].size();
    for (const auto& a : adjacency)
        if (a.size() != deg) return std::nullopt;
    return static_cast<int>(deg);
}

std::string to_dot(const MutationGraph& g, const OrbitCategory& c)
{
    std::ostringstream os;
    os << "graph mutation {\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        os << "  t" << v << " [label=\"";
        for (std::size_t i = 0; i < g.vertices[v].size(); ++i) os << (i ? " " : "") << c.name(g.vertices[v][i]);
        os << "\"];\n";
    }
    for (auto [a, b] : g.edges) os << "  t" << a << " -- t" << b << ";\n";
    os << "}\n";
    return os.str();
}

MutationEngine::MutationEngine(std::shared_ptr<const TiltingTheory> tilting) : t_(std::move(tilting)) {}

std::vector<int> MutationEngine::complements(const ObjectSet& almost) const
{
    std::vector<int> out;
    for (int y = 0; y < t_->size(); ++y) {
        if (std::find(almost.begin(), almost.end(), y) != almost.end()) continue;
        bool ok = true;
        for (int x : almost) ok = ok && t_->compatible(x, y);
        if (ok) out.push_back(y);
    }
    return out;
}

std::vector<int> MutationEngine::order_into_fan(const std::vector<int>& comps) const
{
    const OrbitCategory& c = category();
    const int m = static_cast<int>(comps.size());
    if (m != c.d() + 1) throw FanError("expected " + std::to_string(c.d() + 1) + " complements, found " + std::to_string(m));
    std::vector<int> cycle{*std::min_element(comps.begin(), comps.end())};
    while (static_cast<int>(cycle.size()) < m) {
        int next = -1;
        for (int y : comps)
            if (c.ext_dim(cycle.back(), y, 1) != 0) {
                if (next >= 0) throw FanError("successor of " + c.name(cycle.back()) + " is not unique");
                next = y;
            }
        if (next < 0 || std::find(cycle.begin(), cycle.end(), next) != cycle.end())
            throw FanError("complements do not close up into a cycle at " + c.name(cycle.back()));
        cycle.push_back(next);
    }
    if (c.ext_dim(cycle.back(), cycle.front(), 1) == 0) throw FanError("last complement does not return to the first");
    if (auto v = ext_pattern(c, cycle, false)) throw FanError(*v);
    return cycle;
}

ComplementFan MutationEngine::fan(const ObjectSet& almost) const
{
    if (static_cast<int>(almost.size()) != t_->rank() - 1 || !t_->is_rigid(almost))
        throw std::invalid_argument("fan: not an almost complete rigid set");
    const OrbitCategory& c = category();
    ComplementFan f;
    f.base = almost;
    f.cycle = order_into_fan(complements(almost));
    const auto deltas = connecting_classes(c, f.cycle);
    const int m = static_cast<int>(f.cycle.size());
    for (int i = 0; i < m; ++i) {
        ConnectingTriangle tri;
        tri.index = i;
        tri.x = f.cycle[i];
        tri.next = f.cycle[(i + 1) % m];
        tri.middle = minimal_right_approximation(c, tri.x, almost);
        tri.delta = deltas[i];
        f.triangles.push_back(std::move(tri));
    }
    return f;
}

std::vector<ObjectSet> MutationEngine::almost_complete_objects() const
{
    std::set<ObjectSet> out;
    for (const auto& t : t_->tilting_objects())
        for (std::size_t drop = 0; drop < t.size(); ++drop) {
            ObjectSet a = t;
            a.erase(a.begin() + drop);
            out.insert(std::move(a));
        }
    return {out.begin(), out.end()};
}

std::optional<ObjectSet> MutationEngine::find_base(const std::vector<int>& team) const
{
    std::vector<int> want = team;
    std::sort(want.begin(), want.end());
    Bits cand(t_->size());
    cand.set();
    for (int x : team) {
        cand &= t_->compatible_set(x);
        cand[x] = false;
    }
    std::optional<ObjectSet> found;
    t_->for_each_rigid_in(cand, t_->rank() - 1, [&](const ObjectSet& a) {
        if (!found && complements(a) == want) found = a;
    });
    return found;
}

ObjectSet MutationEngine::mutate(const ObjectSet& t, int drop, int pick) const
{
    const auto pos = std::find(t.begin(), t.end(), drop);
    if (pos == t.end()) throw std::invalid_argument("mutate: object is not a summand");
    if (pick < 1 || pick > t_->d()) throw std::invalid_argument("mutate: pick must lie in 1..d");
    ObjectSet almost = t;
    almost.erase(almost.begin() + (pos - t.begin()));
    const auto cycle = order_into_fan(complements(almost));
    const int m = static_cast<int>(cycle.size());
    const int at = static_cast<int>(std::find(cycle.begin(), cycle.end(), drop) - cycle.begin());
    ObjectSet out = almost;
    out.push_back(cycle[(at + pick) % m]);
    std::sort(out.begin(), out.end());
    return out;
}

MutationGraph MutationEngine::mutation_graph() const
{
    MutationGraph g;
    g.vertices = t_->tilting_objects();
    g.adjacency.assign(g.vertices.size(), {});
    std::set<std::pair<int, int>> edges;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v)
        for (int x : g.vertices[v])
            for (int pick = 1; pick <= t_->d(); ++pick) {
                const auto next = mutate(g.vertices[v], x, pick);
                const auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), next);
                if (it == g.vertices.end() || *it != next) throw FanError("mutation left the set of tilting objects");
                edges.insert(std::minmax(v, static_cast<int>(it - g.vertices.begin())));
            }
    g.edges.assign(edges.begin(), edges.end());
    for (auto [a, b] : g.edges) {
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
    return g;
}

} // namespace dcluster
