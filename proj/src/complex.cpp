#include "dcluster/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dcluster {

ColoredRoot gamma(const OrbitCategory& c, int x)
{
    const OrbitObject& o = c.object(x);
    const ModuleCategory& mc = c.modules();
    if (o.shift < c.d()) return {mc.roots()[o.root], o.shift + 1, false};
    Root simple(mc.rank(), 0);
    simple[mc.projective_vertex(o.root)] = 1;
    return {simple, 1, true};
}

std::vector<ColoredRoot> colored_almost_positive_roots(const DynkinQuiver& q, int d)
{
    std::vector<ColoredRoot> out;
    for (const auto& r : positive_roots(q))
        for (int color = 1; color <= d; ++color) out.push_back({r, color, false});
    for (int j = 0; j < q.rank(); ++j) {
        Root s(q.rank(), 0);
        s[j] = 1;
        out.push_back({s, 1, true});
    }
    std::sort(out.begin(), out.end());
    return out;
}

nlohmann::json to_json(const ColoredRoot& r)
{
    return {{"root", r.root}, {"color", r.color}, {"sign", r.negative ? "negative" : "positive"}};
}

std::string to_string(const ColoredRoot& r)
{
    std::string s = r.negative ? "(-" : "(";
    for (std::size_t i = 0; i < r.root.size(); ++i) s += (i ? "," : "") + std::to_string(r.root[i]);
    return s + ")^" + std::to_string(r.color);
}

long long fomin_reading_count(const DynkinQuiver& q, int d)
{
    const CoxeterData cd = coxeter_data(q);
    __int128 num = 1, den = 1;
    for (int e : cd.exponents) {
        num *= static_cast<__int128>(d) * cd.h + e + 1;
        den *= e + 1;
        const __int128 a = num, b = den;
        __int128 x = a, y = b;
        while (y != 0) {
            const __int128 t = x % y;
            x = y;
            y = t;
        }
        num = a / x;
        den = b / x;
    }
    if (den != 1) throw std::logic_error("product formula is not an integer");
    return static_cast<long long>(num);
}

ClusterComplex::ClusterComplex(std::shared_ptr<const TiltingTheory> tilting, bool positive_only)
    : t_(std::move(tilting)), positive_(positive_only)
{
    const OrbitCategory& c = t_->category();
    for (int x = 0; x < c.size(); ++x)
        if (!positive_ || c.degree(x) < c.d()) vertices_.push_back(x);
    for (const auto& f : t_->tilting_objects()) {
        const bool keep = std::all_of(f.begin(), f.end(), [&](int x) { return !positive_ || c.degree(x) < c.d(); });
        if (keep) facets_.push_back(f);
    }
}

std::vector<long long> ClusterComplex::f_vector() const
{
    Bits cand(t_->size());
    for (int x : vertices_) cand[x] = true;
    std::vector<long long> f{1};
    for (int k = 1;; ++k) {
        long long count = 0;
        t_->for_each_rigid_in(cand, k, [&](const ObjectSet&) { ++count; });
        if (count == 0) break;
        f.push_back(count);
    }
    return f;
}

FacetStats ClusterComplex::facet_stats() const
{
    const OrbitCategory& c = category();
    FacetStats s;
    s.facets = static_cast<long long>(facets_.size());
    std::map<ObjectSet, std::vector<int>> ridges; // ridge -> added vertices
    for (const auto& f : facets_) {
        if (static_cast<int>(f.size()) != c.rank()) s.pure = false;
        for (std::size_t i = 0; i < f.size(); ++i) {
            ObjectSet r = f;
            r.erase(r.begin() + i);
            ridges[r].push_back(f[i]);
        }
    }
    s.ridges = static_cast<long long>(ridges.size());
    for (const auto& [r, comps] : ridges) {
        bool bad = false;
        if (static_cast<int>(comps.size()) != c.d() + 1) {
            ++s.ridge_violations;
            bad = true;
        }
        std::set<int> colors;
        for (int x : comps) colors.insert(c.color(x));
        if (static_cast<int>(colors.size()) != c.d()) {
            ++s.color_violations;
            bad = true;
        }
        if (bad && s.examples.size() < 5) s.examples.push_back(r);
    }
    return s;
}

std::vector<std::pair<int, int>> ClusterComplex::facet_adjacency() const
{
    std::map<ObjectSet, std::vector<int>> by_ridge;
    for (int v = 0; v < static_cast<int>(facets_.size()); ++v)
        for (std::size_t i = 0; i < facets_[v].size(); ++i) {
            ObjectSet r = facets_[v];
            r.erase(r.begin() + i);
            by_ridge[r].push_back(v);
        }
    std::set<std::pair<int, int>> edges;
    for (const auto& [r, vs] : by_ridge)
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) edges.insert(std::minmax(vs[i], vs[j]));
    return {edges.begin(), edges.end()};
}

nlohmann::json ClusterComplex::to_json() const
{
    const OrbitCategory& c = category();
    nlohmann::json verts = nlohmann::json::array();
    for (int x : vertices_)
        verts.push_back({{"name", c.name(x)}, {"degree", c.degree(x)}, {"gamma", dcluster::to_json(label(x))}});
    nlohmann::json facets = nlohmann::json::array();
    for (const auto& f : facets_) {
        nlohmann::json names = nlohmann::json::array();
        for (int x : f) names.push_back(c.name(x));
        facets.push_back(names);
    }
    return {{"schema", "dcluster.complex/1"},
            {"quiver", dcluster::to_json(c.modules().dynkin())},
            {"d", c.d()},
            {"positive_only", positive_},
            {"vertices", verts},
            {"facets", facets},
            {"f_vector", f_vector()}};
}

std::string ClusterComplex::to_dot() const
{
    const OrbitCategory& c = category();
    std::ostringstream os;
    os << "graph mutation {\n";
    for (std::size_t v = 0; v < facets_.size(); ++v) {
        std::string label;
        for (std::size_t i = 0; i < facets_[v].size(); ++i) label += (i ? " " : "") + c.name(facets_[v][i]);
        os << "  f" << v << " [label=\"" << label << "\"];\n";
    }
    for (auto [a, b] : facet_adjacency()) os << "  f" << a << " -- f" << b << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace dcluster
