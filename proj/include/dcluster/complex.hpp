// The generalized cluster complex: rigid subsets of C_d as faces, tilting
// sets as facets, vertices labelled by colored almost positive roots.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcluster/mutation.hpp"
#include "dcluster/tilting.hpp"

namespace dcluster {

/// alpha^color for a positive root, or (-alpha_j)^1.
struct ColoredRoot {
    Root root;
    int color = 1;
    bool negative = false;
    friend auto operator<=>(const ColoredRoot&, const ColoredRoot&) = default;
};

/// M[i] with i < d gives (dim M)^{i+1}; P_j[d] gives (-alpha_j)^1.
ColoredRoot gamma(const OrbitCategory& c, int x);
/// All colored almost positive roots, computed from the root system alone.
std::vector<ColoredRoot> colored_almost_positive_roots(const DynkinQuiver& q, int d);
nlohmann::json to_json(const ColoredRoot& r);
std::string to_string(const ColoredRoot& r);

/// prod_i (d h + e_i + 1) / (e_i + 1) from the Coxeter number and exponents.
long long fomin_reading_count(const DynkinQuiver& q, int d);

struct FacetStats {
    long long facets = 0;
    bool pure = true;                 // every facet has n vertices
    long long ridges = 0;             // codimension-one faces
    long long ridge_violations = 0;   // ridges not in exactly d + 1 facets
    long long color_violations = 0;   // ridges whose complements miss a color in 1..d
    std::vector<ObjectSet> examples;  // first offending ridges
    bool ok() const { return pure && ridge_violations == 0 && color_violations == 0; }
};

class ClusterComplex {
public:
    ClusterComplex(std::shared_ptr<const TiltingTheory> tilting, bool positive_only = false);

    const TiltingTheory& tilting() const { return *t_; }
    const OrbitCategory& category() const { return t_->category(); }
    bool positive_only() const { return positive_; }

    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<ObjectSet>& facets() const { return facets_; }
    ColoredRoot label(int x) const { return gamma(category(), x); }

    /// Face counts by size, starting with the empty face.
    std::vector<long long> f_vector() const;
    /// Purity, ridge incidence and colors of complements. Full complex only.
    FacetStats facet_stats() const;
    /// Facet pairs (i < j, sorted) sharing a codimension-one face.
    std::vector<std::pair<int, int>> facet_adjacency() const;

    nlohmann::json to_json() const;
    /// Facet-adjacency graph; vertices labelled by sorted object names.
    std::string to_dot() const;

private:
    std::shared_ptr<const TiltingTheory> t_;
    bool positive_;
    std::vector<int> vertices_;
    std::vector<ObjectSet> facets_;
};

} // namespace dcluster
