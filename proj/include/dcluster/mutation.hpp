// Complements of almost complete tilting objects, the cyclic chain of
// connecting triangles X_{i+1} -> B_i -> X_i -> X_{i+1}[1], exchange teams
// and the mutation graph.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcluster/tilting.hpp"

namespace dcluster {

/// Raised when a computed fan contradicts the expected structure.
struct FanError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Description of the first failure found by a check, or nothing.
using Violation = std::optional<std::string>;

/// Minimal right add(T)-approximation B -> target.
struct Approximation {
    int target = -1;
    std::vector<int> objects;      // support in canonical order
    std::vector<int> multiplicity; // per support object
    std::vector<int> summand;      // object of each copy, grouped like `objects`
    std::vector<GradedMorphism> maps; // one per copy, into target
    int total() const { return static_cast<int>(maps.size()); }
};

Approximation minimal_right_approximation(const OrbitCategory& c, int target, const ObjectSet& addset);
/// Every map from an object of addset to the target factors through the approximation.
bool is_right_approximation(const OrbitCategory& c, const Approximation& a, const ObjectSet& addset);

struct ConnectingTriangle {
    int index = 0;
    int x = -1;    // X_i
    int next = -1; // X_{i+1}
    Approximation middle; // B_i -> X_i
    GradedMorphism delta; // X_i -> X_{i+1}[1]
};

struct ComplementFan {
    ObjectSet base;
    std::vector<int> cycle; // X_0 .. X_d
    std::vector<ConnectingTriangle> triangles;
};

/// dim Ext^k(X_i, X_j) = dim End(X_i) if j = i + k mod (d + 1), else 0,
/// for 1 <= k <= d. With with_hom the same is demanded of Hom (k = 0),
/// which fails in general: Hom(X_{i+1}, X_i) is dual to Ext^{d+1}(X_i, X_{i+1})
/// and can be nonzero (already for A_3).
Violation ext_pattern(const OrbitCategory& c, const std::vector<int>& cycle, bool with_hom);
/// delta_i spans Hom(X_i, X_{i+1}[1]); throws FanError when that space is not one-dimensional.
std::vector<GradedMorphism> connecting_classes(const OrbitCategory& c, const std::vector<int>& cycle);
/// delta_{i+m-1}[m-1] ... delta_{i+1}[1] delta_i != 0 for every i and 1 <= m <= d + 1.
Violation composites_nonzero(const OrbitCategory& c, const std::vector<int>& cycle);
/// Ext^{1..d} dimension pattern and nonzero composites.
bool is_exchange_team(const OrbitCategory& c, const std::vector<int>& objs);

Violation check_degree_bounds(const OrbitCategory& c, const std::vector<int>& cycle);     // deg X_0 = 0 bounds
Violation check_first_row(const OrbitCategory& c, const std::vector<int>& cycle);         // Ext^i(X_0, X_i)
Violation check_endomorphisms(const OrbitCategory& c, const std::vector<int>& cycle);     // dim End(X_i)
Violation check_middle_rigid(const TiltingTheory& t, const ComplementFan& fan);            // B + X_i rigid
Violation check_disjoint_middles(const ComplementFan& fan);
Violation check_consecutive_hom(const OrbitCategory& c, const std::vector<int>& cycle);   // Hom(X_i, X_{i+1}) = 0
Violation check_one_directional(const OrbitCategory& c, const ObjectSet& tilting);

struct DegreeProfile {
    bool applicable = false; // some X_r of degree 0 is followed by a nonzero degree
    int rotation = 0;        // first such r
    std::optional<int> k;    // nothing when the degrees fit no k
};
DegreeProfile degree_profile(const OrbitCategory& c, const std::vector<int>& cycle);

struct MutationGraph {
    std::vector<ObjectSet> vertices;
    std::vector<std::pair<int, int>> edges; // i < j, sorted
    std::vector<std::vector<int>> adjacency;
    bool connected() const;
    /// The common degree, or nothing.
    std::optional<int> regular_degree() const;
};

/// Undirected DOT graph; each vertex is labelled by its object names.
std::string to_dot(const MutationGraph& g, const OrbitCategory& c);

class MutationEngine {
public:
    explicit MutationEngine(std::shared_ptr<const TiltingTheory> tilting);

    const TiltingTheory& tilting() const { return *t_; }
    const OrbitCategory& category() const { return t_->category(); }

    /// Indecomposables Y outside `almost` with almost + Y rigid, canonical order.
    std::vector<int> complements(const ObjectSet& almost) const;
    /// Cyclic order starting at the smallest complement; X_{i+1} is the
    /// complement with Ext^1(X_i, X_{i+1}) != 0. Throws FanError.
    std::vector<int> order_into_fan(const std::vector<int>& comps) const;
    /// Throws std::invalid_argument if `almost` is not rigid of size n - 1
    /// and FanError if the complements do not form a fan.
    ComplementFan fan(const ObjectSet& almost) const;

    /// All codimension-one subsets of tilting sets, sorted, without repeats.
    std::vector<ObjectSet> almost_complete_objects() const;

    /// An almost complete object whose complements are exactly `team`.
    std::optional<ObjectSet> find_base(const std::vector<int>& team) const;

    /// Replace `drop` by the pick-th complement after it in fan order, 1 <= pick <= d.
    ObjectSet mutate(const ObjectSet& t, int drop, int pick) const;

    MutationGraph mutation_graph() const;

private:
    std::shared_ptr<const TiltingTheory> t_;
};

} // namespace dcluster
