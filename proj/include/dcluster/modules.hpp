// Indecomposable representations of a Dynkin quiver over F_p, with Hom and
// Ext^1 bases, Auslander-Reiten translates and Yoneda composition.
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dcluster/linalg.hpp"
#include "dcluster/quiver.hpp"

namespace dcluster {

struct Representation {
    int id = -1; // index into the canonical root order, -1 if not yet known
    Root dims;
    std::vector<Matrix> maps; // per arrow s->t: dims[t] x dims[s]
};

/// Matrix of the unique path u ~> v acting on M (identity when u == v).
Matrix path_matrix(const PrimeField& f, const Quiver& q, const Representation& m, int u, int v);

/// Direct sum of indecomposable projectives P_{gens[0]} + P_{gens[1]} + ...
/// At vertex w the basis is the generators g with gens[g] ~> w, in order.
struct ProjectiveSum {
    std::vector<int> gens;
    std::vector<int> basis_at(const Quiver& q, int w) const;
};

/// 0 -> P1 -> P0 -> M -> 0. Generator g of P0 sits at vertex top.gens[g]
/// and maps to top_images[g] in M. Generator r of P1 maps to
/// relation_vectors[r], expressed in the basis of P0 at vertex relations.gens[r].
struct Presentation {
    ProjectiveSum top;
    std::vector<Vec> top_images;
    ProjectiveSum relations;
    std::vector<Vec> relation_vectors;
};

struct ModuleMorphism {
    int source = -1;
    int target = -1;
    std::vector<Matrix> components; // per vertex: dims_target[v] x dims_source[v]
    bool is_zero() const;
    friend bool operator==(const ModuleMorphism&, const ModuleMorphism&) = default;
};

/// An element of Ext^1(source, target) in coordinates of the cokernel basis.
struct ExtClass {
    int source = -1;
    int target = -1;
    Vec coords;
    bool is_zero() const { return dcluster::is_zero(coords); }
    friend bool operator==(const ExtClass&, const ExtClass&) = default;
};

using YonedaElement = std::variant<ModuleMorphism, ExtClass>;

struct Ext1Space {
    int source = -1;
    int target = -1;
    /// Hom(P1, target) written as the concatenation of target_{u_r} over
    /// the relation generators r; the cocycle space.
    std::size_t cocycle_dim = 0;
    Matrix coboundary;   // Hom(P0, target) -> Hom(P1, target)
    Quotient quotient;   // cokernel of `coboundary`
    std::size_t dim() const { return quotient.lifts.size(); }
    /// Unit cocycle representing the k-th basis class.
    Vec representative(std::size_t k) const;
    Vec classify(const PrimeField& f, const Vec& cocycle) const { return apply(f, quotient.projection, cocycle); }
};

class ModuleCategory {
public:
    ModuleCategory(DynkinQuiver q, std::uint32_t prime = 101);

    const DynkinQuiver& dynkin() const { return q_; }
    const Quiver& quiver() const { return q_.quiver(); }
    const PrimeField& field() const { return field_; }
    const std::vector<Root>& roots() const { return roots_; }
    int size() const { return static_cast<int>(roots_.size()); }
    int rank() const { return q_.rank(); }

    const Representation& rep(int id) const { return reps_[id]; }
    /// Root id of a dimension vector, or -1. Dynkin indecomposables are
    /// determined up to isomorphism by their dimension vectors.
    int id_of(const Root& dims) const;

    int projective(int v) const { return projective_[v]; }
    int injective(int v) const { return injective_[v]; }
    bool is_projective(int id) const { return projective_vertex_[id] >= 0; }
    bool is_injective(int id) const { return injective_vertex_[id] >= 0; }
    /// Vertex x with id == P_x, or -1.
    int projective_vertex(int id) const { return projective_vertex_[id]; }
    int injective_vertex(int id) const { return injective_vertex_[id]; }

    std::optional<int> tau(int id) const;
    std::optional<int> tau_inverse(int id) const;

    /// Explicit constructions; nothing when M is projective (resp. injective).
    std::optional<Representation> tau_rep(const Representation& m) const;
    std::optional<Representation> tau_inverse_rep(const Representation& m) const;

    const Presentation& presentation(int id) const { return presentations_[id]; }

    std::vector<ModuleMorphism> hom_basis(const Representation& m, const Representation& n) const;
    std::vector<ModuleMorphism> hom_basis(int m, int n) const { return hom_basis(reps_[m], reps_[n]); }
    Ext1Space ext1_basis(int m, int n) const;
    int hom_dim(int m, int n) const { return static_cast<int>(hom_basis(m, n).size()); }
    int ext1_dim(int m, int n) const { return static_cast<int>(ext1_basis(m, n).dim()); }

    ModuleMorphism identity(int id) const;
    ExtClass ext_basis_class(int m, int n, std::size_t k) const;

    /// f after g. Throws std::invalid_argument on mismatched endpoints or
    /// when both factors are extensions.
    YonedaElement yoneda_compose(const YonedaElement& f, const YonedaElement& g) const;

private:
    DynkinQuiver q_;
    Quiver op_;
    PrimeField field_;
    std::vector<Root> roots_;
    std::vector<Representation> reps_;
    std::vector<Presentation> presentations_;
    std::vector<int> projective_, injective_;
    std::vector<int> projective_vertex_, injective_vertex_;
    std::vector<int> tau_, tau_inv_;
};

/// Presentation of any representation of a tree quiver.
Presentation minimal_presentation(const PrimeField& f, const Quiver& q, const Representation& m);

/// The dual representation of Q^op: transposed maps, same arrow indices.
Representation dual(const Representation& m);

nlohmann::json to_json(const Representation& m, const Quiver& q);

} // namespace dcluster
