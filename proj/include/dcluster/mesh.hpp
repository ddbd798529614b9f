// The bounded derived category of a Dynkin quiver realized as the mesh
// category of the translation quiver Z Q^op.
//
// Vertex (m, t) is tau^{-m} P_t. For every arrow s -> t of Q there are
// arrows (m, t) -> (m, s) and (m, s) -> (m + 1, t). Morphism spaces come
// from knitting hammocks; every basis vector of a hammock is the class of
// one path, so automorphisms of the translation quiver act on morphisms by
// relabelling paths.
#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <vector>

#include "dcluster/linalg.hpp"
#include "dcluster/modules.hpp"

namespace dcluster {

struct ZVertex {
    int slice = 0;
    int vertex = 0;
    friend auto operator<=>(const ZVertex&, const ZVertex&) = default;
};

class MeshCategory {
public:
    explicit MeshCategory(std::shared_ptr<const ModuleCategory> modules);

    const ModuleCategory& modules() const { return *modules_; }
    const PrimeField& field() const { return modules_->field(); }

    std::vector<ZVertex> predecessors(ZVertex y) const;
    std::vector<ZVertex> successors(ZVertex y) const;

    ZVertex tau(ZVertex z, int power = 1) const { return {z.slice - power, z.vertex}; }
    ZVertex shift(ZVertex z, int k) const;
    /// F^a with F = tau^{-1} [d].
    ZVertex auto_f(ZVertex z, int d, int a) const;

    /// Position of the module with the given root id.
    ZVertex module_vertex(int root) const { return module_vertex_[root]; }
    /// Position of M[k].
    ZVertex object(int root, int k) const { return shift(module_vertex_[root], k); }
    bool in_module_region(ZVertex z) const;
    /// (root id, k) with z = M[k].
    std::pair<int, int> stalk(ZVertex z) const;

    /// Last slice of the module region along orbit t (tau^{-last} P_t is injective).
    int last_slice(int t) const { return last_slice_[t]; }

    int hom_dim(ZVertex x, ZVertex y) const;

    struct Morphism {
        ZVertex source, target;
        Vec coords;
        bool is_zero() const { return dcluster::is_zero(coords); }
        friend bool operator==(const Morphism&, const Morphism&) = default;
    };

    Morphism zero(ZVertex x, ZVertex y) const { return {x, y, Vec(hom_dim(x, y), 0)}; }
    Morphism identity(ZVertex x) const { return {x, x, Vec{1}}; }
    Morphism basis_element(ZVertex x, ZVertex y, std::size_t k) const;

    /// f after g.
    Morphism compose(const Morphism& f, const Morphism& g) const;
    Morphism add(const Morphism& f, const Morphism& g) const;
    Morphism scale(std::uint32_t s, const Morphism& f) const;

    /// Image of f under a translation-quiver automorphism given on vertices.
    Morphism map(const Morphism& f, const std::function<ZVertex(ZVertex)>& phi) const;

    /// Path (list of vertices, source first) whose class is basis element k of Hom(x, y).
    std::vector<ZVertex> basis_path(ZVertex x, ZVertex y, std::size_t k) const;

private:
    struct Node {
        int dim = 0;
        std::vector<Matrix> arrow_in; // per predecessor, dim x dim(pred)
        // basis vector b is the image of basis vector lift_index[b] of predecessor lift_pred[b]
        std::vector<int> lift_pred, lift_index;
    };
    struct Hammock {
        int slices = 0;
        std::vector<Node> nodes; // slice * n + vertex, relative to the source (0, v)
    };

    const Node* node(int v, ZVertex rel) const;
    Vec push(ZVertex source, const std::vector<ZVertex>& path, Vec start) const;

    std::shared_ptr<const ModuleCategory> modules_;
    int n_ = 0;
    std::vector<int> slice_order_; // within a slice, targets of Q-arrows first
    std::vector<Hammock> hammocks_;
    std::vector<ZVertex> module_vertex_;
    std::vector<int> last_slice_;
    std::vector<int> injective_orbit_; // w -> orbit x whose last module is I_w
    std::vector<int> orbit_of_injective_; // x -> w
    std::vector<std::vector<int>> root_at_; // [t][m] for 0 <= m <= last_slice(t)
};

} // namespace dcluster
