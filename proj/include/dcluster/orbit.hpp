// The d-cluster category C_d = D^b / F_d with F_d = tau^{-1}[d].
#pragma once

#include <array>
#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "dcluster/mesh.hpp"
#include "dcluster/modules.hpp"

namespace dcluster {

/// M[shift] with M given by its root id.
struct OrbitObject {
    int root = 0;
    int shift = 0;
    friend auto operator<=>(const OrbitObject&, const OrbitObject&) = default;
};

struct Normalized {
    OrbitObject object; // canonical
    int power = 0;      // object = F^power (input) in D^b
};

/// A morphism of C_d as its two graded pieces
/// Hom_D(X, Y) + Hom_D(X, F Y) between canonical representatives.
struct GradedMorphism {
    int source = -1; // canonical object indices
    int target = -1;
    Vec piece0, piece1;
    bool is_zero() const { return dcluster::is_zero(piece0) && dcluster::is_zero(piece1); }
    Vec coords() const;
    friend bool operator==(const GradedMorphism&, const GradedMorphism&) = default;
};

class OrbitCategory {
public:
    OrbitCategory(std::shared_ptr<const ModuleCategory> modules, int d);

    int d() const { return d_; }
    int rank() const { return modules_->rank(); }
    const ModuleCategory& modules() const { return *modules_; }
    std::shared_ptr<const ModuleCategory> modules_ptr() const { return modules_; }
    const MeshCategory& mesh() const { return mesh_; }

    /// Canonical objects ordered by (degree, root id).
    const std::vector<OrbitObject>& objects() const { return objects_; }
    int size() const { return static_cast<int>(objects_.size()); }
    const OrbitObject& object(int i) const { return objects_[i]; }
    int index_of(const OrbitObject& x) const; // -1 when not canonical
    bool is_canonical(const OrbitObject& x) const;

    int degree(int i) const { return objects_[i].shift; }
    int color(int i) const { return degree(i) <= d_ - 1 ? degree(i) + 1 : 1; }
    /// root#<index>[<degree>]
    std::string name(int i) const;
    int index_of_name(const std::string& name) const; // -1 when unknown

    /// Canonical form via the stalk rules for tau^{+-1} and [k].
    Normalized normalize(int root, int shift) const;
    /// Same, computed by walking F-orbits in Z Q^op.
    Normalized normalize_mesh(int root, int shift) const;
    /// Canonical index of X[k].
    int shifted(int i, int k) const;

    ZVertex position(int i) const { return positions_[i]; }

    /// dim Hom_D(X, F^l Y) from the mesh model.
    int piece_dim(int x, int y, int l) const;
    /// The same dimension through the module engine: F^l Y written as a
    /// stalk N[j], then Hom_H, Ext^1_H or 0 according to j - deg X.
    int piece_dim_modules(int x, int y, int l) const;

    int hom_dim(int x, int y) const { return ext_[0][x * size() + y]; }
    /// dim Ext^i(X, Y) = dim Hom(X, Y[i]) for 0 <= i <= d + 1.
    int ext_dim(int x, int y, int i) const;

    GradedMorphism zero(int x, int y) const;
    GradedMorphism identity(int x) const;
    /// Basis of Hom_C(X, Y): piece 0 units, then piece 1 units.
    std::vector<GradedMorphism> hom_basis(int x, int y) const;
    GradedMorphism from_coords(int x, int y, const Vec& coords) const;

    /// f after g. Throws std::logic_error if a piece outside l in {0,1}
    /// would be nonzero.
    GradedMorphism compose(const GradedMorphism& f, const GradedMorphism& g) const;
    GradedMorphism add(const GradedMorphism& f, const GradedMorphism& g) const;
    GradedMorphism scale(std::uint32_t s, const GradedMorphism& f) const;

    /// f[k] between the canonical forms of X[k] and Y[k].
    GradedMorphism shift(const GradedMorphism& f, int k) const;

    /// (dim Ext^i(X,Y), dim Ext^{d+1-i}(Y,X)).
    std::pair<int, int> serre_dual_dim(int x, int y, int i) const;

private:
    MeshCategory::Morphism piece(const GradedMorphism& f, int l) const;

    std::shared_ptr<const ModuleCategory> modules_;
    int d_;
    MeshCategory mesh_;
    std::vector<OrbitObject> objects_;
    std::vector<ZVertex> positions_;
    std::vector<std::vector<int>> index_; // [shift][root]
    std::vector<std::vector<int>> ext_;   // [i][x * N + y]
};

} // namespace dcluster
