// Dynkin quivers, positive roots, the Euler form and Coxeter data.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dcluster {

/// Integer vector over the simple roots; also the dimension vector of a
/// representation.
using Root = std::vector<int>;
using IntMatrix = std::vector<std::vector<long long>>;

struct Arrow {
    int source; // 0-based vertex
    int target;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A finite quiver whose underlying graph is a tree, so between any two
/// vertices there is at most one path.
class Quiver {
public:
    Quiver() = default;
    Quiver(int vertices, std::vector<Arrow> arrows);

    int size() const { return n_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<int>& in_arrows(int v) const { return in_[v]; }
    const std::vector<int>& out_arrows(int v) const { return out_[v]; }

    /// A path u ~> v exists (u ~> u always does).
    bool reaches(int u, int v) const { return reach_[u][v]; }
    /// Arrow indices of the unique path u ~> v, in traversal order.
    const std::vector<int>& path(int u, int v) const { return paths_[u][v]; }

    /// Same vertices, every arrow reversed; arrow indices are preserved.
    Quiver opposite() const;

    /// Vertices ordered so that the target of every arrow precedes its source.
    std::vector<int> targets_first_order() const;

private:
    int n_ = 0;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> in_, out_;
    std::vector<std::vector<bool>> reach_;
    std::vector<std::vector<std::vector<int>>> paths_;
};

enum class Diagram { A, D, E };

std::string to_string(Diagram t);
Diagram diagram_from_string(std::string_view s);

/// An orientation of a simply laced Dynkin diagram.
class DynkinQuiver {
public:
    /// Validates the arrows against the diagram; throws std::invalid_argument.
    DynkinQuiver(Diagram type, int rank, const std::vector<Arrow>& arrows);

    /// Default orientation: A_n linear 1->2->...->n; D and E types with
    /// every edge pointing toward the branch vertex.
    static DynkinQuiver standard(Diagram type, int rank);

    Diagram type() const { return type_; }
    int rank() const { return rank_; }
    const Quiver& quiver() const { return quiver_; }
    std::string name() const; // e.g. "D4"

    /// Unoriented edges of the labelled diagram used by `standard`.
    static std::vector<std::pair<int, int>> diagram_edges(Diagram type, int rank);

    /// Stable FNV-1a hash of the arrow list.
    std::uint64_t orientation_hash() const;

private:
    Diagram type_;
    int rank_;
    Quiver quiver_;
};

/// Parses either the text form "A 2, arrows: 1->2, ..." / "D 4, default" /
/// "A 1" or a JSON object {"diagram":"A","rank":2,"arrows":[[1,2]]}.
/// Vertices are 1-based in both forms.
DynkinQuiver parse_quiver(std::string_view spec);

nlohmann::json to_json(const DynkinQuiver& q);

/// Positive roots in canonical order: by height, then lexicographically.
std::vector<Root> positive_roots(const DynkinQuiver& q);

/// <a,b> = sum_i a_i b_i - sum_{arrows s->t} a_s b_t.
int euler_form(const DynkinQuiver& q, const Root& a, const Root& b);

/// Symmetric Cartan pairing (a,b) = <a,b> + <b,a>.
int cartan_form(const DynkinQuiver& q, const Root& a, const Root& b);

struct CoxeterData {
    int h = 0;
    std::vector<int> exponents; // sorted ascending
};

/// h is the order of s_1 s_2 ... s_n on the root lattice; exponents come
/// from the eigenvalue multiset exp(2 pi i e / h) of that element.
CoxeterData coxeter_data(const DynkinQuiver& q);

/// The Coxeter transformation adapted to the orientation:
/// dim(tau M) = Phi dim(M) for non-projective M.
IntMatrix coxeter_transformation(const DynkinQuiver& q);

IntMatrix simple_reflection(const DynkinQuiver& q, int i);
IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);
Root int_apply(const IntMatrix& a, const Root& v);

} // namespace dcluster
