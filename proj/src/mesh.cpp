#include "dcluster/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcluster {

MeshCategory::MeshCategory(std::shared_ptr<const ModuleCategory> modules)
    : modules_(std::move(modules)), n_(modules_->rank())
{
    const Quiver& q = modules_->quiver();
    slice_order_ = q.targets_first_order();

    // Module region from the tau^-1 orbits of the projectives.
    module_vertex_.assign(modules_->size(), {0, -1});
    last_slice_.assign(n_, 0);
    root_at_.assign(n_, {});
    injective_orbit_.assign(n_, -1);
    orbit_of_injective_.assign(n_, -1);
    for (int t = 0; t < n_; ++t) {
        int id = modules_->projective(t);
        int m = 0;
        while (true) {
            module_vertex_[id] = {m, t};
            root_at_[t].push_back(id);
            auto next = modules_->tau_inverse(id);
            if (!next) break;
            id = *next;
            ++m;
        }
        last_slice_[t] = m;
        const int w = modules_->injective_vertex(id);
        injective_orbit_[w] = t;
        orbit_of_injective_[t] = w;
    }
    for (const auto& z : module_vertex_)
        if (z.vertex < 0) throw std::logic_error("a module is missing from the preprojective orbits");

    // Knit one hammock per source (0, v).
    const PrimeField& f = field();
    hammocks_.resize(n_);
    for (int v = 0; v < n_; ++v) {
        Hammock& h = hammocks_[v];
        for (int m = 0;; ++m) {
            h.nodes.resize(static_cast<std::size_t>(m + 1) * n_);
            h.slices = m + 1;
            bool any = false;
            for (int t : slice_order_) {
                const ZVertex y{m, t};
                Node& out = h.nodes[static_cast<std::size_t>(m) * n_ + t];
                const auto preds = predecessors(y);
                std::vector<int> pdims;
                for (const auto& z : preds) {
                    const Node* nz = node(v, z);
                    pdims.push_back(nz ? nz->dim : 0);
                }
                if (m == 0 && t == v) {
                    out.dim = 1;
                    for (int pd : pdims) out.arrow_in.emplace_back(1, pd);
                    out.lift_pred = {-1};
                    out.lift_index = {0};
                    any = true;
                    continue;
                }
                std::vector<std::size_t> off(preds.size() + 1, 0);
                for (std::size_t i = 0; i < preds.size(); ++i) off[i + 1] = off[i] + pdims[i];
                const ZVertex ty = tau(y);
                const Node* nty = node(v, ty);
                const int tdim = nty ? nty->dim : 0;
                Matrix mesh(off.back(), tdim);
                for (std::size_t i = 0; i < preds.size() && tdim > 0; ++i) {
                    if (pdims[i] == 0) continue;
                    const Node* nz = node(v, preds[i]);
                    const auto zp = predecessors(preds[i]);
                    const auto pos = std::find(zp.begin(), zp.end(), ty) - zp.begin();
                    const Matrix& a = nz->arrow_in[pos];
                    for (std::size_t r = 0; r < a.rows(); ++r)
                        for (std::size_t c = 0; c < a.cols(); ++c) mesh(off[i] + r, c) = a(r, c);
                }
                const Quotient qt = quotient_by_columns(f, mesh);
                out.dim = static_cast<int>(qt.lifts.size());
                for (std::size_t i = 0; i < preds.size(); ++i) {
                    Matrix a(out.dim, pdims[i]);
                    for (int r = 0; r < out.dim; ++r)
                        for (int c = 0; c < pdims[i]; ++c) a(r, c) = qt.projection(r, off[i] + c);
                    out.arrow_in.push_back(std::move(a));
                }
                for (auto u : qt.lifts) {
                    const auto blk = std::upper_bound(off.begin(), off.end(), u) - off.begin() - 1;
                    out.lift_pred.push_back(static_cast<int>(blk));
                    out.lift_index.push_back(static_cast<int>(u - off[blk]));
                }
                if (out.dim > 0) any = true;
            }
            if (!any) break;
        }
    }
}

std::vector<ZVertex> MeshCategory::predecessors(ZVertex y) const
{
    const Quiver& q = modules_->quiver();
    std::vector<ZVertex> p;
    for (int a : q.out_arrows(y.vertex)) p.push_back({y.slice, q.arrows()[a].target});
    for (int a : q.in_arrows(y.vertex)) p.push_back({y.slice - 1, q.arrows()[a].source});
    return p;
}

std::vector<ZVertex> MeshCategory::successors(ZVertex y) const
{
    const Quiver& q = modules_->quiver();
    std::vector<ZVertex> s;
    for (int a : q.in_arrows(y.vertex)) s.push_back({y.slice, q.arrows()[a].source});
    for (int a : q.out_arrows(y.vertex)) s.push_back({y.slice + 1, q.arrows()[a].target});
    return s;
}

ZVertex MeshCategory::shift(ZVertex z, int k) const
{
    for (; k > 0; --k) {
        const int x = injective_orbit_[z.vertex];
        z = {z.slice + last_slice_[x] + 1, x};
    }
    for (; k < 0; ++k) {
        const int x = z.vertex;
        z = {z.slice - last_slice_[x] - 1, orbit_of_injective_[x]};
    }
    return z;
}

ZVertex MeshCategory::auto_f(ZVertex z, int d, int a) const
{
    for (; a > 0; --a) z = tau(shift(z, d), -1);
    for (; a < 0; ++a) z = shift(tau(z, 1), -d);
    return z;
}

bool MeshCategory::in_module_region(ZVertex z) const
{
    return z.slice >= 0 && z.slice <= last_slice_[z.vertex];
}

std::pair<int, int> MeshCategory::stalk(ZVertex z) const
{
    int k = 0;
    while (!in_module_region(z)) {
        if (z.slice < 0) {
            z = shift(z, 1);
            --k;
        } else {
            z = shift(z, -1);
            ++k;
        }
    }
    return {root_at_[z.vertex][z.slice], k};
}

const MeshCategory::Node* MeshCategory::node(int v, ZVertex rel) const
{
    const Hammock& h = hammocks_[v];
    if (rel.slice < 0 || rel.slice >= h.slices) return nullptr;
    const std::size_t i = static_cast<std::size_t>(rel.slice) * n_ + rel.vertex;
    if (i >= h.nodes.size()) return nullptr;
    return &h.nodes[i];
}

int MeshCategory::hom_dim(ZVertex x, ZVertex y) const
{
    const Node* nd = node(x.vertex, {y.slice - x.slice, y.vertex});
    return nd ? nd->dim : 0;
}

MeshCategory::Morphism MeshCategory::basis_element(ZVertex x, ZVertex y, std::size_t k) const
{
    Morphism m = zero(x, y);
    if (k >= m.coords.size()) throw std::out_of_range("mesh basis index out of range");
    m.coords[k] = 1;
    return m;
}

std::vector<ZVertex> MeshCategory::basis_path(ZVertex x, ZVertex y, std::size_t k) const
{
    std::vector<ZVertex> path;
    ZVertex cur = y;
    int idx = static_cast<int>(k);
    while (cur != x) {
        const Node* nd = node(x.vertex, {cur.slice - x.slice, cur.vertex});
        if (!nd || idx >= nd->dim) throw std::logic_error("basis_path: no such basis element");
        path.push_back(cur);
        const int pred = nd->lift_pred[idx];
        if (pred < 0) throw std::logic_error("basis_path: reached a source that is not x");
        idx = nd->lift_index[idx];
        cur = predecessors(cur)[pred];
    }
    if (idx != 0) throw std::logic_error("basis_path: inconsistent source index");
    path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

Vec MeshCategory::push(ZVertex source, const std::vector<ZVertex>& path, Vec vec) const
{
    const PrimeField& f = field();
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const ZVertex z = path[i], y = path[i + 1];
        const auto preds = predecessors(y);
        const auto pos = std::find(preds.begin(), preds.end(), z) - preds.begin();
        if (pos == static_cast<long>(preds.size())) throw std::logic_error("path step is not an arrow");
        const Node* nd = node(source.vertex, {y.slice - source.slice, y.vertex});
        if (!nd) return Vec(hom_dim(source, path.back()), 0);
        vec = apply(f, nd->arrow_in[pos], vec);
    }
    return vec;
}

MeshCategory::Morphism MeshCategory::compose(const Morphism& f, const Morphism& g) const
{
    if (f.source != g.target) throw std::invalid_argument("mesh compose: not composable");
    Morphism out = zero(g.source, f.target);
    if (out.coords.empty() || g.is_zero()) return out;
    for (std::size_t b = 0; b < f.coords.size(); ++b) {
        if (f.coords[b] == 0) continue;
        const Vec img = push(g.source, basis_path(f.source, f.target, b), g.coords);
        axpy(field(), f.coords[b], img, out.coords);
    }
    return out;
}

MeshCategory::Morphism MeshCategory::add(const Morphism& f, const Morphism& g) const
{
    if (f.source != g.source || f.target != g.target) throw std::invalid_argument("mesh add: different endpoints");
    return {f.source, f.target, dcluster::add(field(), f.coords, g.coords)};
}

MeshCategory::Morphism MeshCategory::scale(std::uint32_t s, const Morphism& f) const
{
    return {f.source, f.target, dcluster::scale(field(), s, f.coords)};
}

MeshCategory::Morphism MeshCategory::map(const Morphism& f, const std::function<ZVertex(ZVertex)>& phi) const
{
    const ZVertex src = phi(f.source);
    Morphism out = zero(src, phi(f.target));
    for (std::size_t b = 0; b < f.coords.size(); ++b) {
        if (f.coords[b] == 0) continue;
        auto path = basis_path(f.source, f.target, b);
        for (auto& z : path) z = phi(z);
        const Vec img = push(src, path, Vec{1});
        axpy(field(), f.coords[b], img, out.coords);
    }
    return out;
}

} // namespace dcluster
