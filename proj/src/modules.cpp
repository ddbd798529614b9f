#include "dcluster/modules.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace dcluster {

namespace {

Vec unit(std::size_t n, std::size_t i)
{
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

int position(const std::vector<int>& list, int value)
{
    auto it = std::find(list.begin(), list.end(), value);
    return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

Representation projective_rep(const Quiver& q, int x)
{
    Representation r;
    r.dims.assign(q.size(), 0);
    for (int v = 0; v < q.size(); ++v) r.dims[v] = q.reaches(x, v) ? 1 : 0;
    for (const auto& a : q.arrows()) {
        Matrix m(r.dims[a.target], r.dims[a.source]);
        if (r.dims[a.source] && r.dims[a.target]) m(0, 0) = 1;
        r.maps.push_back(m);
    }
    return r;
}

Root injective_dims(const Quiver& q, int x)
{
    Root d(q.size(), 0);
    for (int v = 0; v < q.size(); ++v) d[v] = q.reaches(v, x) ? 1 : 0;
    return d;
}

// Vector of P0 at vertex u carried along the path u ~> w.
Vec transport_in_sum(const Quiver& q, const ProjectiveSum& p, int u, int w, const Vec& x)
{
    const auto bu = p.basis_at(q, u);
    const auto bw = p.basis_at(q, w);
    Vec out(bw.size(), 0);
    for (std::size_t i = 0; i < bu.size(); ++i) out[position(bw, bu[i])] = x[i];
    return out;
}

// pi_w : P0_w -> M_w
Matrix pi_matrix(const PrimeField& f, const Quiver& q, const Representation& m, const Presentation& p, int w)
{
    const auto basis = p.top.basis_at(q, w);
    std::vector<Vec> cols;
    for (int g : basis) cols.push_back(apply(f, path_matrix(f, q, m, p.top.gens[g], w), p.top_images[g]));
    return from_columns(m.dims[w], cols);
}

// iota_w : P1_w -> P0_w
Matrix iota_matrix(const Quiver& q, const Presentation& p, int w)
{
    const auto basis = p.relations.basis_at(q, w);
    std::vector<Vec> cols;
    for (int r : basis)
        cols.push_back(transport_in_sum(q, p.top, p.relations.gens[r], w, p.relation_vectors[r]));
    return from_columns(p.top.basis_at(q, w).size(), cols);
}

// Generators of the top of M: per vertex, unit vectors completing the
// radical (sum of incoming images) to a basis.
void top_generators(const PrimeField& f, const Quiver& q, const Representation& m, std::vector<int>& gens,
                    std::vector<Vec>& images)
{
    for (int v = 0; v < q.size(); ++v) {
        if (m.dims[v] == 0) continue;
        std::vector<Vec> cols;
        for (int a : q.in_arrows(v))
            for (std::size_t c = 0; c < m.maps[a].cols(); ++c) cols.push_back(m.maps[a].column(c));
        const Quotient qt = quotient_by_columns(f, from_columns(m.dims[v], cols));
        for (auto lift : qt.lifts) {
            gens.push_back(v);
            images.push_back(unit(m.dims[v], lift));
        }
    }
}

// Subrepresentation given by column bases sub[v] of an ambient
// representation whose arrow action is `act(a, vector at source)`.
template <class Act>
Representation restrict_to(const PrimeField& f, const Quiver& q, const std::vector<Matrix>& sub, Act act)
{
    Representation r;
    r.dims.resize(q.size());
    for (int v = 0; v < q.size(); ++v) r.dims[v] = static_cast<int>(sub[v].cols());
    for (int a = 0; a < static_cast<int>(q.arrows().size()); ++a) {
        const auto& ar = q.arrows()[a];
        Matrix m(r.dims[ar.target], r.dims[ar.source]);
        for (int c = 0; c < r.dims[ar.source]; ++c) {
            const Vec image = act(a, sub[ar.source].column(c));
            const auto coords = solve(f, sub[ar.target], image);
            if (!coords) throw std::logic_error("subrepresentation is not closed under an arrow");
            m.set_column(c, *coords);
        }
        r.maps.push_back(std::move(m));
    }
    return r;
}

std::optional<Representation> tau_on(const PrimeField& f, const Quiver& q, const Representation& m)
{
    const Presentation p = minimal_presentation(f, q, m);
    if (p.relations.gens.empty()) return std::nullopt;
    const int n = q.size();
    // nu P1 = sum of I_{u_r}, nu P0 = sum of I_{v_g}; basis at w are the
    // summands whose socle vertex is reachable from w.
    auto inj_basis = [&](const ProjectiveSum& s, int w) {
        std::vector<int> b;
        for (int i = 0; i < static_cast<int>(s.gens.size()); ++i)
            if (q.reaches(w, s.gens[i])) b.push_back(i);
        return b;
    };
    std::vector<Matrix> kernels(n);
    for (int w = 0; w < n; ++w) {
        const auto rows = inj_basis(p.top, w);
        const auto cols = inj_basis(p.relations, w);
        Matrix nu(rows.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const int r = cols[j];
            const int u = p.relations.gens[r];
            const auto p0_at_u = p.top.basis_at(q, u);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const int pos = position(p0_at_u, rows[i]);
                if (pos >= 0) nu(i, j) = p.relation_vectors[r][pos];
            }
        }
        kernels[w] = nullspace(f, nu);
    }
    auto act = [&](int a, const Vec& x) {
        const auto& ar = q.arrows()[a];
        const auto bs = inj_basis(p.relations, ar.source);
        const auto bt = inj_basis(p.relations, ar.target);
        Vec out(bt.size(), 0);
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const int pos = position(bt, bs[i]);
            if (pos >= 0) out[pos] = x[i];
        }
        return out;
    };
    return restrict_to(f, q, kernels, act);
}

} // namespace

std::vector<int> ProjectiveSum::basis_at(const Quiver& q, int w) const
{
    std::vector<int> b;
    for (int g = 0; g < static_cast<int>(gens.size()); ++g)
        if (q.reaches(gens[g], w)) b.push_back(g);
    return b;
}

Matrix path_matrix(const PrimeField& f, const Quiver& q, const Representation& m, int u, int v)
{
    if (!q.reaches(u, v)) throw std::logic_error("path_matrix: no path");
    Matrix acc = Matrix::identity(m.dims[u]);
    for (int a : q.path(u, v)) acc = multiply(f, m.maps[a], acc);
    return acc;
}

bool ModuleMorphism::is_zero() const
{
    return std::all_of(components.begin(), components.end(), [](const Matrix& m) { return m.is_zero(); });
}

Vec Ext1Space::representative(std::size_t k) const { return unit(cocycle_dim, quotient.lifts[k]); }

Presentation minimal_presentation(const PrimeField& f, const Quiver& q, const Representation& m)
{
    Presentation p;
    top_generators(f, q, m, p.top.gens, p.top_images);

    const int n = q.size();
    std::vector<Matrix> kernels(n);
    for (int w = 0; w < n; ++w) kernels[w] = nullspace(f, pi_matrix(f, q, m, p, w));
    auto act = [&](int a, const Vec& x) {
        const auto& ar = q.arrows()[a];
        return transport_in_sum(q, p.top, ar.source, ar.target, x);
    };
    const Representation k = restrict_to(f, q, kernels, act);

    std::vector<int> rel_vertices;
    std::vector<Vec> rel_coords;
    top_generators(f, q, k, rel_vertices, rel_coords);
    p.relations.gens = rel_vertices;
    for (std::size_t r = 0; r < rel_vertices.size(); ++r)
        p.relation_vectors.push_back(apply(f, kernels[rel_vertices[r]], rel_coords[r]));

    // The kernel of a projective cover over a hereditary algebra is projective.
    int kdim = 0, p1dim = 0;
    for (int w = 0; w < n; ++w) {
        kdim += k.dims[w];
        p1dim += static_cast<int>(p.relations.basis_at(q, w).size());
    }
    if (kdim != p1dim) throw std::logic_error("syzygy is not projective");
    return p;
}

Representation dual(const Representation& m)
{
    Representation d;
    d.id = m.id;
    d.dims = m.dims;
    for (const auto& a : m.maps) d.maps.push_back(a.transpose());
    return d;
}

ModuleCategory::ModuleCategory(DynkinQuiver q, std::uint32_t prime)
    : q_(std::move(q)), op_(q_.quiver().opposite()), field_(prime), roots_(positive_roots(q_))
{
    const int n = q_.rank();
    const int count = size();
    reps_.resize(count);
    projective_.assign(n, -1);
    injective_.assign(n, -1);
    projective_vertex_.assign(count, -1);
    injective_vertex_.assign(count, -1);
    tau_.assign(count, -1);
    tau_inv_.assign(count, -1);

    for (int x = 0; x < n; ++x) {
        injective_[x] = id_of(injective_dims(quiver(), x));
        injective_vertex_[injective_[x]] = x;
    }

    std::vector<bool> built(count, false);
    std::deque<int> queue;
    for (int x = 0; x < n; ++x) {
        Representation r = projective_rep(quiver(), x);
        const int id = id_of(r.dims);
        r.id = id;
        projective_[x] = id;
        projective_vertex_[id] = x;
        reps_[id] = std::move(r);
        built[id] = true;
        queue.push_back(id);
    }
    // Knit the preprojective component with tau^-1.
    while (!queue.empty()) {
        const int id = queue.front();
        queue.pop_front();
        if (is_injective(id)) continue;
        auto next = tau_inverse_rep(reps_[id]);
        if (!next) throw std::logic_error("non-injective module without tau^-1");
        const int nid = id_of(next->dims);
        if (nid < 0) throw std::logic_error("tau^-1 produced a non-root dimension vector");
        tau_inv_[id] = nid;
        tau_[nid] = id;
        if (!built[nid]) {
            next->id = nid;
            reps_[nid] = std::move(*next);
            built[nid] = true;
            queue.push_back(nid);
        }
    }
    if (std::find(built.begin(), built.end(), false) != built.end())
        throw std::logic_error("knitting did not reach every positive root");

    presentations_.reserve(count);
    for (int id = 0; id < count; ++id) presentations_.push_back(minimal_presentation(field_, quiver(), reps_[id]));
}

int ModuleCategory::id_of(const Root& dims) const
{
    auto it = std::lower_bound(roots_.begin(), roots_.end(), dims, [](const Root& a, const Root& b) {
        int ha = 0, hb = 0;
        for (int x : a) ha += x;
        for (int x : b) hb += x;
        if (ha != hb) return ha < hb;
        return a < b;
    });
    if (it == roots_.end() || *it != dims) return -1;
    return static_cast<int>(it - roots_.begin());
}

std::optional<int> ModuleCategory::tau(int id) const
{
    if (tau_[id] < 0) return std::nullopt;
    return tau_[id];
}

std::optional<int> ModuleCategory::tau_inverse(int id) const
{
    if (tau_inv_[id] < 0) return std::nullopt;
    return tau_inv_[id];
}

std::optional<Representation> ModuleCategory::tau_rep(const Representation& m) const
{
    return tau_on(field_, quiver(), m);
}

std::optional<Representation> ModuleCategory::tau_inverse_rep(const Representation& m) const
{
    auto t = tau_on(field_, op_, dual(m));
    if (!t) return std::nullopt;
    return dual(*t);
}

std::vector<ModuleMorphism> ModuleCategory::hom_basis(const Representation& m, const Representation& n) const
{
    const int nv = rank();
    std::vector<std::size_t> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + static_cast<std::size_t>(n.dims[v]) * m.dims[v];
    const std::size_t unknowns = off[nv];

    std::size_t eqs = 0;
    for (const auto& a : quiver().arrows()) eqs += static_cast<std::size_t>(n.dims[a.target]) * m.dims[a.source];
    Matrix sys(eqs, unknowns);
    std::size_t row = 0;
    for (int ai = 0; ai < static_cast<int>(quiver().arrows().size()); ++ai) {
        const auto& a = quiver().arrows()[ai];
        const int s = a.source, t = a.target;
        // f_t M_a - N_a f_s = 0
        for (int i = 0; i < n.dims[t]; ++i)
            for (int j = 0; j < m.dims[s]; ++j, ++row) {
                for (int k = 0; k < m.dims[t]; ++k)
                    sys(row, off[t] + i * m.dims[t] + k) =
                        field_.add(sys(row, off[t] + i * m.dims[t] + k), m.maps[ai](k, j));
                for (int k = 0; k < n.dims[s]; ++k)
                    sys(row, off[s] + k * m.dims[s] + j) =
                        field_.sub(sys(row, off[s] + k * m.dims[s] + j), n.maps[ai](i, k));
            }
    }
    const Matrix ns = nullspace(field_, sys);
    std::vector<ModuleMorphism> basis;
    for (std::size_t c = 0; c < ns.cols(); ++c) {
        ModuleMorphism h;
        h.source = m.id;
        h.target = n.id;
        for (int v = 0; v < nv; ++v) {
            Matrix comp(n.dims[v], m.dims[v]);
            for (int i = 0; i < n.dims[v]; ++i)
                for (int j = 0; j < m.dims[v]; ++j) comp(i, j) = ns(off[v] + i * m.dims[v] + j, c);
            h.components.push_back(std::move(comp));
        }
        basis.push_back(std::move(h));
    }
    return basis;
}

Ext1Space ModuleCategory::ext1_basis(int m, int n) const
{
    const Presentation& p = presentations_[m];
    const Representation& target = reps_[n];
    std::vector<std::size_t> col_off(p.top.gens.size() + 1, 0), row_off(p.relations.gens.size() + 1, 0);
    for (std::size_t g = 0; g < p.top.gens.size(); ++g) col_off[g + 1] = col_off[g] + target.dims[p.top.gens[g]];
    for (std::size_t r = 0; r < p.relations.gens.size(); ++r)
        row_off[r + 1] = row_off[r] + target.dims[p.relations.gens[r]];

    Ext1Space e;
    e.source = m;
    e.target = n;
    e.cocycle_dim = row_off.back();
    e.coboundary = Matrix(row_off.back(), col_off.back());
    for (std::size_t r = 0; r < p.relations.gens.size(); ++r) {
        const int u = p.relations.gens[r];
        const auto p0_at_u = p.top.basis_at(quiver(), u);
        for (std::size_t i = 0; i < p0_at_u.size(); ++i) {
            const int g = p0_at_u[i];
            const std::uint32_t coef = p.relation_vectors[r][i];
            if (coef == 0) continue;
            const Matrix path = path_matrix(field_, quiver(), target, p.top.gens[g], u);
            for (std::size_t a = 0; a < path.rows(); ++a)
                for (std::size_t b = 0; b < path.cols(); ++b)
                    e.coboundary(row_off[r] + a, col_off[g] + b) = field_.add(
                        e.coboundary(row_off[r] + a, col_off[g] + b), field_.mul(coef, path(a, b)));
        }
    }
    e.quotient = quotient_by_columns(field_, e.coboundary);
    return e;
}

ModuleMorphism ModuleCategory::identity(int id) const
{
    ModuleMorphism h;
    h.source = h.target = id;
    for (int v = 0; v < rank(); ++v) h.components.push_back(Matrix::identity(reps_[id].dims[v]));
    return h;
}

ExtClass ModuleCategory::ext_basis_class(int m, int n, std::size_t k) const
{
    const auto e = ext1_basis(m, n);
    if (k >= e.dim()) throw std::out_of_range("Ext^1 basis index out of range");
    return {m, n, unit(e.dim(), k)};
}

YonedaElement ModuleCategory::yoneda_compose(const YonedaElement& f, const YonedaElement& g) const
{
    const bool f_ext = std::holds_alternative<ExtClass>(f);
    const bool g_ext = std::holds_alternative<ExtClass>(g);
    if (f_ext && g_ext) throw std::invalid_argument("Yoneda product of two extensions lands in Ext^2 = 0");
    const int g_target = g_ext ? std::get<ExtClass>(g).target : std::get<ModuleMorphism>(g).target;
    const int f_source = f_ext ? std::get<ExtClass>(f).source : std::get<ModuleMorphism>(f).source;
    if (g_target != f_source) throw std::invalid_argument("Yoneda product of non-composable elements");

    if (!f_ext && !g_ext) {
        const auto& a = std::get<ModuleMorphism>(f);
        const auto& b = std::get<ModuleMorphism>(g);
        ModuleMorphism c;
        c.source = b.source;
        c.target = a.target;
        for (int v = 0; v < rank(); ++v) c.components.push_back(multiply(field_, a.components[v], b.components[v]));
        return c;
    }

    if (!f_ext) {
        // h o epsilon: post-compose the cocycle.
        const auto& h = std::get<ModuleMorphism>(f);
        const auto& eps = std::get<ExtClass>(g);
        const Presentation& p = presentations_[eps.source];
        const Ext1Space src = ext1_basis(eps.source, eps.target);
        const Ext1Space dst = ext1_basis(eps.source, h.target);
        Vec cocycle(src.cocycle_dim, 0);
        for (std::size_t k = 0; k < eps.coords.size(); ++k) axpy(field_, eps.coords[k], src.representative(k), cocycle);
        Vec out;
        std::size_t off = 0;
        for (int u : p.relations.gens) {
            const Vec piece(cocycle.begin() + off, cocycle.begin() + off + reps_[eps.target].dims[u]);
            const Vec img = apply(field_, h.components[u], piece);
            out.insert(out.end(), img.begin(), img.end());
            off += reps_[eps.target].dims[u];
        }
        return ExtClass{eps.source, h.target, dst.classify(field_, out)};
    }

    // epsilon o h: lift h to the presentations, then restrict the cocycle.
    const auto& eps = std::get<ExtClass>(f);
    const auto& h = std::get<ModuleMorphism>(g);
    const int m = h.source, n = h.target, l = eps.target;
    const Presentation& pm = presentations_[m];
    const Presentation& pn = presentations_[n];
    const Representation& rn = reps_[n];
    const Representation& rl = reps_[l];

    std::vector<Vec> h0; // per top generator of M: element of P0(N) at its vertex
    for (std::size_t g = 0; g < pm.top.gens.size(); ++g) {
        const int v = pm.top.gens[g];
        const Vec y = apply(field_, h.components[v], pm.top_images[g]);
        const auto x = solve(field_, pi_matrix(field_, quiver(), rn, pn, v), y);
        if (!x) throw std::logic_error("projective cover is not surjective");
        h0.push_back(*x);
    }
    auto apply_h0 = [&](int u, const Vec& rho) {
        const auto basis = pm.top.basis_at(quiver(), u);
        Vec out(pn.top.basis_at(quiver(), u).size(), 0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const int g = basis[i];
            axpy(field_, rho[i], transport_in_sum(quiver(), pn.top, pm.top.gens[g], u, h0[g]), out);
        }
        return out;
    };

    const Ext1Space src = ext1_basis(n, l);
    const Ext1Space dst = ext1_basis(m, l);
    Vec cocycle(src.cocycle_dim, 0);
    for (std::size_t k = 0; k < eps.coords.size(); ++k) axpy(field_, eps.coords[k], src.representative(k), cocycle);
    std::vector<Vec> c_parts;
    {
        std::size_t off = 0;
        for (int u : pn.relations.gens) {
            c_parts.emplace_back(cocycle.begin() + off, cocycle.begin() + off + rl.dims[u]);
            off += rl.dims[u];
        }
    }

    Vec out;
    for (std::size_t r = 0; r < pm.relations.gens.size(); ++r) {
        const int u = pm.relations.gens[r];
        const Vec z = apply_h0(u, pm.relation_vectors[r]);
        const auto x = solve(field_, iota_matrix(quiver(), pn, u), z);
        if (!x) throw std::logic_error("lift does not preserve syzygies");
        const auto basis = pn.relations.basis_at(quiver(), u);
        Vec value(rl.dims[u], 0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const int rr = basis[i];
            axpy(field_, (*x)[i], apply(field_, path_matrix(field_, quiver(), rl, pn.relations.gens[rr], u), c_parts[rr]),
                 value);
        }
        out.insert(out.end(), value.begin(), value.end());
    }
    return ExtClass{m, l, dst.classify(field_, out)};
}

nlohmann::json to_json(const Representation& m, const Quiver& q)
{
    nlohmann::json arrows = nlohmann::json::array();
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        nlohmann::json mat = nlohmann::json::array();
        for (std::size_t r = 0; r < m.maps[a].rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.maps[a].cols(); ++c) row.push_back(m.maps[a](r, c));
            mat.push_back(row);
        }
        arrows.push_back({{"source", q.arrows()[a].source + 1}, {"target", q.arrows()[a].target + 1}, {"matrix", mat}});
    }
    return {{"id", m.id}, {"dims", m.dims}, {"arrows", arrows}};
}

} // namespace dcluster
