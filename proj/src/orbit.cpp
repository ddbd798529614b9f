#include "dcluster/orbit.hpp"

#include <regex>
#include <stdexcept>

namespace dcluster {

Vec GradedMorphism::coords() const
{
    Vec c = piece0;
    c.insert(c.end(), piece1.begin(), piece1.end());
    return c;
}

OrbitCategory::OrbitCategory(std::shared_ptr<const ModuleCategory> modules, int d)
    : modules_(std::move(modules)), d_(d), mesh_(modules_)
{
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    const int roots = modules_->size();
    index_.assign(d + 1, std::vector<int>(roots, -1));
    for (int k = 0; k <= d; ++k)
        for (int r = 0; r < roots; ++r) {
            if (k == d && !modules_->is_projective(r)) continue;
            index_[k][r] = static_cast<int>(objects_.size());
            objects_.push_back({r, k});
            positions_.push_back(mesh_.object(r, k));
        }

    const int n = size();
    ext_.assign(d + 2, std::vector<int>(static_cast<std::size_t>(n) * n, 0));
    for (int i = 0; i <= d + 1; ++i)
        for (int y = 0; y < n; ++y) {
            const int ys = shifted(y, i);
            for (int x = 0; x < n; ++x) ext_[i][x * n + y] = piece_dim(x, ys, 0) + piece_dim(x, ys, 1);
        }
}

bool OrbitCategory::is_canonical(const OrbitObject& x) const
{
    if (x.root < 0 || x.root >= modules_->size()) return false;
    if (x.shift >= 0 && x.shift < d_) return true;
    return x.shift == d_ && modules_->is_projective(x.root);
}

int OrbitCategory::index_of(const OrbitObject& x) const
{
    return is_canonical(x) ? index_[x.shift][x.root] : -1;
}

std::string OrbitCategory::name(int i) const
{
    return "root#" + std::to_string(objects_[i].root) + "[" + std::to_string(objects_[i].shift) + "]";
}

int OrbitCategory::index_of_name(const std::string& name) const
{
    static const std::regex pattern(R"(\s*root#(\d+)\[(\d+)\]\s*)");
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) return -1;
    return index_of({std::stoi(m[1]), std::stoi(m[2])});
}

Normalized OrbitCategory::normalize(int root, int shift) const
{
    const ModuleCategory& mc = *modules_;
    OrbitObject cur{root, shift};
    int power = 0;
    while (!is_canonical(cur)) {
        if (cur.shift >= d_) {
            // F^-1 (N[k]) = tau(N)[k - d]; tau(P_x[j]) = I_x[j - 1].
            if (auto t = mc.tau(cur.root)) cur = {*t, cur.shift - d_};
            else cur = {mc.injective(mc.projective_vertex(cur.root)), cur.shift - d_ - 1};
            --power;
        } else {
            // F (N[k]) = tau^-1(N)[k + d]; tau^-1(I_x[j]) = P_x[j + 1].
            if (auto t = mc.tau_inverse(cur.root)) cur = {*t, cur.shift + d_};
            else cur = {mc.projective(mc.injective_vertex(cur.root)), cur.shift + d_ + 1};
            ++power;
        }
    }
    return {cur, power};
}

Normalized OrbitCategory::normalize_mesh(int root, int shift) const
{
    ZVertex z = mesh_.object(root, shift);
    int power = 0;
    while (true) {
        auto [r, k] = mesh_.stalk(z);
        const OrbitObject cur{r, k};
        if (is_canonical(cur)) return {cur, power};
        const int step = k >= d_ ? -1 : 1;
        z = mesh_.auto_f(z, d_, step);
        power += step;
    }
}

int OrbitCategory::shifted(int i, int k) const
{
    const auto nz = normalize(objects_[i].root, objects_[i].shift + k);
    return index_of(nz.object);
}

int OrbitCategory::piece_dim(int x, int y, int l) const
{
    return mesh_.hom_dim(positions_[x], mesh_.auto_f(positions_[y], d_, l));
}

int OrbitCategory::piece_dim_modules(int x, int y, int l) const
{
    const ModuleCategory& mc = *modules_;
    OrbitObject cur = objects_[y];
    for (; l > 0; --l) {
        if (auto t = mc.tau_inverse(cur.root)) cur = {*t, cur.shift + d_};
        else cur = {mc.projective(mc.injective_vertex(cur.root)), cur.shift + d_ + 1};
    }
    for (; l < 0; ++l) {
        if (auto t = mc.tau(cur.root)) cur = {*t, cur.shift - d_};
        else cur = {mc.injective(mc.projective_vertex(cur.root)), cur.shift - d_ - 1};
    }
    const OrbitObject& src = objects_[x];
    const int gap = cur.shift - src.shift;
    if (gap == 0) return mc.hom_dim(src.root, cur.root);
    if (gap == 1) return mc.ext1_dim(src.root, cur.root);
    return 0;
}

int OrbitCategory::ext_dim(int x, int y, int i) const
{
    if (i < 0 || i > d_ + 1) throw std::out_of_range("Ext degree outside 0..d+1");
    return ext_[i][x * size() + y];
}

std::pair<int, int> OrbitCategory::serre_dual_dim(int x, int y, int i) const
{
    return {ext_dim(x, y, i), ext_dim(y, x, d_ + 1 - i)};
}

GradedMorphism OrbitCategory::zero(int x, int y) const
{
    return {x, y, Vec(piece_dim(x, y, 0), 0), Vec(piece_dim(x, y, 1), 0)};
}

GradedMorphism OrbitCategory::identity(int x) const
{
    GradedMorphism id = zero(x, x);
    id.piece0[0] = 1;
    return id;
}

GradedMorphism OrbitCategory::from_coords(int x, int y, const Vec& coords) const
{
    GradedMorphism g = zero(x, y);
    if (coords.size() != g.piece0.size() + g.piece1.size()) throw std::invalid_argument("coordinate length mismatch");
    std::copy(coords.begin(), coords.begin() + g.piece0.size(), g.piece0.begin());
    std::copy(coords.begin() + g.piece0.size(), coords.end(), g.piece1.begin());
    return g;
}

std::vector<GradedMorphism> OrbitCategory::hom_basis(int x, int y) const
{
    const GradedMorphism z = zero(x, y);
    const std::size_t total = z.piece0.size() + z.piece1.size();
    std::vector<GradedMorphism> basis;
    for (std::size_t k = 0; k < total; ++k) {
        Vec c(total, 0);
        c[k] = 1;
        basis.push_back(from_coords(x, y, c));
    }
    return basis;
}

MeshCategory::Morphism OrbitCategory::piece(const GradedMorphism& f, int l) const
{
    const ZVertex s = positions_[f.source];
    const ZVertex t = mesh_.auto_f(positions_[f.target], d_, l);
    return {s, t, l == 0 ? f.piece0 : f.piece1};
}

GradedMorphism OrbitCategory::compose(const GradedMorphism& f, const GradedMorphism& g) const
{
    if (f.source != g.target) throw std::invalid_argument("compose: target of g differs from source of f");
    const auto fmap = [this](ZVertex v) { return mesh_.auto_f(v, d_, 1); };
    const auto f0 = piece(f, 0), f1 = piece(f, 1), g0 = piece(g, 0), g1 = piece(g, 1);
    GradedMorphism out = zero(g.source, f.target);
    out.piece0 = mesh_.compose(f0, g0).coords;
    const auto ff0 = mesh_.map(f0, fmap);
    out.piece1 = mesh_.add(mesh_.compose(ff0, g1), mesh_.compose(f1, g0)).coords;
    const ZVertex x = positions_[g.source];
    const ZVertex z2 = mesh_.auto_f(positions_[f.target], d_, 2);
    if (mesh_.hom_dim(x, z2) > 0 && !mesh_.compose(mesh_.map(f1, fmap), g1).is_zero())
        throw std::logic_error("compose: nonzero component in graded piece 2");
    return out;
}

GradedMorphism OrbitCategory::add(const GradedMorphism& f, const GradedMorphism& g) const
{
    if (f.source != g.source || f.target != g.target) throw std::invalid_argument("add: different endpoints");
    const PrimeField& fl = mesh_.field();
    return {f.source, f.target, dcluster::add(fl, f.piece0, g.piece0), dcluster::add(fl, f.piece1, g.piece1)};
}

GradedMorphism OrbitCategory::scale(std::uint32_t s, const GradedMorphism& f) const
{
    const PrimeField& fl = mesh_.field();
    return {f.source, f.target, dcluster::scale(fl, s, f.piece0), dcluster::scale(fl, s, f.piece1)};
}

GradedMorphism OrbitCategory::shift(const GradedMorphism& f, int k) const
{
    const OrbitObject& xs = objects_[f.source];
    const OrbitObject& ys = objects_[f.target];
    const Normalized nx = normalize(xs.root, xs.shift + k);
    const Normalized ny = normalize(ys.root, ys.shift + k);
    const int x2 = index_of(nx.object), y2 = index_of(ny.object);
    const auto phi = [&](ZVertex v) { return mesh_.auto_f(mesh_.shift(v, k), d_, nx.power); };

    GradedMorphism out = zero(x2, y2);
    for (int l = 0; l <= 1; ++l) {
        const auto img = mesh_.map(piece(f, l), phi);
        if (img.source != positions_[x2]) throw std::logic_error("shift: source position mismatch");
        const int l2 = nx.power + l - ny.power;
        if (img.target != mesh_.auto_f(positions_[y2], d_, l2)) throw std::logic_error("shift: target position mismatch");
        if (l2 == 0) out.piece0 = dcluster::add(mesh_.field(), out.piece0, img.coords);
        else if (l2 == 1) out.piece1 = dcluster::add(mesh_.field(), out.piece1, img.coords);
        else if (!img.is_zero()) throw std::logic_error("shift: nonzero image outside pieces 0 and 1");
    }
    return out;
}

} // namespace dcluster
