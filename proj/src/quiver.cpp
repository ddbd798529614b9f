#include "dcluster/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dcluster {

Quiver::Quiver(int vertices, std::vector<Arrow> arrows)
    : n_(vertices), arrows_(std::move(arrows)), in_(vertices), out_(vertices),
      reach_(vertices, std::vector<bool>(vertices, false)),
      paths_(vertices, std::vector<std::vector<int>>(vertices))
{
    for (int a = 0; a < static_cast<int>(arrows_.size()); ++a) {
        out_[arrows_[a].source].push_back(a);
        in_[arrows_[a].target].push_back(a);
    }
    for (int u = 0; u < n_; ++u) {
        reach_[u][u] = true;
        std::deque<int> queue{u};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int a : out_[v]) {
                int w = arrows_[a].target;
                if (reach_[u][w]) continue;
                reach_[u][w] = true;
                paths_[u][w] = paths_[u][v];
                paths_[u][w].push_back(a);
                queue.push_back(w);
            }
        }
    }
}

Quiver Quiver::opposite() const
{
    std::vector<Arrow> rev;
    rev.reserve(arrows_.size());
    for (const auto& a : arrows_) rev.push_back({a.target, a.source});
    return Quiver(n_, std::move(rev));
}

std::vector<int> Quiver::targets_first_order() const
{
    // Kahn's algorithm on reversed arrows: a vertex is ready once every
    // target of its outgoing arrows has been placed.
    std::vector<int> pending(n_, 0);
    for (int v = 0; v < n_; ++v) pending[v] = static_cast<int>(out_[v].size());
    std::vector<int> order;
    std::set<int> ready;
    for (int v = 0; v < n_; ++v)
        if (pending[v] == 0) ready.insert(v);
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (int a : in_[v]) {
            int s = arrows_[a].source;
            if (--pending[s] == 0) ready.insert(s);
        }
    }
    if (static_cast<int>(order.size()) != n_) throw std::logic_error("quiver has an oriented cycle");
    return order;
}

std::string to_string(Diagram t)
{
    switch (t) {
    case Diagram::A: return "A";
    case Diagram::D: return "D";
    case Diagram::E: return "E";
    }
    return "?";
}

Diagram diagram_from_string(std::string_view s)
{
    if (s == "A" || s == "a") return Diagram::A;
    if (s == "D" || s == "d") return Diagram::D;
    if (s == "E" || s == "e") return Diagram::E;
    throw std::invalid_argument("unknown diagram '" + std::string(s) + "'");
}

namespace {

void check_rank(Diagram type, int rank)
{
    bool ok = false;
    switch (type) {
    case Diagram::A: ok = rank >= 1; break;
    case Diagram::D: ok = rank >= 4; break;
    case Diagram::E: ok = rank >= 6 && rank <= 8; break;
    }
    if (!ok)
        throw std::invalid_argument("rank " + std::to_string(rank) + " out of range for diagram " +
                                    to_string(type));
}

// Tree shape test: connected, n-1 edges, and the arm lengths around the
// unique branch vertex (if any) match the diagram.
void check_shape(Diagram type, int rank, const std::vector<Arrow>& arrows)
{
    std::set<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj(rank);
    for (const auto& a : arrows) {
        if (a.source < 0 || a.source >= rank || a.target < 0 || a.target >= rank)
            throw std::invalid_argument("orientation mentions a vertex outside 1.." + std::to_string(rank));
        if (a.source == a.target) throw std::invalid_argument("orientation contains a loop");
        auto e = std::minmax(a.source, a.target);
        if (!edges.insert(e).second) throw std::invalid_argument("orientation contains a repeated edge");
        adj[a.source].push_back(a.target);
        adj[a.target].push_back(a.source);
    }
    if (static_cast<int>(edges.size()) != rank - 1)
        throw std::invalid_argument("orientation does not match the edges of " + to_string(type) +
                                    std::to_string(rank));
    std::vector<bool> seen(rank, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                queue.push_back(w);
            }
    }
    if (count != rank) throw std::invalid_argument("orientation graph is not connected");

    std::vector<int> branch;
    for (int v = 0; v < rank; ++v) {
        if (adj[v].size() > 3) throw std::invalid_argument("orientation graph has a vertex of degree > 3");
        if (adj[v].size() == 3) branch.push_back(v);
    }
    std::vector<int> arms;
    if (branch.size() == 1) {
        for (int start : adj[branch[0]]) {
            int len = 1, prev = branch[0], cur = start;
            while (adj[cur].size() == 2) {
                int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = next;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
    }
    bool ok = false;
    switch (type) {
    case Diagram::A: ok = branch.empty(); break;
    case Diagram::D: ok = branch.size() == 1 && arms == std::vector<int>{1, 1, rank - 3}; break;
    case Diagram::E: ok = branch.size() == 1 && arms == std::vector<int>{1, 2, rank - 4}; break;
    }
    if (!ok)
        throw std::invalid_argument("orientation does not match the edges of " + to_string(type) +
                                    std::to_string(rank));
}

} // namespace

DynkinQuiver::DynkinQuiver(Diagram type, int rank, const std::vector<Arrow>& arrows)
    : type_(type), rank_(rank)
{
    check_rank(type, rank);
    check_shape(type, rank, arrows);
    quiver_ = Quiver(rank, arrows);
}

std::vector<std::pair<int, int>> DynkinQuiver::diagram_edges(Diagram type, int rank)
{
    check_rank(type, rank);
    std::vector<std::pair<int, int>> e;
    switch (type) {
    case Diagram::A:
        for (int i = 0; i + 1 < rank; ++i) e.emplace_back(i, i + 1);
        break;
    case Diagram::D:
        // 1-2-...-(n-2), with n-1 and n both attached to n-2.
        for (int i = 0; i + 1 < rank - 2; ++i) e.emplace_back(i, i + 1);
        e.emplace_back(rank - 2, rank - 3);
        e.emplace_back(rank - 1, rank - 3);
        break;
    case Diagram::E:
        // Bourbaki labelling: 1-3-4-5-6(-7-8), 2 attached to 4.
        e.emplace_back(0, 2);
        e.emplace_back(1, 3);
        e.emplace_back(2, 3);
        for (int i = 3; i + 1 < rank; ++i) e.emplace_back(i + 1, i);
        break;
    }
    return e;
}

DynkinQuiver DynkinQuiver::standard(Diagram type, int rank)
{
    check_rank(type, rank);
    std::vector<Arrow> arrows;
    if (type == Diagram::A) {
        for (int i = 0; i + 1 < rank; ++i) arrows.push_back({i, i + 1});
        return DynkinQuiver(type, rank, arrows);
    }
    const int branch = type == Diagram::D ? rank - 3 : 3;
    const auto edges = diagram_edges(type, rank);
    // Orient along BFS distance toward the branch vertex.
    std::vector<std::vector<int>> adj(rank);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> dist(rank, -1);
    dist[branch] = 0;
    std::deque<int> queue{branch};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    for (auto [u, v] : edges) {
        if (dist[u] > dist[v]) arrows.push_back({u, v});
        else arrows.push_back({v, u});
    }
    std::sort(arrows.begin(), arrows.end(), [](const Arrow& a, const Arrow& b) {
        return std::pair(a.source, a.target) < std::pair(b.source, b.target);
    });
    return DynkinQuiver(type, rank, arrows);
}

std::string DynkinQuiver::name() const { return to_string(type_) + std::to_string(rank_); }

std::uint64_t DynkinQuiver::orientation_hash() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(type_));
    mix(static_cast<std::uint64_t>(rank_));
    for (const auto& a : quiver_.arrows()) {
        mix(static_cast<std::uint64_t>(a.source));
        mix(static_cast<std::uint64_t>(a.target));
    }
    return h;
}

namespace {

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

int parse_int(const std::string& s, const char* what)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("malformed ") + what + " '" + s + "'");
    }
}

DynkinQuiver from_parts(Diagram type, int rank, const std::vector<Arrow>* arrows)
{
    check_rank(type, rank);
    if (!arrows) return DynkinQuiver::standard(type, rank);
    std::vector<Arrow> zero_based;
    for (auto a : *arrows) zero_based.push_back({a.source - 1, a.target - 1});
    return DynkinQuiver(type, rank, zero_based);
}

DynkinQuiver parse_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed quiver JSON: ") + e.what());
    }
    if (!j.contains("diagram") || !j.contains("rank"))
        throw std::invalid_argument("quiver JSON needs 'diagram' and 'rank'");
    const Diagram type = diagram_from_string(j.at("diagram").get<std::string>());
    const int rank = j.at("rank").get<int>();
    if (!j.contains("arrows") || j.at("arrows").is_null() ||
        (j.at("arrows").is_string() && j.at("arrows") == "default"))
        return from_parts(type, rank, nullptr);
    std::vector<Arrow> arrows;
    for (const auto& a : j.at("arrows")) {
        if (!a.is_array() || a.size() != 2) throw std::invalid_argument("each arrow must be [source, target]");
        arrows.push_back({a[0].get<int>(), a[1].get<int>()});
    }
    return from_parts(type, rank, &arrows);
}

std::vector<Arrow> parse_arrow_list(std::string_view text)
{
    std::vector<Arrow> arrows;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        std::string t = trim(item);
        if (t.empty()) continue;
        auto pos = t.find("->");
        if (pos == std::string::npos) throw std::invalid_argument("malformed arrow '" + t + "'");
        arrows.push_back({parse_int(trim(t.substr(0, pos)), "arrow"), parse_int(trim(t.substr(pos + 2)), "arrow")});
    }
    return arrows;
}

} // namespace

DynkinQuiver parse_quiver(std::string_view spec)
{
    const std::string text = trim(spec);
    if (!text.empty() && text.front() == '{') return parse_json(text);

    // "<diagram> <rank>[, default | , arrows: s->t, ...]"
    std::string head = text, tail;
    if (auto comma = text.find(','); comma != std::string::npos) {
        head = trim(text.substr(0, comma));
        tail = trim(text.substr(comma + 1));
    }
    std::string diag_str, rank_str;
    {
        std::stringstream hs(head);
        hs >> diag_str >> rank_str;
        std::string extra;
        if (hs >> extra) throw std::invalid_argument("malformed quiver spec '" + text + "'");
    }
    // Also accept the compact "A2" form.
    if (rank_str.empty() && diag_str.size() > 1) {
        rank_str = diag_str.substr(1);
        diag_str = diag_str.substr(0, 1);
    }
    if (diag_str.empty()) throw std::invalid_argument("empty quiver spec");
    const Diagram type = diagram_from_string(diag_str);
    if (rank_str.empty()) throw std::invalid_argument("quiver spec is missing a rank");
    const int rank = parse_int(rank_str, "rank");

    if (tail.empty() || tail == "default") return from_parts(type, rank, nullptr);
    const std::string prefix = "arrows:";
    if (tail.rfind(prefix, 0) == 0) tail = trim(tail.substr(prefix.size()));
    const auto arrows = parse_arrow_list(tail);
    return from_parts(type, rank, &arrows);
}

nlohmann::json to_json(const DynkinQuiver& q)
{
    nlohmann::json arrows = nlohmann::json::array();
    for (const auto& a : q.quiver().arrows()) arrows.push_back({a.source + 1, a.target + 1});
    return {{"diagram", to_string(q.type())}, {"rank", q.rank()}, {"arrows", arrows}};
}

int euler_form(const DynkinQuiver& q, const Root& a, const Root& b)
{
    int s = 0;
    for (int i = 0; i < q.rank(); ++i) s += a[i] * b[i];
    for (const auto& ar : q.quiver().arrows()) s -= a[ar.source] * b[ar.target];
    return s;
}

int cartan_form(const DynkinQuiver& q, const Root& a, const Root& b)
{
    return euler_form(q, a, b) + euler_form(q, b, a);
}

std::vector<Root> positive_roots(const DynkinQuiver& q)
{
    const int n = q.rank();
    std::set<Root> seen;
    std::deque<Root> queue;
    for (int i = 0; i < n; ++i) {
        Root r(n, 0);
        r[i] = 1;
        seen.insert(r);
        queue.push_back(r);
    }
    while (!queue.empty()) {
        Root b = queue.front();
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            Root alpha(n, 0);
            alpha[i] = 1;
            const int c = cartan_form(q, b, alpha);
            Root r = b;
            r[i] -= c;
            if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; }) &&
                std::any_of(r.begin(), r.end(), [](int x) { return x > 0; }) && seen.insert(r).second)
                queue.push_back(r);
        }
    }
    std::vector<Root> roots(seen.begin(), seen.end());
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    return roots;
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b)
{
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    IntMatrix c(n, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

Root int_apply(const IntMatrix& a, const Root& v)
{
    Root out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long s = 0;
        for (std::size_t j = 0; j < v.size(); ++j) s += a[i][j] * v[j];
        out[i] = static_cast<int>(s);
    }
    return out;
}

IntMatrix simple_reflection(const DynkinQuiver& q, int i)
{
    // s_i(e_j) = e_j - (e_j, alpha_i) alpha_i
    const int n = q.rank();
    IntMatrix s(n, std::vector<long long>(n, 0));
    for (int j = 0; j < n; ++j) {
        Root ej(n, 0), ai(n, 0);
        ej[j] = 1;
        ai[i] = 1;
        s[j][j] = 1;
        s[i][j] -= cartan_form(q, ej, ai);
    }
    return s;
}

namespace {

IntMatrix identity_int(int n)
{
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Rank over Q by fraction-free (Bareiss) elimination.
int rational_rank(IntMatrix m)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
    __int128 prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

using Poly = std::vector<long long>; // coefficients, lowest degree first

Poly cyclotomic(int g)
{
    // x^g - 1 divided by Phi_e for every proper divisor e of g.
    Poly num(g + 1, 0);
    num[0] = -1;
    num[g] = 1;
    for (int e = 1; e < g; ++e) {
        if (g % e != 0) continue;
        const Poly den = cyclotomic(e);
        Poly quot(num.size() - den.size() + 1, 0);
        for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
            long long coef = num[i + den.size() - 1] / den.back();
            quot[i] = coef;
            for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= coef * den[j];
        }
        num = quot;
    }
    return num;
}

int euler_phi(int g)
{
    int count = 0;
    for (int k = 1; k <= g; ++k)
        if (std::gcd(k, g) == 1) ++count;
    return count;
}

} // namespace

CoxeterData coxeter_data(const DynkinQuiver& q)
{
    const int n = q.rank();
    IntMatrix c = identity_int(n);
    for (int i = 0; i < n; ++i) c = int_multiply(c, simple_reflection(q, i));

    CoxeterData data;
    const IntMatrix id = identity_int(n);
    IntMatrix power = c;
    data.h = 1;
    while (power != id) {
        power = int_multiply(power, c);
        ++data.h;
        if (data.h > 1000) throw std::logic_error("Coxeter element has no finite order");
    }

    // Eigenvalues are h-th roots of unity; the primitive g-th ones appear
    // with multiplicity nullity(Phi_g(c)) / phi(g), uniformly within each
    // Galois orbit because c is rational.
    for (int g = 1; g <= data.h; ++g) {
        if (data.h % g != 0) continue;
        const Poly phi_g = cyclotomic(g);
        IntMatrix acc(n, std::vector<long long>(n, 0));
        IntMatrix pw = id;
        for (std::size_t k = 0; k < phi_g.size(); ++k) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) acc[i][j] += phi_g[k] * pw[i][j];
            pw = int_multiply(pw, c);
        }
        const int nullity = n - rational_rank(acc);
        if (nullity % euler_phi(g) != 0) throw std::logic_error("inconsistent eigenvalue multiplicities");
        const int mult = nullity / euler_phi(g);
        for (int e = 0; e < data.h; ++e)
            if (std::gcd(e, data.h) == data.h / g)
                for (int k = 0; k < mult; ++k) data.exponents.push_back(e == 0 ? data.h : e);
    }
    std::sort(data.exponents.begin(), data.exponents.end());
    return data;
}

IntMatrix coxeter_transformation(const DynkinQuiver& q)
{
    // <y, Phi x> = -<x, y> for all y, i.e. E Phi = -E^T with E the Euler
    // matrix. E is unitriangular in a topological order, so it inverts
    // over the integers.
    const int n = q.rank();
    IntMatrix e(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        Root a(n, 0);
        a[i] = 1;
        for (int j = 0; j < n; ++j) {
            Root b(n, 0);
            b[j] = 1;
            e[i][j] = euler_form(q, a, b);
        }
    }
    // Solve E X = -E^T column by column with Gaussian elimination over Q;
    // det E = 1 keeps everything integral.
    IntMatrix rhs(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rhs[i][j] = -e[j][i];
    // Forward/back substitution along a topological order of the arrows:
    // E_ij != 0 for i != j only when i -> j, so order sources first.
    const auto order = q.quiver().targets_first_order(); // targets before sources
    IntMatrix x(n, std::vector<long long>(n, 0));
    for (int col = 0; col < n; ++col) {
        // Row i: x_i = rhs_i - sum_{j != i} E_ij x_j, where j ranges over
        // targets of arrows from i; those are solved first.
        for (int i : order) {
            long long s = rhs[i][col];
            for (int j = 0; j < n; ++j)
                if (j != i) s -= e[i][j] * x[j][col];
            x[i][col] = s;
        }
    }
    return x;
}

} // namespace dcluster
