#include "dcluster/tilting.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcluster {

TiltingTheory::TiltingTheory(std::shared_ptr<const OrbitCategory> category) : c_(std::move(category))
{
    const int n = c_->size();
    ext_free_.assign(n, Bits(n));
    compat_.assign(n, Bits(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            bool free = true;
            for (int i = 1; i <= c_->d() && free; ++i) free = c_->ext_dim(x, y, i) == 0;
            ext_free_[x][y] = free;
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) compat_[x][y] = x != y && ext_free_[x][y] && ext_free_[y][x];
}

TiltingTheory::TiltingTheory(std::shared_ptr<const OrbitCategory> category, std::vector<ObjectSet> tilting)
    : TiltingTheory(std::move(category))
{
    for (const auto& t : tilting) {
        const bool in_range = std::all_of(t.begin(), t.end(), [&](int x) { return x >= 0 && x < size(); });
        if (static_cast<int>(t.size()) != rank() || !in_range || !std::is_sorted(t.begin(), t.end()) ||
            std::adjacent_find(t.begin(), t.end()) != t.end() || !is_rigid(t))
            throw std::invalid_argument("seeded tilting list contains a set that is not tilting");
    }
    std::sort(tilting.begin(), tilting.end());
    std::call_once(tilting_once_, [&] { tilting_ = std::move(tilting); });
}

bool TiltingTheory::is_rigid(const ObjectSet& s) const
{
    for (int x : s)
        for (int y : s)
            if (!ext_free_[x][y]) return false;
    return true;
}

RigidFlags TiltingTheory::classify(const ObjectSet& s) const
{
    if (!is_rigid(s)) throw std::invalid_argument("classify: set is not rigid");
    Bits in(size());
    for (int x : s) in[x] = true;
    RigidFlags f;
    f.complete = static_cast<int>(s.size()) == rank();

    f.maximal = true;
    for (int y = 0; y < size() && f.maximal; ++y) {
        if (in[y]) continue;
        ObjectSet bigger = s;
        bigger.push_back(y);
        if (is_rigid(bigger)) f.maximal = false;
    }

    // Every Y with Ext^{1..d}(S, Y) = 0 must already lie in S.
    f.tilting = true;
    for (int y = 0; y < size() && f.tilting; ++y) {
        if (in[y]) continue;
        bool orthogonal = true;
        for (int x : s) orthogonal = orthogonal && ext_free_[x][y];
        if (orthogonal) f.tilting = false;
    }
    return f;
}

ObjectSet TiltingTheory::complete(const ObjectSet& s) const
{
    if (!is_rigid(s)) throw std::invalid_argument("complete: set is not rigid");
    ObjectSet out = s;
    Bits in(size());
    for (int x : s) in[x] = true;
    for (int y = 0; y < size(); ++y) {
        if (in[y]) continue;
        bool ok = true;
        for (int x : out) ok = ok && compat_[x][y];
        if (ok) {
            out.push_back(y);
            in[y] = true;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void TiltingTheory::extend(ObjectSet& cur, const Bits& cand, int need, const std::function<void(const ObjectSet&)>& fn) const
{
    if (need == 0) {
        fn(cur);
        return;
    }
    if (static_cast<int>(cand.count()) < need) return;
    for (auto y = cand.find_first(); y != Bits::npos; y = cand.find_next(y)) {
        Bits next = cand & compat_[y];
        // keep only later objects so every set is produced once
        for (auto z = next.find_first(); z != Bits::npos && z <= y; z = next.find_next(z)) next[z] = false;
        cur.push_back(static_cast<int>(y));
        extend(cur, next, need - 1, fn);
        cur.pop_back();
    }
}

void TiltingTheory::for_each_rigid_of_size(int k, const std::function<void(const ObjectSet&)>& fn) const
{
    ObjectSet cur;
    Bits all(size());
    all.set();
    extend(cur, all, k, fn);
}

void TiltingTheory::for_each_rigid_in(const Bits& candidates, int k, const std::function<void(const ObjectSet&)>& fn) const
{
    ObjectSet cur;
    extend(cur, candidates, k, fn);
}

void TiltingTheory::for_each_rigid(const std::function<void(const ObjectSet&)>& fn, bool with_empty) const
{
    ObjectSet cur;
    std::function<void(const Bits&)> rec = [&](const Bits& cand) {
        if (!cur.empty() || with_empty) fn(cur);
        for (auto y = cand.find_first(); y != Bits::npos; y = cand.find_next(y)) {
            Bits next = cand & compat_[y];
            for (auto z = next.find_first(); z != Bits::npos && z <= y; z = next.find_next(z)) next[z] = false;
            cur.push_back(static_cast<int>(y));
            rec(next);
            cur.pop_back();
        }
    };
    Bits all(size());
    all.set();
    rec(all);
}

const std::vector<ObjectSet>& TiltingTheory::tilting_objects() const
{
    std::call_once(tilting_once_, [this] {
        for_each_rigid_of_size(rank(), [this](const ObjectSet& s) { tilting_.push_back(s); });
        std::sort(tilting_.begin(), tilting_.end());
    });
    return tilting_;
}

EquivalenceReport TiltingTheory::verify_equivalence() const
{
    EquivalenceReport r;
    r.rigid_by_size.assign(size() + 1, 0);
    for_each_rigid([&](const ObjectSet& s) {
        ++r.rigid_by_size[s.size()];
        const RigidFlags f = classify(s);
        r.maximal += f.maximal;
        r.complete += f.complete;
        r.tilting += f.tilting;
        if (f.maximal != f.complete || f.complete != f.tilting) r.counterexamples.push_back(s);
    });
    while (r.rigid_by_size.size() > 1 && r.rigid_by_size.back() == 0) r.rigid_by_size.pop_back();
    return r;
}

} // namespace dcluster
