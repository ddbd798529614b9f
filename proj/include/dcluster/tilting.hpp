// Rigid subsets of C_d, the three rigidity notions and enumeration of
// d-cluster tilting objects. Objects are canonical indices of an
// OrbitCategory; sets are sorted vectors of indices.
#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dcluster/orbit.hpp"

namespace dcluster {

using ObjectSet = std::vector<int>;
using Bits = boost::dynamic_bitset<>;

struct RigidFlags {
    bool maximal = false;
    bool complete = false;
    bool tilting = false;
    friend bool operator==(const RigidFlags&, const RigidFlags&) = default;
};

struct EquivalenceReport {
    std::vector<long long> rigid_by_size; // index = number of summands
    long long maximal = 0, complete = 0, tilting = 0;
    std::vector<ObjectSet> counterexamples; // rigid sets where the flags disagree
    bool holds() const { return counterexamples.empty(); }
};

class TiltingTheory {
public:
    explicit TiltingTheory(std::shared_ptr<const OrbitCategory> category);
    /// Seeds the tilting list with a previous enumeration (e.g. from a cache).
    /// Throws std::invalid_argument unless every set is rigid of size n.
    TiltingTheory(std::shared_ptr<const OrbitCategory> category, std::vector<ObjectSet> tilting);

    const OrbitCategory& category() const { return *c_; }
    std::shared_ptr<const OrbitCategory> category_ptr() const { return c_; }
    int size() const { return c_->size(); }
    int rank() const { return c_->rank(); }
    int d() const { return c_->d(); }

    /// Ext^i(x, y) = 0 for 1 <= i <= d.
    bool ext_free(int x, int y) const { return ext_free_[x][y]; }
    /// Both directions vanish and x != y.
    bool compatible(int x, int y) const { return compat_[x][y]; }
    const Bits& compatible_set(int x) const { return compat_[x]; }

    bool is_rigid(const ObjectSet& s) const;
    /// Definition-level flags; throws std::invalid_argument if s is not rigid.
    RigidFlags classify(const ObjectSet& s) const;
    /// Greedy completion in canonical object order; throws if s is not rigid.
    ObjectSet complete(const ObjectSet& s) const;

    /// Every rigid set (nonempty sets only when with_empty is false), each once,
    /// members increasing, in lexicographic order.
    void for_each_rigid(const std::function<void(const ObjectSet&)>& fn, bool with_empty = true) const;
    /// Rigid sets of exactly k summands.
    void for_each_rigid_of_size(int k, const std::function<void(const ObjectSet&)>& fn) const;
    /// Rigid sets of exactly k summands drawn from `candidates`.
    void for_each_rigid_in(const Bits& candidates, int k, const std::function<void(const ObjectSet&)>& fn) const;

    /// All tilting sets, sorted. Computed once.
    const std::vector<ObjectSet>& tilting_objects() const;

    EquivalenceReport verify_equivalence() const;

private:
    void extend(ObjectSet& cur, const Bits& cand, int need, const std::function<void(const ObjectSet&)>& fn) const;

    std::shared_ptr<const OrbitCategory> c_;
    std::vector<Bits> ext_free_;
    std::vector<Bits> compat_;
    mutable std::once_flag tilting_once_;
    mutable std::vector<ObjectSet> tilting_;
};

} // namespace dcluster
