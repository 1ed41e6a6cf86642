#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecfft/curve.hpp"
#include "ecfft/error.hpp"
#include "ecfft/field.hpp"
#include "ecfft/poly.hpp"

namespace ecfft {

/// A vertex of the tree, naming the basic set of its leaf descendants.
/// `level` is the layer the vertex lives in (the set has 2^level leaves) and
/// `index` its position in that layer.
struct BasicSet {
    unsigned level = 0;
    std::uint32_t index = 0;

    std::size_t size() const { return std::size_t{1} << level; }
    friend bool operator==(const BasicSet&, const BasicSet&) = default;
};

/// Degree-2 rational map psi = u / v between consecutive layers.
struct RationalMap {
    Poly u;
    Poly v;

    friend bool operator==(const RationalMap&, const RationalMap&) = default;
};

/// How the tree was obtained from an elliptic curve. Kept for audit and
/// for growing sibling trees of the same forest.
struct TreeProvenance {
    std::vector<Curve> curves;  // E_0 .. E_k
    std::vector<Fe> kernel_xs;  // abscissa of the order-2 kernel point of E_i -> E_{i+1}
    std::uint64_t order = 0;    // |E_0|
    unsigned l1 = 0;            // 2-Sylow of E_0 is Z/2^l1 x Z/2^l2
    unsigned l2 = 0;
    unsigned k1 = 0;            // G_0 = <gen1> + <gen2> with orders 2^k1, 2^k2
    unsigned k2 = 0;
    CurvePoint gen1;
    CurvePoint gen2;
    CurvePoint coset;           // leaves are x(coset + i1 gen1 + i2 gen2), (i1, i2) lexicographic
    std::uint64_t seed = 0;

    friend bool operator==(const TreeProvenance&, const TreeProvenance&) = default;
};

/// Precomputed tables driving EXTEND through one vertex. Level i holds the
/// vertex's layer-i descendants in depth-first order, so the two preimages of
/// the element at position q of level i+1 sit at positions 2q and 2q+1.
struct NodeAdvice {
    struct Level {
        std::vector<Fe> elems;
        // v^(i)(s)^(n_i/2 - 1), n_i = number of elements on this level
        std::vector<Fe> scale;
        // per preimage pair: (P(s0), P(s1)) -> (P0(t), P1(t)) as
        // P0 = m[0] P(s0) + m[1] P(s1), P1 = m[2] P(s0) + m[3] P(s1)
        std::vector<std::array<Fe, 4>> mats;
    };
    std::vector<Level> levels; // levels[0..a]; the last holds only the vertex itself
};

/// Type-erased, thread-safe store of lazily built advice. Entries are
/// inserted fully built, so a concurrent reader sees either nothing or the
/// finished value.
class AdviceCache {
public:
    template <class T>
    std::shared_ptr<const T> get_or_build(const std::string& key, const std::function<T()>& build) const
    {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = entries_.find(key);
            if (it != entries_.end()) return std::static_pointer_cast<const T>(it->second);
        }
        auto value = std::make_shared<const T>(build());
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = entries_.emplace(key, value);
        return std::static_pointer_cast<const T>(it->second);
    }

    std::size_t size() const
    {
        std::lock_guard<std::mutex> lock(mu_);
        return entries_.size();
    }

private:
    mutable std::mutex mu_;
    mutable std::unordered_map<std::string, std::shared_ptr<const void>> entries_;
};

/// FFTree: layers L^(0..k) with |L^(i)| = 2^(k-i) and degree-2 maps
/// psi^(i) that are exactly 2-to-1 from L^(i) onto L^(i+1). Immutable once
/// constructed; the constructor validates every invariant and throws
/// InvariantViolation when one fails.
class FFTree {
public:
    FFTree(Field field, std::vector<std::vector<Fe>> layers, std::vector<RationalMap> maps,
           TreeProvenance provenance);

    const Field& field() const { return field_; }
    unsigned depth() const { return depth_; }
    std::size_t leaf_count() const { return layers_[0].size(); }
    std::span<const Fe> layer(unsigned i) const { return layers_.at(i); }
    const std::vector<std::vector<Fe>>& layers() const { return layers_; }
    const RationalMap& map(unsigned i) const { return maps_.at(i); }
    const std::vector<RationalMap>& maps() const { return maps_; }
    const TreeProvenance& provenance() const { return provenance_; }

    Fe psi(unsigned i, Fe x) const;
    /// Index in L^(i+1) of psi^(i)(L^(i)[j]).
    std::uint32_t parent(unsigned i, std::uint32_t j) const { return parents_[i][j]; }

    BasicSet root() const { return BasicSet{depth_, 0}; }
    /// Child 0 or 1 (ascending layer index) of a vertex with level >= 1.
    BasicSet child(BasicSet node, unsigned which) const;
    /// The leftmost vertex of the given level: U_0 within U_1 within ... within U_k = L.
    BasicSet standard_set(unsigned a) const;
    std::vector<BasicSet> standard_basic_sets() const;

    void check_node(BasicSet node) const;
    /// Leaf descendants in canonical (depth-first, child 0 first) order.
    std::span<const Fe> elements(BasicSet node) const { return node_advice(node).levels[0].elems; }
    const NodeAdvice& node_advice(BasicSet node) const;

    std::optional<std::uint32_t> leaf_index(Fe x) const;
    bool contains(BasicSet node, Fe x) const;

    /// True when both trees use identical layer maps (members of one forest).
    bool shares_maps_with(const FFTree& other) const;

    const AdviceCache& cache() const { return *cache_; }

    /// "U<a>" or a path from the root such as "0.L.R".
    BasicSet parse_set(const std::string& name) const;
    std::string set_name(BasicSet node) const;

private:
    void validate_structure();
    void validate_provenance() const;
    void build_node_advice();

    Field field_;
    unsigned depth_ = 0;
    std::vector<std::vector<Fe>> layers_;
    std::vector<RationalMap> maps_;
    TreeProvenance provenance_;
    std::vector<std::vector<std::uint32_t>> parents_;
    std::vector<std::vector<std::array<std::uint32_t, 2>>> children_; // children_[level][index], level >= 1
    std::unordered_map<std::uint64_t, std::uint32_t> leaf_lookup_;
    std::vector<BasicSet> std_chain_;
    std::shared_ptr<AdviceCache> cache_;
};

struct SubgroupChoice {
    unsigned l1 = 0;
    unsigned l2 = 0;
    unsigned k1 = 0;
    unsigned k2 = 0;
    CurvePoint gen1; // order 2^k1 (infinity when k1 = 0)
    CurvePoint gen2; // order 2^k2
    CurvePoint coset;
    std::vector<CurvePoint> members; // i1 gen1 + i2 gen2 at index i1 * 2^k2 + i2
};

/// Picks G_0 of order K and a coset D + G_0 distinct from its negation.
/// Throws std::runtime_error when random sampling runs out of budget.
SubgroupChoice choose_subgroup_and_coset(const Field& F, const Curve& c, std::uint64_t order, std::uint64_t K,
                                         std::mt19937_64& rng);

/// Builds and validates a depth-k tree. Throws PreconditionError("depth
/// infeasible ...") unless p >= 7 and 2^k <= 2 sqrt(p); retries internally
/// with fresh randomness derived from `seed` when a construction fails
/// validation.
FFTree build_fftree(std::uint64_t p, unsigned depth, std::uint64_t seed);

/// Another tree of the same forest: a different coset of the same subgroup
/// pushed through the same isogeny chain, so the maps coincide and the
/// layers are disjoint from the original at every level.
FFTree build_sibling_tree(const FFTree& tree, std::uint64_t seed);

/// Paired view of the advice used by EXTEND from S to S' (possibly in a
/// sibling tree).
struct ExtendAdvice {
    const NodeAdvice* source = nullptr;
    const NodeAdvice* target = nullptr;
    unsigned level = 0;
};

ExtendAdvice extend_advice(const FFTree& tree, BasicSet from, BasicSet to);
ExtendAdvice extend_advice(const FFTree& from_tree, BasicSet from, const FFTree& to_tree, BasicSet to);

} // namespace ecfft
