#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pathgraph/bitseq.hpp"
#include "pathgraph/serialize.hpp"
#include "pathgraph/types.hpp"

namespace pathgraph {

/// Rooted tree over original labels 1..M; parent[v] for v in 1..M, 0 marks the
/// root. parent[0] is unused. Children are unordered.
struct RawTree {
    std::vector<uint64_t> parent;

    uint64_t nodes() const { return parent.empty() ? 0 : parent.size() - 1; }
    /// Throws std::invalid_argument unless the array describes one rooted tree.
    void validate() const;
};

/// The clique tree after heavy path decomposition and pre-order relabeling.
///
/// Every internal node lists its heavy child first (ties broken by smallest
/// original label), remaining children by ascending original label. Labels
/// are pre-order ranks, so subtrees and heavy paths are label intervals.
/// Heavy paths are indexed 1.. by ascending start label, which is also a
/// pre-order of the heavy path tree. Levels are 1-based; the root path has level 1.
class PreparedTree {
public:
    PreparedTree() = default;
    static PreparedTree prepare(const RawTree& raw);

    uint64_t nodes() const { return bp_.nodes(); }
    const BPTree& bp() const { return bp_; }

    uint64_t label_of(uint64_t original) const;
    uint64_t original_of(uint64_t label) const;
    /// Parent in pre-order labels; 0 for the root.
    uint64_t parent(uint64_t v) const { return parent_.at(v); }

    uint64_t heavy_path_count() const { return paths_.size(); }
    /// Label interval of heavy path h.
    Range heavy_path(uint64_t h) const { return paths_.at(h - 1); }
    uint64_t heavy_path_of(uint64_t v) const { return hp_of_.at(v); }
    /// Parent of heavy path h in the heavy path tree; 0 for the root path.
    uint64_t hp_parent(uint64_t h) const { return hp_parent_.at(h); }
    uint64_t level(uint64_t h) const { return level_.at(h); }
    uint64_t levels() const { return levels_; }

    /// Start node of v's heavy path, computed from the parentheses alone.
    uint64_t hp_start(uint64_t v) const { return bp_.first_child_chain_start(v); }

    void serialize(Writer& w) const;
    static PreparedTree deserialize(Reader& r);

private:
    void derive_tables();

    BPTree bp_;
    std::vector<uint64_t> label_;     // original -> label
    std::vector<uint64_t> original_;  // label -> original
    std::vector<uint64_t> parent_;
    std::vector<Range> paths_;
    std::vector<uint64_t> hp_of_;
    std::vector<uint64_t> hp_parent_;
    std::vector<uint64_t> level_;
    uint64_t levels_ = 0;
};

/// n paths in pre-order labels with l <= r, sorted by (l, r, input index).
/// Path indices are 1-based positions in this order.
class PathSet {
public:
    PathSet() = default;
    /// `input` holds endpoints in original labels, in caller order.
    PathSet(const PreparedTree& pt, std::span<const std::pair<uint64_t, uint64_t>> input);

    uint64_t size() const { return l_.size(); }
    uint64_t l(uint64_t i) const { return l_.at(i - 1); }
    uint64_t r(uint64_t i) const { return r_.at(i - 1); }
    /// 1-based caller index of sorted path i.
    uint64_t input_index(uint64_t i) const { return input_.at(i - 1); }
    /// Sorted index of caller path `k` (1-based).
    uint64_t sorted_index(uint64_t k) const { return sorted_.at(k - 1); }

private:
    std::vector<uint64_t> l_, r_, input_, sorted_;
};

/// The heavy sub-paths of one path, ordered by start label. succ11/succ12 are
/// 1-based indices into `pi` of the pieces hanging directly below the first
/// piece, or 0.
struct HeavySubPaths {
    std::vector<Range> pi;
    uint64_t succ11 = 0;
    uint64_t succ12 = 0;

    uint64_t k() const { return pi.size(); }
    Range operator[](uint64_t i) const { return pi[i - 1]; }
};

/// Heavy sub-path decomposition of the path (l, r), l <= r. Reuses `out`.
void compute_pi(const BPTree& t, uint64_t l, uint64_t r, HeavySubPaths& out);
HeavySubPaths compute_pi(const BPTree& t, uint64_t l, uint64_t r);

/// Start-label classes for a heavy sub-path (a_i, b_i). Writing z(s) for the
/// deepest ancestor of s on the path, a path (s, t) first meets the path inside
/// piece i exactly when s lies in one of these classes and its side condition holds:
///   r1        only i = 1: s < a_1, and t inside the subtree of a_1;
///   r2        s on the piece itself;
///   r3a..r3c  s below b_i but outside any later piece, and lca(s,t) <= b_i;
///   r4a, r4b  s hangs off the piece strictly above b_i, and lca(s,t) < b_i.
/// The classes are pairwise disjoint, and over all pieces they cover
/// [1, rmost_leaf(a_1)] exactly once.
struct RangeQuad {
    Range r1, r2, r3a, r3b, r3c, r4a, r4b;

    bool in_r3(uint64_t s) const { return r3a.contains(s) || r3b.contains(s) || r3c.contains(s); }
    bool in_r4(uint64_t s) const { return r4a.contains(s) || r4b.contains(s); }
};

RangeQuad ranges(const BPTree& t, const HeavySubPaths& dec, uint64_t i);

/// Whether the path (s, t), s <= t, first meets the decomposed path inside piece i.
bool check_alpha(const BPTree& t, const HeavySubPaths& dec, const RangeQuad& q, uint64_t i, uint64_t s, uint64_t tt);
bool check_alpha(const BPTree& t, const HeavySubPaths& dec, uint64_t i, uint64_t s, uint64_t tt);

}  // namespace pathgraph
