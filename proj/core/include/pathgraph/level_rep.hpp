#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pathgraph/bitseq.hpp"
#include "pathgraph/interval_rep.hpp"
#include "pathgraph/space.hpp"
#include "pathgraph/treeprep.hpp"

namespace pathgraph {

struct LevelStats {
    uint64_t ig_probes = 0;    // interval-graph adjacency tests
    uint64_t array_reads = 0;  // span and vertex-label reads
    uint64_t touches = 0;      // reported candidates plus climb work
};

/// Reusable per-caller buffers for neighbourhood queries. The mark array is
/// reset by bumping an epoch, so a query costs nothing for untouched paths.
struct LevelScratch {
    std::vector<uint32_t> mark;
    uint32_t epoch = 0;
    std::vector<uint64_t> buf;
};

/// Path graph in O(n log^2 n) bits with constant-time adjacency and degree.
///
/// Every heavy path sits at a level of the heavy path tree (root = 1). At level
/// l, each path contributes one interval per heavy path it crosses (at most
/// two), in global pre-order coordinates; U_l is the interval graph of all of
/// them. Two paths meet iff their pieces meet at the deeper of their two top
/// levels.
class LevelStructure {
public:
    LevelStructure() = default;
    static LevelStructure build(const PreparedTree& pt, const PathSet& paths);

    uint64_t size() const { return l_.size(); }
    uint64_t nodes() const { return bp_.nodes(); }
    uint64_t levels() const { return k_; }

    /// Level span [a_i, b_i] of path i.
    Range span(uint64_t i) const;
    /// Top level where both spans are present, 0 if they are disjoint.
    uint64_t min_level(uint64_t i, uint64_t j) const;
    /// Vertex labels of path i in U_l, ordered by heavy path; 0 where absent.
    std::pair<uint64_t, uint64_t> vertices(uint64_t i, uint64_t l) const;
    /// Path owning vertex v of U_l.
    uint64_t path_of(uint64_t l, uint64_t v) const;
    const IntervalGraph& level_graph(uint64_t l) const { return it_.at(l - 1); }

    /// Paths whose lca is node a.
    std::vector<uint64_t> paths_with_lca(uint64_t a) const;
    /// Paths through light edge {w1, w2} but not {w2, w3}; w3 = 0 excludes nothing.
    /// w1 must be the parent of w2 in the heavy path tree, and w3 a child of w2.
    std::vector<uint64_t> distinct_paths(uint64_t w1, uint64_t w2, uint64_t w3) const;

    bool adjacent(uint64_t i, uint64_t j, LevelStats* stats = nullptr) const;
    /// Sorted neighbours, self excluded.
    std::vector<uint64_t> neighbourhood(uint64_t i, LevelStats* stats = nullptr) const;
    /// Unsorted neighbours appended to `out`, with caller-owned scratch.
    void neighbourhood(uint64_t i, std::vector<uint64_t>& out, LevelScratch& scratch,
                       LevelStats* stats = nullptr) const;
    uint64_t degree(uint64_t i) const;

    uint64_t input_index(uint64_t i) const;
    uint64_t sorted_index(uint64_t k) const;

    SpaceReport space_report() const;

    std::vector<uint8_t> serialize() const;
    static LevelStructure deserialize(const std::vector<uint8_t>& blob);

private:
    void check_index(uint64_t i) const;
    uint64_t pit(uint64_t i, uint64_t l, uint64_t slot) const { return pit_[((i - 1) * k_ + (l - 1)) * 2 + slot]; }
    template <typename Emit>
    void for_distinct_paths(uint64_t w1, uint64_t w2, uint64_t w3, Emit&& emit) const;
    void validate() const;

    BPTree bp_;       // the clique tree
    IntVector hp_;    // node -> heavy path
    IntVector lvl_;   // heavy path -> level
    BPTree hpt_;      // heavy path tree, heavy paths in start-label order
    IntVector l_, r_;
    IntVector span_lo_, span_hi_;
    IntVector pit_;   // n x K x 2 vertex labels
    std::vector<IntervalGraph> it_;
    std::vector<IntVector> e_;  // e_[l-1][v-1]: path owning vertex v of U_l
    IntVector lca_off_, lca_paths_;
    IntVector th_off_, th_child_, th_list_, th_paths_;  // through lists per heavy path, keyed by child
    IntVector te_off_, te_paths_;                       // terminal lists per heavy path
    IntVector deg_;
    IntVector to_input_, to_sorted_;
    uint64_t k_ = 0;
};

}  // namespace pathgraph
