#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pathgraph/bitseq.hpp"
#include "pathgraph/space.hpp"
#include "pathgraph/treeprep.hpp"
#include "pathgraph/wavelet.hpp"

namespace pathgraph {

/// One orthogonal query over the (start index, end position) grid.
struct BetaRect {
    Range x;
    Range y;
};

struct SuccinctStats {
    uint64_t check_alpha_calls = 0;
    uint64_t rectangles = 0;
};

/// Path graph in n log n + O(n) bits: the clique tree as balanced parentheses,
/// path starts F and ends J as unary-differential sequences, and a wavelet tree
/// mapping each path's start index to the position of its end in J.
///
/// Paths are numbered by (l, r, input index). End positions are ordered by
/// (r, path index), which makes the start-to-end mapping a permutation.
class SuccinctPathGraph {
public:
    SuccinctPathGraph() = default;
    static SuccinctPathGraph build(const PreparedTree& pt, const PathSet& paths);

    uint64_t size() const { return s_.size(); }
    uint64_t nodes() const { return bp_.nodes(); }
    const BPTree& tree() const { return bp_; }

    /// Number of paths starting at node d.
    uint64_t path_count(uint64_t d) const;
    std::pair<uint64_t, uint64_t> pathep(uint64_t i) const;
    Range maprange_f(uint64_t l, uint64_t l2) const { return f_.map_range(l, l2); }
    Range maprange_j(uint64_t r, uint64_t r2) const { return j_.map_range(r, r2); }

    /// Rectangles whose points are exactly the paths first meeting piece i.
    void beta_rectangles(const HeavySubPaths& dec, uint64_t i, std::vector<BetaRect>& out) const;
    std::vector<uint64_t> compute_beta(const HeavySubPaths& dec, uint64_t i) const;

    bool adjacent(uint64_t i, uint64_t j, SuccinctStats* stats = nullptr) const;
    /// Concatenated rectangle results over all pieces, self included, before any dedup.
    std::vector<uint64_t> neighbourhood_raw(uint64_t i, SuccinctStats* stats = nullptr) const;
    /// Sorted neighbours, self excluded.
    std::vector<uint64_t> neighbourhood(uint64_t i) const;

    uint64_t degree(uint64_t i) const { return large_degree(i) ? degree_count(i) : degree_enum(i); }
    uint64_t degree_count(uint64_t i) const;
    uint64_t degree_enum(uint64_t i) const { return neighbourhood(i).size(); }
    bool large_degree(uint64_t i) const;
    /// Degrees above this value set the D bit.
    uint64_t degree_threshold() const { return threshold_; }

    uint64_t input_index(uint64_t i) const;
    uint64_t sorted_index(uint64_t k) const;

    SpaceReport space_report() const;

    std::vector<uint8_t> serialize() const;
    static SuccinctPathGraph deserialize(const std::vector<uint8_t>& blob);

private:
    void check_index(uint64_t i) const;
    void split_rects(Range xs, uint64_t b, bool strict, std::vector<BetaRect>& out) const;

    BPTree bp_;
    NonDecSeq f_;
    NonDecSeq j_;
    WaveletTree s_;
    BitVector d_;
    IntVector to_input_;
    IntVector to_sorted_;
    uint64_t threshold_ = 0;
};

}  // namespace pathgraph
