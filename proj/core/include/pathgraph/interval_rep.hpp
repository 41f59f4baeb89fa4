#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathgraph/bitseq.hpp"
#include "pathgraph/serialize.hpp"
#include "pathgraph/types.hpp"

namespace pathgraph {

struct IntervalStats {
    /// Range-maximum queries plus sweep reads.
    uint64_t probes = 0;
};

/// Interval graph over closed intervals; vertex v is intervals[v-1].
///
/// Vertices are kept sorted by (start, end, id) with the sorted starts in a
/// NonDecSeq and a block sparse table answering range-argmax over the ends.
/// The neighbours of u = [s, e] are the prefix entries with start <= s and
/// end >= s (reported by recursive argmax), plus every entry with start in (s, e].
class IntervalGraph {
public:
    static constexpr uint64_t kBlock = 64;

    IntervalGraph() = default;
    /// Throws std::invalid_argument for an interval with lo > hi or lo = 0.
    explicit IntervalGraph(std::span<const Range> intervals);

    uint64_t size() const { return start_.size(); }
    Range interval(uint64_t v) const;

    bool adjacent(uint64_t u, uint64_t v) const;
    /// Appends the neighbours of u (u excluded) in no particular order.
    void neighbours(uint64_t u, std::vector<uint64_t>& out, IntervalStats* stats = nullptr) const;
    std::vector<uint64_t> neighbours(uint64_t u) const;

    uint64_t core_bits() const { return start_.bits() + end_.bits(); }
    uint64_t directory_bits() const;

    void serialize(Writer& w) const;
    static IntervalGraph deserialize(Reader& r);

private:
    void build_index();
    void check(uint64_t v) const;
    /// Sorted position in [lo, hi] holding the largest end.
    uint64_t argmax(uint64_t lo, uint64_t hi) const;
    uint64_t scan_argmax(uint64_t lo, uint64_t hi) const;
    void report(uint64_t lo, uint64_t hi, uint64_t s, uint64_t self, std::vector<uint64_t>& out,
                IntervalStats* stats) const;

    IntVector start_;  // by vertex
    IntVector end_;
    IntVector order_;       // sorted position -> vertex
    IntVector sorted_end_;  // ends in sorted order
    NonDecSeq sorted_start_;
    std::vector<IntVector> sparse_;  // sparse_[k][b]: argmax over blocks b .. b + 2^k - 1
};

}  // namespace pathgraph
