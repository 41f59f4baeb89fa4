#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathgraph/bitseq.hpp"
#include "pathgraph/serialize.hpp"
#include "pathgraph/types.hpp"

namespace pathgraph {

struct WaveletStats {
    /// Nodes whose value interval straddles the query's y-range.
    uint64_t expanded_nodes = 0;
};

/// Pointerless wavelet tree over a permutation of [1,n], storing the points
/// (x, y_of_x[x]). Node [lo,hi] splits at m = floor((lo+hi)/2); because the
/// points form a permutation, the node occupies positions lo..hi of its level.
/// All levels are concatenated into one bit vector of n * ceil(log2 n) bits.
class WaveletTree {
public:
    WaveletTree() = default;
    /// `y_of_x[i]` is the y-coordinate of x = i + 1; must be a permutation of [1,n].
    explicit WaveletTree(std::span<const uint64_t> y_of_x);

    uint64_t size() const { return n_; }
    uint64_t levels() const { return levels_; }

    uint64_t access(uint64_t x) const;

    /// Points inside xr x yr. Ranges are clamped to [1,n]; empty ranges give 0.
    uint64_t count(Range xr, Range yr, WaveletStats* stats = nullptr) const;

    /// Appends the x-coordinates of points inside xr x yr, in increasing x order.
    void search(Range xr, Range yr, std::vector<uint64_t>& out) const;
    std::vector<uint64_t> search(Range xr, Range yr) const;

    uint64_t core_bits() const { return bits_.core_bits(); }
    uint64_t directory_bits() const { return bits_.directory_bits(); }

    void serialize(Writer& w) const;
    static WaveletTree deserialize(Reader& r);

private:
    struct Frame {
        uint64_t lo, hi;
    };

    Range clamp(Range r) const;
    uint64_t count_rec(uint64_t level, uint64_t lo, uint64_t hi, uint64_t p1, uint64_t p2, Range yr,
                       WaveletStats* stats) const;
    void search_rec(uint64_t level, uint64_t lo, uint64_t hi, uint64_t p1, uint64_t p2, Range yr,
                    std::vector<Frame>& path, std::vector<uint64_t>& out) const;
    uint64_t lift(uint64_t level, uint64_t p, const std::vector<Frame>& path) const;

    uint64_t n_ = 0;
    uint64_t levels_ = 0;
    BitVector bits_;
};

}  // namespace pathgraph
