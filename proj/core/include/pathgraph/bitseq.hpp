#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pathgraph/serialize.hpp"
#include "pathgraph/types.hpp"

namespace pathgraph {

/// Fixed-width packed unsigned integers, 0-based.
class IntVector {
public:
    IntVector() = default;
    IntVector(uint64_t size, uint64_t width);

    /// Packs `values` using the narrowest width that holds their maximum.
    static IntVector pack(std::span<const uint64_t> values);

    uint64_t size() const { return size_; }
    uint64_t width() const { return width_; }
    uint64_t bits() const { return size_ * width_; }

    uint64_t get(uint64_t i) const;
    void set(uint64_t i, uint64_t v);
    uint64_t operator[](uint64_t i) const { return get(i); }

    void serialize(Writer& w) const;
    static IntVector deserialize(Reader& r);

    bool operator==(const IntVector&) const = default;

private:
    uint64_t size_ = 0;
    uint64_t width_ = 1;
    std::vector<uint64_t> words_;
};

/// Static bit vector with rank/select.
///
/// Rank directory: one 64-bit absolute count per 65536-bit superblock and one
/// 16-bit superblock-relative count per 512-bit block. select binary-searches
/// the directory, then scans at most eight words.
class BitVector {
public:
    static constexpr uint64_t kBlockBits = 512;
    static constexpr uint64_t kSuperBits = 65536;

    BitVector() { build_index(); }
    BitVector(std::vector<uint64_t> words, uint64_t length);

    /// Parses a string of '0'/'1' characters, first character is position 1.
    static BitVector from_string(std::string_view bits);

    uint64_t size() const { return len_; }
    uint64_t ones() const { return ones_; }
    uint64_t zeros() const { return len_ - ones_; }

    /// Bit at 1-based position `pos`.
    bool get(uint64_t pos) const;
    bool operator[](uint64_t pos) const { return get(pos); }

    /// Count of `b` in positions [1, i]; throws std::out_of_range if i > size().
    uint64_t rank(bool b, uint64_t i) const;
    uint64_t rank1(uint64_t i) const;
    uint64_t rank0(uint64_t i) const { return i - rank1(i); }

    /// Position of the i-th `b`, or 0 when there is no such occurrence.
    uint64_t select(bool b, uint64_t i) const;
    uint64_t select1(uint64_t i) const;
    uint64_t select0(uint64_t i) const;

    /// Eight bits starting at 1-based position `pos`; bits past the end read as 0.
    uint8_t byte_at(uint64_t pos) const;

    const std::vector<uint64_t>& words() const { return words_; }
    uint64_t core_bits() const { return len_; }
    uint64_t directory_bits() const;

    std::string to_string() const;

    void serialize(Writer& w) const;
    static BitVector deserialize(Reader& r);

    bool operator==(const BitVector& o) const { return len_ == o.len_ && words_ == o.words_; }

private:
    void build_index();

    uint64_t len_ = 0;
    uint64_t ones_ = 0;
    std::vector<uint64_t> words_;
    std::vector<uint64_t> super_;
    std::vector<uint16_t> block_;
};

/// Append-only construction helper for BitVector.
class BitVectorBuilder {
public:
    void push_back(bool b);
    void append(bool b, uint64_t count);
    uint64_t size() const { return len_; }
    BitVector build() &&;

private:
    uint64_t len_ = 0;
    std::vector<uint64_t> words_;
};

/// Non-decreasing integer sequence in unary-differential form: value v_i
/// contributes (v_i - v_{i-1}) ones followed by a zero, so the encoding has
/// n + v_n bits, at most 2n when every value is at most n.
class NonDecSeq {
public:
    NonDecSeq() = default;
    explicit NonDecSeq(std::span<const uint64_t> values);

    uint64_t size() const { return n_; }

    /// i-th value (1-based); throws std::out_of_range.
    uint64_t access(uint64_t i) const;

    /// Number of stored values <= v.
    uint64_t count_le(uint64_t v) const;

    /// [j, j'] with j the first index whose value is >= lo and j' the last
    /// whose value is <= hi; empty (j > j') when no value lies in [lo, hi].
    Range map_range(uint64_t lo, uint64_t hi) const;

    const BitVector& bits() const { return bits_; }
    uint64_t core_bits() const { return bits_.core_bits(); }
    uint64_t directory_bits() const { return bits_.directory_bits(); }

    void serialize(Writer& w) const;
    static NonDecSeq deserialize(Reader& r);

private:
    BitVector bits_;
    uint64_t n_ = 0;
    uint64_t last_ = 0;
};

/// Ordinal tree in balanced-parentheses form: 2M bits from a pre-order walk,
/// 1 = open. Node labels are pre-order ranks, so node v opens at select1(v).
///
/// Navigation uses the excess E[k] = 2*rank1(k) - k with a two-level min
/// directory: a 16-bit block-relative minimum per 256-bit block and a
/// segment tree of absolute minima over 2048-bit superblocks.
class BPTree {
public:
    static constexpr uint64_t kBlockBits = 256;
    static constexpr uint64_t kBlocksPerSuper = 8;

    BPTree() = default;
    /// Throws std::invalid_argument unless `bp` encodes exactly one tree.
    explicit BPTree(BitVector bp);

    /// Builds from a parent array over pre-order labels (parent[1] = 0,
    /// parent[v] < v, children of a node contiguous in pre-order).
    static BPTree from_preorder_parents(std::span<const uint64_t> parent);

    uint64_t nodes() const { return bp_.size() / 2; }

    uint64_t open(uint64_t v) const;
    uint64_t close(uint64_t v) const;
    /// Root has depth 1.
    uint64_t depth(uint64_t v) const;
    /// 0 for the root.
    uint64_t parent(uint64_t v) const;
    /// v + 1 when v has children, 0 otherwise.
    uint64_t first_child(uint64_t v) const;
    /// Largest label in the subtree of v.
    uint64_t rmost_leaf(uint64_t v) const;
    uint64_t lca(uint64_t u, uint64_t v) const;
    /// Number of left siblings; throws for the root.
    uint64_t child_rank(uint64_t v) const;
    /// The child of `v` whose subtree holds the strict descendant `u`.
    uint64_t child_toward(uint64_t v, uint64_t u) const;
    bool is_ancestor(uint64_t a, uint64_t v) const;

    /// Start of the maximal run of first-child links ending at v.
    uint64_t first_child_chain_start(uint64_t v) const;

    const BitVector& bits() const { return bp_; }
    uint64_t core_bits() const { return bp_.core_bits(); }
    uint64_t directory_bits() const;

    // Excess searches, exposed for testing.
    int64_t excess(uint64_t k) const { return 2 * static_cast<int64_t>(bp_.rank1(k)) - static_cast<int64_t>(k); }
    /// Smallest k > pos with E[k] <= d, or 0.
    uint64_t fwd_search(uint64_t pos, int64_t d) const;
    /// Largest k < pos (k >= 0) with E[k] <= d, or -1.
    int64_t bwd_search(uint64_t pos, int64_t d) const;
    /// min E[k] over k in [i, j], 1 <= i <= j <= 2M.
    int64_t range_min(uint64_t i, uint64_t j) const;

    void serialize(Writer& w) const;
    static BPTree deserialize(Reader& r);

    bool operator==(const BPTree& o) const { return bp_ == o.bp_; }

private:
    void build_index();
    void check_node(uint64_t v) const;
    int64_t block_base(uint64_t b) const { return excess(b * kBlockBits); }
    uint64_t block_count() const { return (bp_.size() + kBlockBits - 1) / kBlockBits; }
    uint64_t block_end(uint64_t b) const { return std::min(bp_.size(), (b + 1) * kBlockBits); }

    uint64_t scan_fwd(uint64_t from, uint64_t to, int64_t e, int64_t d) const;
    int64_t scan_bwd(uint64_t from, uint64_t to, int64_t e, int64_t d) const;
    int64_t scan_min(uint64_t from, uint64_t to, int64_t e) const;
    uint64_t fwd_blocks(uint64_t first, uint64_t last, int64_t d) const;
    int64_t bwd_blocks(uint64_t first, uint64_t last, int64_t d) const;

    BitVector bp_;
    std::vector<int16_t> block_min_;
    std::vector<int32_t> seg_;
    uint64_t seg_leaves_ = 0;
};

}  // namespace pathgraph
