#include "pathgraph/bitseq.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace pathgraph {

namespace {

constexpr uint64_t kVersion = 1;

uint64_t words_for(uint64_t bits) { return (bits + 63) / 64; }

// Position (0-based) of the r-th set bit of x, r >= 1 and r <= popcount(x).
uint64_t select_in_word(uint64_t x, uint64_t r) {
    uint64_t base = 0;
    for (;;) {
        auto pc = static_cast<uint64_t>(std::popcount(x & 0xFF));
        if (r <= pc) break;
        r -= pc;
        x >>= 8;
        base += 8;
    }
    for (uint64_t i = 1; i < r; ++i) x &= x - 1;
    return base + static_cast<uint64_t>(std::countr_zero(x));
}

// Per-byte excess summaries, bits read least-significant first.
struct ByteTables {
    std::array<int8_t, 256> delta{};
    std::array<int8_t, 256> minpref{};
};

constexpr ByteTables make_byte_tables() {
    ByteTables t;
    for (int x = 0; x < 256; ++x) {
        int e = 0;
        int m = 8;
        for (int j = 0; j < 8; ++j) {
            e += ((x >> j) & 1) ? 1 : -1;
            m = std::min(m, e);
        }
        t.delta[x] = static_cast<int8_t>(e);
        t.minpref[x] = static_cast<int8_t>(m);
    }
    return t;
}

constexpr ByteTables kBytes = make_byte_tables();

}  // namespace

// ---------------------------------------------------------------- IntVector

IntVector::IntVector(uint64_t size, uint64_t width) : size_(size), width_(width) {
    if (width == 0 || width > 64) throw std::invalid_argument("IntVector width must be in [1,64]");
    words_.assign(words_for(size * width), 0);
}

IntVector IntVector::pack(std::span<const uint64_t> values) {
    uint64_t mx = 0;
    for (uint64_t v : values) mx = std::max(mx, v);
    IntVector iv(values.size(), bits_for(mx));
    for (uint64_t i = 0; i < values.size(); ++i) iv.set(i, values[i]);
    return iv;
}

uint64_t IntVector::get(uint64_t i) const {
    if (i >= size_) throw std::out_of_range("IntVector index out of range");
    uint64_t bit = i * width_;
    uint64_t w = bit >> 6;
    uint64_t off = bit & 63;
    uint64_t v = words_[w] >> off;
    if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
    return width_ == 64 ? v : (v & ((uint64_t{1} << width_) - 1));
}

void IntVector::set(uint64_t i, uint64_t v) {
    if (i >= size_) throw std::out_of_range("IntVector index out of range");
    uint64_t mask = width_ == 64 ? ~uint64_t{0} : ((uint64_t{1} << width_) - 1);
    if ((v & mask) != v) throw std::invalid_argument("value does not fit IntVector width");
    uint64_t bit = i * width_;
    uint64_t w = bit >> 6;
    uint64_t off = bit & 63;
    words_[w] = (words_[w] & ~(mask << off)) | (v << off);
    if (off + width_ > 64) {
        uint64_t hi_bits = off + width_ - 64;
        uint64_t hi_mask = (uint64_t{1} << hi_bits) - 1;
        words_[w + 1] = (words_[w + 1] & ~hi_mask) | (v >> (64 - off));
    }
}

void IntVector::serialize(Writer& w) const {
    w.tag("IV");
    w.u8(kVersion);
    w.u64(size_);
    w.u64(width_);
    w.words(words_);
}

IntVector IntVector::deserialize(Reader& r) {
    r.expect_tag("IV");
    if (r.u8() != kVersion) throw FormatError("IntVector version mismatch");
    IntVector iv;
    iv.size_ = r.u64();
    iv.width_ = r.u64();
    iv.words_ = r.words();
    if (iv.width_ == 0 || iv.width_ > 64 || iv.size_ > (uint64_t{1} << 40) ||
        iv.words_.size() != words_for(iv.size_ * iv.width_))
        throw FormatError("IntVector header inconsistent");
    return iv;
}

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::vector<uint64_t> words, uint64_t length) : len_(length), words_(std::move(words)) {
    if (words_.size() != words_for(len_)) throw std::invalid_argument("BitVector word count does not match length");
    if ((len_ & 63) != 0 && (words_.back() >> (len_ & 63)) != 0)
        throw std::invalid_argument("BitVector has bits set past its length");
    build_index();
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVectorBuilder b;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0/1");
        b.push_back(c == '1');
    }
    return std::move(b).build();
}

void BitVector::build_index() {
    uint64_t nblocks = len_ / kBlockBits + 1;
    uint64_t nsupers = len_ / kSuperBits + 1;
    super_.assign(nsupers, 0);
    block_.assign(nblocks, 0);
    uint64_t cum = 0;
    constexpr uint64_t words_per_block = kBlockBits / 64;
    for (uint64_t b = 0; b < nblocks; ++b) {
        uint64_t start = b * kBlockBits;
        if (start % kSuperBits == 0) super_[start / kSuperBits] = cum;
        block_[b] = static_cast<uint16_t>(cum - super_[start / kSuperBits]);
        for (uint64_t w = b * words_per_block; w < std::min<uint64_t>(words_.size(), (b + 1) * words_per_block); ++w)
            cum += static_cast<uint64_t>(std::popcount(words_[w]));
    }
    ones_ = cum;
}

bool BitVector::get(uint64_t pos) const {
    if (pos == 0 || pos > len_) throw std::out_of_range("BitVector position out of range");
    uint64_t i = pos - 1;
    return (words_[i >> 6] >> (i & 63)) & 1;
}

uint8_t BitVector::byte_at(uint64_t pos) const {
    uint64_t i = pos - 1;
    uint64_t w = i >> 6;
    if (w >= words_.size()) return 0;
    uint64_t off = i & 63;
    uint64_t v = words_[w] >> off;
    if (off > 56 && w + 1 < words_.size()) v |= words_[w + 1] << (64 - off);
    return static_cast<uint8_t>(v & 0xFF);
}

uint64_t BitVector::rank1(uint64_t i) const {
    if (i > len_) throw std::out_of_range("rank position exceeds length");
    uint64_t b = i / kBlockBits;
    uint64_t r = super_[i / kSuperBits] + block_[b];
    uint64_t wi = i >> 6;
    for (uint64_t w = b * (kBlockBits / 64); w < wi; ++w) r += static_cast<uint64_t>(std::popcount(words_[w]));
    if (i & 63) r += static_cast<uint64_t>(std::popcount(words_[wi] & ((uint64_t{1} << (i & 63)) - 1)));
    return r;
}

uint64_t BitVector::rank(bool b, uint64_t i) const { return b ? rank1(i) : rank0(i); }

uint64_t BitVector::select(bool b, uint64_t i) const { return b ? select1(i) : select0(i); }

uint64_t BitVector::select1(uint64_t k) const {
    if (k == 0 || k > ones_) return 0;
    uint64_t s = static_cast<uint64_t>(std::upper_bound(super_.begin(), super_.end(), k - 1) - super_.begin()) - 1;
    uint64_t need = k - super_[s];
    constexpr uint64_t blocks_per_super = kSuperBits / kBlockBits;
    uint64_t lo = s * blocks_per_super;
    uint64_t hi = std::min<uint64_t>(block_.size(), lo + blocks_per_super);
    uint64_t b = static_cast<uint64_t>(std::upper_bound(block_.begin() + static_cast<int64_t>(lo),
                                                        block_.begin() + static_cast<int64_t>(hi), need - 1) -
                                       block_.begin()) - 1;
    uint64_t rem = need - block_[b];
    for (uint64_t w = b * (kBlockBits / 64);; ++w) {
        auto pc = static_cast<uint64_t>(std::popcount(words_[w]));
        if (rem <= pc) return w * 64 + select_in_word(words_[w], rem) + 1;
        rem -= pc;
    }
}

uint64_t BitVector::select0(uint64_t k) const {
    if (k == 0 || k > zeros()) return 0;
    auto zeros_before_super = [&](uint64_t s) { return s * kSuperBits - super_[s]; };
    uint64_t lo = 0;
    uint64_t hi = super_.size();
    while (hi - lo > 1) {
        uint64_t mid = (lo + hi) / 2;
        if (zeros_before_super(mid) < k) lo = mid;
        else hi = mid;
    }
    uint64_t s = lo;
    uint64_t need = k - zeros_before_super(s);
    constexpr uint64_t blocks_per_super = kSuperBits / kBlockBits;
    auto zeros_before_block = [&](uint64_t b) { return (b * kBlockBits - s * kSuperBits) - block_[b]; };
    uint64_t blo = s * blocks_per_super;
    uint64_t bhi = std::min<uint64_t>(block_.size(), blo + blocks_per_super);
    while (bhi - blo > 1) {
        uint64_t mid = (blo + bhi) / 2;
        if (zeros_before_block(mid) < need) blo = mid;
        else bhi = mid;
    }
    uint64_t rem = need - zeros_before_block(blo);
    for (uint64_t w = blo * (kBlockBits / 64);; ++w) {
        uint64_t inv = ~words_[w];
        auto pc = static_cast<uint64_t>(std::popcount(inv));
        if (rem <= pc) return w * 64 + select_in_word(inv, rem) + 1;
        rem -= pc;
    }
}

uint64_t BitVector::directory_bits() const { return super_.size() * 64 + block_.size() * 16; }

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(len_);
    for (uint64_t i = 1; i <= len_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
}

void BitVector::serialize(Writer& w) const {
    w.tag("BV");
    w.u8(kVersion);
    w.u64(len_);
    w.words(words_);
    w.words(super_);
    w.uints(block_);
}

BitVector BitVector::deserialize(Reader& r) {
    r.expect_tag("BV");
    if (r.u8() != kVersion) throw FormatError("BitVector version mismatch");
    uint64_t len = r.u64();
    auto words = r.words();
    auto super = r.words();
    auto block = r.uints<uint16_t>();
    BitVector bv;
    try {
        bv = BitVector(std::move(words), len);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("BitVector payload invalid: ") + e.what());
    }
    if (bv.super_ != super || bv.block_ != block) throw FormatError("BitVector directory does not match payload");
    return bv;
}

void BitVectorBuilder::push_back(bool b) {
    if ((len_ & 63) == 0) words_.push_back(0);
    if (b) words_.back() |= uint64_t{1} << (len_ & 63);
    ++len_;
}

void BitVectorBuilder::append(bool b, uint64_t count) {
    while (count > 0 && (len_ & 63) != 0) {
        push_back(b);
        --count;
    }
    while (count >= 64) {
        words_.push_back(b ? ~uint64_t{0} : 0);
        len_ += 64;
        count -= 64;
    }
    while (count > 0) {
        push_back(b);
        --count;
    }
}

BitVector BitVectorBuilder::build() && { return BitVector(std::move(words_), len_); }

// ---------------------------------------------------------------- NonDecSeq

NonDecSeq::NonDecSeq(std::span<const uint64_t> values) : n_(values.size()) {
    BitVectorBuilder b;
    uint64_t prev = 0;
    for (uint64_t v : values) {
        if (v < prev) throw std::invalid_argument("NonDecSeq values must be non-decreasing");
        b.append(true, v - prev);
        b.push_back(false);
        prev = v;
    }
    last_ = prev;
    bits_ = std::move(b).build();
}

uint64_t NonDecSeq::access(uint64_t i) const {
    if (i == 0 || i > n_) throw std::out_of_range("NonDecSeq index out of range");
    return bits_.rank1(bits_.select0(i));
}

uint64_t NonDecSeq::count_le(uint64_t v) const {
    if (v >= last_) return n_;
    return bits_.rank0(bits_.select1(v + 1));
}

Range NonDecSeq::map_range(uint64_t lo, uint64_t hi) const {
    if (lo > hi) return Range::none();
    uint64_t j = (lo == 0 ? 0 : count_le(lo - 1)) + 1;
    return Range{j, count_le(hi)};
}

void NonDecSeq::serialize(Writer& w) const {
    w.tag("NS");
    w.u8(kVersion);
    w.u64(n_);
    w.u64(last_);
    bits_.serialize(w);
}

NonDecSeq NonDecSeq::deserialize(Reader& r) {
    r.expect_tag("NS");
    if (r.u8() != kVersion) throw FormatError("NonDecSeq version mismatch");
    NonDecSeq s;
    s.n_ = r.u64();
    s.last_ = r.u64();
    s.bits_ = BitVector::deserialize(r);
    if (s.bits_.zeros() != s.n_ || s.bits_.ones() != s.last_ ||
        (s.n_ > 0 && s.bits_.get(s.bits_.size())))
        throw FormatError("NonDecSeq header does not match encoding");
    return s;
}

// ---------------------------------------------------------------- BPTree

BPTree::BPTree(BitVector bp) : bp_(std::move(bp)) { build_index(); }

BPTree BPTree::from_preorder_parents(std::span<const uint64_t> parent) {
    if (parent.size() < 2) throw std::invalid_argument("tree needs at least one node");
    uint64_t m = parent.size() - 1;
    if (parent[1] != 0) throw std::invalid_argument("node 1 must be the root");
    BitVectorBuilder b;
    std::vector<uint64_t> stack;
    for (uint64_t v = 1; v <= m; ++v) {
        if (v > 1) {
            while (!stack.empty() && stack.back() != parent[v]) {
                stack.pop_back();
                b.push_back(false);
            }
            if (stack.empty()) throw std::invalid_argument("parent array is not in pre-order");
        }
        stack.push_back(v);
        b.push_back(true);
    }
    b.append(false, stack.size());
    return BPTree(std::move(b).build());
}

void BPTree::build_index() {
    uint64_t len = bp_.size();
    if (len == 0) {
        block_min_.clear();
        seg_.clear();
        seg_leaves_ = 0;
        return;
    }
    if (len % 2 != 0 || bp_.ones() * 2 != len) throw std::invalid_argument("BP sequence is unbalanced");
    uint64_t nb = block_count();
    block_min_.assign(nb, 0);
    uint64_t nsb = (nb + kBlocksPerSuper - 1) / kBlocksPerSuper;
    seg_leaves_ = std::bit_ceil(std::max<uint64_t>(nsb, 1));
    seg_.assign(2 * seg_leaves_, std::numeric_limits<int32_t>::max());
    int64_t e = 0;
    for (uint64_t b = 0; b < nb; ++b) {
        int64_t base = e;
        int64_t m = std::numeric_limits<int64_t>::max();
        for (uint64_t k = b * kBlockBits + 1; k <= block_end(b); ++k) {
            e += bp_.get(k) ? 1 : -1;
            if (e < 0 || (e == 0 && k != len)) throw std::invalid_argument("BP sequence does not encode a single tree");
            m = std::min(m, e);
        }
        block_min_[b] = static_cast<int16_t>(m - base);
        int32_t& leaf = seg_[seg_leaves_ + b / kBlocksPerSuper];
        leaf = std::min<int32_t>(leaf, static_cast<int32_t>(m));
    }
    if (e != 0) throw std::invalid_argument("BP sequence is unbalanced");
    for (uint64_t i = seg_leaves_ - 1; i >= 1; --i) seg_[i] = std::min(seg_[2 * i], seg_[2 * i + 1]);
}

uint64_t BPTree::directory_bits() const {
    return bp_.directory_bits() + block_min_.size() * 16 + seg_.size() * 32;
}

uint64_t BPTree::scan_fwd(uint64_t from, uint64_t to, int64_t e, int64_t d) const {
    uint64_t k = from;
    while (k <= to) {
        if (((k - 1) & 7) == 0 && k + 7 <= to) {
            uint8_t byte = bp_.byte_at(k);
            if (e + kBytes.minpref[byte] > d) {
                e += kBytes.delta[byte];
                k += 8;
                continue;
            }
        }
        e += bp_.get(k) ? 1 : -1;
        if (e <= d) return k;
        ++k;
    }
    return 0;
}

int64_t BPTree::scan_bwd(uint64_t from, uint64_t to, int64_t e, int64_t d) const {
    // e = E[from]; scans positions from, from-1, ..., to.
    uint64_t k = from;
    while (k >= to) {
        if ((k & 7) == 0 && k >= to + 7) {
            uint8_t byte = bp_.byte_at(k - 7);
            int64_t e0 = e - kBytes.delta[byte];
            if (e0 + kBytes.minpref[byte] > d) {
                e = e0;
                if (k < to + 8) return -1;
                k -= 8;
                continue;
            }
        }
        if (e <= d) return static_cast<int64_t>(k);
        e -= bp_.get(k) ? 1 : -1;
        if (k == to) break;
        --k;
    }
    return -1;
}

int64_t BPTree::scan_min(uint64_t from, uint64_t to, int64_t e) const {
    int64_t m = std::numeric_limits<int64_t>::max();
    uint64_t k = from;
    while (k <= to) {
        if (((k - 1) & 7) == 0 && k + 7 <= to) {
            uint8_t byte = bp_.byte_at(k);
            m = std::min<int64_t>(m, e + kBytes.minpref[byte]);
            e += kBytes.delta[byte];
            k += 8;
            continue;
        }
        e += bp_.get(k) ? 1 : -1;
        m = std::min(m, e);
        ++k;
    }
    return m;
}

uint64_t BPTree::fwd_blocks(uint64_t first, uint64_t last, int64_t d) const {
    for (uint64_t b = first; b <= last; ++b) {
        int64_t base = block_base(b);
        if (base + block_min_[b] <= d) return scan_fwd(b * kBlockBits + 1, block_end(b), base, d);
    }
    return 0;
}

int64_t BPTree::bwd_blocks(uint64_t first, uint64_t last, int64_t d) const {
    // Blocks first, first-1, ..., last (first >= last).
    for (uint64_t b = first + 1; b-- > last;) {
        if (block_base(b) + block_min_[b] <= d) {
            uint64_t end = block_end(b);
            return scan_bwd(end, b * kBlockBits + 1, excess(end), d);
        }
    }
    return -1;
}

uint64_t BPTree::fwd_search(uint64_t pos, int64_t d) const {
    uint64_t len = bp_.size();
    if (pos >= len) return 0;
    uint64_t b = pos / kBlockBits;
    if (uint64_t r = scan_fwd(pos + 1, block_end(b), excess(pos), d)) return r;
    uint64_t nb = block_count();
    uint64_t s = b / kBlocksPerSuper;
    uint64_t super_last = std::min(nb - 1, s * kBlocksPerSuper + kBlocksPerSuper - 1);
    if (b + 1 <= super_last)
        if (uint64_t r = fwd_blocks(b + 1, super_last, d)) return r;
    uint64_t i = s + seg_leaves_;
    for (;;) {
        if (i == 1) return 0;
        if ((i & 1) == 0 && seg_[i + 1] <= d) {
            ++i;
            break;
        }
        i >>= 1;
    }
    while (i < seg_leaves_) {
        i *= 2;
        if (seg_[i] > d) ++i;
    }
    uint64_t s2 = i - seg_leaves_;
    return fwd_blocks(s2 * kBlocksPerSuper, std::min(nb - 1, s2 * kBlocksPerSuper + kBlocksPerSuper - 1), d);
}

int64_t BPTree::bwd_search(uint64_t pos, int64_t d) const {
    if (pos == 0) return -1;
    uint64_t k0 = pos - 1;
    if (k0 == 0) return d >= 0 ? 0 : -1;
    uint64_t b = (k0 - 1) / kBlockBits;
    if (int64_t r = scan_bwd(k0, b * kBlockBits + 1, excess(k0), d); r >= 0) return r;
    uint64_t s = b / kBlocksPerSuper;
    if (b > s * kBlocksPerSuper)
        if (int64_t r = bwd_blocks(b - 1, s * kBlocksPerSuper, d); r >= 0) return r;
    uint64_t i = s + seg_leaves_;
    bool found = false;
    while (i > 1) {
        if ((i & 1) == 1 && seg_[i - 1] <= d) {
            --i;
            found = true;
            break;
        }
        i >>= 1;
    }
    if (found) {
        while (i < seg_leaves_) {
            i = 2 * i + 1;
            if (seg_[i] > d) --i;
        }
        uint64_t s2 = i - seg_leaves_;
        uint64_t nb = block_count();
        uint64_t last = std::min(nb - 1, s2 * kBlocksPerSuper + kBlocksPerSuper - 1);
        if (int64_t r = bwd_blocks(last, s2 * kBlocksPerSuper, d); r >= 0) return r;
    }
    return d >= 0 ? 0 : -1;
}

int64_t BPTree::range_min(uint64_t i, uint64_t j) const {
    if (i == 0 || i > j || j > bp_.size()) throw std::out_of_range("range_min bounds");
    uint64_t bi = (i - 1) / kBlockBits;
    uint64_t bj = (j - 1) / kBlockBits;
    if (bi == bj) return scan_min(i, j, excess(i - 1));
    int64_t m = scan_min(i, block_end(bi), excess(i - 1));
    m = std::min(m, scan_min(bj * kBlockBits + 1, j, block_base(bj)));
    auto block_abs_min = [&](uint64_t b) { return block_base(b) + block_min_[b]; };
    uint64_t si = bi / kBlocksPerSuper;
    uint64_t sj = bj / kBlocksPerSuper;
    if (si == sj) {
        for (uint64_t b = bi + 1; b < bj; ++b) m = std::min(m, block_abs_min(b));
        return m;
    }
    for (uint64_t b = bi + 1; b < (si + 1) * kBlocksPerSuper; ++b) m = std::min(m, block_abs_min(b));
    for (uint64_t b = sj * kBlocksPerSuper; b < bj; ++b) m = std::min(m, block_abs_min(b));
    uint64_t lo = si + 1 + seg_leaves_;
    uint64_t hi = sj + seg_leaves_;  // exclusive
    while (lo < hi) {
        if (lo & 1) m = std::min<int64_t>(m, seg_[lo++]);
        if (hi & 1) m = std::min<int64_t>(m, seg_[--hi]);
        lo >>= 1;
        hi >>= 1;
    }
    return m;
}

void BPTree::check_node(uint64_t v) const {
    if (v == 0 || v > nodes()) throw std::out_of_range("tree node label out of range");
}

uint64_t BPTree::open(uint64_t v) const {
    check_node(v);
    return bp_.select1(v);
}

uint64_t BPTree::depth(uint64_t v) const { return 2 * v - open(v); }

uint64_t BPTree::close(uint64_t v) const {
    uint64_t o = open(v);
    return fwd_search(o, static_cast<int64_t>(2 * v - o) - 1);
}

uint64_t BPTree::parent(uint64_t v) const {
    uint64_t o = open(v);
    if (v == 1) return kNone;
    int64_t k = bwd_search(o, static_cast<int64_t>(2 * v - o) - 2);
    return bp_.rank1(static_cast<uint64_t>(k) + 1);
}

uint64_t BPTree::first_child(uint64_t v) const {
    uint64_t o = open(v);
    return (o < bp_.size() && bp_.get(o + 1)) ? v + 1 : kNone;
}

uint64_t BPTree::rmost_leaf(uint64_t v) const { return bp_.rank1(close(v)); }

bool BPTree::is_ancestor(uint64_t a, uint64_t v) const {
    check_node(v);
    return a <= v && v <= rmost_leaf(a);
}

uint64_t BPTree::lca(uint64_t u, uint64_t v) const {
    check_node(u);
    check_node(v);
    if (u > v) std::swap(u, v);
    if (u == v) return u;
    uint64_t ou = open(u);
    uint64_t ov = open(v);
    uint64_t cu = fwd_search(ou, static_cast<int64_t>(2 * u - ou) - 1);
    if (ov < cu) return u;
    int64_t m = range_min(ou, ov);
    int64_t k = bwd_search(ou, m - 1);
    return bp_.rank1(static_cast<uint64_t>(k) + 1);
}

uint64_t BPTree::child_rank(uint64_t v) const {
    uint64_t pos = open(v);
    if (v == 1) throw std::invalid_argument("child_rank of the root is undefined");
    uint64_t count = 0;
    while (!bp_.get(pos - 1)) {
        uint64_t c = pos - 1;
        pos = static_cast<uint64_t>(bwd_search(c, excess(c))) + 1;
        ++count;
    }
    return count;
}

uint64_t BPTree::child_toward(uint64_t v, uint64_t u) const {
    if (u == v || !is_ancestor(v, u)) throw std::invalid_argument("child_toward needs a strict descendant");
    int64_t k = bwd_search(open(u), static_cast<int64_t>(depth(v)));
    return bp_.rank1(static_cast<uint64_t>(k) + 1);
}

uint64_t BPTree::first_child_chain_start(uint64_t v) const {
    uint64_t z = bp_.rank0(open(v));
    uint64_t q = z == 0 ? 0 : bp_.select0(z);
    return bp_.rank1(q + 1);
}

void BPTree::serialize(Writer& w) const {
    w.tag("BT");
    w.u8(kVersion);
    bp_.serialize(w);
}

BPTree BPTree::deserialize(Reader& r) {
    r.expect_tag("BT");
    if (r.u8() != kVersion) throw FormatError("BPTree version mismatch");
    BitVector bits = BitVector::deserialize(r);
    try {
        return BPTree(std::move(bits));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("BP payload invalid: ") + e.what());
    }
}

}  // namespace pathgraph
