#include "pathgraph/wavelet.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pathgraph {

namespace {
constexpr uint8_t kVersion = 1;
}

WaveletTree::WaveletTree(std::span<const uint64_t> y_of_x) : n_(y_of_x.size()), levels_(ceil_log2(y_of_x.size())) {
    std::vector<bool> seen(n_ + 1, false);
    for (uint64_t y : y_of_x) {
        if (y == 0 || y > n_ || seen[y]) throw std::invalid_argument("wavelet input must be a permutation of [1,n]");
        seen[y] = true;
    }
    // arr[p] is the value at position p (1-based) of the current level.
    std::vector<uint64_t> arr(n_ + 1);
    std::copy(y_of_x.begin(), y_of_x.end(), arr.begin() + 1);
    std::vector<uint64_t> next(n_ + 1);
    std::vector<Frame> nodes;
    if (n_ > 0) nodes.push_back({1, n_});
    BitVectorBuilder b;
    for (uint64_t level = 0; level < levels_; ++level) {
        std::vector<Frame> children;
        for (const Frame& f : nodes) {
            if (f.lo == f.hi) {
                b.push_back(false);
                next[f.lo] = arr[f.lo];
                continue;
            }
            uint64_t mid = (f.lo + f.hi) / 2;
            uint64_t left = f.lo;
            uint64_t right = mid + 1;
            for (uint64_t p = f.lo; p <= f.hi; ++p) {
                bool up = arr[p] > mid;
                b.push_back(up);
                next[up ? right++ : left++] = arr[p];
            }
            children.push_back({f.lo, mid});
            children.push_back({mid + 1, f.hi});
        }
        // Leaves are carried along so every level keeps exactly n positions.
        for (const Frame& f : nodes)
            if (f.lo == f.hi) children.push_back(f);
        std::sort(children.begin(), children.end(), [](const Frame& a, const Frame& c) { return a.lo < c.lo; });
        nodes = std::move(children);
        arr.swap(next);
    }
    bits_ = std::move(b).build();
}

Range WaveletTree::clamp(Range r) const {
    if (r.empty() || n_ == 0 || r.lo > n_ || r.hi < 1) return Range::none();
    return Range{std::max<uint64_t>(r.lo, 1), std::min(r.hi, n_)};
}

uint64_t WaveletTree::access(uint64_t x) const {
    if (x == 0 || x > n_) throw std::out_of_range("wavelet x-coordinate out of range");
    uint64_t lo = 1;
    uint64_t hi = n_;
    uint64_t p = x;
    for (uint64_t level = 0; lo < hi; ++level) {
        uint64_t base = level * n_;
        uint64_t mid = (lo + hi) / 2;
        uint64_t before = bits_.rank1(base + lo - 1);
        uint64_t ones = bits_.rank1(base + p) - before;
        if (bits_.get(base + p)) {
            p = mid + ones;
            lo = mid + 1;
        } else {
            p = lo + (p - lo + 1 - ones) - 1;
            hi = mid;
        }
    }
    return lo;
}

uint64_t WaveletTree::count_rec(uint64_t level, uint64_t lo, uint64_t hi, uint64_t p1, uint64_t p2, Range yr,
                                WaveletStats* stats) const {
    if (p1 > p2 || yr.hi < lo || hi < yr.lo) return 0;
    if (yr.lo <= lo && hi <= yr.hi) return p2 - p1 + 1;
    if (stats) ++stats->expanded_nodes;
    uint64_t base = level * n_;
    uint64_t mid = (lo + hi) / 2;
    uint64_t before = bits_.rank1(base + lo - 1);
    uint64_t o1 = bits_.rank1(base + p1 - 1) - before;
    uint64_t o2 = bits_.rank1(base + p2) - before;
    uint64_t z1 = (p1 - lo) - o1;
    uint64_t z2 = (p2 - lo + 1) - o2;
    return count_rec(level + 1, lo, mid, lo + z1, lo + z2 - 1, yr, stats) +
           count_rec(level + 1, mid + 1, hi, mid + 1 + o1, mid + o2, yr, stats);
}

uint64_t WaveletTree::count(Range xr, Range yr, WaveletStats* stats) const {
    xr = clamp(xr);
    yr = clamp(yr);
    if (xr.empty() || yr.empty()) return 0;
    return count_rec(0, 1, n_, xr.lo, xr.hi, yr, stats);
}

uint64_t WaveletTree::lift(uint64_t level, uint64_t p, const std::vector<Frame>& path) const {
    // path[j] is the node visited at level j; path[level] is the current node.
    for (uint64_t j = level; j-- > 0;) {
        const Frame& parent = path[j];
        const Frame& child = path[j + 1];
        uint64_t base = j * n_;
        uint64_t mid = (parent.lo + parent.hi) / 2;
        if (child.lo == parent.lo) {
            uint64_t zeros_before = bits_.rank0(base + parent.lo - 1);
            p = bits_.select0(zeros_before + (p - parent.lo + 1)) - base;
        } else {
            uint64_t ones_before = bits_.rank1(base + parent.lo - 1);
            p = bits_.select1(ones_before + (p - mid)) - base;
        }
    }
    return p;
}

void WaveletTree::search_rec(uint64_t level, uint64_t lo, uint64_t hi, uint64_t p1, uint64_t p2, Range yr,
                             std::vector<Frame>& path, std::vector<uint64_t>& out) const {
    if (p1 > p2 || yr.hi < lo || hi < yr.lo) return;
    path.resize(level + 1);
    path[level] = {lo, hi};
    if (yr.lo <= lo && hi <= yr.hi) {
        for (uint64_t p = p1; p <= p2; ++p) out.push_back(lift(level, p, path));
        return;
    }
    uint64_t base = level * n_;
    uint64_t mid = (lo + hi) / 2;
    uint64_t before = bits_.rank1(base + lo - 1);
    uint64_t o1 = bits_.rank1(base + p1 - 1) - before;
    uint64_t o2 = bits_.rank1(base + p2) - before;
    uint64_t z1 = (p1 - lo) - o1;
    uint64_t z2 = (p2 - lo + 1) - o2;
    search_rec(level + 1, lo, mid, lo + z1, lo + z2 - 1, yr, path, out);
    path.resize(level + 1);
    search_rec(level + 1, mid + 1, hi, mid + 1 + o1, mid + o2, yr, path, out);
}

void WaveletTree::search(Range xr, Range yr, std::vector<uint64_t>& out) const {
    xr = clamp(xr);
    yr = clamp(yr);
    if (xr.empty() || yr.empty()) return;
    size_t first = out.size();
    std::vector<Frame> path;
    search_rec(0, 1, n_, xr.lo, xr.hi, yr, path, out);
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

std::vector<uint64_t> WaveletTree::search(Range xr, Range yr) const {
    std::vector<uint64_t> out;
    search(xr, yr, out);
    return out;
}

void WaveletTree::serialize(Writer& w) const {
    w.tag("WT");
    w.u8(kVersion);
    w.u64(n_);
    w.u64(levels_);
    bits_.serialize(w);
}

WaveletTree WaveletTree::deserialize(Reader& r) {
    r.expect_tag("WT");
    if (r.u8() != kVersion) throw FormatError("WaveletTree version mismatch");
    WaveletTree wt;
    wt.n_ = r.u64();
    wt.levels_ = r.u64();
    wt.bits_ = BitVector::deserialize(r);
    if (wt.levels_ != ceil_log2(wt.n_) || wt.bits_.size() != wt.n_ * wt.levels_)
        throw FormatError("WaveletTree header does not match payload");
    return wt;
}

}  // namespace pathgraph
