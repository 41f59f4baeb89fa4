#include "pathgraph/interval_rep.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pathgraph {

namespace {
constexpr uint8_t kVersion = 1;
}

IntervalGraph::IntervalGraph(std::span<const Range> intervals) {
    uint64_t q = intervals.size();
    std::vector<uint64_t> s(q), e(q);
    for (uint64_t v = 0; v < q; ++v) {
        if (intervals[v].lo == 0 || intervals[v].empty()) throw std::invalid_argument("malformed interval");
        s[v] = intervals[v].lo;
        e[v] = intervals[v].hi;
    }
    start_ = IntVector::pack(s);
    end_ = IntVector::pack(e);
    build_index();
}

void IntervalGraph::build_index() {
    uint64_t q = size();
    std::vector<uint64_t> ord(q);
    std::iota(ord.begin(), ord.end(), 1);
    std::sort(ord.begin(), ord.end(), [&](uint64_t a, uint64_t b) {
        uint64_t sa = start_[a - 1], sb = start_[b - 1];
        if (sa != sb) return sa < sb;
        uint64_t ea = end_[a - 1], eb = end_[b - 1];
        return ea != eb ? ea < eb : a < b;
    });
    std::vector<uint64_t> ss(q), se(q);
    for (uint64_t p = 0; p < q; ++p) {
        ss[p] = start_[ord[p] - 1];
        se[p] = end_[ord[p] - 1];
    }
    order_ = IntVector::pack(ord);
    sorted_end_ = IntVector::pack(se);
    sorted_start_ = NonDecSeq(ss);

    sparse_.clear();
    uint64_t blocks = (q + kBlock - 1) / kBlock;
    if (blocks == 0) return;
    std::vector<uint64_t> level(blocks);
    for (uint64_t b = 0; b < blocks; ++b) level[b] = scan_argmax(b * kBlock + 1, std::min(q, (b + 1) * kBlock));
    sparse_.push_back(IntVector::pack(level));
    for (uint64_t k = 1; (uint64_t{1} << k) <= blocks; ++k) {
        const IntVector& prev = sparse_.back();
        uint64_t half = uint64_t{1} << (k - 1);
        std::vector<uint64_t> cur(blocks - (uint64_t{1} << k) + 1);
        for (uint64_t b = 0; b < cur.size(); ++b) {
            uint64_t x = prev[b], y = prev[b + half];
            cur[b] = sorted_end_[y - 1] > sorted_end_[x - 1] ? y : x;
        }
        sparse_.push_back(IntVector::pack(cur));
    }
}

void IntervalGraph::check(uint64_t v) const {
    if (v == 0 || v > size()) throw std::out_of_range("interval vertex out of range");
}

Range IntervalGraph::interval(uint64_t v) const {
    check(v);
    return {start_[v - 1], end_[v - 1]};
}

bool IntervalGraph::adjacent(uint64_t u, uint64_t v) const {
    check(u);
    check(v);
    return start_[u - 1] <= end_[v - 1] && start_[v - 1] <= end_[u - 1];
}

uint64_t IntervalGraph::scan_argmax(uint64_t lo, uint64_t hi) const {
    uint64_t best = lo;
    for (uint64_t p = lo + 1; p <= hi; ++p)
        if (sorted_end_[p - 1] > sorted_end_[best - 1]) best = p;
    return best;
}

uint64_t IntervalGraph::argmax(uint64_t lo, uint64_t hi) const {
    uint64_t bl = (lo - 1) / kBlock;
    uint64_t bh = (hi - 1) / kBlock;
    if (bh - bl <= 1) return scan_argmax(lo, hi);
    uint64_t best = scan_argmax(lo, (bl + 1) * kBlock);
    auto take = [&](uint64_t p) {
        if (sorted_end_[p - 1] > sorted_end_[best - 1]) best = p;
    };
    take(scan_argmax(bh * kBlock + 1, hi));
    uint64_t first = bl + 1, count = bh - bl - 1;
    uint64_t k = 63 - static_cast<uint64_t>(__builtin_clzll(count));
    take(sparse_[k][first]);
    take(sparse_[k][first + count - (uint64_t{1} << k)]);
    return best;
}

void IntervalGraph::report(uint64_t lo, uint64_t hi, uint64_t s, uint64_t self, std::vector<uint64_t>& out,
                           IntervalStats* stats) const {
    // Explicit stack; each popped range costs one argmax probe.
    std::vector<std::pair<uint64_t, uint64_t>> todo{{lo, hi}};
    while (!todo.empty()) {
        auto [a, b] = todo.back();
        todo.pop_back();
        if (a > b) continue;
        if (stats) ++stats->probes;
        uint64_t p = argmax(a, b);
        if (sorted_end_[p - 1] < s) continue;
        uint64_t v = order_[p - 1];
        if (v != self) out.push_back(v);
        todo.push_back({a, p - 1});
        todo.push_back({p + 1, b});
    }
}

void IntervalGraph::neighbours(uint64_t u, std::vector<uint64_t>& out, IntervalStats* stats) const {
    check(u);
    uint64_t s = start_[u - 1];
    uint64_t e = end_[u - 1];
    uint64_t prefix = sorted_start_.count_le(s);
    report(1, prefix, s, u, out, stats);
    uint64_t last = sorted_start_.count_le(e);
    for (uint64_t p = prefix + 1; p <= last; ++p) {
        if (stats) ++stats->probes;
        out.push_back(order_[p - 1]);
    }
}

std::vector<uint64_t> IntervalGraph::neighbours(uint64_t u) const {
    std::vector<uint64_t> out;
    neighbours(u, out);
    return out;
}

uint64_t IntervalGraph::directory_bits() const {
    uint64_t bits = order_.bits() + sorted_end_.bits() + sorted_start_.core_bits() + sorted_start_.directory_bits();
    for (const auto& lvl : sparse_) bits += lvl.bits();
    return bits;
}

void IntervalGraph::serialize(Writer& w) const {
    w.tag("IG");
    w.u8(kVersion);
    start_.serialize(w);
    end_.serialize(w);
}

IntervalGraph IntervalGraph::deserialize(Reader& r) {
    r.expect_tag("IG");
    if (r.u8() != kVersion) throw FormatError("IntervalGraph version mismatch");
    IntervalGraph g;
    g.start_ = IntVector::deserialize(r);
    g.end_ = IntVector::deserialize(r);
    if (g.start_.size() != g.end_.size()) throw FormatError("IntervalGraph endpoint arrays differ in length");
    for (uint64_t v = 0; v < g.start_.size(); ++v)
        if (g.start_[v] == 0 || g.start_[v] > g.end_[v]) throw FormatError("IntervalGraph holds a malformed interval");
    g.build_index();
    return g;
}

}  // namespace pathgraph
