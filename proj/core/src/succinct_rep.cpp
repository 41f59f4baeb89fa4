#include "pathgraph/succinct_rep.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pathgraph {

namespace {
constexpr uint8_t kVersion = 1;
}

SuccinctPathGraph SuccinctPathGraph::build(const PreparedTree& pt, const PathSet& paths) {
    uint64_t n = paths.size();
    uint64_t m = pt.nodes();
    if (n == 0) throw std::invalid_argument("a path graph needs at least one path");
    SuccinctPathGraph g;
    g.bp_ = pt.bp();
    std::vector<uint64_t> starts(n), ends(n), order(n);
    for (uint64_t i = 1; i <= n; ++i) {
        if (paths.l(i) == 0 || paths.r(i) > m || paths.l(i) > paths.r(i))
            throw std::invalid_argument("path endpoint out of range");
        starts[i - 1] = paths.l(i);
    }
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) { return paths.r(a) < paths.r(b); });
    std::vector<uint64_t> y_of_x(n);
    for (uint64_t pos = 1; pos <= n; ++pos) {
        ends[pos - 1] = paths.r(order[pos - 1]);
        y_of_x[order[pos - 1] - 1] = pos;
    }
    g.f_ = NonDecSeq(starts);
    g.j_ = NonDecSeq(ends);
    g.s_ = WaveletTree(y_of_x);

    std::vector<uint64_t> to_input(n), to_sorted(n);
    for (uint64_t i = 1; i <= n; ++i) {
        to_input[i - 1] = paths.input_index(i);
        to_sorted[paths.input_index(i) - 1] = i;
    }
    g.to_input_ = IntVector::pack(to_input);
    g.to_sorted_ = IntVector::pack(to_sorted);

    g.threshold_ = ceil_log2(n);
    BitVectorBuilder d;
    for (uint64_t i = 1; i <= n; ++i) d.push_back(g.degree_count(i) > g.threshold_);
    g.d_ = std::move(d).build();
    return g;
}

void SuccinctPathGraph::check_index(uint64_t i) const {
    if (i == 0 || i > size()) throw std::out_of_range("path index out of range");
}

uint64_t SuccinctPathGraph::path_count(uint64_t d) const {
    if (d == 0 || d > nodes()) return 0;
    return f_.count_le(d) - f_.count_le(d - 1);
}

std::pair<uint64_t, uint64_t> SuccinctPathGraph::pathep(uint64_t i) const {
    check_index(i);
    return {f_.access(i), j_.access(s_.access(i))};
}

bool SuccinctPathGraph::large_degree(uint64_t i) const {
    check_index(i);
    return d_.get(i);
}

uint64_t SuccinctPathGraph::input_index(uint64_t i) const {
    check_index(i);
    return to_input_[i - 1];
}

uint64_t SuccinctPathGraph::sorted_index(uint64_t k) const {
    check_index(k);
    return to_sorted_[k - 1];
}

// Splits a start-label range into one rectangle per child subtree that holds
// path starts. With z the deepest node of the piece above those starts (b itself
// for the lower ranges) and c the child of z toward them, the lca condition
// reduces to "the path leaves T(c)", i.e. r > rmost_leaf(c).
void SuccinctPathGraph::split_rects(Range xs, uint64_t b, bool strict, std::vector<BetaRect>& out) const {
    uint64_t cur = xs.lo;
    while (cur <= xs.hi) {
        Range idx = f_.map_range(cur, xs.hi);
        if (idx.empty()) return;
        uint64_t s = f_.access(idx.lo);
        uint64_t z = strict ? bp_.lca(s, b) : b;
        uint64_t c = bp_.child_toward(z, s);
        uint64_t rc = bp_.rmost_leaf(c);
        Range x{idx.lo, f_.count_le(std::min(rc, xs.hi))};
        Range y = j_.map_range(rc + 1, nodes());
        if (!y.empty()) out.push_back({x, y});
        cur = rc + 1;
    }
}

void SuccinctPathGraph::beta_rectangles(const HeavySubPaths& dec, uint64_t i, std::vector<BetaRect>& out) const {
    RangeQuad q = ranges(bp_, dec, i);
    uint64_t b = dec[i].hi;
    if (i == 1 && !q.r1.empty()) {
        uint64_t a = dec[1].lo;
        Range x = f_.map_range(q.r1.lo, q.r1.hi);
        Range y = j_.map_range(a, bp_.rmost_leaf(a));
        if (!x.empty() && !y.empty()) out.push_back({x, y});
    }
    Range x2 = f_.map_range(q.r2.lo, q.r2.hi);
    if (!x2.empty()) out.push_back({x2, Range{1, size()}});
    for (Range r : {q.r3a, q.r3b, q.r3c})
        if (!r.empty()) split_rects(r, b, false, out);
    for (Range r : {q.r4a, q.r4b})
        if (!r.empty()) split_rects(r, b, true, out);
}

std::vector<uint64_t> SuccinctPathGraph::compute_beta(const HeavySubPaths& dec, uint64_t i) const {
    std::vector<BetaRect> rects;
    beta_rectangles(dec, i, rects);
    std::vector<uint64_t> out;
    for (const auto& rc : rects) s_.search(rc.x, rc.y, out);
    return out;
}

bool SuccinctPathGraph::adjacent(uint64_t i, uint64_t j, SuccinctStats* stats) const {
    auto [l, r] = pathep(i);
    auto [s, t] = pathep(j);
    HeavySubPaths dec;
    compute_pi(bp_, l, r, dec);
    for (uint64_t k = 1; k <= dec.k(); ++k) {
        if (stats) ++stats->check_alpha_calls;
        if (check_alpha(bp_, dec, k, s, t)) return true;
    }
    return false;
}

std::vector<uint64_t> SuccinctPathGraph::neighbourhood_raw(uint64_t i, SuccinctStats* stats) const {
    auto [l, r] = pathep(i);
    HeavySubPaths dec;
    compute_pi(bp_, l, r, dec);
    std::vector<BetaRect> rects;
    for (uint64_t k = 1; k <= dec.k(); ++k) beta_rectangles(dec, k, rects);
    if (stats) stats->rectangles += rects.size();
    std::vector<uint64_t> out;
    for (const auto& rc : rects) s_.search(rc.x, rc.y, out);
    return out;
}

std::vector<uint64_t> SuccinctPathGraph::neighbourhood(uint64_t i) const {
    std::vector<uint64_t> out = neighbourhood_raw(i);
    std::erase(out, i);
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t SuccinctPathGraph::degree_count(uint64_t i) const {
    auto [l, r] = pathep(i);
    HeavySubPaths dec;
    compute_pi(bp_, l, r, dec);
    std::vector<BetaRect> rects;
    for (uint64_t k = 1; k <= dec.k(); ++k) beta_rectangles(dec, k, rects);
    uint64_t total = 0;
    for (const auto& rc : rects) total += s_.count(rc.x, rc.y);
    return total - 1;  // the path itself is always counted once
}

SpaceReport SuccinctPathGraph::space_report() const {
    SpaceReport rep;
    rep.items.push_back({"BP", bp_.core_bits(), bp_.directory_bits()});
    rep.items.push_back({"F", f_.core_bits(), f_.directory_bits()});
    rep.items.push_back({"J", j_.core_bits(), j_.directory_bits()});
    rep.items.push_back({"S", s_.core_bits(), s_.directory_bits()});
    rep.items.push_back({"D", d_.core_bits(), d_.directory_bits()});
    rep.side.push_back({"input order", to_input_.bits() + to_sorted_.bits(), 0});
    return rep;
}

std::vector<uint8_t> SuccinctPathGraph::serialize() const {
    Writer w;
    w.tag("PGS");
    w.u8(kVersion);
    w.u64(size());
    w.u64(nodes());
    w.u64(threshold_);
    bp_.serialize(w);
    f_.serialize(w);
    j_.serialize(w);
    s_.serialize(w);
    d_.serialize(w);
    to_input_.serialize(w);
    return seal(std::move(w));
}

SuccinctPathGraph SuccinctPathGraph::deserialize(const std::vector<uint8_t>& blob) {
    Reader r(blob.data(), unseal(blob));
    r.expect_tag("PGS");
    if (r.u8() != kVersion) throw FormatError("succinct path graph version mismatch");
    uint64_t n = r.u64();
    uint64_t m = r.u64();
    SuccinctPathGraph g;
    g.threshold_ = r.u64();
    g.bp_ = BPTree::deserialize(r);
    g.f_ = NonDecSeq::deserialize(r);
    g.j_ = NonDecSeq::deserialize(r);
    g.s_ = WaveletTree::deserialize(r);
    g.d_ = BitVector::deserialize(r);
    g.to_input_ = IntVector::deserialize(r);
    if (r.remaining() != 0) throw FormatError("trailing bytes after succinct path graph");
    if (n == 0 || g.bp_.nodes() != m || g.f_.size() != n || g.j_.size() != n || g.s_.size() != n ||
        g.d_.size() != n || g.to_input_.size() != n || g.threshold_ != ceil_log2(n))
        throw FormatError("succinct path graph sections disagree on sizes");
    if (g.f_.access(1) == 0 || g.f_.access(n) > m || g.j_.access(1) == 0 || g.j_.access(n) > m)
        throw FormatError("path endpoints outside the tree");
    std::vector<uint64_t> to_sorted(n, 0);
    for (uint64_t i = 1; i <= n; ++i) {
        uint64_t k = g.to_input_[i - 1];
        if (k == 0 || k > n || to_sorted[k - 1] != 0) throw FormatError("input order is not a permutation");
        to_sorted[k - 1] = i;
    }
    g.to_sorted_ = IntVector::pack(to_sorted);
    return g;
}

}  // namespace pathgraph
