#include "pathgraph/level_rep.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pathgraph {

namespace {

constexpr uint8_t kVersion = 1;

// Packs a list of groups as (offsets, flat values); offsets has groups + 1 entries.
void pack_groups(const std::vector<std::vector<uint64_t>>& groups, IntVector& off, IntVector& flat) {
    std::vector<uint64_t> o{0}, f;
    for (const auto& g : groups) {
        f.insert(f.end(), g.begin(), g.end());
        o.push_back(f.size());
    }
    off = IntVector::pack(o);
    flat = IntVector::pack(f);
}

void check_offsets(const IntVector& off, uint64_t groups, uint64_t flat) {
    if (off.size() != groups + 1 || off[0] != 0 || off[groups] != flat)
        throw FormatError("level structure offsets are inconsistent");
    for (uint64_t g = 0; g < groups; ++g)
        if (off[g] > off[g + 1]) throw FormatError("level structure offsets are not monotone");
}

}  // namespace

LevelStructure LevelStructure::build(const PreparedTree& pt, const PathSet& paths) {
    uint64_t n = paths.size();
    uint64_t m = pt.nodes();
    if (n == 0) throw std::invalid_argument("a path graph needs at least one path");
    uint64_t hcount = pt.heavy_path_count();
    uint64_t k = pt.levels();

    LevelStructure g;
    g.k_ = k;
    g.bp_ = pt.bp();

    std::vector<uint64_t> hp(m), lvl(hcount), hpp(hcount + 1, 0);
    for (uint64_t v = 1; v <= m; ++v) hp[v - 1] = pt.heavy_path_of(v);
    for (uint64_t h = 1; h <= hcount; ++h) {
        lvl[h - 1] = pt.level(h);
        hpp[h] = pt.hp_parent(h);
    }
    g.hp_ = IntVector::pack(hp);
    g.lvl_ = IntVector::pack(lvl);
    g.hpt_ = BPTree::from_preorder_parents(hpp);

    std::vector<uint64_t> ls(n), rs(n), lo(n), hi(n), pit(n * k * 2, 0);
    std::vector<std::vector<Range>> intervals(k);
    std::vector<std::vector<uint64_t>> owner(k);
    std::vector<std::vector<uint64_t>> by_lca(m);
    std::vector<std::vector<uint64_t>> through(hcount + 1), terminal(hcount + 1);
    std::vector<int64_t> cover(m + 1, 0);
    std::vector<uint64_t> lca_count(m + 1, 0), lca_of(n);

    HeavySubPaths dec;
    for (uint64_t i = 1; i <= n; ++i) {
        uint64_t l = paths.l(i), r = paths.r(i);
        if (l == 0 || r > m || l > r) throw std::invalid_argument("path endpoint out of range");
        ls[i - 1] = l;
        rs[i - 1] = r;
        uint64_t p = g.bp_.lca(l, r);
        lca_of[i - 1] = p;
        by_lca[p - 1].push_back(i);
        ++lca_count[p];
        ++cover[l];
        ++cover[r];
        --cover[p];
        if (pt.parent(p) != 0) --cover[pt.parent(p)];

        compute_pi(g.bp_, l, r, dec);
        std::vector<uint64_t> hps(dec.k());
        uint64_t top = 0, bottom = 0;
        for (uint64_t j = 1; j <= dec.k(); ++j) {
            hps[j - 1] = pt.heavy_path_of(dec[j].lo);
            uint64_t lv = pt.level(hps[j - 1]);
            intervals[lv - 1].push_back(dec[j]);
            owner[lv - 1].push_back(i);
            uint64_t base = ((i - 1) * k + (lv - 1)) * 2;
            if (pit[base] == 0)
                pit[base] = intervals[lv - 1].size();
            else if (pit[base + 1] == 0)
                pit[base + 1] = intervals[lv - 1].size();
            else
                throw std::logic_error("more than two pieces of one path on a level");
            top = j == 1 ? lv : std::min(top, lv);
            bottom = std::max(bottom, lv);
        }
        lo[i - 1] = top;
        hi[i - 1] = bottom;

        // Each branch below the first piece is a chain of light edges in the
        // heavy path tree; consecutive edges (w1,w2),(w2,w3) file the path under
        // w3, and the bottom edge files it as terminal at its lower end.
        auto branch = [&](uint64_t s, uint64_t e) {
            for (uint64_t j = s + 1; j <= e; ++j) through[hps[j - 1]].push_back(i);
            terminal[hps[e - 1]].push_back(i);
        };
        uint64_t kk = dec.k();
        if (dec.succ11 != 0 && dec.succ12 != 0) {
            branch(dec.succ11, dec.succ12 - 1);
            branch(dec.succ12, kk);
        } else if (dec.succ11 != 0 || dec.succ12 != 0) {
            branch(2, kk);
        }
    }

    for (uint64_t l = 1; l <= k; ++l) {
        if (intervals[l - 1].size() > 2 * n) throw std::logic_error("level interval graph exceeds 2n vertices");
        g.it_.emplace_back(intervals[l - 1]);
        g.e_.push_back(IntVector::pack(owner[l - 1]));
    }
    g.l_ = IntVector::pack(ls);
    g.r_ = IntVector::pack(rs);
    g.span_lo_ = IntVector::pack(lo);
    g.span_hi_ = IntVector::pack(hi);
    g.pit_ = IntVector::pack(pit);
    pack_groups(by_lca, g.lca_off_, g.lca_paths_);

    // Through lists grouped under the parent heavy path; children come in
    // ascending index order, so each group is sorted by child.
    std::vector<std::vector<uint64_t>> th_children(hcount);
    std::vector<std::vector<uint64_t>> lists;
    for (uint64_t d = 2; d <= hcount; ++d)
        if (!through[d].empty()) th_children[hpp[d] - 1].push_back(d);
    for (const auto& ch : th_children)
        for (uint64_t d : ch) lists.push_back(through[d]);
    pack_groups(th_children, g.th_off_, g.th_child_);
    pack_groups(lists, g.th_list_, g.th_paths_);
    pack_groups(std::vector<std::vector<uint64_t>>(terminal.begin() + 1, terminal.end()), g.te_off_, g.te_paths_);

    // deg(P) = |paths through p| + |paths with lca strictly below p on the
    // p->l and p->r chains|. Paths through p come from a subtree-sum
    // difference array; the lca counts from prefix sums along root chains.
    for (uint64_t v = m; v >= 2; --v) cover[pt.parent(v)] += cover[v];
    std::vector<uint64_t> chain(m + 1, 0);
    for (uint64_t v = 1; v <= m; ++v) chain[v] = chain[pt.parent(v)] + lca_count[v];
    std::vector<uint64_t> deg(n);
    for (uint64_t i = 1; i <= n; ++i) {
        uint64_t p = lca_of[i - 1];
        deg[i - 1] = static_cast<uint64_t>(cover[p]) + chain[ls[i - 1]] + chain[rs[i - 1]] - 2 * chain[p] - 1;
    }
    g.deg_ = IntVector::pack(deg);

    std::vector<uint64_t> to_input(n), to_sorted(n);
    for (uint64_t i = 1; i <= n; ++i) {
        to_input[i - 1] = paths.input_index(i);
        to_sorted[paths.input_index(i) - 1] = i;
    }
    g.to_input_ = IntVector::pack(to_input);
    g.to_sorted_ = IntVector::pack(to_sorted);
    return g;
}

void LevelStructure::check_index(uint64_t i) const {
    if (i == 0 || i > size()) throw std::out_of_range("path index out of range");
}

Range LevelStructure::span(uint64_t i) const {
    check_index(i);
    return {span_lo_[i - 1], span_hi_[i - 1]};
}

uint64_t LevelStructure::min_level(uint64_t i, uint64_t j) const {
    Range a = span(i), b = span(j);
    if (a.hi < b.lo || b.hi < a.lo) return 0;
    return std::max(a.lo, b.lo);
}

std::pair<uint64_t, uint64_t> LevelStructure::vertices(uint64_t i, uint64_t l) const {
    check_index(i);
    if (l == 0 || l > k_) throw std::out_of_range("level out of range");
    return {pit(i, l, 0), pit(i, l, 1)};
}

uint64_t LevelStructure::path_of(uint64_t l, uint64_t v) const {
    if (l == 0 || l > k_) throw std::out_of_range("level out of range");
    const IntVector& e = e_[l - 1];
    if (v == 0 || v > e.size()) throw std::out_of_range("level vertex out of range");
    return e[v - 1];
}

std::vector<uint64_t> LevelStructure::paths_with_lca(uint64_t a) const {
    if (a == 0 || a > nodes()) throw std::out_of_range("node out of range");
    std::vector<uint64_t> out;
    for (uint64_t x = lca_off_[a - 1]; x < lca_off_[a]; ++x) out.push_back(lca_paths_[x]);
    return out;
}

template <typename Emit>
void LevelStructure::for_distinct_paths(uint64_t w1, uint64_t w2, uint64_t w3, Emit&& emit) const {
    for (uint64_t x = th_off_[w2 - 1]; x < th_off_[w2]; ++x) {
        if (th_child_[x] == w3) continue;
        for (uint64_t y = th_list_[x]; y < th_list_[x + 1]; ++y) emit(th_paths_[y]);
    }
    for (uint64_t y = te_off_[w2 - 1]; y < te_off_[w2]; ++y) emit(te_paths_[y]);
    (void)w1;
}

std::vector<uint64_t> LevelStructure::distinct_paths(uint64_t w1, uint64_t w2, uint64_t w3) const {
    uint64_t hc = hpt_.nodes();
    if (w1 == 0 || w1 > hc || w2 == 0 || w2 > hc || w3 > hc) throw std::out_of_range("heavy path out of range");
    if (hpt_.parent(w2) != w1) throw std::invalid_argument("w1 is not the parent of w2");
    if (w3 != 0 && hpt_.parent(w3) != w2) throw std::invalid_argument("w3 is not a child of w2");
    std::vector<uint64_t> out;
    for_distinct_paths(w1, w2, w3, [&](uint64_t q) { out.push_back(q); });
    return out;
}

bool LevelStructure::adjacent(uint64_t i, uint64_t j, LevelStats* stats) const {
    uint64_t l = min_level(i, j);
    if (stats) stats->array_reads += 4;
    if (l == 0) return false;
    uint64_t u[2] = {pit(i, l, 0), pit(i, l, 1)};
    uint64_t v[2] = {pit(j, l, 0), pit(j, l, 1)};
    if (stats) stats->array_reads += 4;
    const IntervalGraph& ig = it_[l - 1];
    for (uint64_t a : u) {
        if (a == 0) continue;
        for (uint64_t b : v) {
            if (b == 0) continue;
            if (stats) ++stats->ig_probes;
            if (ig.adjacent(a, b)) return true;
        }
    }
    return false;
}

void LevelStructure::neighbourhood(uint64_t i, std::vector<uint64_t>& out, LevelScratch& scratch,
                                   LevelStats* stats) const {
    check_index(i);
    if (scratch.mark.size() < size() + 1) {
        scratch.mark.assign(size() + 1, 0);
        scratch.epoch = 0;
    }
    if (++scratch.epoch == 0) {
        std::fill(scratch.mark.begin(), scratch.mark.end(), 0);
        scratch.epoch = 1;
    }
    uint64_t touches = 0;
    auto emit = [&](uint64_t q) {
        ++touches;
        if (q == i || scratch.mark[q] == scratch.epoch) return;
        scratch.mark[q] = scratch.epoch;
        out.push_back(q);
    };

    uint64_t l = l_[i - 1], r = r_[i - 1];
    uint64_t p = bp_.lca(l, r);
    // Light edges met while climbing each branch, bottom-up, as (upper, lower) heavy paths.
    std::vector<std::pair<uint64_t, uint64_t>> e1, e2;
    auto climb = [&](uint64_t x, std::vector<std::pair<uint64_t, uint64_t>>& edges) {
        while (x != p) {
            for (uint64_t y = lca_off_[x - 1]; y < lca_off_[x]; ++y) emit(lca_paths_[y]);
            uint64_t c = bp_.parent(x);
            uint64_t hx = hp_[x - 1], hc = hp_[c - 1];
            if (hx != hc) edges.emplace_back(hc, hx);
            x = c;
            ++touches;
        }
    };
    climb(l, e1);

    uint64_t top = lvl_[hp_[p - 1] - 1];
    uint64_t v1 = pit(i, top, 0);
    const IntervalGraph& ig = it_[top - 1];
    const IntVector& owner = e_[top - 1];
    scratch.buf.clear();
    ig.neighbours(v1, scratch.buf);
    for (uint64_t v : scratch.buf) emit(owner[v - 1]);

    climb(r, e2);
    for (const auto* edges : {&e1, &e2}) {
        uint64_t prev = 0;  // lower end of the previous edge; reset per branch
        for (auto [w1, w2] : *edges) {
            ++touches;
            for_distinct_paths(w1, w2, prev, emit);
            prev = w2;
        }
    }
    if (stats) stats->touches += touches;
}

std::vector<uint64_t> LevelStructure::neighbourhood(uint64_t i, LevelStats* stats) const {
    thread_local LevelScratch scratch;
    std::vector<uint64_t> out;
    neighbourhood(i, out, scratch, stats);
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t LevelStructure::degree(uint64_t i) const {
    check_index(i);
    return deg_[i - 1];
}

uint64_t LevelStructure::input_index(uint64_t i) const {
    check_index(i);
    return to_input_[i - 1];
}

uint64_t LevelStructure::sorted_index(uint64_t k) const {
    check_index(k);
    return to_sorted_[k - 1];
}

SpaceReport LevelStructure::space_report() const {
    SpaceReport rep;
    rep.items.push_back({"BP", bp_.core_bits(), bp_.directory_bits()});
    rep.items.push_back({"F", hp_.bits(), 0});
    rep.items.push_back({"L", lvl_.bits(), 0});
    rep.items.push_back({"HPT", hpt_.core_bits(), hpt_.directory_bits()});
    rep.items.push_back({"endpoints", l_.bits() + r_.bits(), 0});
    rep.items.push_back({"R", span_lo_.bits() + span_hi_.bits(), 0});
    rep.items.push_back({"PIT", pit_.bits(), 0});
    SpaceItem it{"IT", 0, 0}, e{"E", 0, 0};
    for (const auto& ig : it_) {
        it.core_bits += ig.core_bits();
        it.directory_bits += ig.directory_bits();
    }
    for (const auto& v : e_) e.core_bits += v.bits();
    rep.items.push_back(it);
    rep.items.push_back(e);
    rep.items.push_back({"A", lca_paths_.bits(), lca_off_.bits()});
    rep.items.push_back({"H", th_paths_.bits() + te_paths_.bits() + th_child_.bits(),
                         th_off_.bits() + th_list_.bits() + te_off_.bits()});
    rep.items.push_back({"deg", deg_.bits(), 0});
    rep.side.push_back({"input order", to_input_.bits() + to_sorted_.bits(), 0});
    return rep;
}

std::vector<uint8_t> LevelStructure::serialize() const {
    Writer w;
    w.tag("PGL");
    w.u8(kVersion);
    w.u64(size());
    w.u64(nodes());
    w.u64(k_);
    bp_.serialize(w);
    hp_.serialize(w);
    lvl_.serialize(w);
    hpt_.serialize(w);
    l_.serialize(w);
    r_.serialize(w);
    span_lo_.serialize(w);
    span_hi_.serialize(w);
    pit_.serialize(w);
    for (uint64_t l = 0; l < k_; ++l) {
        it_[l].serialize(w);
        e_[l].serialize(w);
    }
    for (const IntVector* v : {&lca_off_, &lca_paths_, &th_off_, &th_child_, &th_list_, &th_paths_, &te_off_,
                               &te_paths_, &deg_, &to_input_})
        v->serialize(w);
    return seal(std::move(w));
}

LevelStructure LevelStructure::deserialize(const std::vector<uint8_t>& blob) {
    Reader r(blob.data(), unseal(blob));
    r.expect_tag("PGL");
    if (r.u8() != kVersion) throw FormatError("level structure version mismatch");
    uint64_t n = r.u64();
    uint64_t m = r.u64();
    LevelStructure g;
    g.k_ = r.u64();
    if (n == 0 || m == 0 || g.k_ == 0 || g.k_ > m) throw FormatError("level structure header is malformed");
    g.bp_ = BPTree::deserialize(r);
    g.hp_ = IntVector::deserialize(r);
    g.lvl_ = IntVector::deserialize(r);
    g.hpt_ = BPTree::deserialize(r);
    g.l_ = IntVector::deserialize(r);
    g.r_ = IntVector::deserialize(r);
    g.span_lo_ = IntVector::deserialize(r);
    g.span_hi_ = IntVector::deserialize(r);
    g.pit_ = IntVector::deserialize(r);
    for (uint64_t l = 0; l < g.k_; ++l) {
        g.it_.push_back(IntervalGraph::deserialize(r));
        g.e_.push_back(IntVector::deserialize(r));
    }
    for (IntVector* v : {&g.lca_off_, &g.lca_paths_, &g.th_off_, &g.th_child_, &g.th_list_, &g.th_paths_,
                         &g.te_off_, &g.te_paths_, &g.deg_, &g.to_input_})
        *v = IntVector::deserialize(r);
    if (r.remaining() != 0) throw FormatError("trailing bytes after level structure");
    if (g.bp_.nodes() != m || g.hp_.size() != m || g.l_.size() != n || g.r_.size() != n ||
        g.span_lo_.size() != n || g.span_hi_.size() != n || g.pit_.size() != n * g.k_ * 2 || g.deg_.size() != n ||
        g.to_input_.size() != n || g.lca_paths_.size() != n || g.lvl_.size() != g.hpt_.nodes())
        throw FormatError("level structure sections disagree on sizes");
    g.validate();
    std::vector<uint64_t> to_sorted(n, 0);
    for (uint64_t i = 1; i <= n; ++i) {
        uint64_t k = g.to_input_[i - 1];
        if (k == 0 || k > n || to_sorted[k - 1] != 0) throw FormatError("input order is not a permutation");
        to_sorted[k - 1] = i;
    }
    g.to_sorted_ = IntVector::pack(to_sorted);
    return g;
}

// Range checks on every stored reference, so that a blob which passes the
// checksum but was built inconsistently cannot drive queries out of bounds.
void LevelStructure::validate() const {
    uint64_t n = size(), m = nodes(), hc = hpt_.nodes();
    auto bad = [](const char* what) { throw FormatError(what); };
    for (uint64_t v = 0; v < m; ++v)
        if (hp_[v] == 0 || hp_[v] > hc) bad("heavy path index out of range");
    for (uint64_t h = 0; h < hc; ++h)
        if (lvl_[h] == 0 || lvl_[h] > k_) bad("heavy path level out of range");
    for (uint64_t i = 0; i < n; ++i) {
        if (l_[i] == 0 || l_[i] > r_[i] || r_[i] > m) bad("path endpoints out of range");
        if (span_lo_[i] == 0 || span_lo_[i] > span_hi_[i] || span_hi_[i] > k_) bad("level span out of range");
    }
    for (uint64_t l = 0; l < k_; ++l) {
        if (e_[l].size() != it_[l].size()) bad("level owner table disagrees with its interval graph");
        for (uint64_t v = 0; v < e_[l].size(); ++v)
            if (e_[l][v] == 0 || e_[l][v] > n) bad("level owner out of range");
    }
    for (uint64_t x = 0; x < pit_.size(); ++x)
        if (pit_[x] > it_[(x / 2) % k_].size()) bad("vertex label out of range");
    check_offsets(lca_off_, m, lca_paths_.size());
    check_offsets(th_off_, hc, th_child_.size());
    check_offsets(th_list_, th_child_.size(), th_paths_.size());
    check_offsets(te_off_, hc, te_paths_.size());
    for (const IntVector* v : {&lca_paths_, &th_paths_, &te_paths_})
        for (uint64_t x = 0; x < v->size(); ++x)
            if ((*v)[x] == 0 || (*v)[x] > n) bad("path list entry out of range");
    for (uint64_t x = 0; x < th_child_.size(); ++x)
        if (th_child_[x] < 2 || th_child_[x] > hc) bad("through-list child out of range");
}

}  // namespace pathgraph
