#include "pathgraph/treeprep.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pathgraph {

namespace {
constexpr uint8_t kVersion = 1;
}

void RawTree::validate() const {
    uint64_t m = nodes();
    if (m == 0) throw std::invalid_argument("tree has no nodes");
    uint64_t root = 0;
    for (uint64_t v = 1; v <= m; ++v) {
        if (parent[v] > m) throw std::invalid_argument("parent of node " + std::to_string(v) + " out of range");
        if (parent[v] == v) throw std::invalid_argument("node " + std::to_string(v) + " is its own parent");
        if (parent[v] == 0) {
            if (root != 0) throw std::invalid_argument("more than one root");
            root = v;
        }
    }
    if (root == 0) throw std::invalid_argument("no root");
    // Every node must reach the root; colour 1 = on current walk, 2 = known good.
    std::vector<uint8_t> state(m + 1, 0);
    state[root] = 2;
    std::vector<uint64_t> walk;
    for (uint64_t v = 1; v <= m; ++v) {
        uint64_t x = v;
        walk.clear();
        while (state[x] == 0) {
            state[x] = 1;
            walk.push_back(x);
            x = parent[x];
        }
        if (state[x] == 1) throw std::invalid_argument("parent array contains a cycle");
        for (uint64_t y : walk) state[y] = 2;
    }
}

PreparedTree PreparedTree::prepare(const RawTree& raw) {
    raw.validate();
    uint64_t m = raw.nodes();
    uint64_t root = 0;
    std::vector<std::vector<uint64_t>> kids(m + 1);
    for (uint64_t v = 1; v <= m; ++v) {
        if (raw.parent[v] == 0)
            root = v;
        else
            kids[raw.parent[v]].push_back(v);  // ascending original label
    }

    // Subtree sizes from a reversed BFS order.
    std::vector<uint64_t> order{root};
    for (size_t i = 0; i < order.size(); ++i)
        for (uint64_t c : kids[order[i]]) order.push_back(c);
    std::vector<uint64_t> size(m + 1, 1);
    for (size_t i = order.size(); i-- > 1;) size[raw.parent[order[i]]] += size[order[i]];

    for (uint64_t v = 1; v <= m; ++v) {
        auto& ch = kids[v];
        if (ch.empty()) continue;
        // First maximum in ascending-label order is the smallest-label heavy child.
        auto heavy = std::max_element(ch.begin(), ch.end(), [&](uint64_t a, uint64_t b) { return size[a] < size[b]; });
        std::rotate(ch.begin(), heavy, heavy + 1);
    }

    PreparedTree pt;
    pt.label_.assign(m + 1, 0);
    pt.original_.assign(m + 1, 0);
    std::vector<uint64_t> stack{root};
    uint64_t next = 0;
    while (!stack.empty()) {
        uint64_t v = stack.back();
        stack.pop_back();
        pt.label_[v] = ++next;
        pt.original_[next] = v;
        for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
    }
    pt.parent_.assign(m + 1, 0);
    for (uint64_t v = 1; v <= m; ++v)
        if (raw.parent[v] != 0) pt.parent_[pt.label_[v]] = pt.label_[raw.parent[v]];
    pt.bp_ = BPTree::from_preorder_parents(pt.parent_);
    pt.derive_tables();
    return pt;
}

void PreparedTree::derive_tables() {
    uint64_t m = nodes();
    paths_.clear();
    hp_of_.assign(m + 1, 0);
    hp_parent_.assign(1, 0);
    level_.assign(1, 0);
    levels_ = 0;
    for (uint64_t v = 1; v <= m; ++v) {
        uint64_t p = parent_[v];
        // The heavy child is always the first child, i.e. label p + 1.
        if (p != 0 && v == p + 1) {
            hp_of_[v] = hp_of_[p];
            paths_.back().hi = v;
            continue;
        }
        paths_.push_back({v, v});
        uint64_t h = paths_.size();
        hp_of_[v] = h;
        hp_parent_.push_back(p == 0 ? 0 : hp_of_[p]);
        level_.push_back(p == 0 ? 1 : level_[hp_of_[p]] + 1);
        levels_ = std::max(levels_, level_.back());
    }
}

uint64_t PreparedTree::label_of(uint64_t original) const {
    if (original == 0 || original >= label_.size()) throw std::out_of_range("original label out of range");
    return label_[original];
}

uint64_t PreparedTree::original_of(uint64_t label) const {
    if (label == 0 || label >= original_.size()) throw std::out_of_range("label out of range");
    return original_[label];
}

void PreparedTree::serialize(Writer& w) const {
    w.tag("PT");
    w.u8(kVersion);
    bp_.serialize(w);
    IntVector::pack(original_).serialize(w);
}

PreparedTree PreparedTree::deserialize(Reader& r) {
    r.expect_tag("PT");
    if (r.u8() != kVersion) throw FormatError("PreparedTree version mismatch");
    PreparedTree pt;
    pt.bp_ = BPTree::deserialize(r);
    IntVector orig = IntVector::deserialize(r);
    uint64_t m = pt.bp_.nodes();
    if (orig.size() != m + 1) throw FormatError("PreparedTree relabel table has wrong length");
    pt.original_.assign(m + 1, 0);
    pt.label_.assign(m + 1, 0);
    for (uint64_t v = 1; v <= m; ++v) {
        uint64_t o = orig[v];
        if (o == 0 || o > m || pt.label_[o] != 0) throw FormatError("PreparedTree relabel table is not a permutation");
        pt.original_[v] = o;
        pt.label_[o] = v;
    }
    pt.parent_.assign(m + 1, 0);
    for (uint64_t v = 2; v <= m; ++v) pt.parent_[v] = pt.bp_.parent(v);
    pt.derive_tables();
    return pt;
}

PathSet::PathSet(const PreparedTree& pt, std::span<const std::pair<uint64_t, uint64_t>> input) {
    uint64_t n = input.size();
    std::vector<uint64_t> l(n), r(n);
    for (uint64_t k = 0; k < n; ++k) {
        uint64_t a = pt.label_of(input[k].first);
        uint64_t b = pt.label_of(input[k].second);
        l[k] = std::min(a, b);
        r[k] = std::max(a, b);
    }
    std::vector<uint64_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](uint64_t a, uint64_t b) {
        return l[a] != l[b] ? l[a] < l[b] : r[a] < r[b];
    });
    l_.resize(n);
    r_.resize(n);
    input_.resize(n);
    sorted_.resize(n);
    for (uint64_t i = 0; i < n; ++i) {
        l_[i] = l[idx[i]];
        r_[i] = r[idx[i]];
        input_[i] = idx[i] + 1;
        sorted_[idx[i]] = i + 1;
    }
}

namespace {

// Pieces of the vertical path top..x (top an ancestor of x), appended deepest first.
void climb(const BPTree& t, uint64_t top, uint64_t x, std::vector<Range>& out) {
    while (true) {
        uint64_t u = t.first_child_chain_start(x);
        if (u <= top) {
            out.push_back({top, x});
            return;
        }
        out.push_back({u, x});
        x = t.parent(u);
    }
}

}  // namespace

void compute_pi(const BPTree& t, uint64_t l, uint64_t r, HeavySubPaths& out) {
    if (l > r) throw std::invalid_argument("compute_pi needs l <= r");
    out.pi.clear();
    out.succ11 = out.succ12 = 0;
    uint64_t p = t.lca(l, r);
    if (p == l) {
        climb(t, l, r, out.pi);
        std::reverse(out.pi.begin(), out.pi.end());
        if (out.k() >= 2) out.succ11 = 2;
        return;
    }
    // Left branch first; the first piece of each branch lies on p's heavy path.
    std::vector<Range>& pi = out.pi;
    climb(t, p, l, pi);
    size_t left = pi.size();
    climb(t, p, r, pi);
    std::reverse(pi.begin(), pi.begin() + static_cast<std::ptrdiff_t>(left));
    std::reverse(pi.begin() + static_cast<std::ptrdiff_t>(left), pi.end());
    Range first{p, std::max(pi[0].hi, pi[left].hi)};
    size_t right = pi.size() - left;
    pi.erase(pi.begin() + static_cast<std::ptrdiff_t>(left));
    pi[0] = first;
    if (left >= 2) out.succ11 = 2;
    if (right >= 2) out.succ12 = left + 1;
}

HeavySubPaths compute_pi(const BPTree& t, uint64_t l, uint64_t r) {
    HeavySubPaths d;
    compute_pi(t, l, r, d);
    return d;
}

RangeQuad ranges(const BPTree& t, const HeavySubPaths& dec, uint64_t i) {
    if (i == 0 || i > dec.k()) throw std::out_of_range("heavy sub-path index out of range");
    uint64_t a = dec[i].lo;
    uint64_t b = dec[i].hi;
    uint64_t rb = t.rmost_leaf(b);
    uint64_t ra = t.rmost_leaf(a);
    RangeQuad q;
    q.r2 = {a, b};
    uint64_t cb = 0;  // piece start hanging below b
    uint64_t ca = 0;  // piece start hanging below a (only for i = 1, a != b)
    if (i == 1) {
        q.r1 = {1, a - 1};
        for (uint64_t s : {dec.succ11, dec.succ12}) {
            if (s == 0) continue;
            uint64_t c = dec[s].lo;
            if (t.parent(c) == b && cb == 0)
                cb = c;
            else
                ca = c;
        }
        if (a == b && ca != 0) {
            // Both branches leave the lca through light edges.
            if (ca < cb) std::swap(ca, cb);
            q.r3a = {b + 1, cb - 1};
            q.r3b = {t.rmost_leaf(cb) + 1, ca - 1};
            q.r3c = {t.rmost_leaf(ca) + 1, rb};
            return q;
        }
    } else if (i < dec.k() && i + 1 != dec.succ12 && t.parent(dec[i + 1].lo) == b) {
        cb = dec[i + 1].lo;
    }
    if (cb != 0) {
        q.r3a = {b + 1, cb - 1};
        q.r3b = {t.rmost_leaf(cb) + 1, rb};
    } else {
        q.r3a = {b + 1, rb};
    }
    if (ca != 0) {
        q.r4a = {rb + 1, ca - 1};
        q.r4b = {t.rmost_leaf(ca) + 1, ra};
    } else {
        q.r4a = {rb + 1, ra};
    }
    return q;
}

bool check_alpha(const BPTree& t, const HeavySubPaths& dec, const RangeQuad& q, uint64_t i, uint64_t s, uint64_t tt) {
    if (i == 1 && q.r1.contains(s)) {
        uint64_t a = dec[1].lo;
        return a <= tt && tt <= t.rmost_leaf(a);
    }
    if (q.r2.contains(s)) return true;
    if (q.in_r3(s)) return t.lca(s, tt) <= dec[i].hi;
    if (q.in_r4(s)) return t.lca(s, tt) < dec[i].hi;
    return false;
}

bool check_alpha(const BPTree& t, const HeavySubPaths& dec, uint64_t i, uint64_t s, uint64_t tt) {
    return check_alpha(t, dec, ranges(t, dec, i), i, s, tt);
}

}  // namespace pathgraph
