#include "pathgraph/oracle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pathgraph {

bool OracleGraph::adjacent(uint64_t i, uint64_t j) const {
    if (i == j) {
        if (i == 0 || i > size()) throw std::out_of_range("path index out of range");
        return true;
    }
    const auto& a = neighbours(i);
    (void)neighbours(j);
    return std::binary_search(a.begin(), a.end(), j);
}

NaiveTree::NaiveTree(const RawTree& t) : tree_(&t) {
    t.validate();
    uint64_t m = t.nodes();
    depth_.assign(m + 1, 0);
    std::vector<std::vector<uint64_t>> kids(m + 1);
    for (uint64_t v = 1; v <= m; ++v) {
        if (t.parent[v] == 0)
            root_ = v;
        else
            kids[t.parent[v]].push_back(v);
    }
    std::vector<uint64_t> order{root_};
    depth_[root_] = 1;
    for (size_t i = 0; i < order.size(); ++i)
        for (uint64_t c : kids[order[i]]) {
            depth_[c] = depth_[order[i]] + 1;
            order.push_back(c);
        }
}

uint64_t NaiveTree::lca(uint64_t u, uint64_t v) const {
    const auto& par = tree_->parent;
    while (depth_[u] > depth_[v]) u = par[u];
    while (depth_[v] > depth_[u]) v = par[v];
    while (u != v) u = par[u], v = par[v];
    return u;
}

std::vector<uint64_t> NaiveTree::path_nodes(uint64_t u, uint64_t v) const {
    const auto& par = tree_->parent;
    std::vector<uint64_t> front, back;
    while (depth_[u] > depth_[v]) front.push_back(u), u = par[u];
    while (depth_[v] > depth_[u]) back.push_back(v), v = par[v];
    while (u != v) {
        front.push_back(u), u = par[u];
        back.push_back(v), v = par[v];
    }
    front.push_back(u);
    front.insert(front.end(), back.rbegin(), back.rend());
    return front;
}

bool intersect_naive(const RawTree& t, std::pair<uint64_t, uint64_t> p, std::pair<uint64_t, uint64_t> q) {
    NaiveTree nt(t);
    std::vector<uint64_t> a = nt.path_nodes(p.first, p.second);
    std::vector<uint64_t> b = nt.path_nodes(q.first, q.second);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<uint64_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return !common.empty();
}

namespace {

// cover[v] lists the 1-based indices of paths through node v, ascending.
std::vector<std::vector<uint64_t>> cover_lists(const NaiveTree& nt, uint64_t m, const PathList& paths) {
    std::vector<std::vector<uint64_t>> cover(m + 1);
    for (uint64_t k = 0; k < paths.size(); ++k)
        for (uint64_t v : nt.path_nodes(paths[k].first, paths[k].second)) cover[v].push_back(k + 1);
    return cover;
}

void check_endpoints(uint64_t m, const PathList& paths) {
    for (const auto& [a, b] : paths)
        if (a == 0 || b == 0 || a > m || b > m) throw std::invalid_argument("path endpoint out of range");
}

}  // namespace

OracleGraph build_oracle(const RawTree& t, const PathList& paths) {
    NaiveTree nt(t);
    uint64_t m = t.nodes();
    check_endpoints(m, paths);
    auto cover = cover_lists(nt, m, paths);
    uint64_t n = paths.size();
    std::vector<std::vector<uint64_t>> adj(n);
    std::vector<uint64_t> mark(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i) {
        mark[i] = i;
        for (uint64_t v : nt.path_nodes(paths[i - 1].first, paths[i - 1].second))
            for (uint64_t j : cover[v])
                if (mark[j] != i) {
                    mark[j] = i;
                    adj[i - 1].push_back(j);
                }
        std::sort(adj[i - 1].begin(), adj[i - 1].end());
    }
    return OracleGraph(std::move(adj));
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport rep;
    auto note = [&](const std::string& msg) {
        rep.ok = false;
        if (rep.messages.size() < 8) rep.messages.push_back(msg);
    };
    uint64_t m = inst.tree.nodes();
    try {
        inst.tree.validate();
    } catch (const std::invalid_argument& e) {
        note(std::string("tree: ") + e.what());
        return rep;
    }
    for (uint64_t k = 0; k < inst.paths.size(); ++k) {
        auto [a, b] = inst.paths[k];
        if (a == 0 || b == 0 || a > m || b > m) {
            ++rep.bad_endpoints;
            note("path " + std::to_string(k + 1) + " has an endpoint outside the tree");
        }
    }
    if (rep.bad_endpoints) return rep;

    NaiveTree nt(inst.tree);
    auto cover = cover_lists(nt, m, inst.paths);
    std::vector<bool> is_lca(m + 1, false);
    for (const auto& [a, b] : inst.paths) is_lca[nt.lca(a, b)] = true;
    for (uint64_t v = 1; v <= m; ++v) {
        if (cover[v].empty()) {
            ++rep.uncovered;
            note("node " + std::to_string(v) + " lies on no path");
        }
        if (!is_lca[v]) {
            ++rep.not_lca;
            note("node " + std::to_string(v) + " is no path's lca");
        }
        uint64_t p = inst.tree.parent[v];
        if (p == 0) continue;
        const auto& cv = cover[v];
        const auto& cp = cover[p];
        if (std::includes(cp.begin(), cp.end(), cv.begin(), cv.end())) {
            ++rep.non_maximal;
            note("paths through node " + std::to_string(v) + " are a subset of those through its parent");
        } else if (std::includes(cv.begin(), cv.end(), cp.begin(), cp.end())) {
            ++rep.non_maximal;
            note("paths through node " + std::to_string(p) + " are a subset of those through its child " +
                 std::to_string(v));
        }
    }
    return rep;
}

Instance gen_instance(uint64_t m, uint64_t n, uint64_t seed) {
    if (m == 0) throw std::invalid_argument("instance needs at least one node");
    if (m > n) throw std::invalid_argument("instance needs at least as many paths as nodes");
    std::mt19937_64 rng(seed);
    auto uniform = [&](uint64_t lo, uint64_t hi) { return std::uniform_int_distribution<uint64_t>(lo, hi)(rng); };

    Instance inst;
    inst.seed = seed;
    inst.tree.parent.assign(m + 1, 0);
    for (uint64_t v = 2; v <= m; ++v) inst.tree.parent[v] = uniform(1, v - 1);

    // Pre-order positions make every subtree a contiguous slice of `pre`.
    std::vector<std::vector<uint64_t>> kids(m + 1);
    for (uint64_t v = 2; v <= m; ++v) kids[inst.tree.parent[v]].push_back(v);
    std::vector<uint64_t> pre, tin(m + 1), tout(m + 1), stack{1};
    while (!stack.empty()) {
        uint64_t v = stack.back();
        stack.pop_back();
        tin[v] = pre.size();
        pre.push_back(v);
        for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
    }
    for (uint64_t i = m; i-- > 0;) {
        uint64_t v = pre[i];
        tout[v] = std::max(tout[v], tin[v]);
        if (uint64_t p = inst.tree.parent[v]) tout[p] = std::max(tout[p], tout[v]);
    }

    NaiveTree nt(inst.tree);
    inst.paths.reserve(n);
    for (uint64_t a = 1; a <= m; ++a) {
        uint64_t u1 = pre[uniform(tin[a], tout[a])];
        uint64_t u2 = pre[uniform(tin[a], tout[a])];
        if (nt.lca(u1, u2) != a) u1 = a;
        inst.paths.emplace_back(u1, u2);
    }
    for (uint64_t k = m; k < n; ++k) inst.paths.emplace_back(uniform(1, m), uniform(1, m));

    // Shrinking node a's dedicated path (index a-1) to (a,a) gives a a private path,
    // so a is never reported again and the loop runs at most m rounds.
    std::vector<uint64_t> fix;
    do {
        auto cover = cover_lists(nt, m, inst.paths);
        fix.clear();
        for (uint64_t v = 2; v <= m; ++v) {
            uint64_t p = inst.tree.parent[v];
            const auto& cv = cover[v];
            const auto& cp = cover[p];
            if (std::includes(cp.begin(), cp.end(), cv.begin(), cv.end()))
                fix.push_back(v);
            else if (std::includes(cv.begin(), cv.end(), cp.begin(), cp.end()))
                fix.push_back(p);
        }
        for (uint64_t a : fix) inst.paths[a - 1] = {a, a};
    } while (!fix.empty());

    std::shuffle(inst.paths.begin(), inst.paths.end(), rng);
    inst.valid = validate_instance(inst).ok;
    return inst;
}

}  // namespace pathgraph
