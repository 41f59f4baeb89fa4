#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pathgraph/treeprep.hpp"

namespace pathgraph {

using PathList = std::vector<std::pair<uint64_t, uint64_t>>;

/// A clique tree with its paths, all in original labels. Path k (1-based) is paths[k-1].
struct Instance {
    RawTree tree;
    PathList paths;
    uint64_t seed = 0;
    bool valid = false;
};

/// Explicit intersection graph; neighbour lists are sorted and exclude self.
class OracleGraph {
public:
    OracleGraph() = default;
    explicit OracleGraph(std::vector<std::vector<uint64_t>> adj) : adj_(std::move(adj)) {}

    uint64_t size() const { return adj_.size(); }
    const std::vector<uint64_t>& neighbours(uint64_t i) const { return adj_.at(i - 1); }
    uint64_t degree(uint64_t i) const { return neighbours(i).size(); }
    bool adjacent(uint64_t i, uint64_t j) const;

private:
    std::vector<std::vector<uint64_t>> adj_;
};

/// Ancestor-walk helper over a RawTree.
class NaiveTree {
public:
    explicit NaiveTree(const RawTree& t);

    uint64_t root() const { return root_; }
    uint64_t depth(uint64_t v) const { return depth_[v]; }
    uint64_t lca(uint64_t u, uint64_t v) const;
    /// Nodes of the tree path u..v, in walk order.
    std::vector<uint64_t> path_nodes(uint64_t u, uint64_t v) const;

private:
    const RawTree* tree_;
    uint64_t root_ = 0;
    std::vector<uint64_t> depth_;
};

bool intersect_naive(const RawTree& t, std::pair<uint64_t, uint64_t> p, std::pair<uint64_t, uint64_t> q);

OracleGraph build_oracle(const RawTree& t, const PathList& paths);

/// Random clique-tree instance with m nodes and n >= m paths; deterministic per seed.
/// Node 1 is the root and every other node picks a uniform earlier parent. Each
/// node gets one path with that node as lca; the remaining n - m paths join
/// uniform node pairs. Nodes whose path set is contained in a neighbour's have
/// their own dedicated path shrunk to a single node until none remain.
Instance gen_instance(uint64_t m, uint64_t n, uint64_t seed);

struct ValidationReport {
    bool ok = true;
    uint64_t bad_endpoints = 0;
    uint64_t uncovered = 0;
    uint64_t not_lca = 0;
    uint64_t non_maximal = 0;
    std::vector<std::string> messages;  // capped at a few entries
};

ValidationReport validate_instance(const Instance& inst);

}  // namespace pathgraph
