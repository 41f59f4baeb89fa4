#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "pathgraph/level_rep.hpp"
#include "pathgraph/oracle.hpp"

using namespace pathgraph;

namespace {

struct Built {
    PreparedTree pt;
    PathSet ps;
    LevelStructure g;
};

Built build(const RawTree& t, const PathList& paths) {
    Built b;
    b.pt = PreparedTree::prepare(t);
    b.ps = PathSet(b.pt, paths);
    b.g = LevelStructure::build(b.pt, b.ps);
    return b;
}

Built running() { return build(RawTree{{0, 0, 1, 2, 3, 2, 1}}, PathList{{1, 1}, {2, 4}, {5, 6}}); }

// Path i (pre-order labels) contains node v.
bool contains(const Built& b, uint64_t i, uint64_t v) {
    const BPTree& t = b.pt.bp();
    uint64_t l = b.ps.l(i), r = b.ps.r(i);
    uint64_t p = t.lca(l, r);
    return t.is_ancestor(p, v) && (t.is_ancestor(v, l) || t.is_ancestor(v, r));
}

// Path i contains the light edge entering heavy path w.
bool contains_edge(const Built& b, uint64_t i, uint64_t w) {
    uint64_t s = b.pt.heavy_path(w).lo;
    return contains(b, i, s) && contains(b, i, b.pt.parent(s));
}

}  // namespace

TEST_CASE("level structure on the running instance") {
    Built b = running();
    const auto& g = b.g;
    REQUIRE(g.size() == 3);
    REQUIRE(g.levels() == 2);
    CHECK(g.span(1) == Range{1, 1});
    CHECK(g.span(2) == Range{1, 1});
    CHECK(g.span(3) == Range{1, 2});

    auto [a, c] = g.vertices(3, 2);
    CHECK(a != 0);
    CHECK(c != 0);
    CHECK(a < c);
    CHECK(g.vertices(1, 2) == std::pair<uint64_t, uint64_t>{0, 0});

    // U_1 has one vertex per path; its edges are P1P3 and P2P3.
    const IntervalGraph& u1 = g.level_graph(1);
    REQUIRE(u1.size() == 3);
    std::set<std::pair<uint64_t, uint64_t>> edges;
    for (uint64_t v = 1; v <= u1.size(); ++v)
        for (uint64_t w : u1.neighbours(v)) {
            uint64_t x = g.path_of(1, v), y = g.path_of(1, w);
            edges.insert({std::min(x, y), std::max(x, y)});
        }
    CHECK(edges == std::set<std::pair<uint64_t, uint64_t>>{{1, 3}, {2, 3}});

    CHECK(g.min_level(3, 2) == 1);
    CHECK(g.adjacent(3, 1));
    CHECK_FALSE(g.adjacent(2, 1));
    CHECK(g.neighbourhood(3) == std::vector<uint64_t>{1, 2});
    CHECK(g.neighbourhood(1) == std::vector<uint64_t>{3});
    CHECK(g.degree(1) == 1);
    CHECK(g.degree(3) == 2);
    CHECK_THROWS_AS(g.span(4), std::out_of_range);
    CHECK_THROWS_AS(g.vertices(1, 3), std::out_of_range);
}

TEST_CASE("min level is the first level both paths occupy") {
    // (5,5) lives only on the heavy path below node 2, at level 2.
    Built b = build(RawTree{{0, 0, 1, 2, 3, 2, 1}}, PathList{{1, 1}, {2, 4}, {5, 6}, {5, 5}});
    uint64_t lone = b.ps.sorted_index(4), root = b.ps.sorted_index(1);
    CHECK(b.g.span(lone) == Range{2, 2});
    CHECK(b.g.min_level(lone, root) == 0);
    CHECK(b.g.min_level(lone, lone) == 2);

    for (uint64_t seed = 40; seed < 45; ++seed) {
        Instance inst = gen_instance(150, 300, seed);
        Built g = build(inst.tree, inst.paths);
        CAPTURE(seed);
        for (uint64_t i = 1; i <= 300; i += 7)
            for (uint64_t j = 1; j <= 300; ++j) {
                uint64_t first = 0;
                for (uint64_t l = 1; l <= g.g.levels() && first == 0; ++l)
                    if (g.g.vertices(i, l).first != 0 && g.g.vertices(j, l).first != 0) first = l;
                REQUIRE(g.g.min_level(i, j) == first);
            }
    }
}

TEST_CASE("distinct paths through a branching heavy path") {
    // Root path 1-2-8-9-10-11-12; light child 3 heads path 3-4-5, which has
    // light children 6 (below 3) and 7 (below 4).
    RawTree t{{0, 0, 1, 1, 3, 4, 3, 4, 2, 8, 9, 10, 11}};
    PathList paths{{6, 1}, {7, 2}, {5, 1}, {6, 5}};
    Built b = build(t, paths);
    auto hp = [&](uint64_t orig) { return b.pt.heavy_path_of(b.pt.label_of(orig)); };
    auto idx = [&](uint64_t k) { return b.ps.sorted_index(k); };
    uint64_t w1 = hp(1), w2 = hp(3), d1 = hp(6), d2 = hp(7);
    REQUIRE(hp(5) == w2);
    REQUIRE(hp(4) == w2);
    auto sorted = [](std::vector<uint64_t> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto expect = [&](std::vector<uint64_t> ks) {
        std::vector<uint64_t> v;
        for (uint64_t k : ks) v.push_back(idx(k));
        return sorted(v);
    };
    CHECK(sorted(b.g.distinct_paths(w1, w2, 0)) == expect({1, 2, 3}));
    CHECK(sorted(b.g.distinct_paths(w1, w2, d1)) == expect({2, 3}));
    CHECK(sorted(b.g.distinct_paths(w1, w2, d2)) == expect({1, 3}));
    CHECK(sorted(b.g.distinct_paths(w2, d1, 0)) == expect({1, 4}));
    CHECK_THROWS_AS(b.g.distinct_paths(w2, w1, 0), std::invalid_argument);
    CHECK_THROWS_AS(b.g.distinct_paths(w1, w2, w1), std::invalid_argument);
    CHECK_THROWS_AS(b.g.distinct_paths(w1, w2, 99), std::out_of_range);
}

TEST_CASE("level structure agrees with the oracle") {
    for (uint64_t seed = 200; seed < 230; ++seed) {
        uint64_t n = 10 + (seed % 6) * 35;
        uint64_t m = std::max<uint64_t>(1, n * (1 + seed % 3) / 4);
        Instance inst = gen_instance(m, n, seed);
        REQUIRE(inst.valid);
        OracleGraph o = build_oracle(inst.tree, inst.paths);
        Built b = build(inst.tree, inst.paths);
        const auto& g = b.g;
        CAPTURE(seed);
        uint64_t kceil = std::max<uint64_t>(1, ceil_log2(n));
        REQUIRE(g.levels() <= kceil);
        for (uint64_t l = 1; l <= g.levels(); ++l) REQUIRE(g.level_graph(l).size() <= 2 * n);

        // Every node is the lca of some path on generator-valid instances.
        for (uint64_t a = 1; a <= g.nodes(); ++a) REQUIRE_FALSE(g.paths_with_lca(a).empty());

        LevelScratch scratch;
        for (uint64_t k = 1; k <= n; ++k) {
            uint64_t i = g.sorted_index(k);
            REQUIRE(g.input_index(i) == k);
            std::vector<uint64_t> raw;
            LevelStats st;
            g.neighbourhood(i, raw, scratch, &st);
            std::vector<uint64_t> got;
            for (uint64_t x : raw) got.push_back(g.input_index(x));
            std::sort(got.begin(), got.end());
            REQUIRE(got == o.neighbours(k));
            REQUIRE(g.degree(i) == o.degree(k));
            REQUIRE(g.degree(i) == raw.size());
            REQUIRE(st.touches <= 6 * (o.degree(k) + 1));
            for (uint64_t k2 = 1; k2 <= n; ++k2) {
                LevelStats as;
                REQUIRE(g.adjacent(i, g.sorted_index(k2), &as) == o.adjacent(k, k2));
                REQUIRE(as.ig_probes <= 4);
                REQUIRE(as.array_reads <= 8);
            }
        }

        // Every U_l edge joins oracle neighbours; the converse is the adjacency check above.
        for (uint64_t l = 1; l <= g.levels(); ++l) {
            const IntervalGraph& ig = g.level_graph(l);
            for (uint64_t v = 1; v <= ig.size(); ++v)
                for (uint64_t w : ig.neighbours(v)) {
                    uint64_t x = g.path_of(l, v), y = g.path_of(l, w);
                    if (x != y) REQUIRE(o.adjacent(g.input_index(x), g.input_index(y)));
                }
        }
    }
}

TEST_CASE("distinct paths match a brute-force edge scan") {
    for (uint64_t seed = 300; seed < 310; ++seed) {
        Instance inst = gen_instance(60, 150, seed);
        Built b = build(inst.tree, inst.paths);
        CAPTURE(seed);
        uint64_t hc = b.pt.heavy_path_count();
        for (uint64_t w2 = 2; w2 <= hc; ++w2) {
            uint64_t w1 = b.pt.hp_parent(w2);
            std::vector<uint64_t> excl{0};
            for (uint64_t d = w2 + 1; d <= hc; ++d)
                if (b.pt.hp_parent(d) == w2) excl.push_back(d);
            for (uint64_t w3 : excl) {
                std::vector<uint64_t> got = b.g.distinct_paths(w1, w2, w3);
                std::sort(got.begin(), got.end());
                REQUIRE(std::adjacent_find(got.begin(), got.end()) == got.end());
                std::vector<uint64_t> want;
                for (uint64_t i = 1; i <= b.ps.size(); ++i)
                    if (contains_edge(b, i, w2) && (w3 == 0 || !contains_edge(b, i, w3))) want.push_back(i);
                REQUIRE(got == want);
            }
        }
    }
}

TEST_CASE("level structure edge cases") {
    Built one = build(RawTree{{0, 0}}, PathList{{1, 1}});
    CHECK(one.g.levels() == 1);
    CHECK(one.g.degree(1) == 0);
    CHECK(one.g.neighbourhood(1).empty());
    CHECK(one.g.adjacent(1, 1));
}

TEST_CASE("level structure serialization round trip") {
    Instance inst = gen_instance(40, 90, 5);
    Built b = build(inst.tree, inst.paths);
    auto blob = b.g.serialize();
    CHECK(b.g.serialize() == blob);
    LevelStructure back = LevelStructure::deserialize(blob);
    CHECK(back.serialize() == blob);
    for (uint64_t i = 1; i <= 90; ++i) {
        CHECK(back.neighbourhood(i) == b.g.neighbourhood(i));
        CHECK(back.degree(i) == b.g.degree(i));
        CHECK(back.span(i) == b.g.span(i));
    }
    CHECK(b.g.space_report().total() == back.space_report().total());
    auto bad = blob;
    bad[bad.size() / 2] ^= 1;
    CHECK_THROWS_AS(LevelStructure::deserialize(bad), FormatError);
    bad = blob;
    bad.resize(bad.size() - 3);
    CHECK_THROWS_AS(LevelStructure::deserialize(bad), FormatError);
}
