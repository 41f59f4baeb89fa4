#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "pathgraph/oracle.hpp"
#include "pathgraph/succinct_rep.hpp"

using namespace pathgraph;

namespace {

struct Built {
    PreparedTree pt;
    PathSet ps;
    SuccinctPathGraph g;
};

Built build(const RawTree& t, const PathList& paths) {
    Built b;
    b.pt = PreparedTree::prepare(t);
    b.ps = PathSet(b.pt, paths);
    b.g = SuccinctPathGraph::build(b.pt, b.ps);
    return b;
}

Built running() { return build(RawTree{{0, 0, 1, 2, 3, 2, 1}}, PathList{{1, 1}, {2, 4}, {5, 6}}); }

}  // namespace

TEST_CASE("succinct build on the running instance") {
    Built b = running();
    const auto& g = b.g;
    REQUIRE(g.size() == 3);
    CHECK(g.pathep(1) == std::pair<uint64_t, uint64_t>{1, 1});
    CHECK(g.pathep(2) == std::pair<uint64_t, uint64_t>{2, 4});
    CHECK(g.pathep(3) == std::pair<uint64_t, uint64_t>{5, 6});
    CHECK_THROWS_AS(g.pathep(4), std::out_of_range);
    CHECK(g.path_count(1) == 1);
    CHECK(g.path_count(3) == 0);
    CHECK(g.path_count(5) == 1);
    CHECK(g.maprange_f(2, 5) == Range{2, 3});
    CHECK(g.maprange_f(3, 4).empty());
    CHECK(g.maprange_f(1, 1) == Range{1, 1});
    CHECK(g.maprange_j(2, 6) == Range{2, 3});
    CHECK(g.maprange_j(1, 1) == Range{1, 1});
    CHECK(g.maprange_j(5, 5).empty());

    HeavySubPaths d = compute_pi(g.tree(), 5, 6);
    auto beta1 = g.compute_beta(d, 1);
    std::sort(beta1.begin(), beta1.end());
    CHECK(beta1 == std::vector<uint64_t>{1, 2});
    CHECK(g.compute_beta(d, 2) == std::vector<uint64_t>{3});
    CHECK(g.compute_beta(d, 3).empty());

    CHECK(g.adjacent(3, 2));
    CHECK_FALSE(g.adjacent(2, 1));
    CHECK(g.adjacent(1, 1));
    CHECK(g.neighbourhood(3) == std::vector<uint64_t>{1, 2});
    CHECK(g.neighbourhood(1) == std::vector<uint64_t>{3});
    CHECK(g.degree(3) == 2);
    CHECK(g.degree(2) == 1);
    CHECK(g.degree_count(3) == 2);

    SpaceReport rep = g.space_report();
    CHECK(rep.items[3].name == "S");
    CHECK(rep.items[3].core_bits == 3 * ceil_log2(3));
    CHECK(rep.items[4].core_bits == 3);
    CHECK(rep.total() == g.space_report().total());
}

TEST_CASE("succinct build edge cases") {
    Built one = build(RawTree{{0, 0}}, PathList{{1, 1}});
    CHECK(one.g.size() == 1);
    CHECK(one.g.degree(1) == 0);
    CHECK_FALSE(one.g.large_degree(1));
    CHECK(one.g.neighbourhood(1).empty());

    // Equal starts are ordered by end, then by input position.
    Built ties = build(RawTree{{0, 0, 1, 2}}, PathList{{1, 3}, {1, 2}});
    CHECK(ties.g.pathep(1) == std::pair<uint64_t, uint64_t>{1, 2});
    CHECK(ties.g.pathep(2) == std::pair<uint64_t, uint64_t>{1, 3});
    CHECK(ties.g.input_index(1) == 2);
    CHECK(ties.g.sorted_index(1) == 2);

    // An isolated path has no neighbours.
    Built iso = build(RawTree{{0, 0, 1, 1}}, PathList{{2, 2}, {3, 3}, {1, 1}});
    uint64_t k = iso.g.sorted_index(1);
    CHECK(iso.g.degree(k) == 0);
    CHECK(iso.g.neighbourhood(k).empty());
}

TEST_CASE("succinct queries agree with the oracle") {
    for (uint64_t seed = 100; seed < 130; ++seed) {
        uint64_t n = 10 + (seed % 6) * 35;
        uint64_t m = std::max<uint64_t>(1, n * (1 + seed % 3) / 4);
        Instance inst = gen_instance(m, n, seed);
        REQUIRE(inst.valid);
        OracleGraph o = build_oracle(inst.tree, inst.paths);
        Built b = build(inst.tree, inst.paths);
        const auto& g = b.g;
        CAPTURE(seed);
        uint64_t kmax = 2 * ceil_log2(n) + 1;
        for (uint64_t k = 1; k <= n; ++k) {
            uint64_t i = g.sorted_index(k);
            REQUIRE(g.input_index(i) == k);
            std::vector<uint64_t> raw = g.neighbourhood_raw(i);
            std::set<uint64_t> uniq(raw.begin(), raw.end());
            REQUIRE(uniq.size() == raw.size());
            std::vector<uint64_t> got;
            for (uint64_t x : g.neighbourhood(i)) got.push_back(g.input_index(x));
            std::sort(got.begin(), got.end());
            REQUIRE(got == o.neighbours(k));
            REQUIRE(g.degree(i) == o.degree(k));
            REQUIRE(g.degree_count(i) == g.degree_enum(i));
            REQUIRE(g.large_degree(i) == (o.degree(k) > g.degree_threshold()));
            for (uint64_t k2 = 1; k2 <= n; ++k2) {
                SuccinctStats st;
                REQUIRE(g.adjacent(i, g.sorted_index(k2), &st) == o.adjacent(k, k2));
                REQUIRE(st.check_alpha_calls <= kmax);
            }
        }
    }
}

TEST_CASE("succinct serialization round trip") {
    Instance inst = gen_instance(40, 90, 5);
    Built b = build(inst.tree, inst.paths);
    auto blob = b.g.serialize();
    SuccinctPathGraph back = SuccinctPathGraph::deserialize(blob);
    CHECK(back.serialize() == blob);
    for (uint64_t i = 1; i <= 90; ++i) {
        CHECK(back.neighbourhood(i) == b.g.neighbourhood(i));
        CHECK(back.pathep(i) == b.g.pathep(i));
    }
    auto bad = blob;
    bad[bad.size() / 2] ^= 1;
    CHECK_THROWS_AS(SuccinctPathGraph::deserialize(bad), FormatError);
    bad = blob;
    bad.resize(bad.size() - 3);
    CHECK_THROWS_AS(SuccinctPathGraph::deserialize(bad), FormatError);
}
