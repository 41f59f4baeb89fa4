#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "pathgraph/bitseq.hpp"

using namespace pathgraph;

namespace {

// Reference rank/select by linear scan over a plain string.
uint64_t naive_rank(const std::string& s, bool b, uint64_t i) {
    uint64_t c = 0;
    for (uint64_t k = 0; k < i; ++k) c += (s[k] == '1') == b;
    return c;
}

uint64_t naive_select(const std::string& s, bool b, uint64_t i) {
    uint64_t c = 0;
    for (uint64_t k = 0; k < s.size(); ++k)
        if ((s[k] == '1') == b && ++c == i) return k + 1;
    return 0;
}

// Pointer-based reference tree in pre-order labels; parent[1] = 0.
struct RefTree {
    std::vector<uint64_t> parent;
    std::vector<std::vector<uint64_t>> kids;
    std::vector<uint64_t> depth, last;

    explicit RefTree(std::vector<uint64_t> p) : parent(std::move(p)) {
        uint64_t m = parent.size() - 1;
        kids.assign(m + 1, {});
        depth.assign(m + 1, 0);
        last.assign(m + 1, 0);
        for (uint64_t v = 2; v <= m; ++v) kids[parent[v]].push_back(v);
        for (uint64_t v = 1; v <= m; ++v) depth[v] = v == 1 ? 1 : depth[parent[v]] + 1;
        for (uint64_t v = m; v >= 1; --v) {
            last[v] = std::max(last[v], v);
            if (parent[v]) last[parent[v]] = std::max(last[parent[v]], last[v]);
        }
    }
    uint64_t lca(uint64_t u, uint64_t v) const {
        while (depth[u] > depth[v]) u = parent[u];
        while (depth[v] > depth[u]) v = parent[v];
        while (u != v) u = parent[u], v = parent[v];
        return u;
    }
};

// Random tree relabeled in pre-order; returns parent array indexed 1..m.
std::vector<uint64_t> random_preorder_tree(uint64_t m, std::mt19937_64& rng) {
    std::vector<std::vector<uint64_t>> kids(m + 1);
    for (uint64_t v = 2; v <= m; ++v) kids[std::uniform_int_distribution<uint64_t>(1, v - 1)(rng)].push_back(v);
    std::vector<uint64_t> label(m + 1, 0), parent(m + 1, 0), stack{1};
    std::vector<uint64_t> orig_parent(m + 1, 0);
    for (uint64_t v = 1; v <= m; ++v)
        for (uint64_t c : kids[v]) orig_parent[c] = v;
    uint64_t next = 0;
    while (!stack.empty()) {
        uint64_t v = stack.back();
        stack.pop_back();
        label[v] = ++next;
        for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
    }
    for (uint64_t v = 2; v <= m; ++v) parent[label[v]] = label[orig_parent[v]];
    return parent;
}

std::vector<uint64_t> chain_tree(uint64_t m) {
    std::vector<uint64_t> parent(m + 1, 0);
    for (uint64_t v = 2; v <= m; ++v) parent[v] = v - 1;
    return parent;
}

void check_against_reference(const std::vector<uint64_t>& parent, std::mt19937_64& rng) {
    RefTree ref(parent);
    BPTree t = BPTree::from_preorder_parents(parent);
    uint64_t m = parent.size() - 1;
    REQUIRE(t.nodes() == m);
    for (uint64_t v = 1; v <= m; ++v) {
        CHECK(t.parent(v) == parent[v]);
        CHECK(t.depth(v) == ref.depth[v]);
        CHECK(t.rmost_leaf(v) == ref.last[v]);
        CHECK(t.first_child(v) == (ref.kids[v].empty() ? 0 : v + 1));
        if (v > 1) {
            const auto& sib = ref.kids[parent[v]];
            CHECK(t.child_rank(v) == static_cast<uint64_t>(std::find(sib.begin(), sib.end(), v) - sib.begin()));
        }
    }
    std::uniform_int_distribution<uint64_t> node(1, m);
    for (int q = 0; q < 2000; ++q) {
        uint64_t u = node(rng), v = node(rng);
        uint64_t a = ref.lca(u, v);
        REQUIRE(t.lca(u, v) == a);
        CHECK(t.is_ancestor(u, v) == (a == u));
        if (a == u && u != v) {
            uint64_t c = v;
            while (parent[c] != u) c = parent[c];
            CHECK(t.child_toward(u, v) == c);
        }
    }
}

}  // namespace

TEST_CASE("rank and select on small vectors") {
    BitVector b = BitVector::from_string("110100");
    CHECK(b.rank1(3) == 2);
    CHECK(b.rank0(0) == 0);
    CHECK(b.select1(3) == 4);
    CHECK(b.select1(4) == 0);
    CHECK(b.select1(0) == 0);
    CHECK_THROWS_AS(b.rank1(7), std::out_of_range);

    CHECK(BitVector::from_string("111100100100").rank1(1) == 1);
    CHECK(BitVector::from_string("10101110").select0(3) == 8);
}

TEST_CASE("rank and select agree with a linear scan") {
    std::mt19937_64 rng(7);
    for (uint64_t len : {0, 1, 63, 64, 65, 511, 512, 513, 4096, 70001, 140000}) {
        for (double density : {0.02, 0.5, 0.97}) {
            std::bernoulli_distribution coin(density);
            std::string s(len, '0');
            for (auto& ch : s) ch = coin(rng) ? '1' : '0';
            BitVector b = BitVector::from_string(s);
            REQUIRE(b.size() == len);
            REQUIRE(b.to_string() == s);
            uint64_t ones = naive_rank(s, true, len);
            CHECK(b.ones() == ones);
            uint64_t step = len > 5000 ? 97 : 1;
            for (uint64_t i = 0; i <= len; i += step) {
                REQUIRE(b.rank1(i) == naive_rank(s, true, i));
            }
            for (bool bit : {false, true}) {
                uint64_t total = bit ? ones : len - ones;
                for (uint64_t i = 1; i <= total; i += step) {
                    uint64_t p = b.select(bit, i);
                    REQUIRE(p != 0);
                    REQUIRE(b.get(p) == bit);
                    REQUIRE(b.rank(bit, p) == i);
                    if (len <= 5000) REQUIRE(p == naive_select(s, bit, i));
                }
                CHECK(b.select(bit, total + 1) == 0);
            }
        }
    }
}

TEST_CASE("bit vector serialization round trip") {
    BitVector b = BitVector::from_string("1011001110001");
    Writer w;
    b.serialize(w);
    Reader r(w.bytes());
    BitVector c = BitVector::deserialize(r);
    CHECK(c == b);
    CHECK(c.rank1(13) == b.rank1(13));

    std::vector<uint8_t> bad = w.bytes();
    bad.back() ^= 0x40;
    Reader rb(bad);
    CHECK_THROWS_AS(BitVector::deserialize(rb), FormatError);
}

TEST_CASE("int vector packs values") {
    std::vector<uint64_t> vals{0, 5, 17, 1023, 3, 1ull << 40};
    IntVector iv = IntVector::pack(vals);
    CHECK(iv.width() == 41);
    for (size_t i = 0; i < vals.size(); ++i) CHECK(iv[i] == vals[i]);
    Writer w;
    iv.serialize(w);
    Reader r(w.bytes());
    CHECK(IntVector::deserialize(r) == iv);
}

TEST_CASE("non-decreasing sequence access and mapping") {
    std::vector<uint64_t> v{1, 2, 5};
    NonDecSeq s(v);
    CHECK(s.bits().to_string() == "10101110");
    CHECK(s.access(2) == 2);
    CHECK(s.access(3) == 5);
    CHECK_THROWS_AS(s.access(4), std::out_of_range);
    CHECK_THROWS_AS(s.access(0), std::out_of_range);
    CHECK(s.map_range(2, 5) == Range{2, 3});
    CHECK(s.map_range(3, 4).empty());
    CHECK(s.map_range(1, 1) == Range{1, 1});

    std::vector<uint64_t> ones{1, 1, 1};
    CHECK(NonDecSeq(ones).access(3) == 1);

    std::vector<uint64_t> ends{1, 4, 6};
    NonDecSeq j(ends);
    CHECK(j.map_range(2, 6) == Range{2, 3});
    CHECK(j.map_range(1, 1) == Range{1, 1});
    CHECK(j.map_range(5, 5).empty());
}

TEST_CASE("non-decreasing sequence matches a plain copy") {
    std::mt19937_64 rng(11);
    for (uint64_t n : {1, 2, 10, 300, 5000}) {
        std::uniform_int_distribution<uint64_t> val(1, n);
        std::vector<uint64_t> v(n);
        for (auto& x : v) x = val(rng);
        std::sort(v.begin(), v.end());
        NonDecSeq s(v);
        CHECK(s.core_bits() == n + v.back());
        CHECK(s.core_bits() <= 2 * n);
        for (uint64_t i = 1; i <= n; ++i) REQUIRE(s.access(i) == v[i - 1]);
        for (uint64_t x = 0; x <= n + 1; ++x) {
            uint64_t le = static_cast<uint64_t>(std::upper_bound(v.begin(), v.end(), x) - v.begin());
            REQUIRE(s.count_le(x) == le);
        }
        Writer w;
        s.serialize(w);
        Reader r(w.bytes());
        NonDecSeq t = NonDecSeq::deserialize(r);
        for (uint64_t i = 1; i <= n; ++i) REQUIRE(t.access(i) == v[i - 1]);
    }
}

TEST_CASE("balanced parentheses on the running tree") {
    std::vector<uint64_t> parent{0, 0, 1, 2, 3, 2, 1};
    BPTree t = BPTree::from_preorder_parents(parent);
    CHECK(t.bits().to_string() == "111100100100");
    CHECK(t.lca(4, 5) == 2);
    CHECK(t.lca(5, 6) == 1);
    CHECK(t.lca(3, 3) == 3);
    CHECK(t.parent(4) == 3);
    CHECK(t.parent(1) == 0);
    CHECK(t.parent(6) == 1);
    CHECK(t.first_child(1) == 2);
    CHECK(t.first_child(4) == 0);
    CHECK(t.first_child(2) == 3);
    CHECK(t.rmost_leaf(2) == 5);
    CHECK(t.rmost_leaf(6) == 6);
    CHECK(t.rmost_leaf(1) == 6);
    CHECK(t.child_rank(2) == 0);
    CHECK(t.child_rank(6) == 1);
    CHECK(t.child_rank(5) == 1);
    CHECK_THROWS(t.child_rank(1));
    CHECK_THROWS(t.lca(0, 2));
    CHECK_THROWS(t.parent(7));
    CHECK(t.first_child_chain_start(4) == 1);
    CHECK(t.first_child_chain_start(1) == 1);
    CHECK(t.first_child_chain_start(5) == 5);
    CHECK(t.first_child_chain_start(6) == 6);
}

TEST_CASE("balanced parentheses reject malformed input") {
    CHECK_THROWS_AS(BPTree(BitVector::from_string("1010")), std::invalid_argument);
    CHECK_THROWS_AS(BPTree(BitVector::from_string("1000")), std::invalid_argument);
    CHECK_THROWS_AS(BPTree(BitVector::from_string("0110")), std::invalid_argument);
    CHECK_THROWS_AS(BPTree(BitVector::from_string("110")), std::invalid_argument);
}

TEST_CASE("balanced parentheses agree with a pointer tree") {
    std::mt19937_64 rng(3);
    for (uint64_t m : {1, 2, 3, 17, 300, 2500, 10000}) {
        CAPTURE(m);
        check_against_reference(random_preorder_tree(m, rng), rng);
    }
    check_against_reference(chain_tree(10000), rng);
}

TEST_CASE("excess searches agree with a linear scan") {
    std::mt19937_64 rng(5);
    for (uint64_t m : {40, 3000, 9000}) {
        BPTree t = BPTree::from_preorder_parents(random_preorder_tree(m, rng));
        uint64_t len = 2 * m;
        std::vector<int64_t> e(len + 1, 0);
        for (uint64_t k = 1; k <= len; ++k) e[k] = e[k - 1] + (t.bits().get(k) ? 1 : -1);
        for (uint64_t k = 0; k <= len; k += (len > 1000 ? 37 : 1)) REQUIRE(t.excess(k) == e[k]);
        std::uniform_int_distribution<uint64_t> pos(0, len);
        for (int q = 0; q < 3000; ++q) {
            uint64_t p = pos(rng);
            int64_t d = e[p] - static_cast<int64_t>(rng() % 6);
            uint64_t f = 0;
            for (uint64_t k = p + 1; k <= len; ++k)
                if (e[k] <= d) {
                    f = k;
                    break;
                }
            REQUIRE(t.fwd_search(p, d) == f);
            int64_t b = -1;
            for (uint64_t k = p; k-- > 0;)
                if (e[k] <= d) {
                    b = static_cast<int64_t>(k);
                    break;
                }
            REQUIRE(t.bwd_search(p, d) == b);
            uint64_t i = pos(rng), j = pos(rng);
            if (i > j) std::swap(i, j);
            if (i == 0) i = 1;
            if (j == 0) j = 1;
            REQUIRE(t.range_min(i, j) == *std::min_element(e.begin() + static_cast<std::ptrdiff_t>(i),
                                                           e.begin() + static_cast<std::ptrdiff_t>(j) + 1));
        }
    }
}

TEST_CASE("balanced parentheses serialization round trip") {
    std::mt19937_64 rng(9);
    BPTree t = BPTree::from_preorder_parents(random_preorder_tree(777, rng));
    Writer w;
    t.serialize(w);
    Reader r(w.bytes());
    BPTree u = BPTree::deserialize(r);
    CHECK(u == t);
    for (uint64_t v = 1; v <= 777; ++v) REQUIRE(u.rmost_leaf(v) == t.rmost_leaf(v));
    CHECK(t.core_bits() == 2 * 777);
}
