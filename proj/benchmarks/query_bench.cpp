#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>
#include <vector>

#include "pathgraph/level_rep.hpp"
#include "pathgraph/oracle.hpp"
#include "pathgraph/succinct_rep.hpp"

using namespace pathgraph;

namespace {

struct Fixture {
    PreparedTree pt;
    PathSet ps;
    SuccinctPathGraph succinct;
    LevelStructure level;
    std::vector<std::pair<uint64_t, uint64_t>> pairs;
};

// Instances are built once per size and shared across benchmarks; M = n/2.
const Fixture& fixture(uint64_t n) {
    static std::map<uint64_t, std::unique_ptr<Fixture>> cache;
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<Fixture>();
        Instance inst = gen_instance(std::max<uint64_t>(1, n / 2), n, 17);
        slot->pt = PreparedTree::prepare(inst.tree);
        slot->ps = PathSet(slot->pt, inst.paths);
        slot->succinct = SuccinctPathGraph::build(slot->pt, slot->ps);
        slot->level = LevelStructure::build(slot->pt, slot->ps);
        std::mt19937_64 rng(n);
        std::uniform_int_distribution<uint64_t> pick(1, n);
        slot->pairs.resize(4096);
        for (auto& p : slot->pairs) p = {pick(rng), pick(rng)};
    }
    return *slot;
}

void BM_SuccinctAdjacency(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<uint64_t>(state.range(0)));
    size_t k = 0;
    for (auto _ : state) {
        auto [a, b] = f.pairs[k++ & 4095];
        benchmark::DoNotOptimize(f.succinct.adjacent(a, b));
    }
}

void BM_LevelAdjacency(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<uint64_t>(state.range(0)));
    size_t k = 0;
    for (auto _ : state) {
        auto [a, b] = f.pairs[k++ & 4095];
        benchmark::DoNotOptimize(f.level.adjacent(a, b));
    }
}

void BM_SuccinctNeighbourhood(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<uint64_t>(state.range(0)));
    size_t k = 0;
    uint64_t reported = 0;
    for (auto _ : state) {
        auto out = f.succinct.neighbourhood_raw(f.pairs[k++ & 4095].first);
        reported += out.size();
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["reported"] = benchmark::Counter(static_cast<double>(reported), benchmark::Counter::kIsRate);
}

void BM_LevelNeighbourhood(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<uint64_t>(state.range(0)));
    LevelScratch scratch;
    std::vector<uint64_t> out;
    size_t k = 0;
    uint64_t reported = 0;
    for (auto _ : state) {
        out.clear();
        f.level.neighbourhood(f.pairs[k++ & 4095].first, out, scratch);
        reported += out.size();
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["reported"] = benchmark::Counter(static_cast<double>(reported), benchmark::Counter::kIsRate);
}

void BM_SuccinctDegree(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<uint64_t>(state.range(0)));
    size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(f.succinct.degree(f.pairs[k++ & 4095].first));
}

void BM_LevelDegree(benchmark::State& state) {
    const Fixture& f = fixture(static_cast<uint64_t>(state.range(0)));
    size_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(f.level.degree(f.pairs[k++ & 4095].first));
}

}  // namespace

BENCHMARK(BM_SuccinctAdjacency)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_LevelAdjacency)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_SuccinctNeighbourhood)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_LevelNeighbourhood)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_SuccinctDegree)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_LevelDegree)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

BENCHMARK_MAIN();
