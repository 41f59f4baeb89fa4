#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "pathgraph/instance_io.hpp"
#include "pathgraph/level_rep.hpp"
#include "pathgraph/oracle.hpp"
#include "pathgraph/succinct_rep.hpp"

using namespace pathgraph;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kParse = 2, kMismatch = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Either representation, addressed by original (input) path indices.
class AnyGraph {
public:
    explicit AnyGraph(SuccinctPathGraph g) : g_(std::move(g)) {}
    explicit AnyGraph(LevelStructure g) : g_(std::move(g)) {}

    static AnyGraph load(const std::vector<uint8_t>& blob) {
        std::string tag(blob.begin(), blob.begin() + std::min<size_t>(3, blob.size()));
        if (tag == "PGS") return AnyGraph(SuccinctPathGraph::deserialize(blob));
        if (tag == "PGL") return AnyGraph(LevelStructure::deserialize(blob));
        throw FormatError("unknown blob tag");
    }

    const char* mode() const { return g_.index() == 0 ? "succinct" : "level"; }
    uint64_t size() const {
        return std::visit([](const auto& g) { return g.size(); }, g_);
    }
    bool adjacent(uint64_t a, uint64_t b) const {
        return std::visit([&](const auto& g) { return g.adjacent(g.sorted_index(a), g.sorted_index(b)); }, g_);
    }
    uint64_t degree(uint64_t a) const {
        return std::visit([&](const auto& g) { return g.degree(g.sorted_index(a)); }, g_);
    }
    std::vector<uint64_t> neighbours(uint64_t a) const {
        return std::visit(
            [&](const auto& g) {
                std::vector<uint64_t> out;
                for (uint64_t x : g.neighbourhood(g.sorted_index(a))) out.push_back(g.input_index(x));
                std::sort(out.begin(), out.end());
                return out;
            },
            g_);
    }

private:
    std::variant<SuccinctPathGraph, LevelStructure> g_;
};

std::vector<uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw UsageError("cannot write " + path);
}

uint64_t log_unit(uint64_t n) { return std::max<uint64_t>(1, ceil_log2(n)); }

void print_validity(std::ostream& os, const Instance& inst) {
    ValidationReport rep = validate_instance(inst);
    os << "nodes: " << inst.tree.nodes() << "\npaths: " << inst.paths.size() << "\nseed: " << inst.seed
       << "\nvalid: " << (rep.ok ? "yes" : "no") << "\n  bad endpoints: " << rep.bad_endpoints
       << "\n  uncovered nodes: " << rep.uncovered << "\n  nodes that are no lca: " << rep.not_lca
       << "\n  non-maximal nodes: " << rep.non_maximal << "\n";
    for (const auto& m : rep.messages) os << "  " << m << "\n";
}

struct Structures {
    PreparedTree pt;
    PathSet ps;
};

Structures prepare_instance(const Instance& inst) {
    Structures s;
    s.pt = PreparedTree::prepare(inst.tree);
    s.ps = PathSet(s.pt, inst.paths);
    return s;
}

// ---- gen ----

int cmd_gen(uint64_t m, uint64_t n, uint64_t seed, const std::string& out) {
    if (m == 0 || m > n) throw UsageError("gen needs 1 <= M <= n");
    Instance inst = gen_instance(m, n, seed);
    if (out.empty()) {
        write_instance(std::cout, inst);
        print_validity(std::cerr, inst);
    } else {
        std::ofstream f(out);
        write_instance(f, inst);
        if (!f) throw UsageError("cannot write " + out);
        print_validity(std::cout, inst);
    }
    return kOk;
}

// ---- build ----

int cmd_build(const std::string& in, const std::string& mode, const std::string& out) {
    Instance inst = read_instance_file(in);
    Structures s = prepare_instance(inst);
    uint64_t n = inst.paths.size();
    SpaceReport rep;
    std::vector<uint8_t> blob;
    std::cout << "mode: " << mode << "\npaths: " << n << "\nnodes: " << inst.tree.nodes() << "\n";
    if (mode == "succinct") {
        auto g = SuccinctPathGraph::build(s.pt, s.ps);
        rep = g.space_report();
        blob = g.serialize();
    } else {
        auto g = LevelStructure::build(s.pt, s.ps);
        std::cout << "levels: " << g.levels() << "\n";
        rep = g.space_report();
        blob = g.serialize();
    }
    write_bytes(out, blob);
    std::cout << "space:\n" << rep;
    uint64_t unit = n * log_unit(n);
    std::cout << "bits per n*ceil(log2 n): " << std::fixed << std::setprecision(3)
              << static_cast<double>(rep.total()) / static_cast<double>(unit) << "\nblob bytes: " << blob.size()
              << "\n";
    return kOk;
}

// ---- query ----

uint64_t parse_index(const std::string& s, uint64_t n) {
    uint64_t v = 0;
    try {
        size_t used = 0;
        v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw UsageError("not a path index: " + s);
    }
    if (v == 0 || v > n) throw UsageError("path index " + s + " out of range 1.." + std::to_string(n));
    return v;
}

int cmd_query(const std::string& blob_path, const std::vector<std::string>& q) {
    AnyGraph g = AnyGraph::load(read_bytes(blob_path));
    if (q.empty()) throw UsageError("query needs one of: adj i j | nbr i | deg i");
    const std::string& op = q[0];
    if (op == "adj" && q.size() == 3) {
        std::cout << (g.adjacent(parse_index(q[1], g.size()), parse_index(q[2], g.size())) ? "true" : "false")
                  << "\n";
    } else if (op == "nbr" && q.size() == 2) {
        auto nb = g.neighbours(parse_index(q[1], g.size()));
        for (size_t x = 0; x < nb.size(); ++x) std::cout << (x ? " " : "") << nb[x];
        std::cout << "\n";
    } else if (op == "deg" && q.size() == 2) {
        std::cout << g.degree(parse_index(q[1], g.size())) << "\n";
    } else {
        throw UsageError("query needs one of: adj i j | nbr i | deg i");
    }
    return kOk;
}

// ---- verify ----

struct VerifyOptions {
    uint64_t trials = 100000;
    uint64_t cutoff = 200;
    uint64_t seed = 1;
};

class Verifier {
public:
    explicit Verifier(std::ostream& os) : os_(os) {}

    // Compares one representation against the oracle on every vertex and on
    // all pairs (n <= cutoff) or `trials` seeded random pairs.
    void check(const AnyGraph& g, const OracleGraph& o, uint64_t inst_seed, const VerifyOptions& opt) {
        uint64_t n = o.size();
        if (g.size() != n) {
            report(inst_seed, g.mode(), "size", std::to_string(n), std::to_string(g.size()));
            return;
        }
        for (uint64_t a = 1; a <= n; ++a) {
            auto nb = g.neighbours(a);
            if (nb != o.neighbours(a)) report(inst_seed, g.mode(), "nbr " + std::to_string(a), join(o.neighbours(a)), join(nb));
            uint64_t d = g.degree(a);
            if (d != o.degree(a))
                report(inst_seed, g.mode(), "deg " + std::to_string(a), std::to_string(o.degree(a)), std::to_string(d));
        }
        auto pair = [&](uint64_t a, uint64_t b) {
            bool got = g.adjacent(a, b), want = o.adjacent(a, b);
            if (got != want)
                report(inst_seed, g.mode(), "adj " + std::to_string(a) + " " + std::to_string(b), want ? "true" : "false",
                       got ? "true" : "false");
        };
        if (n <= opt.cutoff) {
            for (uint64_t a = 1; a <= n; ++a)
                for (uint64_t b = 1; b <= n; ++b) pair(a, b);
        } else {
            std::mt19937_64 rng(opt.seed ^ (inst_seed * 0x9e3779b97f4a7c15ULL));
            std::uniform_int_distribution<uint64_t> pick(1, n);
            for (uint64_t t = 0; t < opt.trials; ++t) {
                uint64_t a = pick(rng);
                pair(a, pick(rng));
            }
        }
    }

    void fail(const std::string& what) {
        ++mismatches_;
        os_ << "error: " << what << "\n";
    }
    uint64_t mismatches() const { return mismatches_; }

private:
    static std::string join(const std::vector<uint64_t>& v) {
        std::ostringstream s;
        for (size_t x = 0; x < v.size(); ++x) s << (x ? " " : "") << v[x];
        return "[" + s.str() + "]";
    }
    void report(uint64_t seed, const char* mode, const std::string& query, const std::string& want,
                const std::string& got) {
        if (++mismatches_ <= kMaxReported)
            os_ << "mismatch: seed=" << seed << " mode=" << mode << " query=" << query << " expected=" << want
                << " got=" << got << "\n";
    }

    static constexpr uint64_t kMaxReported = 10;
    std::ostream& os_;
    uint64_t mismatches_ = 0;
};

void verify_instance(Verifier& v, const Instance& inst, const VerifyOptions& opt) {
    Structures s = prepare_instance(inst);
    OracleGraph o = build_oracle(inst.tree, inst.paths);
    v.check(AnyGraph(SuccinctPathGraph::build(s.pt, s.ps)), o, inst.seed, opt);
    v.check(AnyGraph(LevelStructure::build(s.pt, s.ps)), o, inst.seed, opt);
}

int cmd_verify(const std::string& instance_path, const std::string& blob_path, uint64_t seeds, uint64_t max_n,
               const VerifyOptions& opt) {
    Verifier v(std::cout);
    if (!instance_path.empty()) {
        Instance inst = read_instance_file(instance_path);
        inst.seed = opt.seed;
        verify_instance(v, inst, opt);
        if (!blob_path.empty()) {
            try {
                AnyGraph g = AnyGraph::load(read_bytes(blob_path));
                v.check(g, build_oracle(inst.tree, inst.paths), inst.seed, opt);
            } catch (const FormatError& e) {
                v.fail(std::string("blob rejected: ") + e.what());
            }
        }
        std::cout << "instance " << instance_path << ": n=" << inst.paths.size() << " M=" << inst.tree.nodes()
                  << "\n";
    } else {
        if (!blob_path.empty()) throw UsageError("--blob needs an instance to compare against");
        static constexpr uint64_t kSizes[] = {10, 50, 200, 1000};
        uint64_t done = 0;
        for (uint64_t k = 0; k < seeds; ++k) {
            uint64_t n = std::min(max_n, kSizes[k % 4]);
            if (n == 0) throw UsageError("--max-n must be positive");
            uint64_t m = std::max<uint64_t>(1, n * (1 + k % 4) / 4);
            uint64_t seed = opt.seed + k;
            Instance inst = gen_instance(m, n, seed);
            verify_instance(v, inst, opt);
            ++done;
        }
        std::cout << "instances: " << done << "\n";
    }
    if (v.mismatches() != 0) {
        std::cout << "mismatches: " << v.mismatches() << "\nFAIL\n";
        return kMismatch;
    }
    std::cout << "PASS\n";
    return kOk;
}

// ---- bench ----

std::vector<uint64_t> parse_sizes(const std::string& s) {
    std::vector<uint64_t> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            size_t used = 0;
            uint64_t v = std::stoull(tok, &used);
            if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad size list entry: " + tok);
        }
    }
    if (out.empty()) throw UsageError("--sizes is empty");
    return out;
}

struct BenchRow {
    double build_ms = 0;
    uint64_t bits = 0;
    double adj_ops = 0, nbr_ops = 0, deg_ops = 0;
};

template <typename Build, typename Ops>
BenchRow bench_one(uint64_t n, Build&& build, Ops&& ops) {
    BenchRow row;
    auto t0 = std::chrono::steady_clock::now();
    auto g = build();
    auto t1 = std::chrono::steady_clock::now();
    row.build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.bits = g.space_report().total();
    ops(g, n, row);
    return row;
}

int cmd_bench(const std::string& sizes, uint64_t seed, const std::string& mode) {
    constexpr uint64_t kAdj = 2000, kNbr = 200;
    std::cout << std::left << std::setw(10) << "mode" << std::right << std::setw(9) << "n" << std::setw(12)
              << "build_ms" << std::setw(14) << "bits" << std::setw(12) << "bits/nlogn" << std::setw(10) << "adj_ops"
              << std::setw(10) << "nbr_ops" << std::setw(10) << "deg_ops" << "\n";
    for (uint64_t n : parse_sizes(sizes)) {
        Instance inst = gen_instance(std::max<uint64_t>(1, n / 2), n, seed);
        Structures s = prepare_instance(inst);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<uint64_t> pick(1, n);
        std::vector<std::pair<uint64_t, uint64_t>> pairs(kAdj);
        for (auto& p : pairs) p = {pick(rng), pick(rng)};
        std::vector<uint64_t> singles(kNbr);
        for (auto& x : singles) x = pick(rng);

        auto print = [&](const char* name, const BenchRow& r) {
            std::cout << std::left << std::setw(10) << name << std::right << std::setw(9) << n << std::setw(12)
                      << std::fixed << std::setprecision(2) << r.build_ms << std::setw(14) << r.bits << std::setw(12)
                      << std::setprecision(3)
                      << static_cast<double>(r.bits) / static_cast<double>(n * log_unit(n)) << std::setw(10)
                      << std::setprecision(2) << r.adj_ops << std::setw(10) << r.nbr_ops << std::setw(10) << r.deg_ops
                      << "\n";
        };
        if (mode == "succinct" || mode == "both") {
            // adj: check_alpha calls; nbr: rectangles searched; deg: rectangles
            // counted, plus the enumeration for small degrees.
            print("succinct", bench_one(
                                  n, [&] { return SuccinctPathGraph::build(s.pt, s.ps); },
                                  [&](const SuccinctPathGraph& g, uint64_t, BenchRow& row) {
                                      SuccinctStats st;
                                      for (auto [a, b] : pairs) g.adjacent(a, b, &st);
                                      row.adj_ops = static_cast<double>(st.check_alpha_calls) / kAdj;
                                      SuccinctStats nb;
                                      uint64_t deg_ops = 0;
                                      for (uint64_t x : singles) {
                                          uint64_t before = nb.rectangles;
                                          auto raw = g.neighbourhood_raw(x, &nb);
                                          deg_ops += nb.rectangles - before;
                                          if (!g.large_degree(x)) deg_ops += raw.size();
                                      }
                                      row.nbr_ops = static_cast<double>(nb.rectangles) / kNbr;
                                      row.deg_ops = static_cast<double>(deg_ops) / kNbr;
                                  }));
        }
        if (mode == "level" || mode == "both") {
            // adj: interval probes; nbr: touches; deg: one stored read.
            print("level", bench_one(
                               n, [&] { return LevelStructure::build(s.pt, s.ps); },
                               [&](const LevelStructure& g, uint64_t, BenchRow& row) {
                                   LevelStats st;
                                   for (auto [a, b] : pairs) g.adjacent(a, b, &st);
                                   row.adj_ops = static_cast<double>(st.ig_probes) / kAdj;
                                   LevelStats nb;
                                   LevelScratch scratch;
                                   std::vector<uint64_t> out;
                                   for (uint64_t x : singles) {
                                       out.clear();
                                       g.neighbourhood(x, out, scratch, &nb);
                                   }
                                   row.nbr_ops = static_cast<double>(nb.touches) / kNbr;
                                   row.deg_ops = 1;
                               }));
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressed path graph representations: build, query, verify, benchmark."};
    app.require_subcommand(1);

    uint64_t gen_m = 0, gen_n = 0, gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a random valid instance");
    gen->add_option("M", gen_m, "Tree nodes")->required();
    gen->add_option("n", gen_n, "Paths (n >= M)")->required();
    gen->add_option("seed", gen_seed, "Random seed")->required();
    gen->add_option("--out", gen_out, "Output file (default: stdout)");

    std::string build_in, build_mode = "succinct", build_out;
    auto* build = app.add_subcommand("build", "Build a representation blob from an instance file");
    build->add_option("instance", build_in, "Instance file")->required();
    build->add_option("--mode", build_mode, "succinct or level")->check(CLI::IsMember({"succinct", "level"}));
    build->add_option("--out", build_out, "Output blob")->required();

    std::string query_blob;
    std::vector<std::string> query_args;
    auto* query = app.add_subcommand("query", "Query a blob: adj i j | nbr i | deg i");
    query->add_option("blob", query_blob, "Blob file")->required();
    query->add_option("query", query_args, "adj i j | nbr i | deg i")->required();

    std::string verify_in, verify_blob;
    uint64_t verify_seeds = 8, verify_max_n = 1000;
    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "Check both representations against the oracle");
    verify->add_option("instance", verify_in, "Instance file (default: random instances)");
    verify->add_option("--blob", verify_blob, "Also check this blob against the instance");
    verify->add_option("--seeds", verify_seeds, "Random instances to check");
    verify->add_option("--seed", vopt.seed, "First instance seed and pair-sampling seed");
    verify->add_option("--trials", vopt.trials, "Sampled pairs above the cutoff");
    verify->add_option("--cutoff", vopt.cutoff, "Largest n checked on all pairs");
    verify->add_option("--max-n", verify_max_n, "Largest random instance size");

    std::string bench_sizes = "1024,4096,16384", bench_mode = "both";
    uint64_t bench_seed = 1;
    auto* bench = app.add_subcommand("bench", "Space and operation counts per size");
    bench->add_option("--sizes", bench_sizes, "Comma-separated path counts");
    bench->add_option("--seed", bench_seed, "Instance seed");
    bench->add_option("--mode", bench_mode, "succinct, level or both")
        ->check(CLI::IsMember({"succinct", "level", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) return cmd_gen(gen_m, gen_n, gen_seed, gen_out);
        if (*build) return cmd_build(build_in, build_mode, build_out);
        if (*query) return cmd_query(query_blob, query_args);
        if (*verify) return cmd_verify(verify_in, verify_blob, verify_seeds, verify_max_n, vopt);
        if (*bench) return cmd_bench(bench_sizes, bench_seed, bench_mode);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const FormatError& e) {
        std::cerr << "bad blob: " << e.what() << "\n";
        return kParse;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
