#include "pathgraph/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace pathgraph {

namespace {

std::vector<uint64_t> parse_numbers(const std::string& text, uint64_t line) {
    std::vector<uint64_t> out;
    const char* p = text.data();
    const char* end = p + text.size();
    while (true) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        if (p == end) break;
        uint64_t v = 0;
        auto [q, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || q == p) throw ParseError(line, "expected a non-negative integer");
        if (q < end && *q != ' ' && *q != '\t' && *q != '\r') throw ParseError(line, "unexpected character");
        out.push_back(v);
        p = q;
    }
    return out;
}

std::vector<uint64_t> next_line(std::istream& in, uint64_t& line, const char* what) {
    std::string text;
    if (!std::getline(in, text)) throw ParseError(line + 1, std::string("missing ") + what);
    ++line;
    return parse_numbers(text, line);
}

}  // namespace

Instance read_instance(std::istream& in) {
    uint64_t line = 0;
    auto head = next_line(in, line, "header \"M n\"");
    if (head.size() != 2) throw ParseError(line, "header must be \"M n\"");
    uint64_t m = head[0], n = head[1];
    if (m == 0) throw ParseError(line, "tree must have at least one node");

    Instance inst;
    auto par = next_line(in, line, "parent line");
    if (par.size() != m) throw ParseError(line, "expected " + std::to_string(m) + " parent entries");
    inst.tree.parent.assign(m + 1, 0);
    for (uint64_t v = 1; v <= m; ++v) {
        if (par[v - 1] > m) throw ParseError(line, "parent of node " + std::to_string(v) + " out of range");
        inst.tree.parent[v] = par[v - 1];
    }
    try {
        inst.tree.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
    }

    inst.paths.reserve(n);
    for (uint64_t k = 0; k < n; ++k) {
        auto ends = next_line(in, line, "path line");
        if (ends.size() != 2) throw ParseError(line, "path line must be \"l r\"");
        if (ends[0] == 0 || ends[0] > m || ends[1] == 0 || ends[1] > m)
            throw ParseError(line, "path endpoint out of range");
        inst.paths.emplace_back(ends[0], ends[1]);
    }
    std::string rest;
    while (std::getline(in, rest)) {
        ++line;
        if (!parse_numbers(rest, line).empty()) throw ParseError(line, "trailing data after the last path");
    }
    inst.valid = validate_instance(inst).ok;
    return inst;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
    uint64_t m = inst.tree.nodes();
    out << m << ' ' << inst.paths.size() << '\n';
    for (uint64_t v = 1; v <= m; ++v) out << (v > 1 ? " " : "") << inst.tree.parent[v];
    out << '\n';
    for (const auto& [l, r] : inst.paths) out << l << ' ' << r << '\n';
}

}  // namespace pathgraph
