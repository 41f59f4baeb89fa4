#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pathgraph/oracle.hpp"

namespace pathgraph {

/// Malformed instance text; `line()` is 1-based, 0 when the input ended early.
class ParseError : public std::runtime_error {
public:
    ParseError(uint64_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    uint64_t line() const { return line_; }

private:
    uint64_t line_;
};

/// Text format: "M n", then one line of M parent labels (0 for the root), then
/// n lines "l r" in original labels. Blank lines are not allowed between sections.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst);

}  // namespace pathgraph
