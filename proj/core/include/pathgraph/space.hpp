#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace pathgraph {

struct SpaceItem {
    std::string name;
    uint64_t core_bits = 0;
    uint64_t directory_bits = 0;

    uint64_t total() const { return core_bits + directory_bits; }
};

/// Per-component bit counts. `items` sum to `total()`; `side` lists storage kept
/// for caller convenience (such as the input-order permutation) that is reported
/// but not counted.
struct SpaceReport {
    std::vector<SpaceItem> items;
    std::vector<SpaceItem> side;

    uint64_t total() const {
        uint64_t t = 0;
        for (const auto& it : items) t += it.total();
        return t;
    }
};

inline std::ostream& operator<<(std::ostream& os, const SpaceReport& r) {
    auto row = [&](const SpaceItem& it) {
        os << "  " << it.name << ": core " << it.core_bits << ", directory " << it.directory_bits << ", total "
           << it.total() << " bits\n";
    };
    for (const auto& it : r.items) row(it);
    os << "  total: " << r.total() << " bits\n";
    for (const auto& it : r.side) {
        os << "  (not counted) ";
        os << it.name << ": " << it.total() << " bits\n";
    }
    return os;
}

}  // namespace pathgraph
