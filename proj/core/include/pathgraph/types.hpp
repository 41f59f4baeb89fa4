#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>

namespace pathgraph {

/// Labels and positions are 1-based throughout; 0 means "none".
inline constexpr uint64_t kNone = 0;

/// Closed integer interval [lo, hi]; empty whenever lo > hi.
struct Range {
    uint64_t lo = 1;
    uint64_t hi = 0;

    constexpr bool empty() const { return lo > hi; }
    constexpr bool contains(uint64_t x) const { return lo <= x && x <= hi; }
    constexpr uint64_t length() const { return empty() ? 0 : hi - lo + 1; }
    constexpr bool operator==(const Range&) const = default;

    static constexpr Range none() { return Range{1, 0}; }
};

inline std::ostream& operator<<(std::ostream& os, const Range& r) {
    if (r.empty()) return os << "[]";
    return os << '[' << r.lo << ',' << r.hi << ']';
}

/// Smallest k with 2^k >= x; 0 for x <= 1.
constexpr uint64_t ceil_log2(uint64_t x) {
    uint64_t k = 0;
    while (k < 64 && (uint64_t{1} << k) < x) ++k;
    return k;
}

/// Bits needed to store values in [0, x].
constexpr uint64_t bits_for(uint64_t x) {
    uint64_t k = 0;
    while (k < 64 && (x >> k) != 0) ++k;
    return std::max<uint64_t>(k, 1);
}

}  // namespace pathgraph
