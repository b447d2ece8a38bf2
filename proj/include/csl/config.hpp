#pragma once

#include <cstddef>
#include <cstdint>

namespace csl {

/// Process-wide capacity limits. Everything the library enumerates is exact,
/// so runaway instances are rejected with a capacity error instead of
/// degrading to approximation. CSL_CAPACITY in the environment overrides
/// enumeration_limit at startup.
struct Capacity {
    // Max states visited by window enumerations and max tuples enumerated by
    // the brute-force representation counter.
    std::size_t enumeration_limit = 1'000'000;
    // Max pieces produced when refining bounded linear sets.
    std::size_t refinement_limit = 10'000;
    // Max |S| accepted by the exact minimum-translate-cover search.
    std::size_t set_cover_limit = 200;
    // Coordinate magnitude bound; arithmetic beyond it is an error, never wrapped.
    std::int64_t coordinate_limit = std::int64_t{1} << 40;
};

Capacity& capacity();

} // namespace csl
