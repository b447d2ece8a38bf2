#pragma once

#include <cstdint>
#include <map>

#include "csl/covering.hpp"
#include "csl/set_model.hpp"

namespace csl {

/// Exact chromatic representation counts n -> r_{A,h}(n), finite support.
struct RepProfile {
    HVector h;
    std::map<std::int64_t, std::uint64_t> counts; // positive counts only

    std::uint64_t total_mass() const;
};

/// Empirical interval-plus-edges decomposition of one threshold layer:
/// when stabilized, the layer equals C u [c, H-d] u (H - D).
struct LayerStructure {
    std::int64_t threshold = 0;
    std::int64_t H = 0;
    std::vector<std::int64_t> C;
    std::int64_t c = 0;
    std::int64_t d = 0;
    std::vector<std::int64_t> D;
    bool stabilized = false;
    std::optional<HVector> h_t; // grid vector stabilization was detected from
};

/// Structures agree when their (C, c, d, D) data coincide.
bool same_shape(const LayerStructure& a, const LayerStructure& b);

/// Exact counts by per-color multiset DP convolved across colors.
RepProfile representation_function(const ColorTuple& t, const HVector& h);

/// {n : r_{A,h}(n) >= thr}; thr = 1 recovers the chromatic sumset.
FiniteSet threshold_layer(const ColorTuple& t, const HVector& h, std::int64_t thr);

/// Canonical decomposition of S inside [0, H], anchored at the run of
/// consecutive integers containing floor(H/2).
LayerStructure decompose_layer(const FiniteSet& s, std::int64_t H);

/// Coordinatewise box of h vectors.
struct HGrid {
    HVector lo;
    HVector hi;
};

/// Finds the smallest grid vector from which the layer decomposition is
/// constant across the sampled grid; non-stabilized result if the grid is
/// too small.
LayerStructure detect_stabilization(const ColorTuple& t, std::int64_t thr, const HGrid& grid);

/// Translates {0, L, 2L, ..., rL} with L = H-c-d+1 covering [c, rH-d] by
/// copies of [c, H-d]; requires H >= r(c+d)-r.
FiniteSet interval_cover_translates(std::int64_t c, std::int64_t d, std::int64_t H,
                                    std::int64_t r);

/// H = h . a* for a tuple of finite integer colors.
std::int64_t layer_height(const ColorTuple& t, const HVector& h);

/// r+2 cover of the threshold-t layer of a normalized tuple: demands the
/// decompositions at h and r*h to be stabilized with identical shape.
CoveringCertificate layer_cover(const ColorTuple& t, std::int64_t thr, std::int64_t r,
                                const HVector& h);

/// r+2 cover for arbitrary finite integer tuples via normalization transport.
CoveringCertificate layer_cover_general(const ColorTuple& t, std::int64_t thr, std::int64_t r,
                                        const HVector& h);

} // namespace csl
