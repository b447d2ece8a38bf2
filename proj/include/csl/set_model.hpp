#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "csl/group.hpp"

namespace csl {

/// A deduplicated, sorted finite subset of an ambient group.
struct FiniteSet {
    AmbientGroup ambient;
    std::vector<Element> elements; // sorted ascending, no duplicates

    std::size_t size() const { return elements.size(); }
    bool empty() const { return elements.empty(); }
};

FiniteSet make_finite_set(AmbientGroup g, std::vector<Element> elements);
/// Finite subset of Z from plain values.
FiniteSet z_set(std::vector<std::int64_t> values);
bool set_contains(const FiniteSet& s, const Element& x);
std::vector<std::int64_t> z_values(const FiniteSet& s);

/// All N0-combinations of the generators (plus 0). Generators with free parts
/// outside the nonnegative orthant are representable but rejected by every
/// enumeration-based operation.
struct MonoidDesc {
    AmbientGroup ambient;
    std::vector<Element> generators;
};

/// One linear piece P(base; generators), optionally bounded per generator.
/// bounds empty means unbounded; otherwise bounds[j] caps coefficient j.
struct LinearPiece {
    Element base;
    std::vector<Element> generators;
    std::vector<std::int64_t> bounds;

    bool bounded() const { return !bounds.empty(); }
};

/// Finite union of linear pieces.
struct SemilinearSet {
    std::vector<LinearPiece> pieces;
};

struct FinitePlusMonoid {
    FiniteSet core;
    MonoidDesc monoid;
};

struct TranslatedMonoid {
    Element base;
    MonoidDesc monoid;
};

/// One color's set description.
using ColorClass = std::variant<FiniteSet, SemilinearSet, FinitePlusMonoid, TranslatedMonoid>;

bool color_is_finite(const ColorClass& c);
const FiniteSet& color_as_finite(const ColorClass& c);

/// The tuple A = (A_1, ..., A_q); every color lives in the shared ambient group.
struct ColorTuple {
    AmbientGroup ambient;
    std::vector<ColorClass> colors;

    std::size_t q() const { return colors.size(); }
};

ColorTuple make_color_tuple(AmbientGroup g, std::vector<ColorClass> colors);
bool tuple_all_finite(const ColorTuple& t);

/// The vector parameter h in N0^q with the coordinatewise order.
struct HVector {
    std::vector<std::int64_t> entries;

    bool operator==(const HVector&) const = default;
    std::size_t size() const { return entries.size(); }
    bool is_zero() const;
};

HVector make_h_vector(std::vector<std::int64_t> entries);
HVector h_scaled(const HVector& h, std::int64_t r);
/// Coordinatewise h <= g.
bool h_preceq(const HVector& h, const HVector& g);

/// Inclusive per-free-coordinate truncation box; torsion coordinates are
/// always fully included.
struct Window {
    std::vector<std::array<std::int64_t, 2>> bounds; // one [lo, hi] per free coordinate
};

Window make_window(const AmbientGroup& g, std::vector<std::array<std::int64_t, 2>> bounds);
Window z_window(std::int64_t lo, std::int64_t hi);
bool window_contains(const Window& w, const Element& x);
/// Hull of w and w translated by -e for every e in extra; guarantees x - e
/// stays inside the result whenever x is inside w.
Window enlarge_window(const Window& w, const FiniteSet& extra);

/// Data recorded by normalize_tuple, enough to transport layer results back
/// to the original tuple via n -> divisor*n + sum_i h_i*offsets[i].
struct NormalizationRecord {
    std::int64_t divisor = 1;
    std::vector<std::int64_t> offsets;        // one per original color
    std::vector<std::size_t> singleton_colors; // indices removed from the tuple
};

std::int64_t denormalize_value(const NormalizationRecord& rec, const HVector& h, std::int64_t n);

// --- operations ------------------------------------------------------------

/// Expands every bounded piece into singleton pieces so the result is a union
/// of unbounded linear sets describing the same points. Piece-count blowup
/// past the configured refinement limit is a capacity error.
SemilinearSet refine_to_unbounded(const AmbientGroup& g, const SemilinearSet& s);

/// Exact membership of x in the color class, valid for x inside w.
bool member_up_to_bound(const AmbientGroup& g, const ColorClass& c, const Element& x,
                        const Window& w);

/// Exactly the elements of the color class inside w.
FiniteSet enumerate_window(const AmbientGroup& g, const ColorClass& c, const Window& w);

/// Normalizes a tuple of finite integer sets: removes singleton colors,
/// shifts each remaining color to min 0 and divides by the joint gcd.
std::pair<ColorTuple, NormalizationRecord> normalize_tuple(const ColorTuple& t);

// Internal decomposition of a color class into parts (finite base set plus a
// generated monoid); shared by enumeration and windowed sumsets.
struct StructurePart {
    std::vector<Element> bases;
    std::vector<Element> generators;
};

std::vector<StructurePart> structure_parts(const AmbientGroup& g, const ColorClass& c);

/// BFS enumeration of (bases + <generators>) clipped to w; exact because
/// generator free parts are required to be nonnegative.
void enumerate_part_window(const AmbientGroup& g, const StructurePart& part, const Window& w,
                           std::vector<Element>& out);

} // namespace csl
