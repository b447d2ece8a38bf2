#include "csl/set_model.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "csl/config.hpp"

namespace csl {

FiniteSet make_finite_set(AmbientGroup g, std::vector<Element> elements) {
    validate_group(g);
    for (const Element& e : elements)
        if (!element_in_group(g, e)) fail_structural("finite set element outside ambient group");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return FiniteSet{std::move(g), std::move(elements)};
}

FiniteSet z_set(std::vector<std::int64_t> values) {
    std::vector<Element> elems;
    elems.reserve(values.size());
    for (std::int64_t v : values) elems.push_back(z_element(v));
    return make_finite_set(integers(), std::move(elems));
}

bool set_contains(const FiniteSet& s, const Element& x) {
    return std::binary_search(s.elements.begin(), s.elements.end(), x);
}

std::vector<std::int64_t> z_values(const FiniteSet& s) {
    if (!s.ambient.is_integers()) fail_structural("set is not a subset of Z");
    std::vector<std::int64_t> out;
    out.reserve(s.elements.size());
    for (const Element& e : s.elements) out.push_back(e.free_coords[0]);
    return out;
}

bool color_is_finite(const ColorClass& c) { return std::holds_alternative<FiniteSet>(c); }

const FiniteSet& color_as_finite(const ColorClass& c) {
    if (!color_is_finite(c)) fail_structural("color class is not finite extensional");
    return std::get<FiniteSet>(c);
}

static void validate_color(const AmbientGroup& g, const ColorClass& c) {
    auto check_elem = [&](const Element& e) {
        if (!element_in_group(g, e)) fail_structural("color element outside ambient group");
    };
    if (const auto* f = std::get_if<FiniteSet>(&c)) {
        if (f->ambient != g) fail_structural("color ambient mismatch");
        if (f->empty()) fail_structural("color class must be nonempty");
    } else if (const auto* s = std::get_if<SemilinearSet>(&c)) {
        if (s->pieces.empty()) fail_structural("semilinear color needs at least one piece");
        for (const LinearPiece& p : s->pieces) {
            check_elem(p.base);
            for (const Element& b : p.generators) check_elem(b);
            if (p.bounded()) {
                if (p.bounds.size() != p.generators.size())
                    fail_structural("bounded piece needs one bound per generator");
                for (std::int64_t m : p.bounds)
                    if (m < 0) fail_structural("piece bounds must be nonnegative");
            }
        }
    } else if (const auto* fm = std::get_if<FinitePlusMonoid>(&c)) {
        if (fm->core.ambient != g || fm->monoid.ambient != g)
            fail_structural("color ambient mismatch");
        if (fm->core.empty()) fail_structural("finite core must be nonempty");
        for (const Element& b : fm->monoid.generators) check_elem(b);
    } else if (const auto* tm = std::get_if<TranslatedMonoid>(&c)) {
        if (tm->monoid.ambient != g) fail_structural("color ambient mismatch");
        check_elem(tm->base);
        for (const Element& b : tm->monoid.generators) check_elem(b);
    }
}

ColorTuple make_color_tuple(AmbientGroup g, std::vector<ColorClass> colors) {
    validate_group(g);
    if (colors.empty()) fail_structural("a color tuple needs at least one color");
    for (const ColorClass& c : colors) validate_color(g, c);
    return ColorTuple{std::move(g), std::move(colors)};
}

bool tuple_all_finite(const ColorTuple& t) {
    return std::all_of(t.colors.begin(), t.colors.end(), color_is_finite);
}

HVector make_h_vector(std::vector<std::int64_t> entries) {
    for (std::int64_t h : entries)
        if (h < 0) fail_structural("h entries must be nonnegative");
    return HVector{std::move(entries)};
}

bool HVector::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](std::int64_t v) { return v == 0; });
}

HVector h_scaled(const HVector& h, std::int64_t r) {
    HVector out = h;
    for (auto& v : out.entries) v = checked_mul(v, r);
    return out;
}

bool h_preceq(const HVector& h, const HVector& g) {
    if (h.size() != g.size()) fail_structural("h vector length mismatch");
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h.entries[i] > g.entries[i]) return false;
    return true;
}

Window make_window(const AmbientGroup& g, std::vector<std::array<std::int64_t, 2>> bounds) {
    if (bounds.size() != static_cast<std::size_t>(g.free_rank))
        fail_structural("window needs one [lo,hi] per free coordinate");
    for (const auto& b : bounds)
        if (b[0] > b[1]) fail_structural("window bounds must satisfy lo <= hi");
    return Window{std::move(bounds)};
}

Window z_window(std::int64_t lo, std::int64_t hi) { return make_window(integers(), {{{lo, hi}}}); }

bool window_contains(const Window& w, const Element& x) {
    for (std::size_t i = 0; i < w.bounds.size(); ++i)
        if (x.free_coords[i] < w.bounds[i][0] || x.free_coords[i] > w.bounds[i][1]) return false;
    return true;
}

Window enlarge_window(const Window& w, const FiniteSet& extra) {
    Window out = w;
    if (extra.empty()) return out;
    for (std::size_t c = 0; c < out.bounds.size(); ++c) {
        std::int64_t lo_shift = 0, hi_shift = 0;
        for (const Element& e : extra.elements) {
            lo_shift = std::max(lo_shift, e.free_coords[c]);
            hi_shift = std::min(hi_shift, e.free_coords[c]);
        }
        out.bounds[c][0] = checked_add(out.bounds[c][0], -lo_shift);
        out.bounds[c][1] = checked_add(out.bounds[c][1], -hi_shift);
    }
    return out;
}

std::int64_t denormalize_value(const NormalizationRecord& rec, const HVector& h, std::int64_t n) {
    if (h.size() != rec.offsets.size()) fail_structural("h vector length mismatch");
    std::int64_t out = checked_mul(rec.divisor, n);
    for (std::size_t i = 0; i < rec.offsets.size(); ++i)
        out = checked_add(out, checked_mul(h.entries[i], rec.offsets[i]));
    return out;
}

SemilinearSet refine_to_unbounded(const AmbientGroup& g, const SemilinearSet& s) {
    const std::size_t limit = capacity().refinement_limit;
    SemilinearSet out;
    for (const LinearPiece& p : s.pieces) {
        if (!p.bounded()) {
            out.pieces.push_back(p);
            continue;
        }
        // expand the bounded piece into its individual points
        std::size_t count = 1;
        for (std::int64_t m : p.bounds) {
            count *= static_cast<std::size_t>(m + 1);
            if (count > limit) fail_capacity("bounded-piece refinement exceeds the piece limit");
        }
        std::vector<std::int64_t> coeff(p.generators.size(), 0);
        auto emit = [&]() {
            Element x = p.base;
            for (std::size_t j = 0; j < p.generators.size(); ++j)
                x = element_add(g, x, element_scale(g, coeff[j], p.generators[j]));
            out.pieces.push_back(LinearPiece{std::move(x), {}, {}});
        };
        // odometer over the coefficient box
        for (;;) {
            emit();
            std::size_t j = 0;
            while (j < coeff.size() && coeff[j] == p.bounds[j]) coeff[j++] = 0;
            if (j == coeff.size()) break;
            ++coeff[j];
        }
        if (out.pieces.size() > limit)
            fail_capacity("bounded-piece refinement exceeds the piece limit");
    }
    return out;
}

static void require_orthant(const std::vector<Element>& gens, const char* what) {
    for (const Element& b : gens)
        for (std::int64_t v : b.free_coords)
            if (v < 0)
                fail_unsupported(std::string(what) +
                                 ": generator free parts must be nonnegative for exact "
                                 "window-truncated evaluation");
}

std::vector<StructurePart> structure_parts(const AmbientGroup& g, const ColorClass& c) {
    std::vector<StructurePart> parts;
    if (const auto* f = std::get_if<FiniteSet>(&c)) {
        parts.push_back(StructurePart{f->elements, {}});
    } else if (const auto* s = std::get_if<SemilinearSet>(&c)) {
        SemilinearSet refined = refine_to_unbounded(g, *s);
        for (LinearPiece& p : refined.pieces)
            parts.push_back(StructurePart{{std::move(p.base)}, std::move(p.generators)});
    } else if (const auto* fm = std::get_if<FinitePlusMonoid>(&c)) {
        parts.push_back(StructurePart{fm->core.elements, fm->monoid.generators});
    } else if (const auto* tm = std::get_if<TranslatedMonoid>(&c)) {
        parts.push_back(StructurePart{{tm->base}, tm->monoid.generators});
    }
    return parts;
}

// Pruned BFS over base + N0-combinations of generators. Free coordinates only
// ever grow, so states above `hi` can be discarded; torsion cycles terminate
// through the visited set.
static void bfs_collect(const AmbientGroup& g, const StructurePart& part,
                        const std::vector<std::int64_t>& hi,
                        const std::vector<std::array<std::int64_t, 2>>* window_bounds,
                        std::vector<Element>& out) {
    require_orthant(part.generators, "window enumeration");
    const std::size_t limit = capacity().enumeration_limit;
    std::unordered_set<Element, ElementHash> visited;
    std::deque<Element> queue;
    auto below_hi = [&](const Element& x) {
        for (std::size_t i = 0; i < hi.size(); ++i)
            if (x.free_coords[i] > hi[i]) return false;
        return true;
    };
    for (const Element& b : part.bases) {
        if (!element_in_group(g, b)) fail_structural("part base outside ambient group");
        if (!below_hi(b)) continue;
        if (visited.insert(b).second) queue.push_back(b);
    }
    while (!queue.empty()) {
        Element x = std::move(queue.front());
        queue.pop_front();
        bool inside = true;
        if (window_bounds) {
            for (std::size_t i = 0; i < window_bounds->size(); ++i)
                if (x.free_coords[i] < (*window_bounds)[i][0] ||
                    x.free_coords[i] > (*window_bounds)[i][1]) {
                    inside = false;
                    break;
                }
        }
        if (inside) out.push_back(x);
        for (const Element& b : part.generators) {
            Element y = element_add(g, x, b);
            if (!below_hi(y)) continue;
            if (visited.size() >= limit) fail_capacity("window enumeration exceeds capacity");
            if (visited.insert(y).second) queue.push_back(y);
        }
    }
}

void enumerate_part_window(const AmbientGroup& g, const StructurePart& part, const Window& w,
                           std::vector<Element>& out) {
    std::vector<std::int64_t> hi;
    hi.reserve(w.bounds.size());
    for (const auto& b : w.bounds) hi.push_back(b[1]);
    bfs_collect(g, part, hi, &w.bounds, out);
}

bool member_up_to_bound(const AmbientGroup& g, const ColorClass& c, const Element& x,
                        const Window& w) {
    if (!element_in_group(g, x)) fail_structural("membership query outside ambient group");
    if (!window_contains(w, x)) fail_structural("membership query outside the window");
    if (const auto* f = std::get_if<FiniteSet>(&c)) return set_contains(*f, x);
    // search toward x only: prune anything beyond x's free coordinates
    for (const StructurePart& part : structure_parts(g, c)) {
        std::vector<Element> reached;
        bfs_collect(g, part, x.free_coords, nullptr, reached);
        if (std::find(reached.begin(), reached.end(), x) != reached.end()) return true;
    }
    return false;
}

FiniteSet enumerate_window(const AmbientGroup& g, const ColorClass& c, const Window& w) {
    std::vector<Element> out;
    for (const StructurePart& part : structure_parts(g, c)) enumerate_part_window(g, part, w, out);
    return make_finite_set(g, std::move(out));
}

std::pair<ColorTuple, NormalizationRecord> normalize_tuple(const ColorTuple& t) {
    if (!t.ambient.is_integers()) fail_structural("normalize_tuple requires ambient Z");
    NormalizationRecord rec;
    rec.offsets.resize(t.q());
    std::vector<std::size_t> kept;
    std::vector<std::int64_t> shifted_union;
    for (std::size_t i = 0; i < t.q(); ++i) {
        const FiniteSet& a = color_as_finite(t.colors[i]);
        if (a.empty()) fail_structural("normalize_tuple: empty color");
        std::vector<std::int64_t> vals = z_values(a);
        rec.offsets[i] = vals.front(); // sorted, so front is the min
        if (vals.size() == 1) {
            rec.singleton_colors.push_back(i);
            continue;
        }
        kept.push_back(i);
        for (std::int64_t v : vals) shifted_union.push_back(v - vals.front());
    }
    std::int64_t d = 0;
    for (std::int64_t v : shifted_union) d = std::gcd(d, v);
    if (d == 0) d = 1;
    rec.divisor = d;

    std::vector<ColorClass> colors;
    for (std::size_t i : kept) {
        std::vector<std::int64_t> vals = z_values(color_as_finite(t.colors[i]));
        for (auto& v : vals) v = (v - rec.offsets[i]) / d;
        colors.push_back(z_set(std::move(vals)));
    }
    ColorTuple out{integers(), std::move(colors)};
    return {std::move(out), std::move(rec)};
}

} // namespace csl
