#include "csl/sumset.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "csl/config.hpp"
#include "csl/simd.hpp"

namespace csl {

namespace {

// Dense bit vector over an integer interval, origin = value of bit 0.
struct DenseBits {
    std::int64_t origin = 0;
    std::size_t nbits = 0;
    std::vector<std::uint64_t> words;
};

// spans beyond this fall back to the extensional path
constexpr std::int64_t kDenseSpanLimit = std::int64_t{1} << 22;

DenseBits bits_from_values(const std::vector<std::int64_t>& sorted_vals) {
    DenseBits b;
    b.origin = sorted_vals.front();
    b.nbits = static_cast<std::size_t>(sorted_vals.back() - sorted_vals.front()) + 1;
    b.words.assign((b.nbits + 63) / 64, 0);
    for (std::int64_t v : sorted_vals) {
        std::size_t i = static_cast<std::size_t>(v - b.origin);
        b.words[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return b;
}

std::vector<std::int64_t> values_from_bits(const DenseBits& b) {
    std::vector<std::int64_t> out;
    for (std::size_t w = 0; w < b.words.size(); ++w) {
        std::uint64_t word = b.words[w];
        while (word) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(word));
            out.push_back(b.origin + static_cast<std::int64_t>(w * 64 + bit));
            word &= word - 1;
        }
    }
    return out;
}

std::size_t popcount_all(const DenseBits& b) {
    std::size_t n = 0;
    for (std::uint64_t w : b.words) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

DenseBits bits_sum(const DenseBits& a, const DenseBits& b) {
    // iterate set bits of the sparser operand, shift the denser one
    const DenseBits& iter = popcount_all(a) <= popcount_all(b) ? a : b;
    const DenseBits& base = (&iter == &a) ? b : a;
    DenseBits out;
    out.origin = a.origin + b.origin;
    out.nbits = a.nbits + b.nbits - 1;
    out.words.assign(base.words.size() + (iter.nbits - 1) / 64 + 1, 0);
    for (std::size_t w = 0; w < iter.words.size(); ++w) {
        std::uint64_t word = iter.words[w];
        while (word) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(word));
            simd::or_shifted(out.words.data(), base.words.data(), base.words.size(),
                             w * 64 + bit);
            word &= word - 1;
        }
    }
    return out;
}

FiniteSet z_set_sorted(std::vector<std::int64_t> sorted_vals) {
    std::vector<Element> elems;
    elems.reserve(sorted_vals.size());
    for (std::int64_t v : sorted_vals) elems.push_back(z_element(v));
    return FiniteSet{integers(), std::move(elems)};
}

std::int64_t span_of(const FiniteSet& s) {
    return s.elements.back().free_coords[0] - s.elements.front().free_coords[0];
}

FiniteSet minkowski_extensional(const FiniteSet& x, const FiniteSet& y) {
    std::unordered_set<Element, ElementHash> seen;
    seen.reserve(x.size() * y.size());
    for (const Element& a : x.elements)
        for (const Element& b : y.elements) seen.insert(element_add(x.ambient, a, b));
    std::vector<Element> elems(seen.begin(), seen.end());
    std::sort(elems.begin(), elems.end());
    return FiniteSet{x.ambient, std::move(elems)};
}

bool dense_eligible(const FiniteSet& x, const FiniteSet& y) {
    return x.ambient.is_integers() && span_of(x) + span_of(y) < kDenseSpanLimit;
}

DenseBits bits_of(const FiniteSet& s) { return bits_from_values(z_values(s)); }

DenseBits bits_h_fold(const DenseBits& a, std::int64_t h) {
    // square-and-add over the doubling chain of h
    DenseBits acc = a;
    int top = 63 - std::countl_zero(static_cast<std::uint64_t>(h));
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = bits_sum(acc, acc);
        if ((h >> bit) & 1) acc = bits_sum(acc, a);
    }
    return acc;
}

} // namespace

FiniteSet minkowski_sum(const FiniteSet& x, const FiniteSet& y) {
    if (x.ambient != y.ambient) fail_structural("minkowski_sum: ambient groups differ");
    if (x.empty() || y.empty()) fail_structural("minkowski_sum: operands must be nonempty");
    if (dense_eligible(x, y)) return z_set_sorted(values_from_bits(bits_sum(bits_of(x), bits_of(y))));
    return minkowski_extensional(x, y);
}

FiniteSet h_fold(const FiniteSet& a, std::int64_t h) {
    if (h < 0) fail_structural("h_fold: h must be nonnegative");
    if (a.empty()) fail_structural("h_fold: set must be nonempty");
    if (h == 0) return make_finite_set(a.ambient, {identity_of(a.ambient)});
    if (h == 1) return a;
    if (a.ambient.is_integers() && checked_mul(span_of(a), h) < kDenseSpanLimit)
        return z_set_sorted(values_from_bits(bits_h_fold(bits_of(a), h)));
    FiniteSet acc = a;
    int top = 63 - std::countl_zero(static_cast<std::uint64_t>(h));
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = minkowski_sum(acc, acc);
        if ((h >> bit) & 1) acc = minkowski_sum(acc, a);
    }
    return acc;
}

FiniteSet chromatic_sumset(const ColorTuple& t, const HVector& h) {
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    FiniteSet acc = make_finite_set(t.ambient, {identity_of(t.ambient)});
    for (std::size_t i = 0; i < t.q(); ++i) {
        const FiniteSet& color = color_as_finite(t.colors[i]);
        if (h.entries[i] == 0) continue;
        acc = minkowski_sum(acc, h_fold(color, h.entries[i]));
    }
    return acc;
}

FiniteSet intersect_window(const FiniteSet& s, const Window& w) {
    std::vector<Element> kept;
    for (const Element& e : s.elements)
        if (window_contains(w, e)) kept.push_back(e);
    return FiniteSet{s.ambient, std::move(kept)};
}

bool subset_of(const FiniteSet& a, const FiniteSet& b) {
    return std::includes(b.elements.begin(), b.elements.end(), a.elements.begin(),
                         a.elements.end());
}

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b) {
    if (a.ambient != b.ambient) fail_structural("set_union: ambient groups differ");
    std::vector<Element> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                   std::back_inserter(out));
    return FiniteSet{a.ambient, std::move(out)};
}

FiniteSet dilate_translate(const FiniteSet& s, std::int64_t d, const Element& shift) {
    std::vector<Element> out;
    out.reserve(s.size());
    for (const Element& e : s.elements)
        out.push_back(element_add(s.ambient, element_scale(s.ambient, d, e), shift));
    return make_finite_set(s.ambient, std::move(out));
}

namespace {

// h-fold of one color as a union of (finite bases + generated monoid) parts.
std::vector<StructurePart> color_fold_parts(const AmbientGroup& g, const ColorClass& c,
                                            std::int64_t h) {
    if (h == 0) return {StructurePart{{identity_of(g)}, {}}};
    std::vector<StructurePart> parts;
    if (const auto* f = std::get_if<FiniteSet>(&c)) {
        parts.push_back(StructurePart{h_fold(*f, h).elements, {}});
    } else if (const auto* tm = std::get_if<TranslatedMonoid>(&c)) {
        parts.push_back(
            StructurePart{{element_scale(g, h, tm->base)}, tm->monoid.generators});
    } else if (const auto* fm = std::get_if<FinitePlusMonoid>(&c)) {
        parts.push_back(StructurePart{h_fold(fm->core, h).elements, fm->monoid.generators});
    } else {
        const auto& s = std::get<SemilinearSet>(c);
        SemilinearSet refined = refine_to_unbounded(g, s);
        const std::size_t k = refined.pieces.size();
        // hA = union over compositions n1+...+nk = h of sum_j nj*(a_j + M_j)
        std::vector<std::int64_t> comp(k, 0);
        comp[0] = h;
        const std::size_t limit = capacity().enumeration_limit;
        for (;;) {
            Element base = identity_of(g);
            std::vector<Element> gens;
            for (std::size_t j = 0; j < k; ++j) {
                if (comp[j] == 0) continue;
                base = element_add(g, base,
                                   element_scale(g, comp[j], refined.pieces[j].base));
                for (const Element& b : refined.pieces[j].generators) gens.push_back(b);
            }
            std::sort(gens.begin(), gens.end());
            gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
            parts.push_back(StructurePart{{std::move(base)}, std::move(gens)});
            if (parts.size() > limit) fail_capacity("semilinear h-fold exceeds capacity");
            // next composition of h into k nonnegative parts
            if (comp[k - 1] == h) break;
            std::size_t j = 0;
            while (comp[j] == 0) ++j;
            std::int64_t v = comp[j];
            comp[j] = 0;
            comp[0] = v - 1;
            ++comp[j + 1];
        }
    }
    return parts;
}

} // namespace

FiniteSet chromatic_sumset_window(const ColorTuple& t, const HVector& h, const Window& w) {
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    if (tuple_all_finite(t)) return intersect_window(chromatic_sumset(t, h), w);

    std::vector<std::vector<StructurePart>> alts;
    alts.reserve(t.q());
    std::size_t combos = 1;
    for (std::size_t i = 0; i < t.q(); ++i) {
        alts.push_back(color_fold_parts(t.ambient, t.colors[i], h.entries[i]));
        combos *= alts.back().size();
        if (combos > capacity().enumeration_limit)
            fail_capacity("windowed chromatic sumset exceeds capacity");
    }

    std::vector<Element> collected;
    std::vector<std::size_t> pick(t.q(), 0);
    for (;;) {
        StructurePart combined;
        combined.bases = {identity_of(t.ambient)};
        for (std::size_t i = 0; i < t.q(); ++i) {
            const StructurePart& part = alts[i][pick[i]];
            std::vector<Element> bases;
            bases.reserve(combined.bases.size() * part.bases.size());
            for (const Element& a : combined.bases)
                for (const Element& b : part.bases) bases.push_back(element_add(t.ambient, a, b));
            std::sort(bases.begin(), bases.end());
            bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
            combined.bases = std::move(bases);
            combined.generators.insert(combined.generators.end(), part.generators.begin(),
                                       part.generators.end());
        }
        std::sort(combined.generators.begin(), combined.generators.end());
        combined.generators.erase(
            std::unique(combined.generators.begin(), combined.generators.end()),
            combined.generators.end());
        enumerate_part_window(t.ambient, combined, w, collected);

        std::size_t i = 0;
        while (i < t.q() && pick[i] + 1 == alts[i].size()) pick[i++] = 0;
        if (i == t.q()) break;
        ++pick[i];
    }
    return make_finite_set(t.ambient, std::move(collected));
}

} // namespace csl
