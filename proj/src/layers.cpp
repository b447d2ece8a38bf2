#include "csl/layers.hpp"

#include <algorithm>
#include <numeric>

#include "csl/config.hpp"
#include "csl/simd.hpp"
#include "csl/sumset.hpp"

namespace csl {

std::uint64_t RepProfile::total_mass() const {
    std::uint64_t mass = 0;
    for (const auto& [n, cnt] : counts) mass += cnt;
    return mass;
}

bool same_shape(const LayerStructure& a, const LayerStructure& b) {
    return a.C == b.C && a.c == b.c && a.d == b.d && a.D == b.D;
}

namespace {

// dense count array: counts[i] is the multiplicity of value origin + i
struct DensePoly {
    std::int64_t origin = 0;
    std::vector<std::uint64_t> counts;
};

void check_dp_capacity(const ColorTuple& t, const HVector& h) {
    // reject instances whose counts could overflow or whose rows are huge
    std::int64_t mass = 1;
    std::int64_t total_span = 0;
    for (std::size_t i = 0; i < t.q(); ++i) {
        const FiniteSet& a = color_as_finite(t.colors[i]);
        const std::int64_t k = static_cast<std::int64_t>(a.size());
        mass = checked_mul(mass, checked_binomial(k + h.entries[i] - 1, h.entries[i]));
        std::vector<std::int64_t> vals = z_values(a);
        total_span =
            checked_add(total_span, checked_mul(h.entries[i], vals.back() - vals.front()));
    }
    if (static_cast<std::size_t>(total_span) + 1 > capacity().enumeration_limit)
        fail_capacity("representation DP support exceeds capacity");
}

// counts of multisets of size h from vals, indexed by (sum - h*min)
DensePoly color_multiset_poly(const std::vector<std::int64_t>& vals, std::int64_t h) {
    const std::int64_t lo = vals.front();
    const std::int64_t span = vals.back() - lo;
    const std::size_t width = static_cast<std::size_t>(checked_mul(h, span)) + 1;
    std::vector<std::vector<std::uint64_t>> rows(static_cast<std::size_t>(h) + 1);
    for (std::size_t m = 0; m <= static_cast<std::size_t>(h); ++m)
        rows[m].assign(m == 0 ? 1 : width, 0);
    rows[0][0] = 1;
    for (std::int64_t v : vals) {
        const std::size_t shift = static_cast<std::size_t>(v - lo);
        for (std::size_t m = 1; m <= static_cast<std::size_t>(h); ++m) {
            const std::size_t prev_len =
                std::min(rows[m - 1].size(), static_cast<std::size_t>((m - 1) * span) + 1);
            simd::add_u64(rows[m].data() + shift, rows[m - 1].data(), prev_len);
        }
    }
    DensePoly p;
    p.origin = checked_mul(h, lo);
    p.counts = std::move(rows[static_cast<std::size_t>(h)]);
    return p;
}

DensePoly convolve(const DensePoly& a, const DensePoly& b) {
    DensePoly out;
    out.origin = checked_add(a.origin, b.origin);
    out.counts.assign(a.counts.size() + b.counts.size() - 1, 0);
    for (std::size_t i = 0; i < a.counts.size(); ++i)
        if (a.counts[i])
            simd::axpy_u64(out.counts.data() + i, b.counts.data(), b.counts.size(), a.counts[i]);
    return out;
}

} // namespace

RepProfile representation_function(const ColorTuple& t, const HVector& h) {
    if (!t.ambient.is_integers()) fail_structural("representation_function requires ambient Z");
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    check_dp_capacity(t, h);
    DensePoly acc;
    acc.counts = {1};
    for (std::size_t i = 0; i < t.q(); ++i) {
        const FiniteSet& a = color_as_finite(t.colors[i]);
        if (h.entries[i] == 0) continue;
        acc = convolve(acc, color_multiset_poly(z_values(a), h.entries[i]));
    }
    RepProfile profile;
    profile.h = h;
    for (std::size_t i = 0; i < acc.counts.size(); ++i)
        if (acc.counts[i])
            profile.counts[acc.origin + static_cast<std::int64_t>(i)] = acc.counts[i];
    return profile;
}

FiniteSet threshold_layer(const ColorTuple& t, const HVector& h, std::int64_t thr) {
    if (thr < 1) fail_structural("threshold must be >= 1");
    RepProfile profile = representation_function(t, h);
    std::vector<std::int64_t> vals;
    for (const auto& [n, cnt] : profile.counts)
        if (cnt >= static_cast<std::uint64_t>(thr)) vals.push_back(n);
    return z_set(std::move(vals));
}

LayerStructure decompose_layer(const FiniteSet& s, std::int64_t H) {
    if (s.empty()) fail_structural("decompose_layer: set must be nonempty");
    std::vector<std::int64_t> vals = z_values(s);
    if (vals.front() < 0 || vals.back() > H)
        fail_structural("decompose_layer: set must lie inside [0, H]");
    LayerStructure out;
    out.H = H;
    const std::int64_t mid = H / 2;
    auto it = std::lower_bound(vals.begin(), vals.end(), mid);
    if (it == vals.end() || *it != mid) return out; // no central run, not stabilized
    std::size_t lo = static_cast<std::size_t>(it - vals.begin());
    std::size_t hi = lo;
    while (lo > 0 && vals[lo - 1] == vals[lo] - 1) --lo;
    while (hi + 1 < vals.size() && vals[hi + 1] == vals[hi] + 1) ++hi;
    out.c = vals[lo];
    out.d = H - vals[hi];
    out.C.assign(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(lo));
    for (std::size_t j = vals.size(); j-- > hi + 1;) out.D.push_back(H - vals[j]);
    std::sort(out.D.begin(), out.D.end());
    out.stabilized = true;
    return out;
}

std::int64_t layer_height(const ColorTuple& t, const HVector& h) {
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    std::int64_t H = 0;
    for (std::size_t i = 0; i < t.q(); ++i) {
        std::vector<std::int64_t> vals = z_values(color_as_finite(t.colors[i]));
        H = checked_add(H, checked_mul(h.entries[i], vals.back()));
    }
    return H;
}

static void require_normalized(const ColorTuple& t) {
    if (!t.ambient.is_integers()) fail_structural("layer operations require ambient Z");
    std::int64_t g = 0;
    for (const ColorClass& c : t.colors) {
        std::vector<std::int64_t> vals = z_values(color_as_finite(c));
        if (vals.front() != 0) fail_structural("tuple is not normalized: color min must be 0");
        if (vals.back() < 1) fail_structural("tuple is not normalized: color max must be >= 1");
        for (std::int64_t v : vals) g = std::gcd(g, v);
    }
    if (g != 1) fail_structural("tuple is not normalized: joint gcd must be 1");
}

LayerStructure detect_stabilization(const ColorTuple& t, std::int64_t thr, const HGrid& grid) {
    require_normalized(t);
    if (grid.lo.size() != t.q() || grid.hi.size() != t.q())
        fail_structural("grid dimension does not match tuple");
    if (!h_preceq(grid.lo, grid.hi)) fail_structural("grid lower corner must precede upper");

    std::vector<HVector> points;
    std::vector<LayerStructure> decomps;
    HVector cur = grid.lo;
    for (;;) {
        FiniteSet layer = threshold_layer(t, cur, thr);
        if (layer.empty()) {
            LayerStructure empty;
            empty.H = layer_height(t, cur);
            decomps.push_back(empty); // not stabilized
        } else {
            decomps.push_back(decompose_layer(layer, layer_height(t, cur)));
        }
        points.push_back(cur);
        std::size_t i = 0;
        while (i < t.q() && cur.entries[i] == grid.hi.entries[i])
            cur.entries[i] = grid.lo.entries[i], ++i;
        if (i == t.q()) break;
        ++cur.entries[i];
    }

    const LayerStructure& reference = decomps.back(); // upper corner is last
    LayerStructure result;
    result.threshold = thr;
    if (!reference.stabilized) return result; // inconclusive

    auto grid_point_good = [&](std::size_t j) {
        return decomps[j].stabilized && same_shape(decomps[j], reference);
    };
    std::optional<std::size_t> best;
    for (std::size_t cand = 0; cand < points.size(); ++cand) {
        bool all_above_agree = true;
        for (std::size_t j = 0; j < points.size() && all_above_agree; ++j)
            if (h_preceq(points[cand], points[j]) && !grid_point_good(j)) all_above_agree = false;
        if (!all_above_agree) continue;
        if (!best) {
            best = cand;
            continue;
        }
        auto key = [&](std::size_t idx) {
            std::int64_t sum = std::accumulate(points[idx].entries.begin(),
                                               points[idx].entries.end(), std::int64_t{0});
            return std::make_pair(sum, points[idx].entries);
        };
        if (key(cand) < key(*best)) best = cand;
    }
    if (!best) return result;
    result = reference;
    result.threshold = thr;
    result.h_t = points[*best];
    result.H = layer_height(t, points[*best]);
    return result;
}

FiniteSet interval_cover_translates(std::int64_t c, std::int64_t d, std::int64_t H,
                                    std::int64_t r) {
    if (c < 0 || d < 0 || r < 1) fail_structural("interval cover needs c,d >= 0 and r >= 1");
    const std::int64_t L = H - c - d + 1;
    if (L < 1) fail_threshold("interval cover needs L = H-c-d+1 >= 1");
    if (H < checked_mul(r, c + d) - r)
        fail_threshold("interval cover requires H >= r(c+d)-r = " +
                       std::to_string(checked_mul(r, c + d) - r));
    std::vector<std::int64_t> xs;
    for (std::int64_t j = 0; j <= r; ++j) xs.push_back(checked_mul(j, L));
    // the translated intervals tile [c, c+(r+1)L-1], which must reach rH-d
    if (checked_mul(r, H) - d > c + checked_mul(r + 1, L) - 1)
        fail_structural("interval cover arithmetic check failed");
    return z_set(std::move(xs));
}

CoveringCertificate layer_cover(const ColorTuple& t, std::int64_t thr, std::int64_t r,
                                const HVector& h) {
    require_normalized(t);
    if (r < 1) fail_structural("r must be >= 1");
    const std::int64_t H = layer_height(t, h);
    FiniteSet s_h = threshold_layer(t, h, thr);
    FiniteSet s_rh = threshold_layer(t, h_scaled(h, r), thr);
    if (s_h.empty() || s_rh.empty())
        fail(errc::not_ready, "layer is empty at this h; structure not stabilized");
    LayerStructure at_h = decompose_layer(s_h, H);
    LayerStructure at_rh = decompose_layer(s_rh, checked_mul(r, H));
    if (!at_h.stabilized || !at_rh.stabilized || !same_shape(at_h, at_rh))
        fail(errc::not_ready,
             "layer structure not stabilized at h and r*h; increase h");
    const std::int64_t cd = at_h.c + at_h.d;
    if (H < std::max(checked_mul(r, cd) - r, cd))
        fail_threshold("layer cover requires H >= max{r(c+d)-r, c+d} = " +
                       std::to_string(std::max(checked_mul(r, cd) - r, cd)));
    const std::int64_t L = H - cd + 1;
    std::vector<std::int64_t> xs;
    for (std::int64_t j = 0; j <= r; ++j) xs.push_back(checked_mul(j, L));
    xs.push_back(checked_mul(r - 1, H));
    CoveringCertificate cert;
    cert.tuple = t;
    cert.r = r;
    cert.h = h;
    cert.cover = z_set(std::move(xs));
    cert.method = "layer";
    cert.bound = r + 2;
    cert.layer_threshold = thr;
    return cert;
}

CoveringCertificate layer_cover_general(const ColorTuple& t, std::int64_t thr, std::int64_t r,
                                        const HVector& h) {
    if (!t.ambient.is_integers()) fail_structural("layer operations require ambient Z");
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    if (r < 1 || thr < 1) fail_structural("r and t must be >= 1");
    bool all_singletons = true;
    for (const ColorClass& c : t.colors)
        if (color_as_finite(c).size() > 1) all_singletons = false;

    if (all_singletons) {
        std::int64_t shift = 0;
        for (std::size_t i = 0; i < t.q(); ++i)
            shift = checked_add(
                shift, checked_mul(h.entries[i], z_values(color_as_finite(t.colors[i]))[0]));
        CoveringCertificate cert;
        cert.tuple = t;
        cert.r = r;
        cert.h = h;
        cert.cover = z_set({thr == 1 ? checked_mul(r - 1, shift) : 0});
        cert.method = "layer";
        cert.bound = r + 2;
        cert.layer_threshold = thr;
        return cert;
    }

    auto [normalized, rec] = normalize_tuple(t);
    std::vector<std::int64_t> h_kept;
    for (std::size_t i = 0; i < t.q(); ++i)
        if (std::find(rec.singleton_colors.begin(), rec.singleton_colors.end(), i) ==
            rec.singleton_colors.end())
            h_kept.push_back(h.entries[i]);
    CoveringCertificate base = layer_cover(normalized, thr, r, make_h_vector(h_kept));

    // X = d*Y + (r-1) * sum_i h_i * min(A_i)
    std::int64_t shift = 0;
    for (std::size_t i = 0; i < t.q(); ++i)
        shift = checked_add(shift, checked_mul(h.entries[i], rec.offsets[i]));
    CoveringCertificate cert;
    cert.tuple = t;
    cert.r = r;
    cert.h = h;
    cert.cover =
        dilate_translate(base.cover, rec.divisor, z_element(checked_mul(r - 1, shift)));
    cert.method = "layer";
    cert.bound = r + 2;
    cert.layer_threshold = thr;
    return cert;
}

} // namespace csl
