#include "csl/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "csl/config.hpp"
#include "csl/sumset.hpp"

namespace csl {

namespace {

// first element of lhs missing from rhs, if any
std::optional<Element> first_missing(const FiniteSet& lhs, const FiniteSet& rhs) {
    for (const Element& e : lhs.elements)
        if (!set_contains(rhs, e)) return e;
    return std::nullopt;
}

VerificationReport check_inclusion(const std::string& what, const FiniteSet& lhs,
                                   const FiniteSet& rhs, const std::optional<Window>& w) {
    VerificationReport report;
    report.description = what;
    report.window = w;
    report.lhs_count = lhs.size();
    report.rhs_count = rhs.size();
    report.counterexample = first_missing(lhs, rhs);
    report.pass = !report.counterexample.has_value();
    return report;
}

} // namespace

VerificationReport verify_cover(const ColorTuple& t, std::int64_t r, const HVector& h,
                                const FiniteSet& x, const std::optional<Window>& w) {
    if (x.empty()) fail_structural("verify_cover: X must be nonempty");
    const HVector rh = h_scaled(h, r);
    if (!w) {
        if (!tuple_all_finite(t))
            fail_unsupported("structured tuples require a verification window");
        FiniteSet lhs = chromatic_sumset(t, rh);
        FiniteSet rhs = minkowski_sum(x, chromatic_sumset(t, h));
        return check_inclusion("(rh).A in X + h.A", lhs, rhs, std::nullopt);
    }
    FiniteSet lhs = chromatic_sumset_window(t, rh, *w);
    Window enlarged = enlarge_window(*w, x);
    FiniteSet base = chromatic_sumset_window(t, h, enlarged);
    FiniteSet rhs = minkowski_sum(x, base);
    return check_inclusion("(rh).A in X + h.A within window", lhs, rhs, w);
}

namespace {

VerificationReport verify_layer_cert(const CoveringCertificate& cert) {
    const std::int64_t thr = *cert.layer_threshold;
    FiniteSet lhs = threshold_layer(cert.tuple, h_scaled(cert.h, cert.r), thr);
    FiniteSet base = threshold_layer(cert.tuple, cert.h, thr);
    VerificationReport report;
    report.description = "layer((rh).A, t) in X + layer(h.A, t)";
    report.lhs_count = lhs.size();
    if (lhs.empty()) {
        report.pass = true;
        return report;
    }
    if (base.empty()) {
        report.pass = false;
        report.counterexample = lhs.elements.front();
        return report;
    }
    FiniteSet rhs = minkowski_sum(cert.cover, base);
    return check_inclusion(report.description, lhs, rhs, std::nullopt);
}

VerificationReport verify_inhomogeneous_cert(const CoveringCertificate& cert,
                                             const std::optional<Window>& w) {
    const FiniteSet& b = *cert.inhomogeneous_base;
    const ColorTuple& t = cert.tuple;
    const HVector rh = h_scaled(cert.h, cert.r);
    FiniteSet rb = h_fold(b, cert.r);
    if (!w) {
        if (!tuple_all_finite(t))
            fail_unsupported("structured tuples require a verification window");
        FiniteSet lhs = minkowski_sum(chromatic_sumset(t, rh), rb);
        FiniteSet rhs =
            minkowski_sum(cert.cover, minkowski_sum(chromatic_sumset(t, cert.h), b));
        return check_inclusion("r(h.A + B) in Y + h.A + B", lhs, rhs, std::nullopt);
    }
    FiniteSet lhs = intersect_window(
        minkowski_sum(chromatic_sumset_window(t, rh, enlarge_window(*w, rb)), rb), *w);
    Window rhs_window = enlarge_window(enlarge_window(*w, cert.cover), b);
    FiniteSet rhs = minkowski_sum(
        cert.cover, minkowski_sum(chromatic_sumset_window(t, cert.h, rhs_window), b));
    return check_inclusion("r(h.A + B) in Y + h.A + B within window", lhs, rhs, w);
}

} // namespace

VerificationReport verify_certificate(CoveringCertificate& cert, const std::optional<Window>& w) {
    std::optional<Window> window = w ? w : cert.window;
    VerificationReport report;
    if (cert.layer_threshold) {
        report = verify_layer_cert(cert);
    } else if (cert.inhomogeneous_base) {
        report = verify_inhomogeneous_cert(cert, window);
    } else {
        report = verify_cover(cert.tuple, cert.r, cert.h, cert.cover, window);
        if (report.pass && cert.equality) {
            // submonoid certificates assert window-relative set equality
            if (!window) fail_unsupported("equality certificates require a verification window");
            FiniteSet lhs = chromatic_sumset_window(cert.tuple, h_scaled(cert.h, cert.r), *window);
            FiniteSet base =
                chromatic_sumset_window(cert.tuple, cert.h, enlarge_window(*window, cert.cover));
            FiniteSet rhs = intersect_window(minkowski_sum(cert.cover, base), *window);
            report.equality_checked = true;
            report.equality_holds = lhs.elements == rhs.elements;
            if (!report.equality_holds) {
                report.pass = false;
                for (const Element& e : rhs.elements)
                    if (!set_contains(lhs, e)) {
                        report.counterexample = e;
                        break;
                    }
            }
        }
    }
    cert.status = report.pass ? CertStatus::verified : CertStatus::failed;
    if (window) cert.window = window;
    return report;
}

namespace {

// bitset over the indices of S
struct Mask {
    std::vector<std::uint64_t> words;

    static Mask zeros(std::size_t n) { return Mask{std::vector<std::uint64_t>((n + 63) / 64, 0)}; }
    void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool none() const {
        for (auto w : words)
            if (w) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool intersects(const Mask& o) const {
        for (std::size_t i = 0; i < words.size(); ++i)
            if (words[i] & o.words[i]) return true;
        return false;
    }
    std::size_t count_and(const Mask& o) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < words.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(words[i] & o.words[i]));
        return n;
    }
    void subtract(const Mask& o) {
        for (std::size_t i = 0; i < words.size(); ++i) words[i] &= ~o.words[i];
    }
};

template <typename F>
void for_each_set(const Mask& m, F f) {
    for (std::size_t w = 0; w < m.words.size(); ++w) {
        std::uint64_t word = m.words[w];
        while (word) {
            f(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
}

struct CoverSearch {
    std::vector<Mask> candidate_cover;            // per candidate, covered S-indices
    std::vector<std::vector<std::uint32_t>> covering_of; // per S-index, candidates covering it
    std::size_t max_cover_size = 1;               // largest single-candidate coverage

    // whether some cover of `uncovered` with at most `budget` candidates of
    // index >= min_idx exists
    bool feasible(Mask uncovered, std::size_t budget, std::size_t min_idx) const {
        if (uncovered.none()) return true;
        if (budget == 0) return false;
        if (uncovered.count() > budget * max_cover_size) return false;
        // branch on the uncovered element with the fewest usable candidates
        std::size_t pick = 0;
        std::size_t pick_options = static_cast<std::size_t>(-1);
        for_each_set(uncovered, [&](std::size_t i) {
            std::size_t options = 0;
            for (std::uint32_t c : covering_of[i])
                if (c >= min_idx) ++options;
            if (options < pick_options) {
                pick = i;
                pick_options = options;
            }
        });
        if (pick_options == 0) return false;
        // order candidates by fresh coverage descending, then index ascending
        std::vector<std::pair<std::size_t, std::uint32_t>> order;
        for (std::uint32_t c : covering_of[pick])
            if (c >= min_idx) order.push_back({candidate_cover[c].count_and(uncovered), c});
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (const auto& [fresh, c] : order) {
            Mask next = uncovered;
            next.subtract(candidate_cover[c]);
            if (feasible(std::move(next), budget - 1, min_idx)) return true;
        }
        return false;
    }
};

} // namespace

FiniteSet min_translate_cover(const FiniteSet& s, const FiniteSet& t) {
    if (s.empty() || t.empty()) fail_structural("min_translate_cover: sets must be nonempty");
    if (s.ambient != t.ambient) fail_structural("min_translate_cover: ambient groups differ");
    if (s.size() > capacity().set_cover_limit)
        fail_capacity("min_translate_cover: |S| exceeds the configured limit");
    const AmbientGroup& g = s.ambient;

    // candidate translates {s - t}, ascending
    std::vector<Element> candidates;
    for (const Element& a : s.elements)
        for (const Element& b : t.elements)
            candidates.push_back(element_add(g, a, element_neg(g, b)));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const std::size_t n = s.size();
    CoverSearch search;
    search.candidate_cover.reserve(candidates.size());
    search.covering_of.assign(n, {});
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        Mask m = Mask::zeros(n);
        for (std::size_t i = 0; i < n; ++i) {
            Element rest = element_add(g, s.elements[i], element_neg(g, candidates[c]));
            if (set_contains(t, rest)) {
                m.set(i);
                search.covering_of[i].push_back(static_cast<std::uint32_t>(c));
            }
        }
        search.max_cover_size = std::max(search.max_cover_size, m.count());
        search.candidate_cover.push_back(std::move(m));
    }

    Mask all = Mask::zeros(n);
    for (std::size_t i = 0; i < n; ++i) all.set(i);

    // greedy upper bound: max fresh coverage, ties toward the smaller translate
    std::size_t upper = 0;
    {
        Mask uncovered = all;
        while (!uncovered.none()) {
            std::size_t best_c = 0, best_cov = 0;
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                std::size_t cov = search.candidate_cover[c].count_and(uncovered);
                if (cov > best_cov) {
                    best_cov = cov;
                    best_c = c;
                }
            }
            uncovered.subtract(search.candidate_cover[best_c]);
            ++upper;
        }
    }

    // exact optimum: tighten below the greedy bound
    std::size_t optimum = upper;
    while (optimum > 1 && search.feasible(all, optimum - 1, 0)) --optimum;

    // lexicographically least optimal cover, built smallest element first
    std::vector<Element> chosen;
    Mask uncovered = all;
    std::size_t budget = optimum;
    std::size_t from = 0;
    while (!uncovered.none()) {
        for (std::size_t c = from; c < candidates.size(); ++c) {
            if (!search.candidate_cover[c].intersects(uncovered)) continue;
            Mask next = uncovered;
            next.subtract(search.candidate_cover[c]);
            if (search.feasible(next, budget - 1, c + 1)) {
                chosen.push_back(candidates[c]);
                uncovered = std::move(next);
                --budget;
                from = c + 1;
                break;
            }
        }
    }
    return make_finite_set(g, std::move(chosen));
}

RepProfile brute_rep_function(const ColorTuple& t, const HVector& h) {
    if (!t.ambient.is_integers()) fail_structural("brute_rep_function requires ambient Z");
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    std::int64_t mass = 1;
    for (std::size_t i = 0; i < t.q(); ++i) {
        const std::int64_t k = static_cast<std::int64_t>(color_as_finite(t.colors[i]).size());
        mass = checked_mul(mass, checked_binomial(k + h.entries[i] - 1, h.entries[i]));
    }
    if (static_cast<std::size_t>(mass) > capacity().enumeration_limit)
        fail_capacity("brute-force representation enumeration exceeds capacity");

    // per color, the sums of every weakly increasing h_i-tuple
    std::vector<std::vector<std::int64_t>> color_sums(t.q());
    for (std::size_t i = 0; i < t.q(); ++i) {
        std::vector<std::int64_t> vals = z_values(color_as_finite(t.colors[i]));
        std::vector<std::int64_t>& sums = color_sums[i];
        auto rec = [&](auto&& self, std::size_t start, std::int64_t remaining,
                       std::int64_t acc) -> void {
            if (remaining == 0) {
                sums.push_back(acc);
                return;
            }
            for (std::size_t j = start; j < vals.size(); ++j)
                self(self, j, remaining - 1, checked_add(acc, vals[j]));
        };
        rec(rec, 0, h.entries[i], 0);
    }

    RepProfile profile;
    profile.h = h;
    auto combine = [&](auto&& self, std::size_t color, std::int64_t acc) -> void {
        if (color == t.q()) {
            ++profile.counts[acc];
            return;
        }
        for (std::int64_t v : color_sums[color]) self(self, color + 1, checked_add(acc, v));
    };
    combine(combine, 0, 0);
    return profile;
}

} // namespace csl
