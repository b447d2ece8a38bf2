#include "csl/covering.hpp"

#include <algorithm>

#include "csl/sumset.hpp"

namespace csl {

std::string to_string(CertStatus s) {
    switch (s) {
        case CertStatus::unverified: return "unverified";
        case CertStatus::verified: return "verified";
        case CertStatus::failed: return "failed";
    }
    return "unverified";
}

CertStatus cert_status_from_string(const std::string& s) {
    if (s == "unverified") return CertStatus::unverified;
    if (s == "verified") return CertStatus::verified;
    if (s == "failed") return CertStatus::failed;
    fail(errc::parse, "unknown certificate status: " + s);
}

std::int64_t lambda_bound(std::int64_t r, std::int64_t k) {
    if (r < 1 || k < 1) fail_structural("lambda_bound requires r, k >= 1");
    return checked_binomial(checked_mul(r + 1, k - 1), k - 1);
}

SimplexCoverPlan simplex_lattice_cover(std::int64_t d, std::int64_t radius, std::int64_t tile) {
    if (d < 1 || radius < 1 || tile < 1) fail_structural("simplex cover needs d, R, t >= 1");
    SimplexCoverPlan plan;
    plan.dimension = d;
    plan.radius = radius;
    plan.tile = tile;
    plan.m_bound = (d * radius) / tile;
    plan.index_count = checked_binomial(plan.m_bound + d, d);

    // u_i = ceil(t*m_i/d) over all m in N0^d with sum <= M
    std::vector<std::int64_t> m(static_cast<std::size_t>(d), 0);
    std::vector<std::vector<std::int64_t>> translates;
    auto emit = [&]() {
        std::vector<std::int64_t> u(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            u[i] = (checked_mul(tile, m[i]) + d - 1) / d;
        translates.push_back(std::move(u));
    };
    // odometer over the simplex of index vectors
    std::int64_t used = 0;
    for (;;) {
        emit();
        std::size_t j = 0;
        while (j < m.size()) {
            if (used < plan.m_bound) {
                ++m[j];
                ++used;
                break;
            }
            used -= m[j];
            m[j] = 0;
            ++j;
        }
        if (j == m.size()) break;
    }
    std::sort(translates.begin(), translates.end());
    translates.erase(std::unique(translates.begin(), translates.end()), translates.end());
    plan.translates = std::move(translates);
    return plan;
}

FiniteSet free_monochrome_cover(std::int64_t k, std::int64_t r, std::int64_t h) {
    if (k < 1 || r < 1 || h < 0) fail_structural("free_monochrome_cover requires k,r >= 1, h >= 0");
    AmbientGroup g = free_abelian(k);
    if (h == 0) return make_finite_set(g, {identity_of(g)});
    if (k == 1) {
        Element e = identity_of(g);
        e.free_coords[0] = checked_mul(r - 1, h);
        return make_finite_set(g, {std::move(e)});
    }
    const std::int64_t d = k - 1;
    SimplexCoverPlan plan = simplex_lattice_cover(d, checked_mul(r, h), h);
    std::vector<Element> cover;
    cover.reserve(plan.translates.size());
    for (const auto& v : plan.translates) {
        // f(v) - (0,...,0,h) where f completes v to coordinate sum rh
        Element y = identity_of(g);
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            y.free_coords[i] = v[i];
            sum = checked_add(sum, v[i]);
        }
        y.free_coords[static_cast<std::size_t>(k - 1)] = checked_mul(r, h) - sum - h;
        cover.push_back(std::move(y));
    }
    return make_finite_set(g, std::move(cover));
}

FiniteSet finite_set_cover(const FiniteSet& a, std::int64_t r, std::int64_t h) {
    if (a.empty()) fail_structural("finite_set_cover: set must be nonempty");
    const std::int64_t k = static_cast<std::int64_t>(a.size());
    FiniteSet free_cover = free_monochrome_cover(k, r, h);
    // project along e_j -> a_j, with A in its ascending enumeration order
    std::vector<Element> cover;
    cover.reserve(free_cover.size());
    for (const Element& y : free_cover.elements) {
        Element x = identity_of(a.ambient);
        for (std::size_t j = 0; j < a.elements.size(); ++j)
            x = element_add(a.ambient, x,
                            element_scale(a.ambient, y.free_coords[j], a.elements[j]));
        cover.push_back(std::move(x));
    }
    return make_finite_set(a.ambient, std::move(cover));
}

FiniteSet lift_colorwise(const std::vector<FiniteSet>& covers) {
    if (covers.empty()) fail_structural("lift_colorwise: need at least one cover");
    FiniteSet acc = covers.front();
    for (std::size_t i = 1; i < covers.size(); ++i) acc = minkowski_sum(acc, covers[i]);
    return acc;
}

CoveringCertificate chromatic_finite_cover(const ColorTuple& t, std::int64_t r, const HVector& h) {
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    if (r < 1) fail_structural("r must be >= 1");
    std::vector<FiniteSet> per_color;
    std::int64_t bound = 1;
    for (std::size_t i = 0; i < t.q(); ++i) {
        const FiniteSet& color = color_as_finite(t.colors[i]);
        per_color.push_back(finite_set_cover(color, r, h.entries[i]));
        bound = checked_mul(bound, lambda_bound(r, static_cast<std::int64_t>(color.size())));
    }
    CoveringCertificate cert;
    cert.tuple = t;
    cert.r = r;
    cert.h = h;
    cert.cover = lift_colorwise(per_color);
    cert.method = "finite";
    cert.bound = bound;
    return cert;
}

static const TranslatedMonoid& as_translated_monoid(const ColorClass& c, std::size_t i) {
    if (const auto* tm = std::get_if<TranslatedMonoid>(&c)) return *tm;
    fail_structural("color " + std::to_string(i + 1) + " is not a translated submonoid");
}

CoveringCertificate submonoid_exact_cover(const ColorTuple& t, std::int64_t r, const HVector& h) {
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    if (r < 1) fail_structural("r must be >= 1");
    Element alpha = identity_of(t.ambient);
    for (std::size_t i = 0; i < t.q(); ++i) {
        const TranslatedMonoid& tm = as_translated_monoid(t.colors[i], i);
        alpha = element_add(t.ambient, alpha, element_scale(t.ambient, h.entries[i], tm.base));
    }
    CoveringCertificate cert;
    cert.tuple = t;
    cert.r = r;
    cert.h = h;
    cert.cover = make_finite_set(t.ambient, {element_scale(t.ambient, r - 1, alpha)});
    cert.method = "submonoid";
    cert.bound = 1;
    cert.equality = true;
    return cert;
}

CoveringCertificate approx_submonoid_cover(const ColorTuple& t,
                                           const std::vector<FiniteSet>& witnesses,
                                           std::int64_t r, const HVector& h, const Window& w) {
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    if (witnesses.size() != t.q()) fail_structural("need one witness set per color");
    if (r < 1) fail_structural("r must be >= 1");

    // window-check M_i + M_i included in F_i + M_i before using the witness
    Window probe = w;
    for (auto& b : probe.bounds) b[0] = std::min<std::int64_t>(b[0], 0);
    for (std::size_t i = 0; i < t.q(); ++i) {
        const TranslatedMonoid& tm = as_translated_monoid(t.colors[i], i);
        const FiniteSet& f = witnesses[i];
        if (f.empty() || f.ambient != t.ambient)
            fail_structural("witness sets must be nonempty subsets of the ambient group");
        ColorClass monoid_class =
            TranslatedMonoid{identity_of(t.ambient), tm.monoid};
        FiniteSet m_window = enumerate_window(t.ambient, monoid_class, probe);
        FiniteSet doubled = intersect_window(minkowski_sum(m_window, m_window), probe);
        Window enlarged = enlarge_window(probe, f);
        for (const Element& x : doubled.elements) {
            bool covered = false;
            for (const Element& fe : f.elements) {
                Element rest = element_add(t.ambient, x, element_neg(t.ambient, fe));
                if (window_contains(enlarged, rest) &&
                    member_up_to_bound(t.ambient, monoid_class, rest, enlarged)) {
                    covered = true;
                    break;
                }
            }
            if (!covered)
                fail(errc::invalid_witness,
                     "witness for color " + std::to_string(i + 1) +
                         " fails M+M in F+M at " + element_to_string(t.ambient, x));
        }
    }

    FiniteSet cover = make_finite_set(t.ambient, {identity_of(t.ambient)});
    std::int64_t bound = 1;
    for (std::size_t i = 0; i < t.q(); ++i) {
        if (h.entries[i] == 0) continue;
        const TranslatedMonoid& tm = std::get<TranslatedMonoid>(t.colors[i]);
        const std::int64_t s = checked_mul(r - 1, h.entries[i]);
        Element shift = element_scale(t.ambient, s, tm.base);
        FiniteSet part = dilate_translate(h_fold(witnesses[i], s), 1, shift);
        cover = minkowski_sum(cover, part);
        const std::int64_t ki = static_cast<std::int64_t>(witnesses[i].size());
        bound = checked_mul(bound, checked_binomial(s + ki - 1, ki - 1));
    }
    CoveringCertificate cert;
    cert.tuple = t;
    cert.r = r;
    cert.h = h;
    cert.cover = std::move(cover);
    cert.method = "approx-submonoid";
    cert.bound = bound;
    cert.window = w;
    return cert;
}

CoveringCertificate finite_plus_monoid_cover(const ColorTuple& t, std::int64_t r,
                                             const HVector& h) {
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    if (r < 1) fail_structural("r must be >= 1");
    std::vector<FiniteSet> per_color;
    std::int64_t bound = 1;
    for (std::size_t i = 0; i < t.q(); ++i) {
        const auto* fm = std::get_if<FinitePlusMonoid>(&t.colors[i]);
        if (!fm)
            fail_structural("color " + std::to_string(i + 1) + " is not finite-plus-monoid");
        per_color.push_back(finite_set_cover(fm->core, r, h.entries[i]));
        bound = checked_mul(bound, lambda_bound(r, static_cast<std::int64_t>(fm->core.size())));
    }
    CoveringCertificate cert;
    cert.tuple = t;
    cert.r = r;
    cert.h = h;
    cert.cover = lift_colorwise(per_color);
    cert.method = "finite-plus-monoid";
    cert.bound = bound;
    return cert;
}

std::int64_t positive_shell_threshold(std::int64_t r, std::int64_t k) {
    return checked_add(checked_mul(r, checked_mul(k - 1, k - 1)), k);
}

FiniteSet positive_shell_cover(const AmbientGroup& g, const std::vector<Element>& f,
                               std::int64_t r, std::int64_t h) {
    const std::int64_t k = static_cast<std::int64_t>(f.size());
    if (k < 1 || r < 1) fail_structural("positive_shell_cover requires k, r >= 1");
    const std::int64_t need = positive_shell_threshold(r, k);
    if (h < need)
        fail_threshold("positive shell cover requires h >= r(k-1)^2+k = " +
                       std::to_string(need) + ", got h = " + std::to_string(h));
    if (k == 1)
        return make_finite_set(g, {element_scale(g, checked_mul(r - 1, h), f[0])});

    const std::int64_t d = k - 1;
    SimplexCoverPlan plan = simplex_lattice_cover(d, checked_mul(r, h), h - d);
    std::vector<Element> cover;
    cover.reserve(plan.translates.size());
    for (const auto& v : plan.translates) {
        // y = f(v) - (1,...,1,h-d) in Z^k, then push through e_i -> f_i
        Element x = identity_of(g);
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            x = element_add(g, x, element_scale(g, v[i] - 1, f[i]));
            sum = checked_add(sum, v[i]);
        }
        const std::int64_t last = checked_mul(r, h) - sum - (h - d);
        x = element_add(g, x, element_scale(g, last, f[static_cast<std::size_t>(k - 1)]));
        cover.push_back(std::move(x));
    }
    return make_finite_set(g, std::move(cover));
}

CoveringCertificate union_linear_cover(const AmbientGroup& g, const SemilinearSet& a,
                                       std::int64_t r, std::int64_t h) {
    SemilinearSet refined = refine_to_unbounded(g, a);
    std::vector<Element> bases;
    bases.reserve(refined.pieces.size());
    for (const LinearPiece& p : refined.pieces) bases.push_back(p.base);
    FiniteSet cover = positive_shell_cover(g, bases, r, h);
    CoveringCertificate cert;
    cert.tuple = make_color_tuple(g, {ColorClass{refined}});
    cert.r = r;
    cert.h = make_h_vector({h});
    cert.cover = std::move(cover);
    cert.method = "semilinear";
    cert.bound = lambda_bound(r, static_cast<std::int64_t>(refined.pieces.size()));
    return cert;
}

CoveringCertificate chromatic_semilinear_cover(const ColorTuple& t, std::int64_t r,
                                               const HVector& h) {
    if (h.size() != t.q()) fail_structural("h vector length does not match tuple");
    if (r < 1) fail_structural("r must be >= 1");
    std::vector<FiniteSet> per_color;
    std::int64_t bound = 1;
    for (std::size_t i = 0; i < t.q(); ++i) {
        const auto* s = std::get_if<SemilinearSet>(&t.colors[i]);
        if (!s) fail_structural("color " + std::to_string(i + 1) + " is not semilinear");
        SemilinearSet refined = refine_to_unbounded(t.ambient, *s);
        const std::int64_t k = static_cast<std::int64_t>(refined.pieces.size());
        const std::int64_t need = positive_shell_threshold(r, k);
        if (h.entries[i] < need)
            fail_threshold("color " + std::to_string(i + 1) + " needs h >= r(k-1)^2+k = " +
                           std::to_string(need) + ", got h = " + std::to_string(h.entries[i]));
        std::vector<Element> bases;
        for (const LinearPiece& p : refined.pieces) bases.push_back(p.base);
        per_color.push_back(positive_shell_cover(t.ambient, bases, r, h.entries[i]));
        bound = checked_mul(bound, lambda_bound(r, k));
    }
    CoveringCertificate cert;
    cert.tuple = t;
    cert.r = r;
    cert.h = h;
    cert.cover = lift_colorwise(per_color);
    cert.method = "semilinear";
    cert.bound = bound;
    return cert;
}

CoveringCertificate inhomogeneous_cover(const CoveringCertificate& base, const FiniteSet& b,
                                        std::int64_t r) {
    if (base.status != CertStatus::verified)
        fail_structural("inhomogeneous_cover requires a verified base certificate");
    if (r != base.r) fail_structural("inhomogeneous_cover: r must match the base certificate");
    if (b.empty()) fail_structural("inhomogeneous_cover: B must be nonempty");
    if (b.ambient != base.tuple.ambient) fail_structural("B lives in a different ambient group");
    FiniteSet z = finite_set_cover(b, r, 1);
    CoveringCertificate cert;
    cert.tuple = base.tuple;
    cert.r = r;
    cert.h = base.h;
    cert.cover = minkowski_sum(base.cover, z);
    cert.method = "inhomogeneous";
    cert.bound = checked_mul(base.bound, lambda_bound(r, static_cast<std::int64_t>(b.size())));
    cert.window = base.window;
    cert.inhomogeneous_base = b;
    return cert;
}

CoveringCertificate transport_hom(const CoveringCertificate& cert, const Homomorphism& phi) {
    if (cert.status != CertStatus::verified)
        fail_structural("transport requires a verified certificate");
    if (cert.layer_threshold || cert.inhomogeneous_base)
        fail_unsupported("layer and inhomogeneous certificates cannot be transported");
    if (phi.source() != cert.tuple.ambient)
        fail_structural("homomorphism source does not match the certificate's ambient group");
    std::vector<ColorClass> colors;
    for (const ColorClass& c : cert.tuple.colors) {
        const FiniteSet& a = color_as_finite(c);
        std::vector<Element> imgs;
        imgs.reserve(a.size());
        for (const Element& e : a.elements) imgs.push_back(hom_apply(phi, e));
        colors.push_back(make_finite_set(phi.target(), std::move(imgs)));
    }
    std::vector<Element> ximgs;
    ximgs.reserve(cert.cover.size());
    for (const Element& e : cert.cover.elements) ximgs.push_back(hom_apply(phi, e));

    CoveringCertificate out;
    out.tuple = make_color_tuple(phi.target(), std::move(colors));
    out.r = cert.r;
    out.h = cert.h;
    out.cover = make_finite_set(phi.target(), std::move(ximgs));
    out.method = cert.method + "+hom";
    out.bound = cert.bound;
    out.equality = cert.equality;
    return out;
}

static ColorClass affine_color(const AmbientGroup& g, const ColorClass& c, std::int64_t d,
                               const Element& shift) {
    auto scale_gens = [&](const std::vector<Element>& gens) {
        std::vector<Element> out;
        out.reserve(gens.size());
        for (const Element& b : gens) out.push_back(element_scale(g, d, b));
        return out;
    };
    if (const auto* f = std::get_if<FiniteSet>(&c)) return dilate_translate(*f, d, shift);
    if (const auto* tm = std::get_if<TranslatedMonoid>(&c))
        return TranslatedMonoid{element_add(g, element_scale(g, d, tm->base), shift),
                                MonoidDesc{g, scale_gens(tm->monoid.generators)}};
    if (const auto* fm = std::get_if<FinitePlusMonoid>(&c))
        return FinitePlusMonoid{dilate_translate(fm->core, d, shift),
                                MonoidDesc{g, scale_gens(fm->monoid.generators)}};
    const auto& s = std::get<SemilinearSet>(c);
    SemilinearSet out;
    for (const LinearPiece& p : s.pieces)
        out.pieces.push_back(LinearPiece{element_add(g, element_scale(g, d, p.base), shift),
                                         scale_gens(p.generators), p.bounds});
    return out;
}

CoveringCertificate transport_affine(const CoveringCertificate& cert, std::int64_t d,
                                     const std::vector<Element>& b) {
    if (cert.status != CertStatus::verified)
        fail_structural("transport requires a verified certificate");
    if (cert.layer_threshold || cert.inhomogeneous_base)
        fail_unsupported("layer and inhomogeneous certificates cannot be transported");
    if (d < 1) fail_structural("affine transport requires dilation d >= 1");
    if (b.size() != cert.tuple.q()) fail_structural("need one translation per color");
    const AmbientGroup& g = cert.tuple.ambient;

    Element beta = identity_of(g);
    for (std::size_t i = 0; i < b.size(); ++i)
        beta = element_add(g, beta, element_scale(g, cert.h.entries[i], b[i]));

    std::vector<ColorClass> colors;
    for (std::size_t i = 0; i < cert.tuple.q(); ++i)
        colors.push_back(affine_color(g, cert.tuple.colors[i], d, b[i]));

    CoveringCertificate out;
    out.tuple = make_color_tuple(g, std::move(colors));
    out.r = cert.r;
    out.h = cert.h;
    out.cover = dilate_translate(cert.cover, d, element_scale(g, cert.r - 1, beta));
    out.method = cert.method + "+affine";
    out.bound = cert.bound;
    out.equality = cert.equality;
    if (cert.window) {
        // hull of the window image under x -> d*x + beta and x -> d*x + r*beta
        Window w = *cert.window;
        for (std::size_t c = 0; c < w.bounds.size(); ++c) {
            const std::int64_t s1 = beta.free_coords[c];
            const std::int64_t s2 = checked_mul(cert.r, beta.free_coords[c]);
            w.bounds[c][0] = checked_add(checked_mul(d, w.bounds[c][0]), std::min(s1, s2));
            w.bounds[c][1] = checked_add(checked_mul(d, w.bounds[c][1]), std::max(s1, s2));
        }
        out.window = w;
    }
    return out;
}

} // namespace csl
