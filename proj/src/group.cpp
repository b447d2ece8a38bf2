#include "csl/group.hpp"

#include <sstream>

#include "csl/config.hpp"

namespace csl {

void validate_group(const AmbientGroup& g) {
    if (g.free_rank < 0) fail_structural("free_rank must be nonnegative");
    for (std::int64_t n : g.torsion_moduli)
        if (n < 2) fail_structural("torsion moduli must be >= 2");
}

AmbientGroup integers() { return AmbientGroup{1, {}}; }
AmbientGroup free_abelian(std::int64_t rank) { return AmbientGroup{rank, {}}; }
AmbientGroup cyclic(std::int64_t modulus) { return AmbientGroup{0, {modulus}}; }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail_capacity("integer overflow in addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail_capacity("integer overflow in multiplication");
    return r;
}

std::int64_t checked_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // result * (n-k+i) is divisible by i at every step
        result = checked_mul(result, n - k + i) / i;
    }
    return result;
}

static std::int64_t check_coord(std::int64_t v) {
    const std::int64_t limit = capacity().coordinate_limit;
    if (v > limit || v < -limit) fail_capacity("coordinate magnitude exceeds configured limit");
    return v;
}

static std::int64_t reduce_mod(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

Element identity_of(const AmbientGroup& g) {
    Element e;
    e.free_coords.assign(static_cast<std::size_t>(g.free_rank), 0);
    e.torsion_coords.assign(g.torsion_moduli.size(), 0);
    return e;
}

Element make_element(const AmbientGroup& g, std::vector<std::int64_t> free,
                     std::vector<std::int64_t> torsion) {
    if (free.size() != static_cast<std::size_t>(g.free_rank) ||
        torsion.size() != g.torsion_moduli.size())
        fail_structural("element coordinate count does not match ambient group");
    for (std::int64_t& v : free) v = check_coord(v);
    for (std::size_t i = 0; i < torsion.size(); ++i)
        torsion[i] = reduce_mod(torsion[i], g.torsion_moduli[i]);
    return Element{std::move(free), std::move(torsion)};
}

Element z_element(std::int64_t value) { return Element{{value}, {}}; }

std::int64_t z_value(const Element& x) {
    if (x.free_coords.size() != 1 || !x.torsion_coords.empty())
        fail_structural("element is not an integer");
    return x.free_coords[0];
}

bool element_in_group(const AmbientGroup& g, const Element& x) {
    if (x.free_coords.size() != static_cast<std::size_t>(g.free_rank)) return false;
    if (x.torsion_coords.size() != g.torsion_moduli.size()) return false;
    for (std::size_t i = 0; i < x.torsion_coords.size(); ++i)
        if (x.torsion_coords[i] < 0 || x.torsion_coords[i] >= g.torsion_moduli[i]) return false;
    return true;
}

std::string element_to_string(const AmbientGroup& g, const Element& x) {
    std::ostringstream os;
    if (g.is_integers()) {
        os << x.free_coords[0];
        return os.str();
    }
    os << "(";
    for (std::size_t i = 0; i < x.free_coords.size(); ++i)
        os << (i ? "," : "") << x.free_coords[i];
    if (!x.torsion_coords.empty()) {
        os << ";";
        for (std::size_t i = 0; i < x.torsion_coords.size(); ++i)
            os << (i ? "," : "") << x.torsion_coords[i];
    }
    os << ")";
    return os.str();
}

static void require_member(const AmbientGroup& g, const Element& x) {
    if (!element_in_group(g, x)) fail_structural("element does not belong to the ambient group");
}

Element element_add(const AmbientGroup& g, const Element& x, const Element& y) {
    require_member(g, x);
    require_member(g, y);
    Element r = x;
    for (std::size_t i = 0; i < r.free_coords.size(); ++i)
        r.free_coords[i] = check_coord(checked_add(r.free_coords[i], y.free_coords[i]));
    for (std::size_t i = 0; i < r.torsion_coords.size(); ++i)
        r.torsion_coords[i] =
            reduce_mod(r.torsion_coords[i] + y.torsion_coords[i], g.torsion_moduli[i]);
    return r;
}

Element element_neg(const AmbientGroup& g, const Element& x) {
    require_member(g, x);
    Element r = x;
    for (auto& v : r.free_coords) v = -v;
    for (std::size_t i = 0; i < r.torsion_coords.size(); ++i)
        r.torsion_coords[i] = reduce_mod(-r.torsion_coords[i], g.torsion_moduli[i]);
    return r;
}

Element element_scale(const AmbientGroup& g, std::int64_t n, const Element& x) {
    require_member(g, x);
    Element r = x;
    for (auto& v : r.free_coords) v = check_coord(checked_mul(n, v));
    for (std::size_t i = 0; i < r.torsion_coords.size(); ++i) {
        const std::int64_t m = g.torsion_moduli[i];
        r.torsion_coords[i] = reduce_mod(reduce_mod(n, m) * r.torsion_coords[i], m);
    }
    return r;
}

std::size_t ElementHash::operator()(const Element& x) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    for (std::int64_t v : x.free_coords) mix(static_cast<std::uint64_t>(v));
    for (std::int64_t v : x.torsion_coords) mix(static_cast<std::uint64_t>(v) + 0x9e3779b9ULL);
    return static_cast<std::size_t>(h);
}

Homomorphism::Homomorphism(AmbientGroup source, AmbientGroup target,
                           std::vector<Element> generator_images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(generator_images)) {
    validate_group(source_);
    validate_group(target_);
    if (images_.size() != source_.generator_count())
        fail_structural("homomorphism needs one image per source generator");
    for (const Element& img : images_) require_member(target_, img);
    // a torsion generator of order n must map to an element of order dividing n
    for (std::size_t i = 0; i < source_.torsion_moduli.size(); ++i) {
        const Element& img = images_[static_cast<std::size_t>(source_.free_rank) + i];
        if (element_scale(target_, source_.torsion_moduli[i], img) != identity_of(target_))
            fail_structural("torsion generator image has incompatible order");
    }
}

Element hom_apply(const Homomorphism& phi, const Element& x) {
    if (!element_in_group(phi.source(), x))
        fail_structural("hom_apply: element outside the source group");
    Element acc = identity_of(phi.target());
    const auto& imgs = phi.generator_images();
    std::size_t idx = 0;
    for (std::int64_t c : x.free_coords)
        acc = element_add(phi.target(), acc, element_scale(phi.target(), c, imgs[idx++]));
    for (std::int64_t c : x.torsion_coords)
        acc = element_add(phi.target(), acc, element_scale(phi.target(), c, imgs[idx++]));
    return acc;
}

Homomorphism identity_hom(const AmbientGroup& g) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < g.generator_count(); ++i) {
        Element e = identity_of(g);
        if (i < static_cast<std::size_t>(g.free_rank))
            e.free_coords[i] = 1;
        else
            e.torsion_coords[i - static_cast<std::size_t>(g.free_rank)] = 1;
        images.push_back(std::move(e));
    }
    return Homomorphism(g, g, std::move(images));
}

Homomorphism reduction_hom(std::int64_t modulus) {
    AmbientGroup target = cyclic(modulus);
    return Homomorphism(integers(), target, {make_element(target, {}, {1})});
}

} // namespace csl
