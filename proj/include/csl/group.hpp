#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "csl/errors.hpp"

namespace csl {

/// A finitely generated abelian group Z^d x Z/n1 x ... x Z/nk. Every set in
/// the library lives inside one declared ambient group.
struct AmbientGroup {
    std::int64_t free_rank = 0;
    std::vector<std::int64_t> torsion_moduli; // each >= 2

    bool operator==(const AmbientGroup&) const = default;

    std::size_t generator_count() const {
        return static_cast<std::size_t>(free_rank) + torsion_moduli.size();
    }
    bool is_integers() const { return free_rank == 1 && torsion_moduli.empty(); }
};

/// Throws a structural error unless the group description is well formed.
void validate_group(const AmbientGroup& g);

AmbientGroup integers();
AmbientGroup free_abelian(std::int64_t rank);
AmbientGroup cyclic(std::int64_t modulus);

/// A group element. Torsion coordinates are stored reduced into [0, n_i), so
/// equality and ordering are plain coordinatewise comparisons.
struct Element {
    std::vector<std::int64_t> free_coords;
    std::vector<std::int64_t> torsion_coords;

    auto operator<=>(const Element&) const = default;
};

Element identity_of(const AmbientGroup& g);
/// Canonicalizes torsion coordinates and checks shape and coordinate bounds.
Element make_element(const AmbientGroup& g, std::vector<std::int64_t> free,
                     std::vector<std::int64_t> torsion = {});
/// Convenience for ambient Z.
Element z_element(std::int64_t value);
std::int64_t z_value(const Element& x);

bool element_in_group(const AmbientGroup& g, const Element& x);
std::string element_to_string(const AmbientGroup& g, const Element& x);

Element element_add(const AmbientGroup& g, const Element& x, const Element& y);
Element element_neg(const AmbientGroup& g, const Element& x);
/// n*x by exact arithmetic; n may be negative, element_scale(g, 0, x) is the identity.
Element element_scale(const AmbientGroup& g, std::int64_t n, const Element& x);

struct ElementHash {
    std::size_t operator()(const Element& x) const noexcept;
};

/// A homomorphism between ambient groups, given by the images of the source's
/// standard generators. Construction rejects images whose order does not
/// divide the corresponding torsion modulus.
class Homomorphism {
public:
    Homomorphism(AmbientGroup source, AmbientGroup target, std::vector<Element> generator_images);

    const AmbientGroup& source() const { return source_; }
    const AmbientGroup& target() const { return target_; }
    const std::vector<Element>& generator_images() const { return images_; }

private:
    AmbientGroup source_;
    AmbientGroup target_;
    std::vector<Element> images_;
};

Element hom_apply(const Homomorphism& phi, const Element& x);

Homomorphism identity_hom(const AmbientGroup& g);
/// Z -> Z/n reduction.
Homomorphism reduction_hom(std::int64_t modulus);

/// x -> d*x + b with d >= 1.
struct AffineMap {
    std::int64_t dilation = 1;
    Element translation;
};

// Overflow-checked scalar helpers used throughout; violations of the
// configured coordinate bound are capacity errors, never wraparound.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
/// Exact binomial coefficient; overflow is a capacity error.
std::int64_t checked_binomial(std::int64_t n, std::int64_t k);

} // namespace csl
