#pragma once

#include <optional>
#include <string>

#include "csl/group.hpp"
#include "csl/set_model.hpp"

namespace csl {

enum class CertStatus { unverified, verified, failed };

std::string to_string(CertStatus s);
CertStatus cert_status_from_string(const std::string& s);

/// Witness that (r h) . A is covered by |X| translates of h . A. Constructors
/// always emit status unverified; the oracle pass upgrades or fails it.
struct CoveringCertificate {
    ColorTuple tuple;
    std::int64_t r = 1;
    HVector h;
    FiniteSet cover; // X_h
    std::string method;
    std::int64_t bound = 0; // the proven size bound for this construction
    CertStatus status = CertStatus::unverified;
    std::optional<Window> window;     // verification window for structured tuples
    bool equality = false;            // submonoid certificates assert window equality
    std::optional<FiniteSet> inhomogeneous_base; // B for inhomogeneous families
    std::optional<std::int64_t> layer_threshold; // t for threshold-layer certificates
};

/// Plan covering the dilated simplex Delta_d(R) by integer translates of the
/// open tile Delta_d(t); translate count is bounded by binom(M+d, d).
struct SimplexCoverPlan {
    std::int64_t dimension = 0;
    std::int64_t radius = 0;
    std::int64_t tile = 0;
    std::int64_t m_bound = 0;                          // M = floor(dR/t)
    std::vector<std::vector<std::int64_t>> translates; // deduplicated
    std::int64_t index_count = 0;                      // binom(M+d, d), pre-dedup
};

/// binom((r+1)(k-1), k-1), the covering constant of the finite and
/// unbounded-linear theorems.
std::int64_t lambda_bound(std::int64_t r, std::int64_t k);

SimplexCoverPlan simplex_lattice_cover(std::int64_t d, std::int64_t radius, std::int64_t tile);

/// Cover of r h B by translates of h B for the standard basis B of Z^k;
/// at most lambda_r(k) translates.
FiniteSet free_monochrome_cover(std::int64_t k, std::int64_t r, std::int64_t h);

/// Cover of r(hA) by translates of hA for one finite set, via the projection
/// of the free cover along e_j -> a_j with A enumerated in ascending order.
FiniteSet finite_set_cover(const FiniteSet& a, std::int64_t r, std::int64_t h);

/// Minkowski sum of per-color covers.
FiniteSet lift_colorwise(const std::vector<FiniteSet>& covers);

CoveringCertificate chromatic_finite_cover(const ColorTuple& t, std::int64_t r, const HVector& h);

/// Exact singleton cover {(r-1) sum h_i a_i} for translated-submonoid tuples;
/// the certificate asserts window-relative equality, not just inclusion.
CoveringCertificate submonoid_exact_cover(const ColorTuple& t, std::int64_t r, const HVector& h);

/// Cover for translated K_i-approximate submonoids; witnesses[i] is the F_i
/// with M_i+M_i included in F_i+M_i, window-checked before use.
CoveringCertificate approx_submonoid_cover(const ColorTuple& t,
                                           const std::vector<FiniteSet>& witnesses,
                                           std::int64_t r, const HVector& h, const Window& w);

CoveringCertificate finite_plus_monoid_cover(const ColorTuple& t, std::int64_t r,
                                             const HVector& h);

/// Required h for the composition-shell cover: r(k-1)^2 + k.
std::int64_t positive_shell_threshold(std::int64_t r, std::int64_t k);

/// Cover of the full composition shell Sigma_{rh}(f) by translates of the
/// positive shell Sigma_h^+(f); at most lambda_r(k) translates.
FiniteSet positive_shell_cover(const AmbientGroup& g, const std::vector<Element>& f,
                               std::int64_t r, std::int64_t h);

/// One-color certificate for a union of unbounded linear sets.
CoveringCertificate union_linear_cover(const AmbientGroup& g, const SemilinearSet& a,
                                       std::int64_t r, std::int64_t h);

CoveringCertificate chromatic_semilinear_cover(const ColorTuple& t, std::int64_t r,
                                               const HVector& h);

/// Certificate for the inhomogeneous family h.A + B built on a verified base
/// certificate; Y = X + finite_set_cover(B, r, 1).
CoveringCertificate inhomogeneous_cover(const CoveringCertificate& base, const FiniteSet& b,
                                        std::int64_t r);

/// Image certificate under a homomorphism (finite colors only).
CoveringCertificate transport_hom(const CoveringCertificate& cert, const Homomorphism& phi);

/// Certificate for the dilated-translated tuple A_i' = d A_i + b_i with
/// X' = d X + (r-1) sum h_i b_i.
CoveringCertificate transport_affine(const CoveringCertificate& cert, std::int64_t d,
                                     const std::vector<Element>& b);

} // namespace csl
