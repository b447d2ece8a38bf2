#pragma once

#include "csl/covering.hpp"
#include "csl/layers.hpp"
#include "csl/set_model.hpp"

namespace csl {

/// Outcome of one brute-force inclusion check.
struct VerificationReport {
    std::string description;
    std::optional<Window> window;
    bool pass = false;
    std::optional<Element> counterexample; // present iff the check failed
    std::size_t lhs_count = 0;
    std::size_t rhs_count = 0;
    bool equality_checked = false;
    bool equality_holds = false;
};

/// Checks (r h).A (within w for structured tuples) against X + h.A, with
/// right-hand membership decided on a window enlarged by the span of X.
VerificationReport verify_cover(const ColorTuple& t, std::int64_t r, const HVector& h,
                                const FiniteSet& x, const std::optional<Window>& w);

/// Runs the check matching the certificate's method (plain covering,
/// window equality, inhomogeneous family, or threshold layer) and updates
/// its status. An explicit window overrides the one stored on the certificate.
VerificationReport verify_certificate(CoveringCertificate& cert,
                                      const std::optional<Window>& w = std::nullopt);

/// Exact minimum-cardinality X with S included in X+T, by branch and bound
/// over the candidate translates {s-t}; ties broken toward the
/// lexicographically least optimal X.
FiniteSet min_translate_cover(const FiniteSet& s, const FiniteSet& t);

/// Representation counts by direct enumeration of all weakly increasing
/// tuples; the independent oracle for the DP.
RepProfile brute_rep_function(const ColorTuple& t, const HVector& h);

} // namespace csl
