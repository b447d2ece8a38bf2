#pragma once

#include "csl/set_model.hpp"

namespace csl {

/// Exact Minkowski sum X+Y. Subsets of Z with modest span take a dense-bitset
/// route; semantics are identical to the extensional path.
FiniteSet minkowski_sum(const FiniteSet& x, const FiniteSet& y);

/// h-fold sumset hA, computed by repeated doubling; 0A = {0}.
FiniteSet h_fold(const FiniteSet& a, std::int64_t h);

/// h1*A1 + ... + hq*Aq for a tuple of finite colors; the zero vector yields {0}.
FiniteSet chromatic_sumset(const ColorTuple& t, const HVector& h);

/// Exactly (h . A) intersected with w, for tuples whose structured colors obey
/// the nonnegative-orthant generator rule.
FiniteSet chromatic_sumset_window(const ColorTuple& t, const HVector& h, const Window& w);

FiniteSet intersect_window(const FiniteSet& s, const Window& w);
bool subset_of(const FiniteSet& a, const FiniteSet& b);
FiniteSet set_union(const FiniteSet& a, const FiniteSet& b);
/// {d*x + shift : x in s}
FiniteSet dilate_translate(const FiniteSet& s, std::int64_t d, const Element& shift);

} // namespace csl
