#pragma once

#include "randbound/bounds.hpp"
#include "randbound/spaces.hpp"

namespace randbound {

/// Published upper bound for the real Grothendieck constant; every inequality
/// here only needs a valid upper bound, never the exact value.
inline constexpr double kGrothendieckUpper = 1.78222;

/// Square-function witness ratio lower-bounding the l2-bound.
double ell2_ratio(const OperatorFamily& family, const Witness& w);

BoundEstimate ell2_bound_search(const OperatorFamily& family, const SearchConfig& cfg);

struct DualityResult {
    BoundEstimate primal;
    BoundEstimate dual;
    bool consistent = false;
};

/// Runs the search on the family and its adjoint; consistent when each lower
/// sits under the other's upper and, at tiny exhaustive scale, the two lowers
/// agree within 10%.
DualityResult ell2_duality_check(const OperatorFamily& family, const SearchConfig& cfg);

/// All pairwise compositions S T for S in `s`, T in `t`.
OperatorFamily compose_families(const OperatorFamily& s, const OperatorFamily& t);

/// Submultiplicativity probe: lower(ST) <= upper(S) * upper(T) whenever both
/// uppers are finite (vacuously true otherwise).
bool ell2_product_check(const OperatorFamily& s, const OperatorFamily& t, const SearchConfig& cfg);

} // namespace randbound
