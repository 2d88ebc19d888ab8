#pragma once

#include "randbound/bounds.hpp"
#include "randbound/spaces.hpp"

namespace randbound {

/// Largest sign-pattern count enumerated exactly: 2^24 patterns. Beyond this
/// the moment refuses instead of silently sampling.
inline constexpr int kSignEnumerationCap = 24;

/// (2^-k sum_{eps in {-1,1}^k} || sum_n eps_n v_n ||^q)^{1/q}, exact.
/// Throws BudgetError when |vs| exceeds the enumeration cap.
double rademacher_moment(const SeqSpace& space, const std::vector<Vector>& vs, double q);

/// Witness ratio lower-bounding the R-bound. Scalar codomains use the exact
/// orthogonality identity E|sum r_n y_n|^2 = sum y_n^2 for the numerator.
double r_ratio(const OperatorFamily& family, const Witness& w);

/// (sum a_n^2)^{1/2}: the exact R-bound of the diagonal family on c0.
double diag_c0_rbound(const Vector& a);

BoundEstimate r_bound_search(const OperatorFamily& family, const SearchConfig& cfg);

/// Rademacher cotype-2 lower-bound search for a single-member family.
BoundEstimate cotype2_search(const OperatorFamily& family, const SearchConfig& cfg);

} // namespace randbound
