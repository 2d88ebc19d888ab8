#pragma once

#include <utility>

#include "randbound/bounds.hpp"
#include "randbound/mc.hpp"
#include "randbound/spaces.hpp"

namespace randbound {

/// Weak lq norm of a vector list on an linf domain: the sup over unit dual
/// functionals collapses to the max over coordinates of the column lq norms.
/// Other domains are rejected (the general dual-ball sup is out of contract).
double weak_lq_norm(const SeqSpace& space, const std::vector<Vector>& vs, double q);

/// pi_2 lower-bound search for a single operator on an linf domain, with a
/// Pietsch-style dual certificate for the upper end when the codomain is
/// sup-normed (any probability weight over the domain coordinates certifies
/// an upper bound; the search optimizes the weight).
BoundEstimate pi2_search(const OperatorFamily& family, const SearchConfig& cfg);

/// pi_{2,1} lower-bound search; no finite upper is registered.
BoundEstimate pi21_search(const OperatorFamily& family, const SearchConfig& cfg);

/// Gaussian cotype-2 lower-bound search; denominators are Monte Carlo
/// estimates embedded conservatively (mean + halfWidth).
BoundEstimate gaussian_cotype2_search(const OperatorFamily& family, const SearchConfig& cfg,
                                      const McConfig& mc);

/// (1/4 sqrt(log N), sqrt(2 log 2N)): bracket on C2(A)/C2^gamma(A) for the
/// coordinate-projection operator.
std::pair<double, double> cotype_ratio_bracket(long long n);

} // namespace randbound
