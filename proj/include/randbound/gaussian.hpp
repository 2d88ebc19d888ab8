#pragma once

#include <utility>

#include "randbound/bounds.hpp"
#include "randbound/mc.hpp"
#include "randbound/spaces.hpp"

namespace randbound {

/// (E || sum_n g_n v_n ||^q)^{1/q} by seeded Monte Carlo with a delta-method CI.
McEstimate gaussian_moment_mc(const SeqSpace& space, const std::vector<Vector>& vs, double q,
                              const McConfig& cfg);

/// E sup_i |g_i x_i| by Monte Carlo. Exact per-element sampling for small
/// lengths; for long vectors the sup over the small-weight tail block is drawn
/// from its exact distribution through a precomputed quantile table.
McEstimate expected_sup_mc(const Vector& x, const McConfig& cfg);

namespace detail {
/// Per-element sampling regardless of length (test hook for the table path).
McEstimate expected_sup_mc_exact(const Vector& x, const McConfig& cfg);
} // namespace detail

struct SudakovResult {
    double lhs = 0.0;      // ((log n)/n * sum x_i^2)^{1/2}
    McEstimate rhs;        // estimate of E sup |g_i x_i|
    bool holds = false;    // lhs <= 4 * (rhs.mean + rhs.halfWidth)
};
SudakovResult sudakov_check(const Vector& x, const McConfig& cfg);

/// Komatsu's lower bound for the normalized Gaussian tail:
/// sqrt(2 pi) P(g > s) >= 2 / (s + sqrt(s^2 + 4)) * exp(-s^2/2).
double komatsu_lower_tail(double s);

/// Theta(y) = y * exp(-1/(2y)) and its floor exp(-1/y), both for y > 0.
double theta(double y);
double theta_floor(double y);

/// pi * (1 + sqrt(1 + 2 pi)) / 4, the constant appearing alongside Theta.
inline constexpr double kThetaRatioConstant = 2.9049818159352675;

/// The bound 2 log(2n) for E sup_{i<=n} g_i^2.
double expsup_gamma_sq_bound(long long n);

/// Companion Monte Carlo estimate of E sup_{i<=n} g_i^2.
McEstimate expsup_gamma_sq_mc(long long n, const McConfig& cfg);

/// Witness ratio for the Gaussian bound, numerator and denominator from the
/// same draws. For a scalar codomain the numerator second moment collapses to
/// sum |T x_n|^2 and is computed exactly. The reported (mean - halfWidth) is
/// the conservative certified lower value.
McEstimate gamma_ratio_mc(const OperatorFamily& family, const Witness& w, const McConfig& cfg);

/// (sqrt(N / (2 log 2N)), 4 sqrt(N / log N)) for N >= 2.
std::pair<double, double> coord_gamma_bracket(long long n);

/// Witness search for a statistically certified gamma-bound lower estimate.
BoundEstimate gamma_bound_search(const OperatorFamily& family, const SearchConfig& cfg,
                                 const McConfig& mc);

} // namespace randbound
