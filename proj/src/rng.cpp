#include "randbound/rng.hpp"

#include <cmath>

namespace randbound {

namespace {

// Acklam's inverse normal CDF coefficients.
constexpr double kA[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                          -2.759285104469687e+02, 1.383577518672690e+02,
                          -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                          -1.556989798598866e+02, 6.680131188771972e+01,
                          -1.328068155288572e+01};
constexpr double kC[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                          -2.400758277161838e+00, -2.549732539343734e+00,
                          4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                          2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kPLow = 0.02425;

double acklam(double p) {
    if (p < kPLow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    if (p <= 1.0 - kPLow) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
               (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
           ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
}

constexpr double kSqrt2Pi = 2.5066282746310005024;

} // namespace

double norm_quantile_fast(double p) { return acklam(p); }

double norm_quantile(double p) {
    double x = acklam(p);
    // One Halley step: e = Phi(x) - p, Phi via erfc for stable tails.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * kSqrt2Pi * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

double sup_abs_normal_quantile(double u, long long n) {
    // P(sup |g_i| <= t) = (2 Phi(t) - 1)^n = u  =>  Phi(t) = (1 + u^{1/n}) / 2.
    // Work with eps = (1 - u^{1/n}) / 2 = -expm1(log(u)/n)/2 to keep precision
    // when u^{1/n} is close to 1.
    const double eps = -std::expm1(std::log(u) / static_cast<double>(n)) / 2.0;
    if (eps <= 0.0) return 38.0; // beyond double resolution of the tail
    return -norm_quantile_fast(eps);
}

} // namespace randbound
