#pragma once

#include <functional>

#include "randbound/spaces.hpp"

namespace randbound {

/// Adaptive Simpson integration of f over [a, b] to the given absolute
/// tolerance. Used as ground truth for the Gaussian tail and sup integrals.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double absTol = 1e-10);

/// Upper Gaussian tail integral of the unnormalized density: int_s^inf e^{-x^2/2} dx,
/// evaluated by adaptive quadrature on [s, 40].
double gaussian_tail_integral(double s);

/// E sup_i |g_i x_i| for independent standard Gaussians, via the layer-cake
/// integral of 1 - prod_i P(|g_i x_i| <= t). Zero weights drop out.
double expected_sup_quadrature(const Vector& x);

/// E sup_{i<=n} g_i^2 via the same layer-cake route.
double expected_sup_sq_quadrature(long long n);

/// E |g|^q for a standard Gaussian, by quadrature.
double abs_normal_moment_quadrature(double q);

} // namespace randbound
