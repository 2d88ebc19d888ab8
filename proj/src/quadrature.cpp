#include "randbound/quadrature.hpp"

#include <cmath>

namespace randbound {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

/// CDF of |g| for a standard Gaussian.
inline double folded_cdf(double t) { return std::erf(t / std::sqrt(2.0)); }

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double absTol) {
    if (!(b > a)) return 0.0;
    // Split into a few panels first so narrow features are not missed by the
    // top-level Simpson estimate.
    const int panels = 8;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double pa = a + i * h, pb = pa + h, pm = 0.5 * (pa + pb);
        const double fa = f(pa), fb = f(pb), fm = f(pm);
        const double whole = simpson(pa, fa, pb, fb, fm);
        total += adapt(f, pa, fa, pb, fb, pm, fm, whole, absTol / panels, 48);
    }
    return total;
}

double gaussian_tail_integral(double s) {
    const double hi = 40.0;
    if (s >= hi) return 0.0;
    return integrate([](double x) { return std::exp(-x * x / 2.0); }, s, hi, 1e-12);
}

double expected_sup_quadrature(const Vector& x) {
    Vector w;
    w.reserve(x.size());
    double wmax = 0.0;
    for (double xi : x) {
        const double a = std::fabs(xi);
        if (a > 0.0) {
            w.push_back(a);
            wmax = std::max(wmax, a);
        }
    }
    if (w.empty()) return 0.0;
    const double hi = wmax * 40.0;
    auto survival = [&w](double t) {
        double prod = 1.0;
        for (double wi : w) {
            prod *= folded_cdf(t / wi);
            if (prod == 0.0) break;
        }
        return 1.0 - prod;
    };
    return integrate(survival, 0.0, hi, 1e-10 * std::max(1.0, wmax));
}

double expected_sup_sq_quadrature(long long n) {
    // E sup g_i^2 = int_0^inf (1 - P(g^2 <= t)^n) dt, substituting t = u^2:
    // = int_0^inf 2u (1 - F(u)^n) du with F the folded CDF.
    auto survival = [n](double u) {
        const double c = folded_cdf(u);
        return 2.0 * u * (1.0 - std::pow(c, static_cast<double>(n)));
    };
    return integrate(survival, 0.0, 40.0, 1e-10);
}

double abs_normal_moment_quadrature(double q) {
    const double c = std::sqrt(2.0 / std::acos(-1.0));
    return c * integrate([q](double x) { return std::pow(x, q) * std::exp(-x * x / 2.0); },
                         0.0, 40.0, 1e-12);
}

} // namespace randbound
