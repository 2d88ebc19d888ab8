#pragma once

#include <cstdint>

namespace randbound {

// Counter-based uniform generator built on the SplitMix64 finalizer
// (Steele/Lea/Flood). Every output is a pure function of (seed, counter),
// so any chunking of a sample range reproduces the same stream regardless
// of the parallel schedule.

/// SplitMix64 avalanche finalizer.
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derive an independent stream seed; used for restart/case sub-streams.
inline uint64_t substream_seed(uint64_t seed, uint64_t stream) {
    return mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Uniform in (0,1): 53-bit mantissa, offset so 0 is never returned.
inline double u64_to_unit(uint64_t x) {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

struct CounterRng {
    uint64_t seed;
    uint64_t ctr = 0;

    explicit CounterRng(uint64_t s) : seed(s) {}

    /// Random access: the value at an absolute counter position.
    uint64_t at(uint64_t counter) const { return mix64(seed + counter * 0x9E3779B97F4A7C15ULL); }
    double unit_at(uint64_t counter) const { return u64_to_unit(at(counter)); }

    uint64_t next_u64() { return at(ctr++); }
    double next_unit() { return u64_to_unit(next_u64()); }
    /// Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) { return next_u64() % n; }
    /// Uniform in [a, b].
    double next_range(double a, double b) { return a + (b - a) * next_unit(); }
    double next_normal();
};

/// Inverse standard normal CDF. Acklam's rational approximation refined by
/// one Halley step against erfc, accurate to ~1e-15 over (0,1).
double norm_quantile(double p);

/// Fast inverse normal CDF without the refinement step (~1.2e-9 relative);
/// the Monte Carlo samplers use this one, where the approximation error is
/// orders of magnitude below the statistical resolution.
double norm_quantile_fast(double p);

/// Standard normal draw from a single uniform.
inline double normal_from_unit(double u) { return norm_quantile_fast(u); }

inline double CounterRng::next_normal() { return normal_from_unit(next_unit()); }

/// Quantile of sup of n iid |gamma|: solves (2*Phi(t)-1)^n = u.
/// Evaluates accurately for large n via expm1/log.
double sup_abs_normal_quantile(double u, long long n);

} // namespace randbound
