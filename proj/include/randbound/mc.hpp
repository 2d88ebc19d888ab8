#pragma once

#include <cstdint>

#include "randbound/errors.hpp"

namespace randbound {

/// Configuration shared by every Gaussian Monte Carlo estimate.
struct McConfig {
    long long samples = 100000;
    uint64_t seed = 42;
    double level = 0.99; // confidence level in (0,1)

    void validate() const {
        if (samples < 2) throw DomainError("McConfig.samples must be >= 2");
        if (!(level > 0.0 && level < 1.0)) throw DomainError("McConfig.level must be in (0,1)");
    }
};

struct McEstimate {
    double mean = 0.0;
    double halfWidth = 0.0;
    long long samples = 0;
    uint64_t seed = 0;
};

/// Normal-approximation critical value for a two-sided CI at `level`.
double z_critical(double level);

} // namespace randbound
