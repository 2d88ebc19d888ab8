#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "randbound/errors.hpp"
#include "randbound/spaces.hpp"

namespace randbound {

enum class UpperSource { None, Analytic, Exhaustive };

struct ConfidenceInterval {
    double halfWidth = 0.0;
    double level = 0.0;
};

struct SearchMeta {
    long long samples = 0;
    uint64_t seed = 0;
    int searchBudget = 0;
    bool degenerate = false;
};

/// A bracket [lower, upper] around one of the randomized bounds, with a
/// witness certificate for the lower end.
struct BoundEstimate {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    Witness lowerCertificate;
    UpperSource upperSource = UpperSource::None;
    std::string upperFormula; // analytic-formula name, empty otherwise
    std::optional<ConfidenceInterval> ci;
    SearchMeta meta;
};

struct SearchConfig {
    int restarts = 64;
    int ascentSteps = 2;
    uint64_t seed = 42;
    int gridLevels = 3;

    void validate() const {
        if (restarts < 1 || ascentSteps < 1 || gridLevels < 1)
            throw DomainError("SearchConfig fields must be positive");
    }
};

} // namespace randbound
