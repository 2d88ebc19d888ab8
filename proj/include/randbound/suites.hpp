#pragma once

#include <optional>
#include <string>
#include <vector>

#include "randbound/family_io.hpp"
#include "randbound/report.hpp"
#include "randbound/spaces.hpp"

namespace randbound {

/// Shared knobs for the verification suites, the gap scan, and bound runs.
struct SuiteConfig {
    uint64_t seed = 42;
    long long samples = 100000;
    double confidence = 0.99;
    int budget = 64; // search restarts
    bool withTimestamp = true;

    // Per-suite case counts (defaults match the documented workloads).
    int sudakovCases = 1000;
    int comparisonCases = 200;
    int diagCases = 100;
    int identityCases = 20;
    int dualityCases = 50;
    int singletonCases = 200;

    // Single-case overrides.
    std::optional<long long> sudakovN; // verify sudakov --n
    std::optional<Vector> diagA;       // verify diag-exact --a
};

const std::vector<std::string>& verify_suite_names();

/// Runs one named verification suite. Throws DomainError for unknown names.
RunReport run_verify_suite(const std::string& suite, const SuiteConfig& cfg);

/// R-vs-gamma gap scan over the coordinate families for each N.
RunReport run_gap(const std::vector<long long>& ns, const SuiteConfig& cfg);

/// One-row bound search dispatch; `constant` is one of
/// r, gamma, ell2, pi2, pi21, cotype2, cotype2gamma.
RunReport run_bound(const NamedFamily& nf, const std::string& constant, const SuiteConfig& cfg);

} // namespace randbound
