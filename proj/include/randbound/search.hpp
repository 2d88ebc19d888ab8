#pragma once

#include <functional>
#include <vector>

#include "randbound/bounds.hpp"
#include "randbound/spaces.hpp"

namespace randbound::detail {

// Shared witness-search driver. Engines supply an evaluation callback that
// scores a list of candidate domain vectors (choosing operator assignments
// internally where that applies) and the driver handles proposal generation:
// canonical witnesses, exhaustive sign-vector tuples on linf domains, and
// seeded random restarts refined by dyadic coordinate ascent.
//
// Determinism contract: eval must be a pure function of the vectors; restart
// r draws from substream_seed(cfg.seed, r); best-so-far updates are strict,
// in a fixed proposal order, so results are reproducible and monotone in
// both `restarts` and `gridLevels`.

struct VectorSearchSpec {
    SeqSpace domain;
    int maxLen = 1; // maximum witness length proposed
    // Scores a candidate; fills `assign` with the operator indices realized.
    std::function<double(const std::vector<Vector>&, std::vector<int>&)> eval;
    std::vector<std::vector<Vector>> canonicals;
    bool exhaustiveSigns = false; // enumerate sign-vector tuples (linf domains)
    int exhaustiveMaxLen = 3;
    int64_t exhaustiveBudget = 1 << 16;
    bool ascent = true;
    int ascentCoordCap = 64; // skip ascent when witness has more coordinates
    // Stop as soon as the best value reaches this threshold (used when a
    // registered analytic upper pins the attainable ratio).
    double stopAt = std::numeric_limits<double>::infinity();
};

struct SearchOutcome {
    double value = 0.0;
    std::vector<Vector> vectors;
    std::vector<int> assignment;
    bool degenerate = true; // no proposal scored above zero
};

SearchOutcome vector_witness_search(const VectorSearchSpec& spec, const SearchConfig& cfg);

/// Canonical vector proposals: basis singletons, the full basis list (or its
/// prefix when longer than maxListLen), the all-ones singleton. Deterministic
/// order.
std::vector<std::vector<Vector>> canonical_witness_vectors(const SeqSpace& domain, int familySize,
                                                           int maxListLen);

/// Per-slot argmax assignment for separable objectives: slot i takes
/// argmax_n score(i, n). Ties resolve to the lowest operator index.
double argmax_assignment(int len, int familySize,
                         const std::function<double(int, int)>& score, std::vector<int>& out);

/// Best injective assignment for separable objectives; enumerated exactly
/// when the count is small, greedy with pair swaps otherwise.
double best_distinct_assignment(int len, int familySize,
                                const std::function<double(int, int)>& score,
                                std::vector<int>& out);

} // namespace randbound::detail
