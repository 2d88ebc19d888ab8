#include "randbound/search.hpp"

#include <algorithm>
#include <cmath>

#include "randbound/rng.hpp"

namespace randbound::detail {

namespace {

struct Best {
    double value = 0.0;
    std::vector<Vector> vectors;
    std::vector<int> assignment;
    bool any = false;

    void offer(double v, const std::vector<Vector>& vecs, const std::vector<int>& assign) {
        if (!any || v > value) {
            value = v;
            vectors = vecs;
            assignment = assign;
            any = true;
        }
    }
};

/// Dyadic coordinate ascent at increasing grid depth, restricted to the box
/// [-1,1]^(len x dim); ratio objectives are invariant under common scaling so
/// the box loses no witnesses. Grid values are scanned in a fixed order and
/// only strict improvements are taken, which makes ascent deterministic and
/// the per-level best-so-far monotone in gridLevels.
void dyadic_ascent(const VectorSearchSpec& spec, const SearchConfig& cfg,
                   std::vector<Vector> vecs, Best& best) {
    std::vector<int> assign;
    double cur = spec.eval(vecs, assign);
    best.offer(cur, vecs, assign);
    const int len = static_cast<int>(vecs.size());
    const int dim = spec.domain.dim;
    if (!spec.ascent || len * dim > spec.ascentCoordCap) return;

    for (int level = 1; level <= cfg.gridLevels; ++level) {
        const int half = 1 << level;
        std::vector<double> grid;
        grid.reserve(2 * half + 1);
        for (int j = -half; j <= half; ++j) grid.push_back(static_cast<double>(j) / half);

        for (int sweep = 0; sweep < cfg.ascentSteps; ++sweep) {
            bool improved = false;
            for (int i = 0; i < len; ++i) {
                for (int m = 0; m < dim; ++m) {
                    const double saved = vecs[i][m];
                    double bestVal = cur;
                    double bestCoord = saved;
                    for (double g : grid) {
                        if (g == saved) continue;
                        vecs[i][m] = g;
                        std::vector<int> a;
                        const double v = spec.eval(vecs, a);
                        if (v > bestVal) {
                            bestVal = v;
                            bestCoord = g;
                        }
                    }
                    vecs[i][m] = bestCoord;
                    if (bestVal > cur) {
                        cur = bestVal;
                        improved = true;
                    }
                }
            }
            if (!improved) break;
        }
        std::vector<int> a;
        cur = spec.eval(vecs, a);
        best.offer(cur, vecs, a);
    }
}

/// Enumerate sign-vector tuples with the first coordinate of every vector
/// pinned to +1 (all objectives here are invariant under negating a single
/// witness vector).
void exhaustive_sign_tuples(const VectorSearchSpec& spec, Best& best) {
    const int dim = spec.domain.dim;
    if (dim > 20) return;
    const int64_t perSlot = int64_t{1} << (dim - 1);
    auto signVector = [dim](int64_t code) {
        Vector v(static_cast<size_t>(dim), 1.0);
        for (int m = 1; m < dim; ++m)
            if ((code >> (m - 1)) & 1) v[static_cast<size_t>(m)] = -1.0;
        return v;
    };
    for (int len = 1; len <= spec.exhaustiveMaxLen; ++len) {
        double total = 1.0;
        for (int i = 0; i < len; ++i) total *= static_cast<double>(perSlot);
        if (total > static_cast<double>(spec.exhaustiveBudget)) break;
        std::vector<int64_t> codes(static_cast<size_t>(len), 0);
        std::vector<Vector> vecs(static_cast<size_t>(len));
        for (;;) {
            for (int i = 0; i < len; ++i) vecs[static_cast<size_t>(i)] = signVector(codes[static_cast<size_t>(i)]);
            std::vector<int> a;
            const double v = spec.eval(vecs, a);
            best.offer(v, vecs, a);
            if (best.value >= spec.stopAt) return;
            int pos = len - 1;
            while (pos >= 0) {
                if (++codes[static_cast<size_t>(pos)] < perSlot) break;
                codes[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
}

} // namespace

std::vector<std::vector<Vector>> canonical_witness_vectors(const SeqSpace& domain, int familySize,
                                                           int maxListLen) {
    const int dim = domain.dim;
    std::vector<std::vector<Vector>> out;
    auto basis = [dim](int m) {
        Vector v(static_cast<size_t>(dim), 0.0);
        v[static_cast<size_t>(m)] = 1.0;
        return v;
    };
    auto basisPrefix = [&basis](int len) {
        std::vector<Vector> prefix;
        prefix.reserve(static_cast<size_t>(len));
        for (int m = 0; m < len; ++m) prefix.push_back(basis(m));
        return prefix;
    };
    if (dim <= 64)
        for (int m = 0; m < dim; ++m) out.push_back({basis(m)});
    // Full basis list, the paper-style diagonal pairing; prefix when capped.
    if (dim >= 2) out.push_back(basisPrefix(std::min(dim, maxListLen)));
    if (familySize >= 2 && familySize < dim && familySize <= maxListLen)
        out.push_back(basisPrefix(familySize));
    out.push_back({Vector(static_cast<size_t>(dim), 1.0)});
    return out;
}

double argmax_assignment(int len, int familySize, const std::function<double(int, int)>& score,
                         std::vector<int>& out) {
    out.assign(static_cast<size_t>(len), 0);
    double total = 0.0;
    for (int i = 0; i < len; ++i) {
        double bestV = score(i, 0);
        int bestN = 0;
        for (int n = 1; n < familySize; ++n) {
            const double v = score(i, n);
            if (v > bestV) {
                bestV = v;
                bestN = n;
            }
        }
        out[static_cast<size_t>(i)] = bestN;
        total += bestV;
    }
    return total;
}

namespace {
double enumerate_injections(int len, int familySize, const std::function<double(int, int)>& score,
                            std::vector<int>& current, std::vector<bool>& used, int slot,
                            double acc, std::vector<int>& best, double bestVal) {
    if (slot == len) {
        if (acc > bestVal) {
            bestVal = acc;
            best = current;
        }
        return bestVal;
    }
    for (int n = 0; n < familySize; ++n) {
        if (used[static_cast<size_t>(n)]) continue;
        used[static_cast<size_t>(n)] = true;
        current[static_cast<size_t>(slot)] = n;
        bestVal = enumerate_injections(len, familySize, score, current, used, slot + 1,
                                       acc + score(slot, n), best, bestVal);
        used[static_cast<size_t>(n)] = false;
    }
    return bestVal;
}
} // namespace

double best_distinct_assignment(int len, int familySize,
                                const std::function<double(int, int)>& score,
                                std::vector<int>& out) {
    if (len > familySize) return -1.0;
    // Injection count familySize!/(familySize-len)!; enumerate when small.
    double count = 1.0;
    for (int i = 0; i < len; ++i) count *= static_cast<double>(familySize - i);
    if (count <= 40320.0) {
        std::vector<int> current(static_cast<size_t>(len), 0);
        std::vector<bool> used(static_cast<size_t>(familySize), false);
        out.clear();
        const double v = enumerate_injections(len, familySize, score, current, used, 0, 0.0, out,
                                              -std::numeric_limits<double>::infinity());
        return v;
    }
    // Greedy then pair swaps until no swap improves.
    std::vector<int> assign(static_cast<size_t>(len));
    std::vector<bool> used(static_cast<size_t>(familySize), false);
    for (int i = 0; i < len; ++i) {
        double bestV = -std::numeric_limits<double>::infinity();
        int bestN = -1;
        for (int n = 0; n < familySize; ++n) {
            if (used[static_cast<size_t>(n)]) continue;
            const double v = score(i, n);
            if (v > bestV) {
                bestV = v;
                bestN = n;
            }
        }
        assign[static_cast<size_t>(i)] = bestN;
        used[static_cast<size_t>(bestN)] = true;
    }
    bool improved = true;
    int guard = 64;
    while (improved && guard-- > 0) {
        improved = false;
        for (int i = 0; i < len; ++i) {
            for (int j = i + 1; j < len; ++j) {
                const int a = assign[static_cast<size_t>(i)], b = assign[static_cast<size_t>(j)];
                if (score(i, b) + score(j, a) > score(i, a) + score(j, b)) {
                    std::swap(assign[static_cast<size_t>(i)], assign[static_cast<size_t>(j)]);
                    improved = true;
                }
            }
        }
    }
    double total = 0.0;
    for (int i = 0; i < len; ++i) total += score(i, assign[static_cast<size_t>(i)]);
    out = assign;
    return total;
}

SearchOutcome vector_witness_search(const VectorSearchSpec& spec, const SearchConfig& cfg) {
    cfg.validate();
    Best best;
    const auto reached = [&spec, &best] { return best.any && best.value >= spec.stopAt; };

    for (const std::vector<Vector>& vecs : spec.canonicals) {
        if (vecs.empty()) continue;
        std::vector<int> a;
        best.offer(spec.eval(vecs, a), vecs, a);
        if (reached()) break;
    }

    if (!reached() && spec.exhaustiveSigns && is_inf_exponent(spec.domain.p))
        exhaustive_sign_tuples(spec, best);

    const int dim = spec.domain.dim;
    const bool ascentFeasible = dim <= spec.ascentCoordCap;
    if (ascentFeasible && !reached()) {
        for (int r = 0; r < cfg.restarts && !reached(); ++r) {
            CounterRng rng(substream_seed(cfg.seed, static_cast<uint64_t>(r)));
            const int len = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(spec.maxLen)));
            std::vector<Vector> vecs(static_cast<size_t>(len), Vector(static_cast<size_t>(dim)));
            for (Vector& v : vecs) {
                for (double& x : v) {
                    if (is_inf_exponent(spec.domain.p))
                        x = (rng.next_u64() & 1) ? 1.0 : -1.0; // ball extreme points
                    else
                        x = rng.next_range(-1.0, 1.0);
                }
            }
            dyadic_ascent(spec, cfg, std::move(vecs), best);
        }
    }

    SearchOutcome out;
    out.value = best.any ? best.value : 0.0;
    out.vectors = best.vectors;
    out.assignment = best.assignment;
    out.degenerate = !(best.any && best.value > 0.0);
    return out;
}

} // namespace randbound::detail
