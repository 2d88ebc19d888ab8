#include "randbound/rademacher.hpp"

#include <algorithm>
#include <cmath>

#include "randbound/parallel.hpp"
#include "randbound/search.hpp"

namespace randbound {

namespace {

constexpr double kTiny = 1e-14;

double norm_pow(const SeqSpace& space, const Vector& v, double q) {
    const double n = norm(space, v);
    return q == 2.0 ? n * n : std::pow(n, q);
}

/// Sum of ||sum_n eps_n v_n||^q over sign patterns [begin, end) with eps_0
/// fixed to +1 (the norm is symmetric, so half the patterns suffice).
/// Patterns are visited in reflected-Gray-code order over bits 1..k-1 with a
/// running sum, so each step updates one coordinate block.
double gray_pattern_sum(const SeqSpace& space, const std::vector<Vector>& vs, double q,
                        int64_t begin, int64_t end) {
    const int dim = space.dim;
    const size_t k = vs.size();
    // Signs at pattern index j: bit b of gray(j) = j ^ (j >> 1) set means
    // eps_{b+1} = -1.
    const int64_t gray = begin ^ (begin >> 1);
    Vector sum(static_cast<size_t>(dim), 0.0);
    for (int m = 0; m < dim; ++m) sum[static_cast<size_t>(m)] = vs[0][static_cast<size_t>(m)];
    for (size_t b = 1; b < k; ++b) {
        const double sign = ((gray >> (b - 1)) & 1) ? -1.0 : 1.0;
        for (int m = 0; m < dim; ++m)
            sum[static_cast<size_t>(m)] += sign * vs[b][static_cast<size_t>(m)];
    }
    double acc = norm_pow(space, sum, q);
    for (int64_t j = begin + 1; j < end; ++j) {
        const int64_t changed = (j ^ (j >> 1)) ^ ((j - 1) ^ ((j - 1) >> 1));
        int bit = 0;
        while (!((changed >> bit) & 1)) ++bit;
        const size_t b = static_cast<size_t>(bit) + 1;
        const double sign = (((j ^ (j >> 1)) >> bit) & 1) ? -1.0 : 1.0;
        // sign is the new value of eps_b; moving from +1 to -1 subtracts 2v.
        for (int m = 0; m < dim; ++m)
            sum[static_cast<size_t>(m)] += 2.0 * sign * vs[b][static_cast<size_t>(m)];
        acc += norm_pow(space, sum, q);
    }
    return acc;
}

} // namespace

double rademacher_moment(const SeqSpace& space, const std::vector<Vector>& vs, double q) {
    if (vs.empty()) throw DomainError("rademacher_moment: empty vector list");
    if (q < 1.0) throw DomainError("rademacher_moment: q must be >= 1");
    const int k = static_cast<int>(vs.size());
    if (k > kSignEnumerationCap)
        throw BudgetError("rademacher_moment: list exceeds the exact enumeration cap; "
                          "use the Monte Carlo estimator instead");
    for (const Vector& v : vs)
        if (static_cast<int>(v.size()) != space.dim)
            throw ShapeError("rademacher_moment: dimension mismatch");
    if (k == 1) return norm(space, vs[0]);

    const int64_t patterns = int64_t{1} << (k - 1);
    double total;
    if (patterns >= (int64_t{1} << 16)) {
        total = 0.0;
        parallel_chunks(
            patterns, int64_t{1} << 14,
            [&](int64_t b, int64_t e, double* out) { out[0] = gray_pattern_sum(space, vs, q, b, e); },
            1, [&total](const double* r) { total += r[0]; });
    } else {
        total = gray_pattern_sum(space, vs, q, 0, patterns);
    }
    const double mean = total / static_cast<double>(patterns);
    return std::pow(mean, 1.0 / q);
}

namespace {

/// Non-throwing ratio used by the search: returns 0 when numerator and
/// denominator are both below the degeneracy threshold.
double r_ratio_value(const OperatorFamily& family, const std::vector<Vector>& vecs,
                     const std::vector<int>& assign) {
    const SeqSpace& cod = family.codomain;
    double num;
    if (cod.dim == 1) {
        double s = 0.0;
        for (size_t i = 0; i < vecs.size(); ++i) {
            const double y = mat_vec(family.members[static_cast<size_t>(assign[i])], vecs[i])[0];
            s += y * y;
        }
        num = std::sqrt(s);
    } else {
        std::vector<Vector> images(vecs.size());
        for (size_t i = 0; i < vecs.size(); ++i)
            images[i] = mat_vec(family.members[static_cast<size_t>(assign[i])], vecs[i]);
        num = rademacher_moment(cod, images, 2.0);
    }
    const double den = rademacher_moment(family.domain, vecs, 2.0);
    if (num < kTiny && den < kTiny) return 0.0;
    if (den < kTiny) throw DegenerateWitnessError("r_ratio: denominator vanished");
    return num / den;
}

} // namespace

double r_ratio(const OperatorFamily& family, const Witness& w) {
    family.validate();
    validate_witness(family, w);
    return r_ratio_value(family, w.vectors, w.opIndices);
}

double diag_c0_rbound(const Vector& a) {
    double s = 0.0;
    for (double x : a) {
        if (!std::isfinite(x)) throw DomainError("diag_c0_rbound: coefficients must be finite");
        s += x * x;
    }
    return std::sqrt(s);
}

namespace {

BoundEstimate run_ratio_search(const OperatorFamily& family, const SearchConfig& cfg,
                               const std::function<double(const std::vector<Vector>&,
                                                          std::vector<int>&)>& eval,
                               int maxLen,
                               double stopAt = std::numeric_limits<double>::infinity()) {
    detail::VectorSearchSpec spec;
    spec.domain = family.domain;
    spec.maxLen = maxLen;
    spec.canonicals =
        detail::canonical_witness_vectors(family.domain, family.size(), kSignEnumerationCap);
    spec.exhaustiveSigns = family.domain.dim <= 5;
    spec.exhaustiveMaxLen = 3;
    spec.eval = eval;
    spec.stopAt = stopAt;
    const detail::SearchOutcome outcome = detail::vector_witness_search(spec, cfg);

    BoundEstimate est;
    est.meta.seed = cfg.seed;
    est.meta.searchBudget = cfg.restarts;
    if (outcome.degenerate) {
        est.lower = 0.0;
        Witness w;
        w.opIndices = {0};
        w.vectors = {Vector(static_cast<size_t>(family.domain.dim), 0.0)};
        w.vectors[0][0] = 1.0;
        est.lowerCertificate = w;
        est.meta.degenerate = true;
    } else {
        est.lower = outcome.value;
        est.lowerCertificate.opIndices = outcome.assignment;
        est.lowerCertificate.vectors = outcome.vectors;
    }
    return est;
}

} // namespace

namespace {

/// Distinct-first certificate cleanup: when an injective assignment ties the
/// searched value, report the injective one (the distinct reduction makes it
/// the canonical representative).
void prefer_distinct_certificate(const OperatorFamily& family, BoundEstimate& est) {
    if (est.meta.degenerate || family.codomain.dim != 1) return;
    const int len = est.lowerCertificate.size();
    const int n = family.size();
    if (len > n) return;
    std::vector<double> table(static_cast<size_t>(len) * n);
    for (int i = 0; i < len; ++i)
        for (int op = 0; op < n; ++op) {
            const double y = mat_vec(family.members[static_cast<size_t>(op)],
                                     est.lowerCertificate.vectors[static_cast<size_t>(i)])[0];
            table[static_cast<size_t>(i) * n + op] = y * y;
        }
    auto score = [&table, n](int i, int op) { return table[static_cast<size_t>(i) * n + op]; };
    double currentSq = 0.0;
    for (int i = 0; i < len; ++i)
        currentSq += score(i, est.lowerCertificate.opIndices[static_cast<size_t>(i)]);
    std::vector<int> distinct;
    const double distinctSq = detail::best_distinct_assignment(len, n, score, distinct);
    if (!distinct.empty() && distinctSq >= currentSq) est.lowerCertificate.opIndices = distinct;
}

} // namespace

BoundEstimate r_bound_search(const OperatorFamily& family, const SearchConfig& cfg) {
    family.validate();
    cfg.validate();
    const int n = family.size();
    const bool scalarCodomain = family.codomain.dim == 1;

    if (is_zero_family(family)) {
        BoundEstimate est;
        est.meta.seed = cfg.seed;
        est.meta.searchBudget = cfg.restarts;
        est.meta.degenerate = true;
        Witness w;
        w.opIndices = {0};
        w.vectors = {Vector(static_cast<size_t>(family.domain.dim), 0.0)};
        w.vectors[0][0] = 1.0;
        est.lowerCertificate = w;
        est.lower = 0.0;
        est.upper = 0.0;
        est.upperSource = UpperSource::Analytic;
        est.upperFormula = "zero-family";
        return est;
    }

    auto eval = [&family, n, scalarCodomain](const std::vector<Vector>& vecs,
                                             std::vector<int>& assign) {
        const int len = static_cast<int>(vecs.size());
        if (scalarCodomain) {
            // Per-slot argmax over the precomputed image table; the slots are
            // independent in the numerator by orthogonality.
            std::vector<double> table(static_cast<size_t>(len) * n);
            for (int i = 0; i < len; ++i)
                for (int op = 0; op < n; ++op) {
                    const double y = mat_vec(family.members[static_cast<size_t>(op)],
                                             vecs[static_cast<size_t>(i)])[0];
                    table[static_cast<size_t>(i) * n + op] = y * y;
                }
            detail::argmax_assignment(
                len, n, [&table, n](int i, int op) { return table[static_cast<size_t>(i) * n + op]; },
                assign);
        } else if (std::pow(static_cast<double>(n), len) <= 1024.0) {
            // Enumerate assignments; moments couple the slots.
            std::vector<int> codes(static_cast<size_t>(len), 0);
            double best = -1.0;
            std::vector<int> bestAssign(codes);
            for (;;) {
                double v;
                try {
                    v = r_ratio_value(family, vecs, codes);
                } catch (const DegenerateWitnessError&) {
                    v = 0.0;
                }
                if (v > best) {
                    best = v;
                    bestAssign = codes;
                }
                int pos = len - 1;
                while (pos >= 0) {
                    if (++codes[static_cast<size_t>(pos)] < n) break;
                    codes[static_cast<size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
            assign = bestAssign;
            return best;
        } else {
            // Greedy per-slot improvement from the identity-ish assignment.
            assign.assign(static_cast<size_t>(len), 0);
            for (int i = 0; i < len; ++i) assign[static_cast<size_t>(i)] = i % n;
            double cur;
            try {
                cur = r_ratio_value(family, vecs, assign);
            } catch (const DegenerateWitnessError&) {
                return 0.0;
            }
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i < len; ++i) {
                    for (int op = 0; op < n; ++op) {
                        if (op == assign[static_cast<size_t>(i)]) continue;
                        std::vector<int> trial = assign;
                        trial[static_cast<size_t>(i)] = op;
                        double v;
                        try {
                            v = r_ratio_value(family, vecs, trial);
                        } catch (const DegenerateWitnessError&) {
                            v = 0.0;
                        }
                        if (v > cur) {
                            cur = v;
                            assign = trial;
                        }
                    }
                }
            }
            return cur;
        }
        try {
            return r_ratio_value(family, vecs, assign);
        } catch (const DegenerateWitnessError&) {
            return 0.0;
        }
    };

    Vector diag;
    const bool isDiag = detect_diagonal_functionals(family, diag);
    const double analyticUpper =
        isDiag ? diag_c0_rbound(diag) : std::numeric_limits<double>::infinity();
    const double stopAt = isDiag ? analyticUpper * (1.0 - 1e-12)
                                 : std::numeric_limits<double>::infinity();

    const int maxLen = std::clamp(std::max(n, family.domain.dim), 1, 10);
    BoundEstimate est = run_ratio_search(family, cfg, eval, maxLen, stopAt);
    prefer_distinct_certificate(family, est);

    if (isDiag) {
        est.upper = analyticUpper;
        est.upperSource = UpperSource::Analytic;
        est.upperFormula = "diagonal-l2";
    }
    return est;
}

BoundEstimate cotype2_search(const OperatorFamily& family, const SearchConfig& cfg) {
    family.validate();
    cfg.validate();
    if (family.size() != 1)
        throw ContractError("cotype2_search expects a single-member family");
    if (is_zero_family(family)) {
        BoundEstimate est;
        est.meta.seed = cfg.seed;
        est.meta.searchBudget = cfg.restarts;
        est.meta.degenerate = true;
        Witness w;
        w.opIndices = {0};
        w.vectors = {Vector(static_cast<size_t>(family.domain.dim), 0.0)};
        w.vectors[0][0] = 1.0;
        est.lowerCertificate = w;
        est.upper = 0.0;
        est.upperSource = UpperSource::Analytic;
        est.upperFormula = "zero-family";
        return est;
    }
    const Matrix& a = family.members[0];
    const SeqSpace cod = family.codomain;

    auto eval = [&family, &a, cod](const std::vector<Vector>& vecs, std::vector<int>& assign) {
        assign.assign(vecs.size(), 0);
        double numSq = 0.0;
        for (const Vector& v : vecs) {
            const double nv = norm(cod, mat_vec(a, v));
            numSq += nv * nv;
        }
        const double num = std::sqrt(numSq);
        const double den = rademacher_moment(family.domain, vecs, 2.0);
        if (num < kTiny && den < kTiny) return 0.0;
        if (den < kTiny) return 0.0;
        return num / den;
    };

    const int maxLen = std::clamp(std::max(cod.dim, family.domain.dim), 1, 10);
    return run_ratio_search(family, cfg, eval, maxLen);
}

} // namespace randbound
