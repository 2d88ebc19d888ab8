#include "randbound/ell2.hpp"

#include <algorithm>
#include <cmath>

#include "randbound/search.hpp"

namespace randbound {

namespace {

constexpr double kTiny = 1e-14;

double sq_norm_of_images(const OperatorFamily& family, const std::vector<Vector>& vecs,
                         const std::vector<int>& assign) {
    std::vector<Vector> images(vecs.size());
    for (size_t i = 0; i < vecs.size(); ++i)
        images[i] = mat_vec(family.members[static_cast<size_t>(assign[i])], vecs[i]);
    return square_function_norm(family.codomain, images);
}

double ell2_ratio_value(const OperatorFamily& family, const std::vector<Vector>& vecs,
                        const std::vector<int>& assign) {
    const double num = sq_norm_of_images(family, vecs, assign);
    const double den = square_function_norm(family.domain, vecs);
    if (num < kTiny && den < kTiny) return 0.0;
    if (den < kTiny) throw DegenerateWitnessError("ell2_ratio: denominator vanished");
    return num / den;
}

/// On linf domains the square-function unit ball factors coordinatewise: the
/// denominator max_m (sum_n x_{n,m}^2)^{1/2} is at most 1 exactly when every
/// coordinate column sits in the euclidean unit ball. The search therefore
/// rescales each over-long column onto that ball and ascends the numerator;
/// this feasible-set structure is what makes the linf search effective.
void normalize_columns_linf(std::vector<Vector>& vecs, int dim) {
    for (int m = 0; m < dim; ++m) {
        double colSq = 0.0;
        for (const Vector& v : vecs) colSq += v[static_cast<size_t>(m)] * v[static_cast<size_t>(m)];
        if (colSq > 1.0) {
            const double scale = 1.0 / std::sqrt(colSq);
            for (Vector& v : vecs) v[static_cast<size_t>(m)] *= scale;
        }
    }
}

struct Ell2Eval {
    const OperatorFamily* family;
    bool distinctOnly = false;

    double operator()(const std::vector<Vector>& raw, std::vector<int>& assign) const {
        const OperatorFamily& fam = *family;
        const int n = fam.size();
        const int len = static_cast<int>(raw.size());
        if (distinctOnly && len > n) return 0.0;
        std::vector<Vector> vecs = raw;
        if (is_inf_exponent(fam.domain.p)) normalize_columns_linf(vecs, fam.domain.dim);

        if (fam.codomain.dim == 1) {
            auto score = [&fam, &vecs](int i, int op) {
                const double y =
                    mat_vec(fam.members[static_cast<size_t>(op)], vecs[static_cast<size_t>(i)])[0];
                return y * y;
            };
            if (distinctOnly)
                detail::best_distinct_assignment(len, n, score, assign);
            else
                detail::argmax_assignment(len, n, score, assign);
        } else if (!distinctOnly && std::pow(static_cast<double>(n), len) <= 1024.0) {
            std::vector<int> codes(static_cast<size_t>(len), 0);
            double best = -1.0;
            std::vector<int> bestAssign = codes;
            for (;;) {
                double v;
                try {
                    v = ell2_ratio_value(fam, vecs, codes);
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
            // Distinct coupled assignments at tiny scale, or a greedy start.
            auto imageScore = [&fam, &vecs](int i, int op) {
                const Vector y =
                    mat_vec(fam.members[static_cast<size_t>(op)], vecs[static_cast<size_t>(i)]);
                double s = 0.0;
                for (double z : y) s += z * z;
                return s;
            };
            if (distinctOnly)
                detail::best_distinct_assignment(len, n, imageScore, assign);
            else
                detail::argmax_assignment(len, n, imageScore, assign);
        }
        if (assign.empty()) return 0.0;
        try {
            return ell2_ratio_value(fam, vecs, assign);
        } catch (const DegenerateWitnessError&) {
            return 0.0;
        }
    }
};

bool tiny_exhaustive_scale(const OperatorFamily& family) {
    if (family.size() > 4) return false;
    if (family.domain.dim == 1) return true;
    return is_inf_exponent(family.domain.p) && family.domain.dim <= 4;
}

detail::SearchOutcome run_ell2(const OperatorFamily& family, const SearchConfig& cfg,
                               bool distinctOnly) {
    Ell2Eval eval{&family, distinctOnly};
    detail::VectorSearchSpec spec;
    spec.domain = family.domain;
    spec.maxLen = std::clamp(std::max(family.size(), family.domain.dim), 1, 8);
    if (distinctOnly) spec.maxLen = std::min(spec.maxLen, family.size());
    spec.canonicals = detail::canonical_witness_vectors(family.domain, family.size(), 64);
    spec.exhaustiveSigns = family.domain.dim <= 5;
    spec.exhaustiveMaxLen = 3;
    spec.eval = eval;
    return detail::vector_witness_search(spec, cfg);
}

} // namespace

double ell2_ratio(const OperatorFamily& family, const Witness& w) {
    family.validate();
    validate_witness(family, w);
    return ell2_ratio_value(family, w.vectors, w.opIndices);
}

BoundEstimate ell2_bound_search(const OperatorFamily& family, const SearchConfig& cfg) {
    family.validate();
    cfg.validate();

    BoundEstimate est;
    est.meta.seed = cfg.seed;
    est.meta.searchBudget = cfg.restarts;

    if (is_zero_family(family)) {
        Witness w;
        w.opIndices = {0};
        w.vectors = {Vector(static_cast<size_t>(family.domain.dim), 0.0)};
        w.vectors[0][0] = 1.0;
        est.lowerCertificate = w;
        est.meta.degenerate = true;
        est.upper = 0.0;
        est.upperSource = UpperSource::Analytic;
        est.upperFormula = "zero-family";
        return est;
    }

    const detail::SearchOutcome best = run_ell2(family, cfg, false);
    if (best.degenerate) {
        Witness w;
        w.opIndices = {0};
        w.vectors = {Vector(static_cast<size_t>(family.domain.dim), 0.0)};
        w.vectors[0][0] = 1.0;
        est.lowerCertificate = w;
        est.meta.degenerate = true;
    } else {
        est.lower = best.value;
        est.lowerCertificate.opIndices = best.assignment;
        // The evaluation rescales columns onto the feasible ball; store the
        // witness in that form so re-evaluating it reproduces `lower`.
        std::vector<Vector> vecs = best.vectors;
        if (is_inf_exponent(family.domain.p)) normalize_columns_linf(vecs, family.domain.dim);
        est.lowerCertificate.vectors = std::move(vecs);
    }

    double upper = std::numeric_limits<double>::infinity();
    if (family.size() == 1) {
        const double opNorm =
            exact_operator_norm_or_negative(family.domain, family.codomain, family.members[0]);
        if (opNorm >= 0.0) {
            upper = kGrothendieckUpper * opNorm;
            est.upperSource = UpperSource::Analytic;
            est.upperFormula = "kg-opnorm";
        }
    }
    if (tiny_exhaustive_scale(family)) {
        // Distinct-operator reduction: the unrestricted bound is at most the
        // Grothendieck constant times the distinct-only bound, and the
        // distinct-only grid is complete at this scale.
        const detail::SearchOutcome distinct = run_ell2(family, cfg, true);
        const double exhaustiveUpper = kGrothendieckUpper * distinct.value;
        if (exhaustiveUpper < upper && !distinct.degenerate) {
            upper = exhaustiveUpper;
            est.upperSource = UpperSource::Exhaustive;
            est.upperFormula.clear();
        }
    }
    est.upper = upper;
    return est;
}

DualityResult ell2_duality_check(const OperatorFamily& family, const SearchConfig& cfg) {
    family.validate();
    DualityResult r;
    r.primal = ell2_bound_search(family, cfg);
    r.dual = ell2_bound_search(adjoint_family(family), cfg);
    bool ok = true;
    if (std::isfinite(r.dual.upper)) ok = ok && r.primal.lower <= r.dual.upper + 1e-9;
    if (std::isfinite(r.primal.upper)) ok = ok && r.dual.lower <= r.primal.upper + 1e-9;
    if (tiny_exhaustive_scale(family) || tiny_exhaustive_scale(adjoint_family(family))) {
        const double hi = std::max(r.primal.lower, r.dual.lower);
        const double lo = std::min(r.primal.lower, r.dual.lower);
        if (hi > 0.0) ok = ok && (hi - lo) / hi <= 0.10;
    }
    r.consistent = ok;
    return r;
}

OperatorFamily compose_families(const OperatorFamily& s, const OperatorFamily& t) {
    s.validate();
    t.validate();
    if (t.codomain.dim != s.domain.dim || t.codomain.p != s.domain.p)
        throw ShapeError("compose_families: codomain of T must match domain of S");
    OperatorFamily out;
    out.domain = t.domain;
    out.codomain = s.codomain;
    for (const Matrix& sm : s.members)
        for (const Matrix& tm : t.members) out.members.push_back(mat_mul(sm, tm));
    return out;
}

bool ell2_product_check(const OperatorFamily& s, const OperatorFamily& t, const SearchConfig& cfg) {
    const OperatorFamily st = compose_families(s, t);
    const BoundEstimate composed = ell2_bound_search(st, cfg);
    const BoundEstimate es = ell2_bound_search(s, cfg);
    const BoundEstimate et = ell2_bound_search(t, cfg);
    if (!std::isfinite(es.upper) || !std::isfinite(et.upper)) return true;
    return composed.lower <= es.upper * et.upper + 1e-9;
}

} // namespace randbound
