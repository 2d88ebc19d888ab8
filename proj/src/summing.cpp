#include "randbound/summing.hpp"

#include <algorithm>
#include <cmath>

#include "randbound/gaussian.hpp"
#include "randbound/search.hpp"

namespace randbound {

namespace {

constexpr double kTiny = 1e-14;

void require_linf_single(const OperatorFamily& family, const char* who) {
    family.validate();
    if (!is_inf_exponent(family.domain.p))
        throw ContractError(std::string(who) + ": only linf domains are supported");
    if (family.size() != 1)
        throw ContractError(std::string(who) + ": expects a single-member family");
}

double column_q_norm(const std::vector<Vector>& vs, int m, double q) {
    double s = 0.0;
    for (const Vector& v : vs) {
        const double x = std::fabs(v[static_cast<size_t>(m)]);
        s += (q == 2.0) ? x * x : (q == 1.0 ? x : std::pow(x, q));
    }
    return (q == 2.0) ? std::sqrt(s) : (q == 1.0 ? s : std::pow(s, 1.0 / q));
}

/// Columns with q-norm above 1 are rescaled onto the unit ball; the weak lq
/// norm is then at most 1 and the numerator carries the search signal.
void normalize_columns(std::vector<Vector>& vs, int dim, double q) {
    for (int m = 0; m < dim; ++m) {
        const double c = column_q_norm(vs, m, q);
        if (c > 1.0)
            for (Vector& v : vs) v[static_cast<size_t>(m)] /= c;
    }
}

double strong_l2_of_images(const Matrix& a, const SeqSpace& cod, const std::vector<Vector>& vs) {
    double s = 0.0;
    for (const Vector& v : vs) {
        const double nv = norm(cod, mat_vec(a, v));
        s += nv * nv;
    }
    return std::sqrt(s);
}

/// Any probability weight lambda over the domain coordinates certifies
/// pi2(A) <= max_r (sum_m A_{rm}^2 / lambda_m)^{1/2} for sup-normed images;
/// alternating softmax row weights with the closed-form optimal lambda duals
/// in on the minimum. The returned value is the best certificate seen.
double pietsch_dual_upper(const Matrix& a) {
    const int rows = a.rows, cols = a.cols;
    std::vector<double> b(static_cast<size_t>(rows) * cols);
    std::vector<bool> liveCol(static_cast<size_t>(cols), false);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double v = a.at(r, c) * a.at(r, c);
            b[static_cast<size_t>(r) * cols + c] = v;
            if (v > 0.0) liveCol[static_cast<size_t>(c)] = true;
        }
    int live = 0;
    for (bool f : liveCol)
        if (f) ++live;
    if (live == 0) return 0.0;

    std::vector<double> lambda(static_cast<size_t>(cols), 0.0);
    for (int c = 0; c < cols; ++c)
        if (liveCol[static_cast<size_t>(c)]) lambda[static_cast<size_t>(c)] = 1.0 / live;

    std::vector<double> rowVal(static_cast<size_t>(rows));
    std::vector<double> mu(static_cast<size_t>(rows));
    double best = std::numeric_limits<double>::infinity();
    double beta = 2.0;
    for (int it = 0; it < 300; ++it) {
        double worst = 0.0;
        for (int r = 0; r < rows; ++r) {
            double s = 0.0;
            for (int c = 0; c < cols; ++c) {
                const double brc = b[static_cast<size_t>(r) * cols + c];
                if (brc > 0.0) s += brc / lambda[static_cast<size_t>(c)];
            }
            rowVal[static_cast<size_t>(r)] = s;
            worst = std::max(worst, s);
        }
        best = std::min(best, worst);
        if (worst <= 0.0) break;
        double muSum = 0.0;
        for (int r = 0; r < rows; ++r) {
            mu[static_cast<size_t>(r)] = std::exp(beta * (rowVal[static_cast<size_t>(r)] / worst - 1.0));
            muSum += mu[static_cast<size_t>(r)];
        }
        double lamSum = 0.0;
        for (int c = 0; c < cols; ++c) {
            if (!liveCol[static_cast<size_t>(c)]) continue;
            double w = 0.0;
            for (int r = 0; r < rows; ++r)
                w += mu[static_cast<size_t>(r)] / muSum * b[static_cast<size_t>(r) * cols + c];
            lambda[static_cast<size_t>(c)] = std::sqrt(w);
            lamSum += lambda[static_cast<size_t>(c)];
        }
        for (int c = 0; c < cols; ++c)
            if (liveCol[static_cast<size_t>(c)]) lambda[static_cast<size_t>(c)] /= lamSum;
        beta = std::min(beta * 1.05, 200.0);
    }
    return std::sqrt(best);
}

/// normalizeQ > 0 reapplies the eval-side column normalization so the stored
/// certificate is the witness the reported value was computed from.
BoundEstimate estimate_from_outcome(const detail::SearchOutcome& outcome,
                                    const OperatorFamily& family, const SearchConfig& cfg,
                                    double normalizeQ = 0.0) {
    BoundEstimate est;
    est.meta.seed = cfg.seed;
    est.meta.searchBudget = cfg.restarts;
    if (outcome.degenerate) {
        Witness w;
        w.opIndices = {0};
        w.vectors = {Vector(static_cast<size_t>(family.domain.dim), 0.0)};
        w.vectors[0][0] = 1.0;
        est.lowerCertificate = w;
        est.meta.degenerate = true;
    } else {
        est.lower = outcome.value;
        est.lowerCertificate.opIndices.assign(outcome.vectors.size(), 0);
        std::vector<Vector> vecs = outcome.vectors;
        if (normalizeQ > 0.0) normalize_columns(vecs, family.domain.dim, normalizeQ);
        est.lowerCertificate.vectors = std::move(vecs);
    }
    return est;
}

BoundEstimate zero_family_estimate(const OperatorFamily& family, const SearchConfig& cfg) {
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

BoundEstimate summing_search(const OperatorFamily& family, const SearchConfig& cfg, double q,
                             const char* who) {
    require_linf_single(family, who);
    cfg.validate();
    if (is_zero_family(family)) return zero_family_estimate(family, cfg);
    const Matrix& a = family.members[0];
    const SeqSpace cod = family.codomain;
    const int dim = family.domain.dim;

    detail::VectorSearchSpec spec;
    spec.domain = family.domain;
    spec.maxLen = std::clamp(std::max(cod.dim, dim), 1, 8);
    spec.canonicals = detail::canonical_witness_vectors(family.domain, 1, 64);
    spec.exhaustiveSigns = dim <= 5;
    spec.eval = [&a, cod, dim, q](const std::vector<Vector>& raw, std::vector<int>& assign) {
        assign.assign(raw.size(), 0);
        std::vector<Vector> vecs = raw;
        normalize_columns(vecs, dim, q);
        const double num = strong_l2_of_images(a, cod, vecs);
        const double den = weak_lq_norm(SeqSpace{dim, kInfExponent}, vecs, q);
        if (num < kTiny && den < kTiny) return 0.0;
        if (den < kTiny) return 0.0;
        return num / den;
    };
    const detail::SearchOutcome outcome = detail::vector_witness_search(spec, cfg);
    BoundEstimate est = estimate_from_outcome(outcome, family, cfg, q);

    if (q == 2.0 && (is_inf_exponent(cod.p) || cod.dim == 1)) {
        est.upper = pietsch_dual_upper(a);
        est.upperSource = UpperSource::Analytic;
        est.upperFormula = "pietsch-dual";
    }
    return est;
}

} // namespace

double weak_lq_norm(const SeqSpace& space, const std::vector<Vector>& vs, double q) {
    if (!is_inf_exponent(space.p))
        throw ContractError("weak_lq_norm: only linf domains are supported");
    if (q < 1.0) throw DomainError("weak_lq_norm: q must be >= 1");
    if (vs.empty()) throw DomainError("weak_lq_norm: empty vector list");
    for (const Vector& v : vs)
        if (static_cast<int>(v.size()) != space.dim)
            throw ShapeError("weak_lq_norm: dimension mismatch");
    double best = 0.0;
    for (int m = 0; m < space.dim; ++m) best = std::max(best, column_q_norm(vs, m, q));
    return best;
}

BoundEstimate pi2_search(const OperatorFamily& family, const SearchConfig& cfg) {
    return summing_search(family, cfg, 2.0, "pi2_search");
}

BoundEstimate pi21_search(const OperatorFamily& family, const SearchConfig& cfg) {
    return summing_search(family, cfg, 1.0, "pi21_search");
}

BoundEstimate gaussian_cotype2_search(const OperatorFamily& family, const SearchConfig& cfg,
                                      const McConfig& mc) {
    family.validate();
    cfg.validate();
    mc.validate();
    if (family.size() != 1)
        throw ContractError("gaussian_cotype2_search expects a single-member family");
    if (is_zero_family(family)) return zero_family_estimate(family, cfg);
    const Matrix& a = family.members[0];
    const SeqSpace cod = family.codomain;
    const SeqSpace dom = family.domain;

    // Cheap surrogate during the search; the winner is re-scored at the full
    // sample count so the reported lower keeps the stated confidence.
    McConfig evalCfg = mc;
    evalCfg.samples = std::min<long long>(mc.samples, 5000);

    auto certified = [&a, cod, dom](const std::vector<Vector>& vecs, const McConfig& c) {
        bool allZero = true;
        for (const Vector& v : vecs)
            for (double x : v)
                if (x != 0.0) allZero = false;
        if (allZero) return 0.0;
        const double num = strong_l2_of_images(a, cod, vecs);
        const McEstimate den = gaussian_moment_mc(dom, vecs, 2.0, c);
        if (num < kTiny && den.mean < kTiny) return 0.0;
        if (den.mean + den.halfWidth < kTiny) return 0.0;
        return num / (den.mean + den.halfWidth);
    };

    detail::VectorSearchSpec spec;
    spec.domain = dom;
    spec.maxLen = std::clamp(std::max(cod.dim, dom.dim), 1, 6);
    spec.canonicals = detail::canonical_witness_vectors(dom, 1, 4096);
    spec.exhaustiveSigns = false;
    spec.ascent = dom.dim <= 8;
    spec.ascentCoordCap = 16;
    spec.eval = [&certified, &evalCfg](const std::vector<Vector>& vecs, std::vector<int>& assign) {
        assign.assign(vecs.size(), 0);
        return certified(vecs, evalCfg);
    };
    SearchConfig searchCfg = cfg;
    searchCfg.restarts = std::min(cfg.restarts, 4);
    const detail::SearchOutcome outcome = detail::vector_witness_search(spec, searchCfg);

    BoundEstimate est = estimate_from_outcome(outcome, family, cfg);
    est.meta.samples = mc.samples;
    if (!outcome.degenerate) {
        est.lower = certified(outcome.vectors, mc);
        const McEstimate den = gaussian_moment_mc(dom, outcome.vectors, 2.0, mc);
        est.ci = ConfidenceInterval{est.lower > 0.0 ? den.halfWidth * est.lower / den.mean : 0.0,
                                    mc.level};
    }
    return est;
}

std::pair<double, double> cotype_ratio_bracket(long long n) {
    if (n < 2) throw DomainError("cotype_ratio_bracket: N must be >= 2");
    const double N = static_cast<double>(n);
    return {0.25 * std::sqrt(std::log(N)), std::sqrt(2.0 * std::log(2.0 * N))};
}

} // namespace randbound
