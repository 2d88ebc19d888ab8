#include "randbound/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "randbound/parallel.hpp"
#include "randbound/rng.hpp"
#include "randbound/search.hpp"

namespace randbound {

namespace {

constexpr int64_t kChunk = 4096;
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kTiny = 1e-14;

/// |g| draw from one uniform: P(|g| <= t) = 2 Phi(t) - 1.
inline double folded_normal_from_unit(double u) { return norm_quantile_fast(0.5 + 0.5 * u); }

struct SparseVec {
    std::vector<int> idx;
    std::vector<double> val;
};

SparseVec to_sparse(const Vector& v) {
    SparseVec s;
    for (int m = 0; m < static_cast<int>(v.size()); ++m) {
        if (v[static_cast<size_t>(m)] != 0.0) {
            s.idx.push_back(m);
            s.val.push_back(v[static_cast<size_t>(m)]);
        }
    }
    return s;
}

/// Accumulates sum_j g_j v_j into a dense scratch buffer, tracking touched
/// coordinates so the norm pass is O(total nonzeros) per sample.
struct RandomSumEvaluator {
    const std::vector<SparseVec>* terms;
    SeqSpace space;
    uint64_t seed;
    Vector buffer;
    std::vector<int> touched;

    RandomSumEvaluator(const std::vector<SparseVec>& t, const SeqSpace& s, uint64_t sd)
        : terms(&t), space(s), seed(sd), buffer(static_cast<size_t>(s.dim), 0.0) {}

    double norm_of_sample(int64_t sample) {
        const CounterRng rng(seed);
        const uint64_t base = static_cast<uint64_t>(sample) * terms->size();
        for (size_t j = 0; j < terms->size(); ++j) {
            const double g = normal_from_unit(rng.unit_at(base + j));
            const SparseVec& sv = (*terms)[j];
            for (size_t t = 0; t < sv.idx.size(); ++t) {
                const int m = sv.idx[t];
                if (buffer[static_cast<size_t>(m)] == 0.0) touched.push_back(m);
                buffer[static_cast<size_t>(m)] += g * sv.val[t];
            }
        }
        double out;
        if (is_inf_exponent(space.p)) {
            out = 0.0;
            for (int m : touched) out = std::max(out, std::fabs(buffer[static_cast<size_t>(m)]));
        } else if (space.p == 1.0) {
            out = 0.0;
            for (int m : touched) out += std::fabs(buffer[static_cast<size_t>(m)]);
        } else if (space.p == 2.0) {
            out = 0.0;
            for (int m : touched) {
                const double x = buffer[static_cast<size_t>(m)];
                out += x * x;
            }
            out = std::sqrt(out);
        } else {
            out = 0.0;
            for (int m : touched)
                out += std::pow(std::fabs(buffer[static_cast<size_t>(m)]), space.p);
            out = std::pow(out, 1.0 / space.p);
        }
        for (int m : touched) buffer[static_cast<size_t>(m)] = 0.0;
        touched.clear();
        return out;
    }
};

McEstimate estimate_root_from_sums(const McConfig& cfg, double q, const SumPair& s) {
    const double n = static_cast<double>(cfg.samples);
    const double mean = s.sum / n;
    const double var = std::max(0.0, (s.sumSq - n * mean * mean) / (n - 1.0));
    const double hw = z_critical(cfg.level) * std::sqrt(var / n);
    McEstimate e;
    const double root = mean > 0.0 ? std::pow(mean, 1.0 / q) : 0.0;
    e.mean = root;
    e.halfWidth = mean > 0.0 ? hw * root / (q * mean) : hw;
    e.samples = cfg.samples;
    e.seed = cfg.seed;
    return e;
}

/// Chunked mean/variance accumulation with per-chunk evaluator state.
template <typename MakeEval>
SumPair chunked_sums(int64_t samples, MakeEval make) {
    SumPair total;
    parallel_chunks(
        samples, kChunk,
        [&make](int64_t b, int64_t e, double* out) {
            auto eval = make();
            double s = 0.0, s2 = 0.0;
            for (int64_t i = b; i < e; ++i) {
                const double v = eval(i);
                s += v;
                s2 += v * v;
            }
            out[0] = s;
            out[1] = s2;
        },
        2,
        [&total](const double* r) {
            total.sum += r[0];
            total.sumSq += r[1];
        });
    return total;
}

/// Detects lists of single-coordinate vectors with pairwise distinct supports
/// and one common absolute weight: on linf the randomized sum's norm is then
/// weight * sup_j |g_j|, which samples in O(1) per draw.
bool disjoint_equal_singletons(const std::vector<SparseVec>& terms, int dim, double& weight) {
    std::vector<bool> seen(static_cast<size_t>(dim), false);
    weight = 0.0;
    for (const SparseVec& s : terms) {
        if (s.idx.size() != 1) return false;
        if (seen[static_cast<size_t>(s.idx[0])]) return false;
        seen[static_cast<size_t>(s.idx[0])] = true;
        const double w = std::fabs(s.val[0]);
        if (weight == 0.0)
            weight = w;
        else if (w != weight)
            return false;
    }
    return weight > 0.0;
}

// --- quantile table for the sup of a fixed block of weighted |gaussians| ---
//
// L(t) = sum_j log erf(t / (sqrt2 w_j)) is the log-CDF of max_j |g_j| w_j.
// The table stores L and L' on a uniform t-grid; inversion is a binary search
// plus Newton steps on the cubic Hermite interpolant, so one uniform sample
// yields the block sup in O(log T) regardless of the block size.
struct SupQuantileTable {
    double tLo = 0.0, tHi = 0.0, step = 0.0;
    std::vector<double> logCdf;
    std::vector<double> dLogCdf;

    static SupQuantileTable build(const double* w, size_t count, int gridSize) {
        SupQuantileTable tab;
        double wmax = 0.0;
        for (size_t j = 0; j < count; ++j) wmax = std::max(wmax, w[j]);
        tab.tHi = wmax * 8.8; // per-element exceed prob ~7e-18 beyond this
        auto logCdfAt = [&](double t) {
            double L = 0.0;
            for (size_t j = 0; j < count; ++j) {
                L += std::log(std::erf(t / (kSqrt2 * w[j])));
                if (L < -744.0) return -744.0;
            }
            return L;
        };
        double lo = wmax * 1e-6, hi = tab.tHi;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (logCdfAt(mid) < -36.0)
                lo = mid;
            else
                hi = mid;
        }
        tab.tLo = lo;
        tab.step = (tab.tHi - tab.tLo) / (gridSize - 1);
        tab.logCdf.resize(static_cast<size_t>(gridSize));
        tab.dLogCdf.resize(static_cast<size_t>(gridSize));
        const double c = std::sqrt(2.0 / 3.14159265358979323846);
        for (int i = 0; i < gridSize; ++i) {
            const double t = tab.tLo + i * tab.step;
            double L = 0.0, dL = 0.0;
            for (size_t j = 0; j < count; ++j) {
                const double z = t / (kSqrt2 * w[j]);
                if (z > 6.3) continue; // factor is 1 to double precision
                const double cdf = std::erf(z);
                L += std::log(cdf);
                dL += c / w[j] * std::exp(-z * z) / cdf;
            }
            tab.logCdf[static_cast<size_t>(i)] = std::max(L, -744.0);
            tab.dLogCdf[static_cast<size_t>(i)] = dL;
        }
        return tab;
    }

    double invert(double logu) const {
        if (logu <= logCdf.front()) return tLo;
        if (logu >= logCdf.back()) return tHi;
        size_t lo = 0, hi = logCdf.size() - 1;
        while (hi - lo > 1) {
            const size_t mid = (lo + hi) / 2;
            if (logCdf[mid] <= logu)
                lo = mid;
            else
                hi = mid;
        }
        const double L0 = logCdf[lo], L1 = logCdf[hi];
        const double d0 = dLogCdf[lo] * step, d1 = dLogCdf[hi] * step;
        // Hermite cubic in s over [0,1]; Newton from the secant estimate.
        double s = (L1 > L0) ? (logu - L0) / (L1 - L0) : 0.5;
        for (int it = 0; it < 4; ++it) {
            const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
            const double h10 = s * (1 - s) * (1 - s);
            const double h01 = s * s * (3 - 2 * s);
            const double h11 = s * s * (s - 1);
            const double val = h00 * L0 + h10 * d0 + h01 * L1 + h11 * d1 - logu;
            const double dh00 = 6 * s * (s - 1);
            const double dh10 = (1 - s) * (1 - 3 * s);
            const double dh01 = -dh00;
            const double dh11 = s * (3 * s - 2);
            const double der = dh00 * L0 + dh10 * d0 + dh01 * L1 + dh11 * d1;
            if (der > 0.0) s -= val / der;
            s = std::clamp(s, 0.0, 1.0);
        }
        return tLo + (static_cast<double>(lo) + s) * step;
    }
};

McEstimate expected_sup_impl(const Vector& x, const McConfig& cfg, bool forceExact) {
    cfg.validate();
    if (x.empty()) throw DomainError("expected_sup_mc: empty vector");
    Vector w;
    w.reserve(x.size());
    for (double xi : x)
        if (xi != 0.0) w.push_back(std::fabs(xi));
    McEstimate zero{0.0, 0.0, cfg.samples, cfg.seed};
    if (w.empty()) return zero;
    std::sort(w.begin(), w.end(), std::greater<double>());
    const int64_t n = static_cast<int64_t>(w.size());
    const uint64_t seed = cfg.seed;

    SumPair sums;
    if (!forceExact && w.front() == w.back()) {
        // Equal weights: invert the closed-form block CDF, one uniform each.
        const double weight = w.front();
        sums = chunked_sums(cfg.samples, [seed, weight, n]() {
            return [seed, weight, n](int64_t i) {
                const CounterRng rng(seed);
                return weight * sup_abs_normal_quantile(rng.unit_at(static_cast<uint64_t>(i)), n);
            };
        });
    } else if (forceExact || n <= 256) {
        sums = chunked_sums(cfg.samples, [seed, &w, n]() {
            return [seed, &w, n](int64_t i) {
                const CounterRng rng(seed);
                const uint64_t base = static_cast<uint64_t>(i) * static_cast<uint64_t>(n);
                double m = 0.0;
                for (int64_t j = 0; j < n; ++j)
                    m = std::max(m, w[static_cast<size_t>(j)] *
                                        folded_normal_from_unit(rng.unit_at(base + j)));
                return m;
            };
        });
    } else {
        // Top block exact, remainder through its block-sup quantile table.
        const int64_t top = 16;
        const SupQuantileTable table =
            SupQuantileTable::build(w.data() + top, static_cast<size_t>(n - top), 2048);
        sums = chunked_sums(cfg.samples, [seed, &w, top, &table]() {
            return [seed, &w, top, &table](int64_t i) {
                const CounterRng rng(seed);
                const uint64_t base = static_cast<uint64_t>(i) * static_cast<uint64_t>(top + 1);
                double m = 0.0;
                for (int64_t j = 0; j < top; ++j)
                    m = std::max(m, w[static_cast<size_t>(j)] *
                                        folded_normal_from_unit(rng.unit_at(base + j)));
                const double u = rng.unit_at(base + static_cast<uint64_t>(top));
                return std::max(m, table.invert(std::log(u)));
            };
        });
    }
    return estimate_root_from_sums(cfg, 1.0, sums);
}

} // namespace

McEstimate gaussian_moment_mc(const SeqSpace& space, const std::vector<Vector>& vs, double q,
                              const McConfig& cfg) {
    cfg.validate();
    if (vs.empty()) throw DomainError("gaussian_moment_mc: empty vector list");
    if (q < 1.0) throw DomainError("gaussian_moment_mc: q must be >= 1");
    std::vector<SparseVec> terms;
    terms.reserve(vs.size());
    for (const Vector& v : vs) {
        if (static_cast<int>(v.size()) != space.dim)
            throw ShapeError("gaussian_moment_mc: dimension mismatch");
        terms.push_back(to_sparse(v));
    }
    const uint64_t seed = cfg.seed;
    double weight = 0.0;
    SumPair sums;
    if (is_inf_exponent(space.p) && disjoint_equal_singletons(terms, space.dim, weight)) {
        const int64_t k = static_cast<int64_t>(terms.size());
        sums = chunked_sums(cfg.samples, [seed, weight, k, q]() {
            return [seed, weight, k, q](int64_t i) {
                const CounterRng rng(seed);
                const double s =
                    weight * sup_abs_normal_quantile(rng.unit_at(static_cast<uint64_t>(i)), k);
                return q == 2.0 ? s * s : std::pow(s, q);
            };
        });
    } else {
        sums = chunked_sums(cfg.samples, [&terms, space, seed, q]() {
            auto eval = std::make_shared<RandomSumEvaluator>(terms, space, seed);
            return [eval, q](int64_t i) {
                const double s = eval->norm_of_sample(i);
                return q == 2.0 ? s * s : std::pow(s, q);
            };
        });
    }
    return estimate_root_from_sums(cfg, q, sums);
}

McEstimate expected_sup_mc(const Vector& x, const McConfig& cfg) {
    return expected_sup_impl(x, cfg, false);
}

namespace detail {
McEstimate expected_sup_mc_exact(const Vector& x, const McConfig& cfg) {
    return expected_sup_impl(x, cfg, true);
}
} // namespace detail

SudakovResult sudakov_check(const Vector& x, const McConfig& cfg) {
    if (x.empty()) throw DomainError("sudakov_check: empty vector");
    const double n = static_cast<double>(x.size());
    double sumSq = 0.0;
    for (double xi : x) sumSq += xi * xi;
    SudakovResult r;
    r.lhs = std::sqrt(std::log(n) / n * sumSq);
    r.rhs = expected_sup_mc(x, cfg);
    r.holds = r.lhs <= 4.0 * (r.rhs.mean + r.rhs.halfWidth);
    return r;
}

double komatsu_lower_tail(double s) {
    return 2.0 / (s + std::sqrt(s * s + 4.0)) * std::exp(-s * s / 2.0);
}

double theta(double y) {
    if (!(y > 0.0)) throw DomainError("theta: y must be positive");
    return y * std::exp(-1.0 / (2.0 * y));
}

double theta_floor(double y) {
    if (!(y > 0.0)) throw DomainError("theta_floor: y must be positive");
    return std::exp(-1.0 / y);
}

double expsup_gamma_sq_bound(long long n) {
    if (n < 1) throw DomainError("expsup_gamma_sq_bound: n must be >= 1");
    return 2.0 * std::log(2.0 * static_cast<double>(n));
}

McEstimate expsup_gamma_sq_mc(long long n, const McConfig& cfg) {
    if (n < 1) throw DomainError("expsup_gamma_sq_mc: n must be >= 1");
    cfg.validate();
    const uint64_t seed = cfg.seed;
    const SumPair sums = chunked_sums(cfg.samples, [seed, n]() {
        return [seed, n](int64_t i) {
            const CounterRng rng(seed);
            const double s = sup_abs_normal_quantile(rng.unit_at(static_cast<uint64_t>(i)), n);
            return s * s;
        };
    });
    return estimate_root_from_sums(cfg, 1.0, sums);
}

McEstimate gamma_ratio_mc(const OperatorFamily& family, const Witness& w, const McConfig& cfg) {
    family.validate();
    validate_witness(family, w);
    cfg.validate();
    const int k = w.size();
    std::vector<Vector> images(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
        images[static_cast<size_t>(i)] =
            apply(family, w.opIndices[static_cast<size_t>(i)], w.vectors[static_cast<size_t>(i)]);

    McEstimate out;
    out.samples = cfg.samples;
    out.seed = cfg.seed;

    if (family.codomain.dim == 1) {
        // E |sum g_n y_n|^2 = sum y_n^2 by independence; no sampling needed.
        double numSq = 0.0;
        for (const Vector& y : images) numSq += y[0] * y[0];
        const double num = std::sqrt(numSq);
        const McEstimate den = gaussian_moment_mc(family.domain, w.vectors, 2.0, cfg);
        if (num < kTiny && den.mean < kTiny) return out;
        if (den.mean <= den.halfWidth)
            throw DegenerateWitnessError("gamma_ratio_mc: denominator not resolved");
        out.mean = num / den.mean;
        const double certified = num / (den.mean + den.halfWidth);
        out.halfWidth = out.mean - certified;
        return out;
    }

    // Paired sampling: one gaussian vector drives numerator and denominator.
    std::vector<SparseVec> numTerms, denTerms;
    for (const Vector& y : images) numTerms.push_back(to_sparse(y));
    for (const Vector& v : w.vectors) denTerms.push_back(to_sparse(v));
    const SeqSpace cod = family.codomain, dom = family.domain;
    const uint64_t seed = cfg.seed;
    SumPair numSums, denSums;
    parallel_chunks(
        cfg.samples, kChunk,
        [&](int64_t b, int64_t e, double* outLanes) {
            RandomSumEvaluator numEval(numTerms, cod, seed);
            RandomSumEvaluator denEval(denTerms, dom, seed);
            double n1 = 0.0, n2 = 0.0, d1 = 0.0, d2 = 0.0;
            for (int64_t i = b; i < e; ++i) {
                const double nv = numEval.norm_of_sample(i);
                const double dv = denEval.norm_of_sample(i);
                n1 += nv * nv;
                n2 += nv * nv * nv * nv;
                d1 += dv * dv;
                d2 += dv * dv * dv * dv;
            }
            outLanes[0] = n1;
            outLanes[1] = n2;
            outLanes[2] = d1;
            outLanes[3] = d2;
        },
        4,
        [&](const double* r) {
            numSums.sum += r[0];
            numSums.sumSq += r[1];
            denSums.sum += r[2];
            denSums.sumSq += r[3];
        });
    const McEstimate num = estimate_root_from_sums(cfg, 2.0, numSums);
    const McEstimate den = estimate_root_from_sums(cfg, 2.0, denSums);
    if (num.mean < kTiny && den.mean < kTiny) return out;
    if (den.mean <= den.halfWidth)
        throw DegenerateWitnessError("gamma_ratio_mc: denominator not resolved");
    out.mean = num.mean / den.mean;
    const double certified = std::max(0.0, num.mean - num.halfWidth) / (den.mean + den.halfWidth);
    out.halfWidth = out.mean - certified;
    return out;
}

std::pair<double, double> coord_gamma_bracket(long long n) {
    if (n < 2) throw DomainError("coord_gamma_bracket: N must be >= 2");
    const double N = static_cast<double>(n);
    return {std::sqrt(N / (2.0 * std::log(2.0 * N))), 4.0 * std::sqrt(N / std::log(N))};
}

BoundEstimate gamma_bound_search(const OperatorFamily& family, const SearchConfig& cfg,
                                 const McConfig& mc) {
    family.validate();
    cfg.validate();
    mc.validate();
    BoundEstimate est;
    est.meta.seed = cfg.seed;
    est.meta.samples = mc.samples;
    est.meta.searchBudget = cfg.restarts;

    const int n = family.size();
    Witness fallback;
    fallback.opIndices = {0};
    fallback.vectors = {Vector(static_cast<size_t>(family.domain.dim), 0.0)};
    fallback.vectors[0][0] = 1.0;

    if (is_zero_family(family)) {
        est.lower = 0.0;
        est.upper = 0.0;
        est.upperSource = UpperSource::Analytic;
        est.upperFormula = "zero-family";
        est.lowerCertificate = fallback;
        est.meta.degenerate = true;
        return est;
    }

    // Cheap deterministic surrogate during the search; the winner is then
    // re-evaluated at the full sample count.
    McConfig evalCfg = mc;
    evalCfg.samples = std::min<long long>(mc.samples, 20000);

    const bool scalarCodomain = family.codomain.dim == 1;
    detail::VectorSearchSpec spec;
    spec.domain = family.domain;
    spec.maxLen = std::clamp(n, 1, 6);
    spec.canonicals = detail::canonical_witness_vectors(family.domain, n, 4096);
    spec.exhaustiveSigns = false;
    spec.ascent = family.domain.dim <= 8;
    spec.ascentCoordCap = 16;
    spec.eval = [&family, &evalCfg, scalarCodomain, n](const std::vector<Vector>& vecs,
                                                       std::vector<int>& assign) {
        const int len = static_cast<int>(vecs.size());
        double num = 0.0;
        if (scalarCodomain) {
            const double numSq = detail::argmax_assignment(
                len, n,
                [&](int i, int op) {
                    const double y = mat_vec(family.members[static_cast<size_t>(op)],
                                             vecs[static_cast<size_t>(i)])[0];
                    return y * y;
                },
                assign);
            num = std::sqrt(std::max(0.0, numSq));
        } else {
            // Heuristic per-slot assignment by image euclidean size.
            detail::argmax_assignment(
                len, n,
                [&](int i, int op) {
                    const Vector y = mat_vec(family.members[static_cast<size_t>(op)],
                                             vecs[static_cast<size_t>(i)]);
                    double s = 0.0;
                    for (double v : y) s += v * v;
                    return s;
                },
                assign);
            Witness w;
            w.opIndices = assign;
            w.vectors = vecs;
            bool allZero = true;
            for (const Vector& v : vecs)
                for (double x : v)
                    if (x != 0.0) allZero = false;
            if (allZero) return 0.0;
            try {
                const McEstimate e = gamma_ratio_mc(family, w, evalCfg);
                return std::max(0.0, e.mean - e.halfWidth);
            } catch (const DegenerateWitnessError&) {
                return 0.0;
            }
        }
        bool allZero = true;
        for (const Vector& v : vecs)
            for (double x : v)
                if (x != 0.0) allZero = false;
        if (allZero) return 0.0;
        const McEstimate den = gaussian_moment_mc(family.domain, vecs, 2.0, evalCfg);
        if (num < kTiny && den.mean < kTiny) return 0.0;
        if (den.mean <= den.halfWidth) return 0.0;
        return num / (den.mean + den.halfWidth);
    };

    SearchConfig searchCfg = cfg;
    searchCfg.restarts = std::min(cfg.restarts, 8);
    const detail::SearchOutcome outcome = detail::vector_witness_search(spec, searchCfg);

    if (outcome.degenerate) {
        est.lower = 0.0;
        est.lowerCertificate = fallback;
        est.meta.degenerate = true;
    } else {
        Witness w;
        w.opIndices = outcome.assignment;
        w.vectors = outcome.vectors;
        const McEstimate full = gamma_ratio_mc(family, w, mc);
        est.lower = std::max(0.0, full.mean - full.halfWidth);
        est.lowerCertificate = w;
        est.ci = ConfidenceInterval{full.halfWidth, mc.level};
    }

    if (detect_coordinate_functionals(family) && n >= 2) {
        est.upper = coord_gamma_bracket(n).second;
        est.upperSource = UpperSource::Analytic;
        est.upperFormula = "coord-gamma-upper";
    }
    return est;
}

} // namespace randbound
