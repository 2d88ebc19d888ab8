#include "randbound/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "randbound/ell2.hpp"
#include "randbound/gaussian.hpp"
#include "randbound/quadrature.hpp"
#include "randbound/rademacher.hpp"
#include "randbound/rng.hpp"
#include "randbound/summing.hpp"

namespace randbound {

namespace {

constexpr double kSqrtHalfPi = 1.2533141373155003; // sqrt(pi/2)
constexpr double kSqrt2 = 1.4142135623730951;

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct RowTimer {
    double start = now_ms();
    double elapsed() const { return now_ms() - start; }
};

RunReport make_report(const std::string& command, const SuiteConfig& cfg) {
    RunReport rep;
    rep.command = command;
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;
    rep.confidence = cfg.confidence;
    rep.budget = cfg.budget;
    rep.withTimestamp = cfg.withTimestamp;
    if (cfg.withTimestamp) rep.timestamp = iso8601_utc_now();
    return rep;
}

void finish_row(ReportRow& row, const RowTimer& timer, const SuiteConfig& cfg) {
    row.elapsedMs = cfg.withTimestamp ? timer.elapsed() : 0.0;
}

McConfig mc_config(const SuiteConfig& cfg, uint64_t stream) {
    McConfig mc;
    mc.samples = cfg.samples;
    mc.seed = substream_seed(cfg.seed, stream);
    mc.level = cfg.confidence;
    return mc;
}

SearchConfig search_config(const SuiteConfig& cfg, uint64_t stream) {
    SearchConfig sc;
    sc.restarts = cfg.budget;
    sc.seed = substream_seed(cfg.seed, stream);
    return sc;
}

Vector random_normal_vector(CounterRng& rng, int n) {
    Vector x(static_cast<size_t>(n));
    for (double& v : x) v = norm_quantile_fast(rng.next_unit());
    return x;
}

Matrix random_matrix(CounterRng& rng, int rows, int cols) {
    Matrix m(rows, cols);
    for (double& v : m.data) v = rng.next_range(-1.0, 1.0);
    return m;
}

OperatorFamily random_functional_family(CounterRng& rng, int dim, int count) {
    OperatorFamily fam;
    fam.domain = linf(dim);
    fam.codomain = scalar_space();
    for (int i = 0; i < count; ++i) fam.members.push_back(random_matrix(rng, 1, dim));
    return fam;
}

// --- verify suites ---

RunReport suite_sudakov(const SuiteConfig& cfg) {
    RunReport rep = make_report("verify sudakov", cfg);
    auto addCase = [&](const std::string& id, const Vector& x, uint64_t stream) {
        RowTimer timer;
        const SudakovResult r = sudakov_check(x, mc_config(cfg, stream));
        ReportRow row;
        row.caseId = id;
        row.check = "sudakov-holds";
        row.lower = r.lhs;
        // Conservative right side: a failure would need a >3 sigma excursion.
        row.upper = 4.0 * (r.rhs.mean - 3.0 * r.rhs.halfWidth);
        row.ciHalfWidth = r.rhs.halfWidth;
        row.pass = row.lower <= row.upper;
        finish_row(row, timer, cfg);
        rep.rows.push_back(std::move(row));
    };
    if (cfg.sudakovN) {
        const long long n = *cfg.sudakovN;
        if (n < 1) throw DomainError("sudakov: n must be >= 1");
        addCase("sudakov/n=" + std::to_string(n), Vector(static_cast<size_t>(n), 1.0), 1);
        return rep;
    }
    for (int i = 0; i < cfg.sudakovCases; ++i) {
        CounterRng rng(substream_seed(cfg.seed, 0x5000 + static_cast<uint64_t>(i)));
        // Sizes log-uniform over [2, 10^4] so the sweep exercises the whole
        // range without the largest sizes dominating the runtime.
        const double logN = rng.next_range(std::log(2.0), std::log(10000.0));
        const long long n = std::llround(std::exp(logN));
        const Vector x = random_normal_vector(rng, static_cast<int>(n));
        addCase("sudakov/case=" + std::to_string(i) + ",n=" + std::to_string(n), x,
                0x5100 + static_cast<uint64_t>(i));
    }
    return rep;
}

RunReport suite_komatsu(const SuiteConfig& cfg) {
    RunReport rep = make_report("verify komatsu", cfg);
    for (int i = 0; i <= 100; ++i) {
        RowTimer timer;
        const double s = 0.1 * i;
        ReportRow row;
        row.caseId = "komatsu/s=" + std::to_string(i / 10) + "." + std::to_string(i % 10);
        row.check = "komatsu-tail-floor";
        row.lower = komatsu_lower_tail(s);
        row.upper = gaussian_tail_integral(s);
        row.pass = row.upper - row.lower >= -1e-12;
        finish_row(row, timer, cfg);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

RunReport suite_expsup(const SuiteConfig& cfg) {
    RunReport rep = make_report("verify expsup", cfg);
    for (long long n = 1; n <= 4096; n *= 2) {
        RowTimer timer;
        const McEstimate est = expsup_gamma_sq_mc(n, mc_config(cfg, 0x6000 + static_cast<uint64_t>(n)));
        ReportRow row;
        row.caseId = "expsup/n=" + std::to_string(n);
        row.check = "expsup-sq-bound";
        row.lower = est.mean + 3.0 * est.halfWidth;
        row.upper = expsup_gamma_sq_bound(n);
        row.ciHalfWidth = est.halfWidth;
        row.pass = row.lower <= row.upper;
        finish_row(row, timer, cfg);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

RunReport suite_comparison(const SuiteConfig& cfg) {
    RunReport rep = make_report("verify comparison-constants", cfg);
    const double exponents[] = {1.0, 2.0, kInfExponent, 3.0};
    for (int i = 0; i < cfg.comparisonCases; ++i) {
        CounterRng rng(substream_seed(cfg.seed, 0x7000 + static_cast<uint64_t>(i)));
        const int dim = 1 + static_cast<int>(rng.next_below(6));
        const int k = 1 + static_cast<int>(rng.next_below(8));
        const SeqSpace space = make_space(dim, exponents[rng.next_below(4)]);
        std::vector<Vector> vs(static_cast<size_t>(k));
        for (Vector& v : vs) {
            v.resize(static_cast<size_t>(dim));
            for (double& x : v) x = rng.next_range(-1.0, 1.0);
        }
        const double rad = rademacher_moment(space, vs, 2.0);
        {
            RowTimer timer;
            const McEstimate gauss =
                gaussian_moment_mc(space, vs, 2.0, mc_config(cfg, 0x7100 + static_cast<uint64_t>(i)));
            ReportRow row;
            row.caseId = "comparison/case=" + std::to_string(i) + "/rad-vs-gauss";
            row.check = "rademacher-vs-gaussian";
            row.lower = rad;
            row.upper = kSqrtHalfPi * (gauss.mean + 3.0 * gauss.halfWidth);
            row.ciHalfWidth = gauss.halfWidth;
            row.pass = row.lower <= row.upper;
            finish_row(row, timer, cfg);
            rep.rows.push_back(std::move(row));
        }
        {
            RowTimer timer;
            ReportRow row;
            row.caseId = "comparison/case=" + std::to_string(i) + "/sqfn-vs-rad";
            row.check = "sqfn-vs-rademacher";
            row.lower = square_function_norm(space, vs);
            row.upper = kSqrt2 * rad;
            row.pass = row.lower <= row.upper + 1e-12;
            finish_row(row, timer, cfg);
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

void add_diag_case(RunReport& rep, const SuiteConfig& cfg, const Vector& a, const std::string& id,
                   uint64_t stream) {
    RowTimer timer;
    const BoundEstimate est = r_bound_search(diagonal_functional_family(a), search_config(cfg, stream));
    const double exact = diag_c0_rbound(a);
    ReportRow row;
    row.caseId = id;
    row.check = "diag-exact";
    row.lower = est.lower;
    row.upper = est.upper;
    row.extra["exact"] = exact;
    row.pass = est.lower >= 0.999 * exact && est.lower <= exact + 1e-9 &&
               std::fabs(est.upper - exact) <= 1e-12;
    finish_row(row, timer, cfg);
    rep.rows.push_back(std::move(row));
}

RunReport suite_diag_exact(const SuiteConfig& cfg) {
    RunReport rep = make_report("verify diag-exact", cfg);
    if (cfg.diagA) {
        add_diag_case(rep, cfg, *cfg.diagA, "diag-exact/a=given", 0x8000);
        return rep;
    }
    for (int i = 0; i < cfg.diagCases; ++i) {
        CounterRng rng(substream_seed(cfg.seed, 0x8000 + static_cast<uint64_t>(i)));
        const int n = 1 + static_cast<int>(rng.next_below(8));
        Vector a = random_normal_vector(rng, n);
        add_diag_case(rep, cfg, a, "diag-exact/case=" + std::to_string(i) + ",n=" + std::to_string(n),
                      0x8100 + static_cast<uint64_t>(i));
    }
    return rep;
}

RunReport suite_identities(const SuiteConfig& cfg) {
    RunReport rep = make_report("verify identities", cfg);
    for (int i = 0; i < cfg.identityCases; ++i) {
        CounterRng rng(substream_seed(cfg.seed, 0x9000 + static_cast<uint64_t>(i)));
        const int dim = 2 + static_cast<int>(rng.next_below(2));
        const int count = 2 + static_cast<int>(rng.next_below(2));
        const OperatorFamily fam = random_functional_family(rng, dim, count);
        const OperatorFamily stacked = stack_family(fam);
        {
            RowTimer timer;
            const double r = r_bound_search(fam, search_config(cfg, 0x9100 + i)).lower;
            const double c2 = cotype2_search(stacked, search_config(cfg, 0x9200 + i)).lower;
            ReportRow row;
            row.caseId = "identities/case=" + std::to_string(i) + "/r-vs-cotype2";
            row.check = "r-eq-cotype2";
            row.lower = r;
            row.upper = c2;
            row.pass = std::fabs(r - c2) <= 0.02 * std::max(r, c2);
            finish_row(row, timer, cfg);
            rep.rows.push_back(std::move(row));
        }
        {
            RowTimer timer;
            const double e2 = ell2_bound_search(fam, search_config(cfg, 0x9300 + i)).lower;
            const double p2 = pi2_search(stacked, search_config(cfg, 0x9400 + i)).lower;
            ReportRow row;
            row.caseId = "identities/case=" + std::to_string(i) + "/ell2-vs-pi2";
            row.check = "ell2-eq-pi2";
            row.lower = e2;
            row.upper = p2;
            row.pass = std::fabs(e2 - p2) <= 0.02 * std::max(e2, p2);
            finish_row(row, timer, cfg);
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

RunReport suite_duality(const SuiteConfig& cfg) {
    RunReport rep = make_report("verify duality", cfg);
    for (int i = 0; i < cfg.dualityCases; ++i) {
        CounterRng rng(substream_seed(cfg.seed, 0xA000 + static_cast<uint64_t>(i)));
        const int dim = 2 + static_cast<int>(rng.next_below(2));
        const int codim = 2 + static_cast<int>(rng.next_below(2));
        const int count = 1 + static_cast<int>(rng.next_below(3));
        OperatorFamily fam;
        fam.domain = linf(dim);
        fam.codomain = linf(codim);
        for (int m = 0; m < count; ++m) fam.members.push_back(random_matrix(rng, codim, dim));
        RowTimer timer;
        const DualityResult dr = ell2_duality_check(fam, search_config(cfg, 0xA100 + i));
        ReportRow row;
        row.caseId = "duality/case=" + std::to_string(i);
        row.check = "ell2-duality";
        row.lower = dr.primal.lower;
        row.upper = dr.dual.lower;
        row.ciHalfWidth = 0.0;
        row.extra["primal_upper"] = dr.primal.upper;
        row.extra["dual_upper"] = dr.dual.upper;
        row.pass = dr.consistent;
        finish_row(row, timer, cfg);
        rep.rows.push_back(std::move(row));
    }
    for (int i = 0; i < cfg.singletonCases; ++i) {
        CounterRng rng(substream_seed(cfg.seed, 0xB000 + static_cast<uint64_t>(i)));
        const int dim = 2 + static_cast<int>(rng.next_below(2));
        OperatorFamily fam;
        fam.domain = linf(dim);
        fam.codomain = linf(dim);
        fam.members.push_back(random_matrix(rng, dim, dim));
        RowTimer timer;
        const BoundEstimate est = ell2_bound_search(fam, search_config(cfg, 0xB100 + i));
        const double opNorm =
            exact_operator_norm_or_negative(fam.domain, fam.codomain, fam.members[0]);
        ReportRow row;
        row.caseId = "duality/singleton=" + std::to_string(i);
        row.check = "singleton-kg";
        row.lower = est.lower;
        row.upper = kGrothendieckUpper * opNorm;
        row.pass = est.lower <= row.upper + 1e-9;
        finish_row(row, timer, cfg);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

RunReport suite_product(const SuiteConfig& cfg) {
    RunReport rep = make_report("verify product", cfg);
    auto addCase = [&](const std::string& id, const OperatorFamily& s, const OperatorFamily& t,
                       uint64_t stream) {
        RowTimer timer;
        const SearchConfig sc = search_config(cfg, stream);
        const OperatorFamily st = compose_families(s, t);
        const BoundEstimate composed = ell2_bound_search(st, sc);
        const BoundEstimate es = ell2_bound_search(s, sc);
        const BoundEstimate et = ell2_bound_search(t, sc);
        ReportRow row;
        row.caseId = id;
        row.check = "ell2-product";
        row.lower = composed.lower;
        row.upper = std::isfinite(es.upper) && std::isfinite(et.upper)
                        ? es.upper * et.upper
                        : std::numeric_limits<double>::infinity();
        row.pass = composed.lower <= row.upper + 1e-9;
        finish_row(row, timer, cfg);
        rep.rows.push_back(std::move(row));
    };
    OperatorFamily id2;
    id2.domain = linf(2);
    id2.codomain = linf(2);
    id2.members.push_back(Matrix::identity(2));
    addCase("product/identity", id2, id2, 0xC000);
    for (int i = 0; i < 10; ++i) {
        CounterRng rng(substream_seed(cfg.seed, 0xC100 + static_cast<uint64_t>(i)));
        OperatorFamily s;
        s.domain = linf(2);
        s.codomain = linf(2);
        s.members.push_back(random_matrix(rng, 2, 2));
        OperatorFamily t;
        t.domain = linf(2);
        t.codomain = linf(2);
        t.members.push_back(random_matrix(rng, 2, 2));
        addCase("product/singletons=" + std::to_string(i), s, t, 0xC200 + i);
    }
    // Coordinate functionals composed with embeddings at N = 2.
    addCase("product/coord-embed", coordinate_functional_family(2), coordinate_embedding_family(2),
            0xC300);
    return rep;
}

} // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "sudakov",    "komatsu",  "expsup",  "comparison-constants",
        "diag-exact", "identities", "duality", "product"};
    return names;
}

RunReport run_verify_suite(const std::string& suite, const SuiteConfig& cfg) {
    if (suite == "sudakov") return suite_sudakov(cfg);
    if (suite == "komatsu") return suite_komatsu(cfg);
    if (suite == "expsup") return suite_expsup(cfg);
    if (suite == "comparison-constants") return suite_comparison(cfg);
    if (suite == "diag-exact") return suite_diag_exact(cfg);
    if (suite == "identities") return suite_identities(cfg);
    if (suite == "duality") return suite_duality(cfg);
    if (suite == "product") return suite_product(cfg);
    throw DomainError("unknown verify suite: " + suite);
}

RunReport run_gap(const std::vector<long long>& ns, const SuiteConfig& cfg) {
    RunReport rep = make_report("gap", cfg);
    // Canonical presentation: the ratio floor is a function of N alone, so
    // rows are emitted in increasing N regardless of argument order.
    std::vector<long long> sorted = ns;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    double prevFloor = -1.0;
    bool floorsIncreasing = true;
    double minIncrement = std::numeric_limits<double>::infinity();
    for (long long n : sorted) {
        if (n < 2) throw DomainError("gap: every N must be >= 2");
        RowTimer timer;
        const OperatorFamily fam = coordinate_functional_family(static_cast<int>(n));
        Witness w;
        w.opIndices.resize(static_cast<size_t>(n));
        w.vectors.resize(static_cast<size_t>(n));
        for (long long i = 0; i < n; ++i) {
            w.opIndices[static_cast<size_t>(i)] = static_cast<int>(i);
            Vector e(static_cast<size_t>(n), 0.0);
            e[static_cast<size_t>(i)] = 1.0;
            w.vectors[static_cast<size_t>(i)] = std::move(e);
        }
        const McEstimate ratio =
            gamma_ratio_mc(fam, w, mc_config(cfg, 0xD000 + static_cast<uint64_t>(n)));
        const auto [bracketLo, bracketHi] = coord_gamma_bracket(n);
        const double mcLower = ratio.mean - ratio.halfWidth;
        const double ratioFloor = std::sqrt(std::log(static_cast<double>(n))) / 4.0;
        ReportRow row;
        row.caseId = "gap/N=" + std::to_string(n);
        row.check = "coord-gamma-bracket";
        row.lower = mcLower;
        row.upper = bracketHi;
        row.ciHalfWidth = ratio.halfWidth;
        row.extra["r_lower"] = diag_c0_rbound(Vector(static_cast<size_t>(n), 1.0));
        row.extra["bracket_lower"] = bracketLo;
        row.extra["ratio_floor"] = ratioFloor;
        // 1.05 certification cushion over the bracket's lower endpoint.
        row.pass = mcLower * 1.05 >= bracketLo && mcLower <= bracketHi + 1e-9;
        finish_row(row, timer, cfg);
        rep.rows.push_back(std::move(row));
        if (prevFloor >= 0.0) {
            floorsIncreasing = floorsIncreasing && ratioFloor > prevFloor;
            minIncrement = std::min(minIncrement, ratioFloor - prevFloor);
        }
        prevFloor = ratioFloor;
    }
    if (sorted.size() >= 2) {
        ReportRow row;
        row.caseId = "gap/ratio-floor-increasing";
        row.check = "ratio-floor-monotone";
        row.lower = minIncrement;
        row.upper = std::numeric_limits<double>::infinity();
        row.pass = floorsIncreasing && minIncrement > 0.0;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

RunReport run_bound(const NamedFamily& nf, const std::string& constant, const SuiteConfig& cfg) {
    RunReport rep = make_report("bound " + constant, cfg);
    const SearchConfig sc = search_config(cfg, 0xE000);
    const McConfig mc = mc_config(cfg, 0xE100);
    BoundEstimate est;
    if (constant == "r")
        est = r_bound_search(nf.family, sc);
    else if (constant == "gamma")
        est = gamma_bound_search(nf.family, sc, mc);
    else if (constant == "ell2")
        est = ell2_bound_search(nf.family, sc);
    else if (constant == "pi2")
        est = pi2_search(nf.family, sc);
    else if (constant == "pi21")
        est = pi21_search(nf.family, sc);
    else if (constant == "cotype2")
        est = cotype2_search(nf.family, sc);
    else if (constant == "cotype2gamma")
        est = gaussian_cotype2_search(nf.family, sc, mc);
    else
        throw DomainError("unknown constant: " + constant);

    RowTimer timer;
    ReportRow row;
    row.caseId = nf.name + "/" + constant;
    row.check = "bound-bracket";
    row.lower = est.lower;
    row.upper = est.upper;
    row.ciHalfWidth = est.ci ? est.ci->halfWidth : 0.0;
    row.pass = est.lower <= est.upper + row.ciHalfWidth + 1e-9;
    finish_row(row, timer, cfg);
    rep.rows.push_back(std::move(row));
    return rep;
}

} // namespace randbound
