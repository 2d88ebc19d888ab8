#include <cmath>

#include <doctest.h>

#include "randbound/ell2.hpp"
#include "randbound/rng.hpp"
#include "randbound/spaces.hpp"
#include "randbound/summing.hpp"

using namespace randbound;

namespace {

OperatorFamily singleton(const Matrix& m, const SeqSpace& dom, const SeqSpace& cod) {
    OperatorFamily fam;
    fam.domain = dom;
    fam.codomain = cod;
    fam.members.push_back(m);
    return fam;
}

Matrix random_matrix(CounterRng& rng, int rows, int cols) {
    Matrix m(rows, cols);
    for (double& x : m.data) x = rng.next_range(-1.0, 1.0);
    return m;
}

} // namespace

TEST_CASE("ell2_ratio examples") {
    {
        const OperatorFamily id = singleton(Matrix::identity(2), linf(2), linf(2));
        Witness w;
        w.opIndices = {0};
        w.vectors = {{1.0, 0.0}};
        CHECK(ell2_ratio(id, w) == doctest::Approx(1.0));
    }
    {
        // coordinate embeddings from the scalars into linf_4
        const OperatorFamily emb = coordinate_embedding_family(4);
        Witness w;
        for (int i = 0; i < 4; ++i) {
            w.opIndices.push_back(i);
            w.vectors.push_back({1.0});
        }
        CHECK(ell2_ratio(emb, w) == doctest::Approx(0.5)); // 1 / sqrt(4)
    }
    {
        CounterRng rng(41);
        OperatorFamily fam = singleton(random_matrix(rng, 2, 2), linf(2), linf(2));
        Witness w;
        w.opIndices = {0, 0};
        w.vectors = {{1.0, -0.5}, {0.25, 1.0}};
        const double base = ell2_ratio(fam, w);
        for (double& x : fam.members[0].data) x *= 1.7;
        CHECK(ell2_ratio(fam, w) == doctest::Approx(1.7 * base).epsilon(1e-12));
    }
}

TEST_CASE("grothendieck constant upper bound stays in its sane range") {
    CHECK(kGrothendieckUpper >= 1.5);
    CHECK(kGrothendieckUpper <= 1.8);
}

TEST_CASE("ell2_bound_search singleton identity") {
    SearchConfig cfg;
    cfg.restarts = 16;
    const BoundEstimate est = ell2_bound_search(singleton(Matrix::identity(2), linf(2), linf(2)), cfg);
    CHECK(est.lower >= 1.0 - 1e-12);
    CHECK(est.upper == doctest::Approx(kGrothendieckUpper).epsilon(1e-12));
    CHECK(est.lower <= est.upper + 1e-9);
    // certificate replay
    const double replay =
        ell2_ratio(singleton(Matrix::identity(2), linf(2), linf(2)), est.lowerCertificate);
    CHECK(replay == doctest::Approx(est.lower).epsilon(1e-9));
}

TEST_CASE("ell2_bound_search zero family") {
    OperatorFamily zero;
    zero.domain = linf(2);
    zero.codomain = linf(2);
    zero.members.push_back(Matrix::zero(2, 2));
    SearchConfig cfg;
    const BoundEstimate est = ell2_bound_search(zero, cfg);
    CHECK(est.lower == 0.0);
    CHECK(est.upper == 0.0);
    CHECK(est.meta.degenerate);
}

TEST_CASE("singleton searches stay under the Grothendieck times operator-norm bound") {
    CounterRng rng(42);
    SearchConfig cfg;
    cfg.restarts = 16;
    for (int it = 0; it < 30; ++it) {
        const int dim = 2 + static_cast<int>(rng.next_below(2));
        const Matrix m = random_matrix(rng, dim, dim);
        const OperatorFamily fam = singleton(m, linf(dim), linf(dim));
        cfg.seed = 900 + static_cast<uint64_t>(it);
        const BoundEstimate est = ell2_bound_search(fam, cfg);
        const double opNorm = exact_operator_norm_or_negative(fam.domain, fam.codomain, m);
        CHECK(est.lower <= kGrothendieckUpper * opNorm + 1e-9);
    }
}

TEST_CASE("ell2 certificates replay to the reported lower on random families") {
    CounterRng rng(48);
    SearchConfig cfg;
    cfg.restarts = 8;
    for (int it = 0; it < 12; ++it) {
        OperatorFamily fam;
        const int dim = 2 + static_cast<int>(rng.next_below(2));
        fam.domain = linf(dim);
        fam.codomain = linf(2 + static_cast<int>(rng.next_below(2)));
        const int count = 1 + static_cast<int>(rng.next_below(3));
        for (int i = 0; i < count; ++i)
            fam.members.push_back(random_matrix(rng, fam.codomain.dim, dim));
        cfg.seed = 1500 + static_cast<uint64_t>(it);
        const BoundEstimate est = ell2_bound_search(fam, cfg);
        REQUIRE_FALSE(est.meta.degenerate);
        CHECK(ell2_ratio(fam, est.lowerCertificate) == doctest::Approx(est.lower).epsilon(1e-9));
    }
}

TEST_CASE("random witness ratios never exceed a finite reported upper") {
    CounterRng rng(47);
    SearchConfig cfg;
    cfg.restarts = 4;
    for (int it = 0; it < 20; ++it) {
        const int dim = 2 + static_cast<int>(rng.next_below(2));
        const OperatorFamily fam = singleton(random_matrix(rng, dim, dim), linf(dim), linf(dim));
        cfg.seed = 1200 + static_cast<uint64_t>(it);
        const BoundEstimate est = ell2_bound_search(fam, cfg);
        REQUIRE(std::isfinite(est.upper));
        for (int w = 0; w < 10; ++w) {
            Witness witness;
            const int len = 1 + static_cast<int>(rng.next_below(3));
            for (int i = 0; i < len; ++i) {
                witness.opIndices.push_back(0);
                Vector v(static_cast<size_t>(dim));
                for (double& x : v) x = rng.next_range(-1.0, 1.0);
                witness.vectors.push_back(std::move(v));
            }
            CHECK(ell2_ratio(fam, witness) <= est.upper + 1e-9);
        }
    }
}

TEST_CASE("distinct reduction bounds the unrestricted search at tiny scale") {
    CounterRng rng(43);
    SearchConfig cfg;
    cfg.restarts = 24;
    for (int it = 0; it < 15; ++it) {
        OperatorFamily fam;
        const int dim = 2 + static_cast<int>(rng.next_below(2));
        fam.domain = linf(dim);
        fam.codomain = linf(dim);
        const int count = 2 + static_cast<int>(rng.next_below(2));
        for (int i = 0; i < count; ++i) fam.members.push_back(random_matrix(rng, dim, dim));
        cfg.seed = 800 + static_cast<uint64_t>(it);
        const BoundEstimate est = ell2_bound_search(fam, cfg);
        // multi-member tiny families get the exhaustive distinct-based upper
        REQUIRE(est.upperSource == UpperSource::Exhaustive);
        CHECK(est.lower <= est.upper + 1e-9);
    }
}

TEST_CASE("ell2 duality") {
    SearchConfig cfg;
    cfg.restarts = 16;
    {
        Matrix m(2, 2);
        m.at(0, 0) = 1.0;
        m.at(0, 1) = 2.0;
        m.at(1, 0) = 3.0;
        m.at(1, 1) = 4.0;
        const DualityResult r = ell2_duality_check(singleton(m, linf(2), linf(2)), cfg);
        CHECK(r.consistent);
    }
    {
        const DualityResult r =
            ell2_duality_check(singleton(Matrix::identity(2), linf(2), linf(2)), cfg);
        CHECK(r.consistent);
        CHECK(r.primal.lower == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.dual.lower == doctest::Approx(1.0).epsilon(1e-9));
    }
    {
        Matrix d(2, 2);
        d.at(0, 0) = 2.0;
        d.at(1, 1) = 3.0;
        const DualityResult r = ell2_duality_check(singleton(d, linf(2), linf(2)), cfg);
        CHECK(r.consistent);
        CHECK(r.primal.lower >= 3.0 - 1e-9);
        CHECK(r.dual.lower >= 3.0 - 1e-9);
    }
}

TEST_CASE("duality check is fixed under swapping the family with its adjoint") {
    CounterRng rng(44);
    SearchConfig cfg;
    cfg.restarts = 8;
    OperatorFamily fam;
    fam.domain = linf(2);
    fam.codomain = linf(3);
    fam.members.push_back(random_matrix(rng, 3, 2));
    fam.members.push_back(random_matrix(rng, 3, 2));
    const DualityResult a = ell2_duality_check(fam, cfg);
    const DualityResult b = ell2_duality_check(adjoint_family(fam), cfg);
    CHECK(a.primal.lower == b.dual.lower);
    CHECK(a.dual.lower == b.primal.lower);
    CHECK(a.consistent == b.consistent);
}

TEST_CASE("ell2 products") {
    SearchConfig cfg;
    cfg.restarts = 8;
    const OperatorFamily id = singleton(Matrix::identity(2), linf(2), linf(2));
    CHECK(ell2_product_check(id, id, cfg));

    CounterRng rng(45);
    for (int it = 0; it < 8; ++it) {
        cfg.seed = 700 + static_cast<uint64_t>(it);
        const OperatorFamily s = singleton(random_matrix(rng, 2, 2), linf(2), linf(2));
        const OperatorFamily t = singleton(random_matrix(rng, 2, 2), linf(2), linf(2));
        CHECK(ell2_product_check(s, t, cfg));
    }

    // coordinate functionals after coordinate embeddings at N = 2
    CHECK(ell2_product_check(coordinate_functional_family(2), coordinate_embedding_family(2), cfg));

    OperatorFamily mismatched = coordinate_embedding_family(3);
    CHECK_THROWS_AS(compose_families(coordinate_functional_family(2), mismatched), ShapeError);
}

TEST_CASE("ell2 bound of the coordinate family matches pi2 of the stacked identity") {
    SearchConfig cfg;
    cfg.restarts = 16;
    for (int n = 2; n <= 4; ++n) {
        const OperatorFamily fam = coordinate_functional_family(n);
        const double e2 = ell2_bound_search(fam, cfg).lower;
        const double p2 = pi2_search(stack_family(fam), cfg).lower;
        CHECK(e2 == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-9));
        CHECK(p2 == doctest::Approx(e2).epsilon(1e-9));
    }
}

TEST_CASE("ell2 lower agrees with pi2 on stacked functionals at tiny scale") {
    CounterRng rng(46);
    SearchConfig cfg;
    cfg.restarts = 24;
    for (int it = 0; it < 10; ++it) {
        OperatorFamily fam;
        const int dim = 2 + static_cast<int>(rng.next_below(2));
        fam.domain = linf(dim);
        fam.codomain = scalar_space();
        const int count = 2 + static_cast<int>(rng.next_below(2));
        for (int i = 0; i < count; ++i) fam.members.push_back(random_matrix(rng, 1, dim));
        cfg.seed = 600 + static_cast<uint64_t>(it);
        const double e2 = ell2_bound_search(fam, cfg).lower;
        const double p2 = pi2_search(stack_family(fam), cfg).lower;
        CHECK(std::fabs(e2 - p2) <= 0.02 * std::max(e2, p2));
    }
}
