#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellipsum/pochhammer.hpp"
#include "ellipsum/rng.hpp"
#include "oracles.hpp"

using namespace ellipsum;

namespace {
EllipticParams sample(RngStream& rng) { return sample_params(rng); }
}

TEST_CASE("index conventions") {
    RngStream rng(11);
    const auto par = sample(rng);
    const cx a = sample_free(rng);
    CHECK(qp_fact(a, 0, par) == cx(1.0, 0.0));

    // p = 0 reduces to the classical q-shifted factorial, exactly.
    const EllipticParams basic(par.t, cx(0.0, 0.0));
    const cx q = basic.q();
    CHECK(qp_fact(a, 2, basic) == (1.0 - a) * (1.0 - a * q));
    for (long n = 0; n <= 6; ++n)
        CHECK(rel_residual(qp_fact(a, n, basic), oracle::q_factorial(a, q, n)) < 1e-15);
}

TEST_CASE("negative indices invert the shifted window") {
    RngStream rng(12);
    const auto par = sample(rng);
    for (int i = 0; i < 50; ++i) {
        const cx a = sample_free(rng);
        const long n = rng.uniform_int(1, 5);
        const cx lhs = qp_fact(a, -n, par) * qp_fact(a * par.q_pow(-n), n, par);
        CHECK(rel_residual(lhs, cx(1.0, 0.0)) < 1e-13);
    }
}

TEST_CASE("splitting law across all integer index pairs") {
    RngStream rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto par = sample(rng);
        const cx a = sample_free(rng);
        const long m = rng.uniform_int(-4, 4);
        const long n = rng.uniform_int(-4, 4);
        const cx lhs = qp_fact(a, m + n, par);
        const cx rhs = qp_fact(a, m, par) * qp_fact(a * par.q_pow(m), n, par);
        CHECK(rel_residual(lhs, rhs) < 1e-11);
    }
}

TEST_CASE("nome-shift law for factorials") {
    RngStream rng(14);
    const auto par = sample(rng);
    CHECK(qp_fact_pshift_residual(sample_free(rng), 0, par) == 0.0);
    // n = 1 is the single-factor theta law.
    CHECK(qp_fact_pshift_residual(sample_free(rng), 1, par) < 1e-13);
    for (int i = 0; i < 50; ++i)
        CHECK(qp_fact_pshift_residual(sample_free(rng), 5, par) < 1e-11);
}

TEST_CASE("multi-parameter product") {
    RngStream rng(15);
    const auto par = sample(rng);
    CHECK(qp_fact_multi(std::initializer_list<cx>{}, 3, par) == cx(1.0, 0.0));
    const cx a = sample_free(rng), b = sample_free(rng);
    CHECK(qp_fact_multi({a}, 4, par) == qp_fact(a, 4, par));
    CHECK(rel_residual(qp_fact_multi({a, b}, 4, par),
                       qp_fact(a, 4, par) * qp_fact(b, 4, par)) < 1e-15);
}

TEST_CASE("pole detection on the reciprocal window") {
    RngStream rng(16);
    const auto par = sample(rng);
    // theta(aq^{-1}) = 0 exactly when a = q.
    CHECK_THROWS_AS(qp_fact(par.q(), -1, par), pole_hit);
}

TEST_CASE("elliptic binomial") {
    RngStream rng(17);
    const auto par = sample(rng);
    CHECK(elliptic_binomial(4, 4, par) == cx(1.0, 0.0));
    CHECK(rel_residual(elliptic_binomial(1, 0, par), cx(1.0, 0.0)) < 1e-14);

    // p = 0, (m,k) = (4,2): the Gaussian binomial (q^3;q)_2 / (q;q)_2 at a
    // frozen base.
    const EllipticParams basic(std::pow(cx(0.37, 0.21), 0.25), cx(0.0, 0.0));
    const cx got = elliptic_binomial(4, 2, basic);
    CHECK(rel_residual(got, cx(1.54176468, 0.62662824)) < 1e-8);
    const cx q = basic.q();
    const cx want = oracle::q_factorial(q * q * q, q, 2) / oracle::q_factorial(q, q, 2);
    CHECK(rel_residual(got, want) < 1e-14);

    // Symmetry [m k] = [m m-k], and the equivalent window form
    // [m k] (q;q,p)_k = (q^{1+m-k};q,p)_k.
    for (int i = 0; i < 50; ++i) {
        const auto p2 = sample(rng);
        const long m = rng.uniform_int(0, 6);
        const long k = rng.uniform_int(0, m);
        CHECK(rel_residual(elliptic_binomial(m, k, p2), elliptic_binomial(m, m - k, p2)) <
              1e-11);
        const cx lhs = elliptic_binomial(m, k, p2) * qp_fact(p2.q(), k, p2);
        const cx rhs = qp_fact(p2.q_pow(1 + m - k), k, p2);
        CHECK(rel_residual(lhs, rhs) < 1e-11);
    }
}
