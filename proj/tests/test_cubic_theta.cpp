#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellipsum/cubic_theta.hpp"
#include "ellipsum/rng.hpp"
#include "oracles.hpp"

using namespace ellipsum;

TEST_CASE("gamma basics and frozen oracle value") {
    CHECK(gamma_cubic(cx(0.7, 0.1), cx(1.3, 0.0), cx(0.0, 0.0)) == cx(1.0, 0.0));
    const cx v = gamma_cubic(cx(0.8, 0.1), cx(1.2, 0.0), cx(0.15, 0.0));
    CHECK(rel_residual(v, cx(1.9638598578442474, -0.05340488215073501)) < 1e-13);
    CHECK_THROWS_AS(gamma_cubic(cx(0.0, 0.0), cx(1.0, 0.0), cx(0.1, 0.0)), zero_argument);
    CHECK_THROWS_AS(gamma_cubic(cx(1.0, 0.0), cx(1.0, 0.0), cx(0.995, 0.0)),
                    nome_out_of_range);
}

TEST_CASE("gamma matches the brute-force double loop") {
    RngStream rng(61);
    for (int i = 0; i < 60; ++i) {
        const cx z = rng.annulus(0.3, 3.0);
        const cx a = rng.annulus(0.3, 3.0);
        const cx p = rng.annulus(0.05, 0.5);
        CHECK(rel_residual(gamma_cubic(z, a, p), oracle::gamma_loop(z, a, p)) < 1e-12);
    }
}

TEST_CASE("symmetries and quasi-periodicities") {
    RngStream rng(62);
    for (int i = 0; i < 300; ++i) {
        const cx z = sample_free(rng), a = sample_free(rng);
        const cx p = rng.annulus(0.05, 0.5);
        const auto r = gamma_symmetry_residuals(z, a, p);
        for (double ri : r) CHECK(ri < 1e-10);
    }
    // z = a is not special.
    const cx w(0.9, 0.35);
    for (double ri : gamma_symmetry_residuals(w, w, cx(0.2, 0.0))) CHECK(ri < 1e-11);
}

TEST_CASE("functional equation") {
    RngStream rng(63);
    const cx s(0.65, 0.1);  // p = s^6, |p| ~ 0.06
    const cx z = sample_free(rng), a = sample_free(rng);
    CHECK(gamma_functional_eq_residual(z, a, s, 0, 0) == 0.0);
    // (0,2) composes the z quasi-periodicity twice.
    CHECK(gamma_functional_eq_residual(z, a, s, 0, 2) < 1e-10);
    CHECK(gamma_functional_eq_residual(z, a, s, 1, -1) < 1e-10);
    for (int i = 0; i < 50; ++i) {
        const long lambda = rng.uniform_int(-2, 2);
        const long mu = rng.uniform_int(-2, 2);
        CHECK(gamma_functional_eq_residual(sample_free(rng), sample_free(rng), s, lambda,
                                           mu) < 1e-10);
    }
}

TEST_CASE("splitting laws") {
    RngStream rng(64);
    for (int i = 0; i < 100; ++i) {
        const cx z = sample_free(rng), a = sample_free(rng);
        const cx s = rng.annulus(std::pow(0.05, 1.0 / 6.0), std::pow(0.5, 1.0 / 6.0));
        const auto r = gamma_splitting_residuals(z, a, s);
        CHECK(r[0] < 1e-9);
        CHECK(r[1] < 1e-9);
    }
    // Branch-safety probe: z on the unit circle, a positive real.
    for (int i = 0; i < 20; ++i) {
        const cx z = std::exp(cx(0.0, rng.uniform() * 6.283185307179586));
        const cx a(0.5 + rng.uniform(), 0.0);
        const auto r = gamma_splitting_residuals(z, a, cx(0.75, 0.0));
        CHECK(r[0] < 1e-10);
        CHECK(r[1] < 1e-10);
    }
}

TEST_CASE("splittings collapse exactly in the basic case") {
    // s = 0 gives p = 0: both splits reduce to 1 = 1 + 0.
    const auto r = gamma_splitting_residuals(cx(0.8, 0.2), cx(1.1, -0.4), cx(0.0, 0.0));
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
}

TEST_CASE("addition laws") {
    RngStream rng(65);
    for (int i = 0; i < 200; ++i) {
        const cx p = rng.annulus(0.05, 0.5);
        CHECK(cooper_toh_residual_1(sample_free(rng), sample_free(rng), sample_free(rng),
                                    sample_free(rng), p) < 1e-10);
    }
    for (int i = 0; i < 200; ++i) {
        const cx s = rng.annulus(std::pow(0.05, 1.0 / 6.0), std::pow(0.5, 1.0 / 6.0));
        CHECK(cooper_toh_residual_2(sample_free(rng), sample_free(rng), sample_free(rng),
                                    sample_free(rng), s) < 1e-10);
    }
    // Degenerate z3 = z2 collapses through theta(1;p) = 0.
    const cx z1(0.9, 0.2), z2(1.1, -0.3), al(0.8, 0.1);
    CHECK(cooper_toh_residual_1(z1, z2, z2, al, cx(0.15, 0.0)) < 1e-12);
    CHECK(cooper_toh_residual_2(z1, al, z2, al, cx(0.8, 0.1)) < 1e-12);
}

TEST_CASE("cubic factorials") {
    RngStream rng(66);
    const auto par = sample_params(rng);
    const cx a = sample_free(rng), z = sample_free(rng);
    CHECK(cubic_fact_1(a, z, 0, par) == cx(1.0, 0.0));
    CHECK(cubic_fact_2(a, z, 0, par) == cx(1.0, 0.0));

    // n = 1 of the second kind is a single gamma factor.
    CHECK(rel_residual(cubic_fact_2(a, z, 1, par),
                       gamma_cubic(a, z, par.p_third())) < 1e-13);

    // Quasi-periodicity under z -> pz for both kinds.
    const cx p = par.p();
    for (long n = 1; n <= 4; ++n) {
        const cx scale = pow_int(p, -n) * pow_int(z, -2 * n);
        CHECK(rel_residual(cubic_fact_1(a, p * z, n, par),
                           scale * cubic_fact_1(a, z, n, par)) < 1e-10);
        CHECK(rel_residual(cubic_fact_2(a, p * z, n, par),
                           scale * cubic_fact_2(a, z, n, par)) < 1e-10);
    }
}

TEST_CASE("factorial quotients live in the expansion space") {
    // Symmetry in z <-> 1/z and degree-n quasi-periodicity of the numerator;
    // the quotient by (cz,c/z;q,p)_n is then invariant under z -> pz.
    RngStream rng(67);
    for (int i = 0; i < 40; ++i) {
        const auto par = sample_params(rng);
        const cx a = sample_free(rng), c = sample_free(rng), z = sample_free(rng);
        const long n = rng.uniform_int(1, 4);
        const cx p = par.p();

        const cx n1 = cubic_fact_1(a, z, n, par);
        CHECK(rel_residual(cubic_fact_1(a, 1.0 / z, n, par), n1) < 1e-10);
        CHECK(rel_residual(cubic_fact_1(a, p * z, n, par) * pow_int(p, n) *
                               pow_int(z, 2 * n),
                           n1) < 1e-10);

        const cx n2 = cubic_fact_2(a, z, n, par);
        CHECK(rel_residual(cubic_fact_2(a, 1.0 / z, n, par), n2) < 1e-10);
        CHECK(rel_residual(cubic_fact_2(a, p * z, n, par) * pow_int(p, n) *
                               pow_int(z, 2 * n),
                           n2) < 1e-10);

        const cx den_z = qp_fact_multi({c * z, c / z}, n, par);
        const cx den_pz = qp_fact_multi({c * p * z, c / (p * z)}, n, par);
        CHECK(rel_residual(n1 / den_z, cubic_fact_1(a, p * z, n, par) / den_pz) < 1e-10);
        CHECK(rel_residual(n2 / den_z, cubic_fact_2(a, p * z, n, par) / den_pz) < 1e-10);
    }
}

TEST_CASE("degeneration studies") {
    const cx t = std::pow(cx(0.45, 0.0), 0.25);
    const std::vector<double> ps = {1e-3, 1e-4, 1e-5};

    // n = 0: the residual is exactly zero for every p.
    const auto r0 = degeneration_check(DegenerationFamily::first, cx(0.6, 0.0),
                                       cx(1.2, 0.0), t, 0, ps);
    for (double r : r0.residuals) CHECK(r == 0.0);

    // First family decays at order one: consecutive ratios within [3, 30].
    const auto r1 = degeneration_check(DegenerationFamily::first, cx(0.6, 0.0),
                                       cx(1.2, 0.0), t, 2, ps);
    CHECK(r1.strictly_decreasing);
    for (double ratio : r1.ratios) {
        CHECK(ratio > 3.0);
        CHECK(ratio < 30.0);
    }
    CHECK(r1.empirical_order == doctest::Approx(1.0).epsilon(0.2));

    // Second family: the study reports growth (the scaled bracket diverges
    // like p^{-1/3} per factor), so residuals are not decreasing.
    const auto r2 = degeneration_check(DegenerationFamily::second, cx(0.6, 0.0),
                                       cx(1.2, 0.0), t, 2, ps);
    CHECK_FALSE(r2.strictly_decreasing);
    for (double r : r2.residuals) CHECK(std::isfinite(r));

    CHECK_THROWS_AS(degeneration_check(DegenerationFamily::first, cx(0.6, 0.0),
                                       cx(1.2, 0.0), t, 2, {0.5}),
                    error);
}
