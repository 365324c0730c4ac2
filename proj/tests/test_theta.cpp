#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellipsum/rng.hpp"
#include "ellipsum/theta.hpp"
#include "oracles.hpp"

using namespace ellipsum;

TEST_CASE("basic-case path is exact") {
    const cx x(0.37, -1.22);
    CHECK(theta(x, cx(0.0, 0.0)) == 1.0 - x);
    CHECK(theta(cx(2.0, 0.0), cx(0.0, 0.0)) == cx(-1.0, 0.0));
    // Paper allows x -> 0 once p = 0.
    CHECK(theta(cx(0.0, 0.0), cx(0.0, 0.0)) == cx(1.0, 0.0));
}

TEST_CASE("x = 1 is an exact zero") {
    CHECK(theta(cx(1.0, 0.0), cx(0.3, 0.1)) == cx(0.0, 0.0));
}

TEST_CASE("frozen long-product oracle value") {
    // theta(0.3+0.1i; 0.2) against 200 raw factors.
    const cx v = theta(cx(0.3, 0.1), cx(0.2, 0.0));
    const cx expect(0.2350379304630437, 0.08607651068658588);
    CHECK(rel_residual(v, expect) < 1e-14);
    CHECK(rel_residual(v, oracle::theta_product(cx(0.3, 0.1), cx(0.2, 0.0), 200)) < 1e-15);
}

TEST_CASE("agrees with the raw 500-factor partial product") {
    RngStream rng(2024);
    for (int i = 0; i < 200; ++i) {
        const cx x = rng.annulus(0.1, 10.0);
        const cx p = rng.annulus(0.05, 0.5);
        CHECK(rel_residual(theta(x, p), oracle::theta_product(x, p, 500)) < 1e-13);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(theta(cx(0.0, 0.0), cx(0.2, 0.0)), zero_argument);
    CHECK_THROWS_AS(theta(cx(0.5, 0.0), cx(0.995, 0.0)), nome_out_of_range);
    TruncationPolicy tight{1e-15, 3};
    CHECK_THROWS_AS(theta(cx(0.5, 0.0), cx(0.9, 0.0), tight), truncation_exhausted);
}

TEST_CASE("theta_multi") {
    const cx p(0.25, 0.05);
    CHECK(theta_multi(std::initializer_list<cx>{}, p) == cx(1.0, 0.0));
    const cx x(0.8, 0.3);
    CHECK(theta_multi({x}, p) == theta(x, p));
    CHECK(rel_residual(theta_multi({x, p / x}, p), theta(x, p) * theta(p / x, p)) < 1e-15);
}

TEST_CASE("inversion law") {
    // Algebraic identity at p = 0; only complex-division rounding survives.
    CHECK(theta_inversion_residual(cx(0.7, -0.2), cx(0.0, 0.0)) < 1e-15);
    CHECK(theta_inversion_residual(cx(0.7, -0.2), cx(0.3, 0.0)) < 1e-12);
    CHECK(theta_inversion_residual(cx(-1.0, 0.0), cx(0.3, 0.0)) < 1e-12);
}

TEST_CASE("nome-shift law") {
    CHECK_THROWS_AS(theta_p_shift_residual(cx(0.5, 0.0), cx(0.0, 0.0)), zero_argument);
    CHECK(theta_p_shift_residual(cx(0.5, 0.0), cx(1e-6, 0.0)) < 1e-10);
    CHECK(theta_p_shift_residual(cx(1.1, 0.3), cx(0.25, 0.0)) < 1e-12);
    const cx on_circle = std::exp(cx(0.0, 3.14159265358979 / 3.0));
    CHECK(theta_p_shift_residual(on_circle, cx(0.4, 0.0)) < 1e-12);
}

TEST_CASE("addition formula") {
    RngStream rng(77);
    // u = x collapses the relation.
    const cx x(0.9, 0.2), y(1.2, -0.4), v(0.6, 0.1);
    CHECK(addition_formula_residual(x, y, x, v, cx(0.2, 0.0)) < 1e-13);
    // p = 0 degenerates to a rational four-term relation.
    CHECK(addition_formula_residual(x, y, cx(0.5, 0.3), v, cx(0.0, 0.0)) < 1e-14);
    for (int i = 0; i < 500; ++i) {
        const cx a = rng.annulus(0.5, 1.5), b = rng.annulus(0.5, 1.5);
        const cx c = rng.annulus(0.5, 1.5), d = rng.annulus(0.5, 1.5);
        CHECK(addition_formula_residual(a, b, c, d, cx(0.2, 0.0)) < 1e-11);
    }
}

TEST_CASE("structural residual sweep over the admissible annulus") {
    RngStream rng(4096);
    TruncationPolicy pol;  // tail_tol 1e-15
    for (int i = 0; i < 300; ++i) {
        const cx x = rng.annulus(0.1, 10.0);
        const double pm = 0.05 + 0.75 * rng.uniform();
        const double ph = rng.uniform() * 6.283185307179586;
        const cx p = pm * std::exp(cx(0.0, ph));
        CHECK(theta_inversion_residual(x, p, pol) < 1e-10);
        CHECK(theta_p_shift_residual(x, p, pol) < 1e-10);
    }
}

TEST_CASE("euler infinite product") {
    CHECK(euler_infinite_product(cx(0.0, 0.0), cx(0.3, 0.0)) == cx(1.0, 0.0));
    const cx a(0.4, 0.1);
    CHECK(euler_infinite_product(a, cx(0.0, 0.0)) == 1.0 - a);
    // Frozen 300-factor oracle value.
    const cx v = euler_infinite_product(cx(0.04, 0.0), cx(0.2, 0.0));
    CHECK(rel_residual(v, cx(0.9504159948390403, 0.0)) < 1e-15);
    CHECK(rel_residual(v, oracle::euler_product(cx(0.04, 0.0), cx(0.2, 0.0), 300)) < 1e-15);
}
