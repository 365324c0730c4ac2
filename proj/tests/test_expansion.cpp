#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellipsum/expansion.hpp"
#include "ellipsum/rng.hpp"
#include "ellipsum/series.hpp"

using namespace ellipsum;

namespace {

WcnElement random_element(RngStream& rng, cx gen, cx c, long n) {
    WcnElement el;
    el.a = gen;
    el.c = c;
    el.n = n;
    for (long k = 0; k <= n; ++k) el.coeffs.push_back(sample_free(rng));
    return el;
}

cx probe(RngStream& rng) { return rng.annulus(0.6, 1.4); }

}  // namespace

TEST_CASE("basis elements expand to unit coefficient vectors") {
    RngStream rng(51);
    const auto par = sample_params(rng);
    const cx a = sample_free(rng), c = sample_free(rng);
    const long n = 4, j = 2;
    const auto co = taylor_coeffs(wp_basis(a, c, j, par), a, c, n, par);
    for (long k = 0; k <= n; ++k) {
        const double want = (k == j) ? 1.0 : 0.0;
        CHECK(std::abs(co.f_k[static_cast<std::size_t>(k)] - want) < 1e-10);
    }
}

TEST_CASE("round trip over random members") {
    RngStream rng(52);
    for (int i = 0; i < 100; ++i) {
        const auto par = sample_params(rng);
        const long n = rng.uniform_int(0, 5);
        const cx a = sample_free(rng), c = sample_free(rng);
        const auto f = random_element(rng, sample_free(rng), c, n).to_function(par);
        double ccond = 0.0;
        const auto co = taylor_coeffs(f, a, c, n, par, {}, &ccond);
        const cx z = probe(rng);
        double cond = 0.0;
        const cx recon = co.reconstruct(z, par, {}, &cond);
        if (std::max(cond, ccond) > 3e3) continue;  // near-pole draw
        CHECK(rel_residual(recon, f(z)) < 1e-10);
    }
}

TEST_CASE("coefficients of a shifted basis element match the closed form") {
    RngStream rng(53);
    const auto par = sample_params(rng);
    const cx a = sample_free(rng), b = sample_free(rng), c = sample_free(rng);
    const long n = 4;
    const auto co = taylor_coeffs(wp_basis(b, c, n, par), a, c, n, par);
    const cx q = par.q(), p = par.p();
    for (long k = 0; k <= n; ++k) {
        const cx closed =
            qp_fact_multi({a * b, b / a}, n, par) / qp_fact_multi({a * c, c / a}, n, par) *
            theta(a * c * par.q_pow(2 * k - 1), p) / theta(a * c / q, p) *
            qp_fact_multi({a * c / q, c / b, b * c * par.q_pow(n - 1), par.q_pow(-n)}, k,
                          par) /
            qp_fact_multi({q, a * b, a * par.q_pow(1 - n) / b, a * c * par.q_pow(n)}, k,
                          par) *
            par.q_pow(k);
        CHECK(rel_residual(co.f_k[static_cast<std::size_t>(k)], closed) < 1e-10);
    }
}

TEST_CASE("degree overflow is detected") {
    RngStream rng(54);
    const auto par = sample_params(rng);
    const cx a = sample_free(rng), c = sample_free(rng);
    // A degree-3 function expanded with n = 2 cannot reconstruct.
    const auto f = wp_basis(sample_free(rng), c, 3, par);
    CHECK_THROWS_AS(taylor_coeffs(f, a, c, 2, par), degree_overflow);
    // Wrong denominator parameter is also outside W_c^n.
    const auto g = wp_basis(a, sample_free(rng), 2, par);
    CHECK_THROWS_AS(taylor_coeffs(g, a, c, 2, par), degree_overflow);
}

TEST_CASE("interpolation: trivial order and node consistency") {
    RngStream rng(55);
    const auto par = sample_params(rng);
    const cx a = sample_free(rng), c = sample_free(rng);
    const auto f = random_element(rng, sample_free(rng), c, 0).to_function(par);
    const cx z = probe(rng);
    // n = 0: the identity collapses to prefactor * f(z) = f(a).
    CHECK(rel_residual(interpolation_prefactor(a, c, 0, z, par) * f(z), f(a)) < 1e-13);

    // Near-node evaluation: both sides stay equal while each diverges.
    const long n = 3;
    const auto g = random_element(rng, sample_free(rng), c, n).to_function(par);
    const cx znode = a * par.q_pow(2) * (1.0 + 1e-7);
    CHECK(rel_residual(interpolation_prefactor(a, c, n, znode, par) * g(znode),
                       interpolate(g, a, c, n, znode, par)) < 1e-8);
}

TEST_CASE("interpolation exactness on random members") {
    RngStream rng(56);
    for (int i = 0; i < 100; ++i) {
        const auto par = sample_params(rng);
        const long n = rng.uniform_int(0, 5);
        const cx a = sample_free(rng), c = sample_free(rng);
        const auto f = random_element(rng, sample_free(rng), c, n).to_function(par);
        const cx z = probe(rng);
        double cond = 0.0;
        const cx rhs = interpolate(f, a, c, n, z, par, {}, &cond);
        if (cond > 1e5) continue;
        CHECK(rel_residual(interpolation_prefactor(a, c, n, z, par) * f(z), rhs) < 1e-9);
    }
}

TEST_CASE("interpolation of a split factorial product") {
    // Members of the form (bz,b/z;q,p)_s (dz,d/z;q,p)_{n-s} / (cz,c/z;q,p)_n
    // interpolate exactly from their values on the node ladder.
    RngStream rng(62);
    for (int i = 0; i < 30; ++i) {
        const auto par = sample_params(rng);
        const long n = rng.uniform_int(0, 5);
        const long s = rng.uniform_int(0, n);
        const cx a = sample_free(rng), b = sample_free(rng), c = sample_free(rng);
        const cx d = sample_free(rng);
        const SymmetricFunction f{[=](cx z) {
            const cx den = qp_fact_multi({c * z, c / z}, n, par);
            if (std::abs(den) < 1e-280) throw pole_hit("split product pole");
            return qp_fact_multi({b * z, b / z}, s, par) *
                   qp_fact_multi({d * z, d / z}, n - s, par) / den;
        }};
        const cx z = probe(rng);
        double cond = 0.0;
        const cx rhs = interpolate(f, a, c, n, z, par, {}, &cond);
        if (cond > 3e3) continue;
        CHECK(rel_residual(interpolation_prefactor(a, c, n, z, par) * f(z), rhs) < 1e-9);
    }
}

TEST_CASE("quadratic basis expands to unit vectors and reconstructs") {
    RngStream rng(57);
    const EllipticParams par(cx(0.80, 0.12), cx(0.55, -0.30));
    const cx c(0.9, 0.25);
    const long n = 4, j = 3;
    const auto co = quadratic_taylor_coeffs(quadratic_basis(c, j, par), c, n, par);
    for (long k = 0; k <= n; ++k) {
        const double want = (k == j) ? 1.0 : 0.0;
        CHECK(std::abs(co.f_k[static_cast<std::size_t>(k)] - want) < 1e-9);
    }
    for (int i = 0; i < 30; ++i) {
        const auto p2 = sample_params(rng);
        const long nn = rng.uniform_int(0, 3);
        const cx cc = sample_free(rng);
        const auto f = random_element(rng, sample_free(rng), cc, nn).to_function(p2);
        double ccond = 0.0;
        const auto cq = quadratic_taylor_coeffs(f, cc, nn, p2, {}, &ccond);
        const cx z = probe(rng);
        double rcond = 0.0;
        const cx recon = cq.reconstruct(z, p2, {}, &rcond);
        if (std::max(ccond, rcond) > 3e3) continue;
        CHECK(rel_residual(recon, f(z)) < 1e-10);
    }
}

TEST_CASE("quadratic basis-change identity reduces through the closed form") {
    // Expanding the quadratic element in the well-poised basis gives a
    // terminating very-well-poised sum with a product evaluation; all three
    // routes must agree.
    RngStream rng(58);
    for (int i = 0; i < 50; ++i) {
        const auto par = sample_params(rng);
        const long n = rng.uniform_int(0, 5);
        const cx a = sample_free(rng), c = sample_free(rng), z = probe(rng);
        const cx qq = par.q_quarter();
        const cx qh = par.q_half();
        const cx p = par.p();

        const cx den = qp_fact_multi_base({a * qq, qq / a}, n, qh, p) *
                       qp_fact_multi({c * z, c / z}, n, par);
        const cx lhs = qp_fact_multi_base({qq * z, qq / z}, n, qh, p) *
                       qp_fact_multi({a * c, c / a}, n, par) / den;

        VwpSpec spec;
        spec.a1 = a * c / par.q();
        spec.uppers = {a * z, a / z, c * par.q_pow_quarter(2 * n - 3),
                       c * par.q_pow_quarter(2 * n - 1), par.q_pow(-n)};
        spec.n = n;
        double cond = 0.0;
        const cx mid = vwp_sum(spec, par, {}, &cond);
        if (cond > 1e5) continue;
        CHECK(rel_residual(lhs, mid) < 1e-9);

        const auto q5 = make_balanced_quintuple(
            a * c / par.q(), a * z, a / z, c * par.q_pow_quarter(2 * n - 3), n, par);
        CHECK(rel_residual(mid, ft_rhs(q5, par)) < 1e-9);
    }
}

TEST_CASE("multivariate round trip, separable and entangled") {
    RngStream rng(59);
    const auto par = sample_params(rng);

    // m = 1 reduces to the univariate machinery.
    {
        const cx a = sample_free(rng), c = sample_free(rng);
        const long n = 3;
        const auto el = random_element(rng, sample_free(rng), c, n);
        const auto f1 = el.to_function(par);
        MultivarConfig cfg{{a}, {c}, {n}};
        const MultiSymmetricFunction fm{[&](const std::vector<cx>& zs) {
            return f1(zs[0]);
        }};
        const auto com = taylor_coeffs_multi(fm, cfg, par);
        const auto cou = taylor_coeffs(f1, a, c, n, par);
        for (long k = 0; k <= n; ++k)
            CHECK(rel_residual(com.at({k}), cou.f_k[static_cast<std::size_t>(k)]) < 1e-10);
    }

    // Separable product: the coefficient tensor factors.
    {
        const MultivarConfig cfg{{sample_free(rng), sample_free(rng)},
                                 {sample_free(rng), sample_free(rng)},
                                 {2, 2}};
        const cx b1 = sample_free(rng), b2 = sample_free(rng);
        const MultiSymmetricFunction f{[&, cfg](const std::vector<cx>& zs) {
            return wp_basis(b1, cfg.c[0], 2, par)(zs[0]) *
                   wp_basis(b2, cfg.c[1], 2, par)(zs[1]);
        }};
        const auto co = taylor_coeffs_multi(f, cfg, par);
        const auto c1 = taylor_coeffs(wp_basis(b1, cfg.c[0], 2, par), cfg.a[0], cfg.c[0],
                                      2, par);
        const auto c2 = taylor_coeffs(wp_basis(b2, cfg.c[1], 2, par), cfg.a[1], cfg.c[1],
                                      2, par);
        for (long k1 = 0; k1 <= 2; ++k1)
            for (long k2 = 0; k2 <= 2; ++k2)
                CHECK(rel_residual(co.at({k1, k2}),
                                   c1.f_k[static_cast<std::size_t>(k1)] *
                                       c2.f_k[static_cast<std::size_t>(k2)]) < 1e-10);

        const std::vector<cx> zs = {probe(rng), probe(rng)};
        CHECK(rel_residual(co.reconstruct(zs, par), f(zs)) < 1e-9);
    }

    // Entangled member: theta(z1 z2, z1/z2;p)/z1 over degree (1,1).
    {
        const MultivarConfig cfg{{sample_free(rng), sample_free(rng)},
                                 {sample_free(rng), sample_free(rng)},
                                 {1, 1}};
        const MultiSymmetricFunction f{[&, cfg](const std::vector<cx>& zs) {
            return theta_multi({zs[0] * zs[1], zs[0] / zs[1]}, par.p()) / zs[0] /
                   (qp_fact_multi({cfg.c[0] * zs[0], cfg.c[0] / zs[0]}, 1, par) *
                    qp_fact_multi({cfg.c[1] * zs[1], cfg.c[1] / zs[1]}, 1, par));
        }};
        const auto co = taylor_coeffs_multi(f, cfg, par);
        const std::vector<cx> zs = {probe(rng), probe(rng)};
        CHECK(rel_residual(co.reconstruct(zs, par), f(zs)) < 1e-9);
    }
}

TEST_CASE("multivariate delta tensor and m = 1 interpolation reduction") {
    RngStream rng(61);
    const auto par = sample_params(rng);

    // A product of basis elements over the same (a, c) data expands to the
    // unit tensor.
    {
        const MultivarConfig cfg{{sample_free(rng), sample_free(rng)},
                                 {sample_free(rng), sample_free(rng)},
                                 {2, 2}};
        const long j1 = 1, j2 = 2;
        const MultiSymmetricFunction f{[&, cfg](const std::vector<cx>& zs) {
            return wp_basis(cfg.a[0], cfg.c[0], j1, par)(zs[0]) *
                   wp_basis(cfg.a[1], cfg.c[1], j2, par)(zs[1]);
        }};
        const auto co = taylor_coeffs_multi(f, cfg, par);
        for (long k1 = 0; k1 <= 2; ++k1)
            for (long k2 = 0; k2 <= 2; ++k2) {
                const double want = (k1 == j1 && k2 == j2) ? 1.0 : 0.0;
                CHECK(std::abs(co.at({k1, k2}) - want) < 1e-9);
            }
    }

    // m = 1 interpolation reduces to the univariate sum.
    {
        const cx a = sample_free(rng), c = sample_free(rng);
        const long n = 3;
        const auto el = random_element(rng, sample_free(rng), c, n);
        const auto f1 = el.to_function(par);
        const MultivarConfig cfg{{a}, {c}, {n}};
        const MultiSymmetricFunction fm{[&](const std::vector<cx>& zs) {
            return f1(zs[0]);
        }};
        const cx z = probe(rng);
        CHECK(rel_residual(interpolate_multi(fm, cfg, {z}, par),
                           interpolate(f1, a, c, n, z, par)) < 1e-12);
    }
}

TEST_CASE("multivariate interpolation") {
    RngStream rng(60);
    for (int i = 0; i < 25; ++i) {
        const auto par = sample_params(rng);
        const long m = rng.uniform_int(2, 3);
        MultivarConfig cfg;
        std::vector<cx> gens, zs;
        for (long j = 0; j < m; ++j) {
            cfg.a.push_back(sample_free(rng));
            cfg.c.push_back(sample_free(rng));
            cfg.n.push_back(rng.uniform_int(0, 2));
            gens.push_back(sample_free(rng));
            zs.push_back(probe(rng));
        }
        // Product of per-variable random members.
        std::vector<SymmetricFunction> parts;
        for (long j = 0; j < m; ++j)
            parts.push_back(
                random_element(rng, gens[static_cast<std::size_t>(j)],
                               cfg.c[static_cast<std::size_t>(j)],
                               cfg.n[static_cast<std::size_t>(j)])
                    .to_function(par));
        const MultiSymmetricFunction f{[parts](const std::vector<cx>& z) {
            cx acc(1.0, 0.0);
            for (std::size_t j = 0; j < parts.size(); ++j) acc *= parts[j](z[j]);
            return acc;
        }};
        double cond = 0.0;
        const cx rhs = interpolate_multi(f, cfg, zs, par, {}, &cond);
        if (cond > 1e6) continue;
        CHECK(rel_residual(interpolation_prefactor_multi(cfg, zs, par) * f(zs), rhs) <
              1e-8);
    }
}

TEST_CASE("Karlsson-Minton degree balance") {
    KarlssonMintonConfig cfg;
    cfg.m = 2;
    cfg.b = {{cx(0.5, 0.1)}, {}};
    cfg.v = {{2}, {}};
    cfg.w = {{0, 1}, {0, 0}};
    cfg.alpha = {{{}, {cx(0.9, -0.2)}}, {{}, {}}};
    cfg.u = {{{}, {1}}, {{}, {}}};
    cfg.validate();
    const auto n = cfg.degrees();
    CHECK(n[0] == 2 + 1 + 2);
    CHECK(n[1] == 0 + 1 + 2);
}
