#include "ellipsum/cubic_theta.hpp"

#include <cmath>

#include "ellipsum/theta.hpp"

namespace ellipsum {

namespace {

constexpr double kNomeCap = 0.99;
constexpr double kExpUnderflow = -745.0;

long isqrt_exact(long n) {
    const auto r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    for (long c = std::max(0L, r - 2); c <= r + 2; ++c)
        if (c * c == n) return c;
    return -1;
}

}  // namespace

namespace {

// exp(w) carried as a scaled complex, safe for |Re w| beyond the double range.
scaled_cx scaled_exp(cx w) {
    constexpr double kLn2 = 0.6931471805599453;
    long e = std::lround(std::floor(w.real() / kLn2));
    scaled_cx result(std::exp(cx(w.real() - static_cast<double>(e) * kLn2, w.imag())));
    for (; e > 500; e -= 500) result *= std::ldexp(1.0, 500);
    for (; e < -500; e += 500) result *= std::ldexp(1.0, -500);
    result *= std::ldexp(1.0, static_cast<int>(e));
    return result;
}

}  // namespace

CubicThetaArgs::CubicThetaArgs(cx z_, cx a_, cx s_) : z(z_), a(a_), s(s_) {
    if (z == cx(0.0, 0.0) || a == cx(0.0, 0.0))
        throw zero_argument("CubicThetaArgs: z and a must be nonzero");
    if (std::abs(s) >= 1.0)
        throw nome_out_of_range("CubicThetaArgs: |s|^6 = |p| must be < 1");
}

cx gamma_cubic(const CubicThetaArgs& args, const TruncationPolicy& policy) {
    return gamma_cubic(args.z, args.a, args.p(), policy);
}

cx gamma_cubic(cx z, cx a, cx p, const TruncationPolicy& policy) {
    if (p == cx(0.0, 0.0)) return cx(1.0, 0.0);  // only (k,l) = (0,0) survives
    if (z == cx(0.0, 0.0) || a == cx(0.0, 0.0))
        throw zero_argument("gamma_cubic: z and a must be nonzero");
    if (std::abs(p) >= kNomeCap) throw nome_out_of_range("gamma_cubic: |p| >= 0.99");

    cx lp = std::log(p);
    cx la = std::log(a);
    cx lz = std::log(z);

    // Reduce both arguments into the fundamental annulus with the integer
    // functional equation (mu = 2m even, so only integer powers of p enter):
    //   gamma(z,a;p) = p^{3L^2+6Lm+4m^2} a^{2L+2m} z^{2m}
    //                  gamma(p^m z, p^{3(L+m)} a; p).
    // Outside the annulus the shell sum is dominated by far lattice points
    // and loses accuracy; inside, its terms are uniformly bounded.
    const long m = std::lround(lz.real() / (-lp.real()));
    const long bigk = std::lround(la.real() / (-3.0 * lp.real()));
    const long lambda = bigk - m;
    scaled_cx prefactor(cx(1.0, 0.0));
    if (m != 0 || bigk != 0) {
        const long mu = 2 * m;
        const cx w = static_cast<double>(3 * lambda * lambda + 3 * lambda * mu + mu * mu) * lp +
                     static_cast<double>(2 * lambda + mu) * la +
                     static_cast<double>(mu) * lz;
        prefactor = scaled_exp(w);
        lz = lz + static_cast<double>(m) * lp;
        la = la + static_cast<double>(3 * bigk) * lp;
    }

    kahan_sum acc;
    int quiet = 0;
    for (long shell = 0; shell <= policy.max_factors; ++shell) {
        // Solutions of k^2 + kl + l^2 = shell: l = (-k +- sqrt(4N - 3k^2))/2.
        const auto kmax = static_cast<long>(std::sqrt(4.0 * shell / 3.0)) + 1;
        cx shell_sum(0.0, 0.0);
        bool nonempty = false;
        for (long k = -kmax; k <= kmax; ++k) {
            const long disc = 4 * shell - 3 * k * k;
            if (disc < 0) continue;
            const long sq = isqrt_exact(disc);
            if (sq < 0) continue;
            for (int sign = 0; sign < (sq == 0 ? 1 : 2); ++sign) {
                const long num = -k + (sign == 0 ? sq : -sq);
                if (num % 2 != 0) continue;
                const long l = num / 2;
                nonempty = true;
                const cx w = static_cast<double>(shell) * lp +
                             static_cast<double>(k + l) * la +
                             static_cast<double>(k - l) * lz;
                if (w.real() > kExpUnderflow) shell_sum += std::exp(w);
            }
        }
        if (!nonempty) continue;
        acc.add(shell_sum);
        if (std::abs(shell_sum) <
            policy.tail_tol * std::max(std::abs(acc.value()), 1e-300)) {
            if (++quiet >= 3) {
                scaled_cx out = prefactor;
                out *= acc.value();
                return out.value();
            }
        } else {
            quiet = 0;
        }
    }
    throw truncation_exhausted("gamma_cubic: shell cap hit before tail bound");
}

std::array<double, 4> gamma_symmetry_residuals(cx z, cx a, cx p,
                                               const TruncationPolicy& policy) {
    const cx g = gamma_cubic(z, a, p, policy);
    const cx p3 = (p * p) * p;
    return {
        rel_residual(gamma_cubic(1.0 / z, a, p, policy), g),
        rel_residual(gamma_cubic(z, 1.0 / a, p, policy), g),
        rel_residual(gamma_cubic(p * z, a, p, policy), g / (p * z * z)),
        rel_residual(gamma_cubic(z, p3 * a, p, policy), g / (p3 * a * a)),
    };
}

double gamma_functional_eq_residual(cx z, cx a, cx s, long lambda, long mu,
                                    const TruncationPolicy& policy) {
    const cx p = pow_int(s, 6);
    const cx lhs = gamma_cubic(z, a, p, policy);
    const cx zshift = pow_int(s, 3 * mu) * z;              // p^{mu/2} z
    const cx ashift = pow_int(s, 9 * (2 * lambda + mu)) * a;  // p^{3(2l+m)/2} a
    const cx rhs = pow_int(p, 3 * lambda * lambda + 3 * lambda * mu + mu * mu) *
                   pow_int(a, 2 * lambda + mu) * pow_int(z, mu) *
                   gamma_cubic(zshift, ashift, p, policy);
    return rel_residual(lhs, rhs);
}

std::array<double, 2> gamma_splitting_residuals(cx z, cx a, cx s,
                                                const TruncationPolicy& policy) {
    const cx p = pow_int(s, 6);
    const cx p3 = pow_int(s, 18);
    const cx g = gamma_cubic(z, a, p, policy);

    const cx u = std::sqrt(a * z * z * z);
    const cx v = a * a / u;
    const cx up = std::sqrt(a / (z * z * z));
    const cx vp = a * a / up;
    const cx cube = gamma_cubic(u, v, p3, policy) +
                    p * a / z * gamma_cubic(u, p3 * v, p3, policy) +
                    p * a * z * gamma_cubic(up, p3 * vp, p3, policy);

    const cx p2 = p * p;
    const cx p6 = p3 * p3;
    const cx constant = euler_infinite_product(p6, p6, policy) *
                        euler_infinite_product(p2, p2, policy);
    const cx parity =
        constant * (theta(-p3 * a * a, p6, policy) * theta(-p * z * z, p2, policy) +
                    p * a * z * theta(-p6 * a * a, p6, policy) *
                        theta(-p2 * z * z, p2, policy));

    return {rel_residual(g, cube), rel_residual(g, parity)};
}

double cooper_toh_residual_1(cx z1, cx z2, cx z3, cx alpha, cx p,
                             const TruncationPolicy& policy) {
    const cx t1 = gamma_cubic(z1, alpha, p, policy) *
                  theta_multi({z3 / z2, z2 * z3}, p, policy);
    const cx t2 = gamma_cubic(z2, alpha, p, policy) *
                  theta_multi({z3 / z1, z1 * z3}, p, policy);
    const cx t3 = (z3 / z1) * gamma_cubic(z3, alpha, p, policy) *
                  theta_multi({z1 / z2, z1 * z2}, p, policy);
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
    return std::abs(t1 - t2 - t3) / scale;
}

double cooper_toh_residual_2(cx z, cx a1, cx a2, cx a3, cx s,
                             const TruncationPolicy& policy) {
    const cx p = pow_int(s, 6);
    const cx p13 = s * s;
    const cx t1 = gamma_cubic(z, a1, p13, policy) *
                  theta_multi({a3 / a2, a2 * a3}, p, policy);
    const cx t2 = gamma_cubic(z, a2, p13, policy) *
                  theta_multi({a3 / a1, a1 * a3}, p, policy);
    const cx t3 = (a3 / a1) * gamma_cubic(z, a3, p13, policy) *
                  theta_multi({a1 / a2, a1 * a2}, p, policy);
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
    return std::abs(t1 - t2 - t3) / scale;
}

cx cubic_fact_1(cx a, cx z, long n, const EllipticParams& params,
                const TruncationPolicy& policy) {
    if (n < 0) throw error("cubic_fact_1: n must be >= 0");
    const cx p = params.p();
    const cx a_arg = a * params.q_pow_half(n - 1);
    cx z_arg = z * params.q_pow_half(1 - n);
    cx acc(1.0, 0.0);
    for (long j = 0; j < n; ++j) {
        acc *= gamma_cubic(z_arg, a_arg, p, policy);
        z_arg *= params.q();
    }
    return acc;
}

cx cubic_fact_2(cx a, cx z, long n, const EllipticParams& params,
                const TruncationPolicy& policy) {
    if (n < 0) throw error("cubic_fact_2: n must be >= 0");
    const cx p13 = params.p_third();
    const cx a_arg = a * params.q_pow_half(n - 1);
    cx z_arg = z * params.q_pow_half(1 - n);
    cx acc(1.0, 0.0);
    for (long j = 0; j < n; ++j) {
        acc *= gamma_cubic(a_arg, z_arg, p13, policy);
        z_arg *= params.q();
    }
    return acc;
}

DegenerationReport degeneration_check(DegenerationFamily family, cx a, cx z, cx t,
                                      long n, const std::vector<double>& p_values,
                                      const TruncationPolicy& policy) {
    if (n < 0) throw error("degeneration_check: n must be >= 0");
    for (double pv : p_values)
        if (!(pv > 0.0) || pv >= 0.01)
            throw error("degeneration_check: p values must lie in (0, 0.01)");

    const EllipticParams base(t, cx(0.0, 0.0));
    const cx q = base.q();
    // Classical target (az, a/z;q)_n via the exact p = 0 path.
    const cx target = qp_fact_multi({a * z, a / z}, n, base, policy);
    const cx shape = 1.0 + a * a * pow_int(q, n - 1);
    const cx scale = pow_int(shape, n);

    DegenerationReport report;
    for (double pv : p_values) {
        const double s6 = std::pow(pv, 1.0 / 6.0);
        const EllipticParams params(t, cx(s6, 0.0));
        cx value;
        if (family == DegenerationFamily::first) {
            const cx asub = -a / (params.p() * shape);
            value = scale * cubic_fact_1(asub, z, n, params, policy);
        } else {
            const cx asub = -a / (params.p_third() * shape);
            value = scale * cubic_fact_2(asub, z, n, params, policy);
        }
        report.residuals.push_back(std::abs(value - target) /
                                   std::max(std::abs(target), 1e-300));
    }

    report.strictly_decreasing = report.residuals.size() >= 2;
    double order_acc = 0.0;
    for (std::size_t i = 0; i + 1 < report.residuals.size(); ++i) {
        report.ratios.push_back(report.residuals[i] /
                                std::max(report.residuals[i + 1], 1e-300));
        if (!(report.residuals[i + 1] < report.residuals[i]))
            report.strictly_decreasing = false;
        order_acc += std::log(std::max(report.residuals[i], 1e-300) /
                              std::max(report.residuals[i + 1], 1e-300)) /
                     std::log(p_values[i] / p_values[i + 1]);
    }
    if (report.residuals.size() >= 2)
        report.empirical_order =
            order_acc / static_cast<double>(report.residuals.size() - 1);
    return report;
}

}  // namespace ellipsum
