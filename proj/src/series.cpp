#include "ellipsum/series.hpp"

#include <cmath>

namespace ellipsum {

void validate(const VwpSpec& spec, const EllipticParams& params) {
    if (spec.n < 0) throw balance_violation("VwpSpec: n must be >= 0");
    if (spec.uppers.empty()) throw balance_violation("VwpSpec: no upper parameters");
    const cx qmn = params.q_pow(-spec.n);
    if (rel_residual(spec.uppers.back(), qmn) > 1e-12)
        throw balance_violation("VwpSpec: last upper parameter is not q^{-n}");
    // q^2 prod uppers^2 = (a1 q)^{s-5}, s - 5 = #uppers - 1.
    cx lhs = params.q() * params.q();
    for (cx u : spec.uppers) lhs *= u * u;
    const cx rhs = pow_int(spec.a1 * params.q(), static_cast<long>(spec.uppers.size()) - 1);
    if (rel_residual(lhs, rhs) > 1e-10)
        throw balance_violation("VwpSpec: elliptic balancing condition violated");
}

cx vwp_sum(const VwpSpec& spec, const EllipticParams& params,
           const TruncationPolicy& policy, double* cond_out) {
    validate(spec, params);
    const cx q = params.q();
    const cx p = params.p();
    const cx th_a1 = theta(spec.a1, p, policy);

    // Incrementally extended factorial products: num_k = (a1, u...;q,p)_k,
    // den_k = (q, a1 q/u...;q,p)_k.
    std::vector<cx> num_args;
    std::vector<cx> den_args;
    num_args.push_back(spec.a1);
    den_args.push_back(q);
    for (cx u : spec.uppers) {
        num_args.push_back(u);
        den_args.push_back(spec.a1 * q / u);
    }

    kahan_sum acc;
    double max_term = 0.0;
    // The factorial quotient is extended one factor pair at a time; keeping
    // the running value as a ratio avoids overflow when extreme parameters
    // (q^{-n}, solved slots) make individual products astronomically large.
    cx term_core(1.0, 0.0);
    cx zpow(1.0, 0.0);
    cx a1q2k = spec.a1;
    const cx qz = q * spec.z_arg;
    for (long k = 0; k <= spec.n; ++k) {
        if (k > 0) {
            for (std::size_t i = 0; i < num_args.size(); ++i) {
                const cx fd = theta(den_args[i], p, policy);
                if (std::abs(fd) < 1e-280)
                    throw pole_hit("vwp_sum: denominator factor vanished at k=" +
                                   std::to_string(k) + ", factor " + std::to_string(i));
                term_core *= theta(num_args[i], p, policy) / fd;
                num_args[i] *= q;
                den_args[i] *= q;
            }
            zpow *= qz;
            a1q2k *= q * q;
        }
        const cx term = theta(a1q2k, p, policy) / th_a1 * term_core * zpow;
        acc.add(term);
        max_term = std::max(max_term, std::abs(term));
    }
    const cx total = acc.value();
    if (cond_out) *cond_out = max_term / std::max(std::abs(total), 1e-300);
    return total;
}

BalancedQuintuple make_balanced_quintuple(cx a, cx b, cx c, cx d, long n,
                                          const EllipticParams& params) {
    BalancedQuintuple q5;
    q5.a = a;
    q5.b = b;
    q5.c = c;
    q5.d = d;
    q5.n = n;
    q5.e = a * a * params.q_pow(n + 1) / (b * c * d);
    return q5;
}

void validate(const BalancedQuintuple& q5, const EllipticParams& params) {
    const cx lhs = q5.a * q5.a * params.q_pow(q5.n + 1);
    const cx rhs = q5.b * q5.c * q5.d * q5.e;
    if (rel_residual(lhs, rhs) > 1e-12)
        throw balance_violation("BalancedQuintuple: a^2 q^{n+1} != bcde");
}

VwpSpec to_vwp(const BalancedQuintuple& q5, const EllipticParams& params) {
    validate(q5, params);
    VwpSpec spec;
    spec.a1 = q5.a;
    spec.uppers = {q5.b, q5.c, q5.d, q5.e, params.q_pow(-q5.n)};
    spec.n = q5.n;
    return spec;
}

cx ft_rhs(const BalancedQuintuple& q5, const EllipticParams& params,
          const TruncationPolicy& policy) {
    validate(q5, params);
    const cx aq = q5.a * params.q();
    const cx num = qp_fact_multi(
        {aq, aq / (q5.b * q5.c), aq / (q5.b * q5.d), aq / (q5.c * q5.d)}, q5.n, params, policy);
    const cx den = qp_fact_multi(
        {aq / q5.b, aq / q5.c, aq / q5.d, aq / (q5.b * q5.c * q5.d)}, q5.n, params, policy);
    if (std::abs(den) < 1e-280) throw pole_hit("ft_rhs: denominator factorial vanished");
    return num / den;
}

double jackson_8phi7_residual(const BalancedQuintuple& q5, cx q,
                              const TruncationPolicy& policy) {
    // Independent basic-q loop: nothing shared with vwp_sum beyond complex
    // arithmetic.
    (void)policy;
    const cx a = q5.a, b = q5.b, c = q5.c, d = q5.d, e = q5.e;
    const long n = q5.n;

    const cx upper[6] = {a, b, c, d, e, pow_int(q, -n)};
    const cx lower[6] = {q,      a * q / b, a * q / c,
                         a * q / d, a * q / e, a * pow_int(q, n + 1)};
    kahan_sum acc;
    cx num(1.0, 0.0), den(1.0, 0.0), qk(1.0, 0.0), aq2k = a;
    cx up[6], lo[6];
    for (int i = 0; i < 6; ++i) {
        up[i] = upper[i];
        lo[i] = lower[i];
    }
    for (long k = 0; k <= n; ++k) {
        if (k > 0) {
            for (int i = 0; i < 6; ++i) {
                num *= (1.0 - up[i]);
                den *= (1.0 - lo[i]);
                up[i] *= q;
                lo[i] *= q;
            }
            qk *= q;
            aq2k *= q * q;
        }
        acc.add((1.0 - aq2k) / (1.0 - a) * num / den * qk);
    }

    auto qfac = [&](cx x, long m) {
        cx r(1.0, 0.0);
        for (long j = 0; j < m; ++j) {
            r *= (1.0 - x);
            x *= q;
        }
        return r;
    };
    const cx aq = a * q;
    const cx rhs = qfac(aq, n) * qfac(aq / (b * c), n) * qfac(aq / (b * d), n) *
                   qfac(aq / (c * d), n) /
                   (qfac(aq / b, n) * qfac(aq / c, n) * qfac(aq / d, n) *
                    qfac(aq / (b * c * d), n));
    return rel_residual(acc.value(), rhs);
}

}  // namespace ellipsum
