#include "ellipsum/pochhammer.hpp"

#include <cmath>

namespace ellipsum {

cx qp_fact_base(cx a, long n, cx base, cx p, const TruncationPolicy& policy) {
    if (n == 0) return cx(1.0, 0.0);
    if (n > 0) {
        cx acc(1.0, 0.0);
        cx arg = a;
        for (long k = 0; k < n; ++k) {
            acc *= theta(arg, p, policy);
            arg *= base;
        }
        return acc;
    }
    // Reciprocal-product definition evaluated directly so a vanishing factor
    // is detected where it occurs.
    cx acc(1.0, 0.0);
    cx arg = a * pow_int(base, n);
    for (long k = 0; k < -n; ++k) {
        const cx f = theta(arg, p, policy);
        if (std::abs(f) < 1e-280)
            throw pole_hit("qp_fact: vanishing theta factor at negative index k=" +
                           std::to_string(k));
        acc *= f;
        arg *= base;
    }
    return 1.0 / acc;
}

cx qp_fact(cx a, long n, const EllipticParams& params, const TruncationPolicy& policy) {
    return qp_fact_base(a, n, params.q(), params.p(), policy);
}

cx qp_fact_multi(std::span<const cx> as, long n, const EllipticParams& params,
                 const TruncationPolicy& policy) {
    cx acc(1.0, 0.0);
    for (cx a : as) acc *= qp_fact(a, n, params, policy);
    return acc;
}

cx qp_fact_multi(std::initializer_list<cx> as, long n, const EllipticParams& params,
                 const TruncationPolicy& policy) {
    return qp_fact_multi(std::span<const cx>(as.begin(), as.size()), n, params, policy);
}

cx qp_fact_multi_base(std::initializer_list<cx> as, long n, cx base, cx p,
                      const TruncationPolicy& policy) {
    cx acc(1.0, 0.0);
    for (cx a : as) acc *= qp_fact_base(a, n, base, p, policy);
    return acc;
}

scaled_cx qp_fact_scaled(cx a, long n, cx base, cx p, const TruncationPolicy& policy) {
    scaled_cx acc;
    if (n >= 0) {
        cx arg = a;
        for (long k = 0; k < n; ++k) {
            acc *= theta(arg, p, policy);
            arg *= base;
        }
        return acc;
    }
    cx arg = a * pow_int(base, n);
    for (long k = 0; k < -n; ++k) {
        const cx f = theta(arg, p, policy);
        if (std::abs(f) < 1e-280)
            throw pole_hit("qp_fact_scaled: vanishing theta factor at negative index");
        acc /= f;
        arg *= base;
    }
    return acc;
}

double qp_fact_pshift_residual(cx a, long n, const EllipticParams& params,
                               const TruncationPolicy& policy) {
    if (n < 0) throw error("qp_fact_pshift_residual: n must be >= 0");
    if (a == cx(0.0, 0.0)) throw zero_argument("qp_fact_pshift_residual: a = 0");
    const cx q = params.q();
    const cx p = params.p();
    const cx lhs = qp_fact_base(p * a, n, q, p, policy);
    const cx sign = (n % 2 == 0) ? cx(1.0, 0.0) : cx(-1.0, 0.0);
    const cx rhs = sign * pow_int(a, -n) * pow_int(q, -(n * (n - 1) / 2)) *
                   qp_fact_base(a, n, q, p, policy);
    return rel_residual(lhs, rhs);
}

cx elliptic_binomial(long m, long k, const EllipticParams& params,
                     const TruncationPolicy& policy) {
    if (k < 0 || k > m) throw error("elliptic_binomial: need 0 <= k <= m");
    const cx num = qp_fact(params.q_pow(1 + k), m - k, params, policy);
    const cx den = qp_fact(params.q(), m - k, params, policy);
    if (std::abs(den) < 1e-280) throw pole_hit("elliptic_binomial: (q;q,p)_{m-k} = 0");
    return num / den;
}

}  // namespace ellipsum
