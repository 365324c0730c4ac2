// Independent reference implementations used only by the tests: raw
// fixed-length products and brute-force double loops, sharing nothing with
// the library's truncation or shell logic.
#ifndef ELLIPSUM_TESTS_ORACLES_HPP
#define ELLIPSUM_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>

namespace oracle {

using cx = std::complex<double>;

// theta(x;p) as a raw N-factor partial product.
inline cx theta_product(cx x, cx p, int factors) {
    cx acc(1.0, 0.0);
    cx pj(1.0, 0.0);
    for (int j = 0; j < factors; ++j) {
        acc *= (1.0 - pj * x) * (1.0 - pj * p / x);
        pj *= p;
    }
    return acc;
}

// prod_{j=0}^{N-1} (1 - a base^j).
inline cx euler_product(cx a, cx base, int factors) {
    cx acc(1.0, 0.0);
    cx f = a;
    for (int j = 0; j < factors; ++j) {
        acc *= (1.0 - f);
        f *= base;
    }
    return acc;
}

// Bhargava cubic theta by brute-force double loop over |k|,|l| <= K.
inline cx gamma_loop(cx z, cx a, cx p, int K = 40) {
    if (p == cx(0.0, 0.0)) return cx(1.0, 0.0);
    const cx lp = std::log(p);
    const cx la = std::log(a);
    const cx lz = std::log(z);
    cx tot(0.0, 0.0);
    for (int k = -K; k <= K; ++k) {
        for (int l = -K; l <= K; ++l) {
            const double N = static_cast<double>(k) * k + static_cast<double>(k) * l +
                             static_cast<double>(l) * l;
            const cx w = N * lp + static_cast<double>(k + l) * la +
                         static_cast<double>(k - l) * lz;
            if (w.real() > -745.0) tot += std::exp(w);
        }
    }
    return tot;
}

// Basic q-shifted factorial (a;q)_n, n >= 0.
inline cx q_factorial(cx a, cx q, long n) {
    cx acc(1.0, 0.0);
    for (long j = 0; j < n; ++j) {
        acc *= (1.0 - a);
        a *= q;
    }
    return acc;
}

// Naive very-well-poised sum: every factorial recomputed from scratch via
// theta_product (no incremental state shared with the library path).
inline cx vwp_naive(cx a1, const std::vector<cx>& uppers, long n, cx q, cx p,
                    int factors = 200) {
    auto fact = [&](cx a, long m) {
        cx acc(1.0, 0.0);
        for (long j = 0; j < m; ++j) {
            acc *= theta_product(a, p, factors);
            a *= q;
        }
        return acc;
    };
    cx tot(0.0, 0.0);
    for (long k = 0; k <= n; ++k) {
        cx num = fact(a1, k);
        cx den = fact(q, k);
        for (cx u : uppers) {
            num *= fact(u, k);
            den *= fact(a1 * q / u, k);
        }
        cx qk(1.0, 0.0);
        for (long j = 0; j < k; ++j) qk *= q;
        cx a1q2k = a1;
        for (long j = 0; j < 2 * k; ++j) a1q2k *= q;
        tot += theta_product(a1q2k, p, factors) / theta_product(a1, p, factors) * num /
               den * qk;
    }
    return tot;
}

}  // namespace oracle

#endif
