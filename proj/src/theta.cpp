#include "ellipsum/theta.hpp"

#include <cmath>

namespace ellipsum {

namespace {
constexpr double kNomeCap = 0.99;
}

cx theta(cx x, cx p, const TruncationPolicy& policy) {
    if (p == cx(0.0, 0.0)) {
        // Exact basic-case path; x = 0 is fine here (paper: x -> 0 is only
        // forbidden at nonzero nome).
        return 1.0 - x;
    }
    if (x == cx(0.0, 0.0)) throw zero_argument("theta: x = 0 with p != 0");
    if (std::abs(p) >= kNomeCap) throw nome_out_of_range("theta: |p| >= 0.99");

    cx acc(1.0, 0.0);
    cx pj_x = x;          // p^j x
    cx pj1_over_x = p / x;  // p^{j+1} / x
    int quiet = 0;
    for (int j = 0; j < policy.max_factors; ++j) {
        acc *= (1.0 - pj_x) * (1.0 - pj1_over_x);
        if (std::abs(pj_x) < policy.tail_tol && std::abs(pj1_over_x) < policy.tail_tol) {
            if (++quiet >= 3) return acc;
        } else {
            quiet = 0;
        }
        pj_x *= p;
        pj1_over_x *= p;
    }
    throw truncation_exhausted("theta: factor cap hit before tail bound");
}

cx theta_multi(std::span<const cx> xs, cx p, const TruncationPolicy& policy) {
    cx acc(1.0, 0.0);
    for (cx x : xs) acc *= theta(x, p, policy);
    return acc;
}

cx theta_multi(std::initializer_list<cx> xs, cx p, const TruncationPolicy& policy) {
    return theta_multi(std::span<const cx>(xs.begin(), xs.size()), p, policy);
}

double theta_inversion_residual(cx x, cx p, const TruncationPolicy& policy) {
    if (x == cx(0.0, 0.0)) throw zero_argument("theta_inversion_residual: x = 0");
    const cx lhs = theta(x, p, policy);
    const cx rhs = -x * theta(1.0 / x, p, policy);
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

double theta_p_shift_residual(cx x, cx p, const TruncationPolicy& policy) {
    if (x == cx(0.0, 0.0)) throw zero_argument("theta_p_shift_residual: x = 0");
    if (p == cx(0.0, 0.0)) throw zero_argument("theta_p_shift_residual: p = 0");
    const cx lhs = theta(p * x, p, policy);
    const cx rhs = -theta(x, p, policy) / x;
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

double addition_formula_residual(cx x, cx y, cx u, cx v, cx p,
                                 const TruncationPolicy& policy) {
    const cx t1 = theta_multi({x * y, x / y, u * v, u / v}, p, policy);
    const cx t2 = theta_multi({x * v, x / v, u * y, u / y}, p, policy);
    const cx t3 = (u / y) * theta_multi({y * v, y / v, x * u, x / u}, p, policy);
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
    return std::abs(t1 - t2 - t3) / scale;
}

cx euler_infinite_product(cx a, cx base, const TruncationPolicy& policy) {
    if (std::abs(base) >= kNomeCap && base != cx(0.0, 0.0))
        throw nome_out_of_range("euler_infinite_product: |base| >= 0.99");
    if (a == cx(0.0, 0.0)) return cx(1.0, 0.0);
    cx acc(1.0, 0.0);
    cx f = a;
    int quiet = 0;
    for (int j = 0; j < policy.max_factors; ++j) {
        acc *= (1.0 - f);
        if (std::abs(f) < policy.tail_tol) {
            if (++quiet >= 3) return acc;
        } else {
            quiet = 0;
        }
        f *= base;
        if (f == cx(0.0, 0.0)) return acc;  // base = 0: only the j = 0 factor survives
    }
    throw truncation_exhausted("euler_infinite_product: factor cap hit");
}

}  // namespace ellipsum
