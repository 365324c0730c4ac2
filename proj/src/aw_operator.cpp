#include "ellipsum/aw_operator.hpp"

#include <cmath>

namespace ellipsum {

SymmetricFunction wp_basis(cx a, cx c, long k, const EllipticParams& params,
                           const TruncationPolicy& policy) {
    if (k < 0) throw error("wp_basis: k must be >= 0");
    return SymmetricFunction{[=](cx z) {
        const cx den = qp_fact_multi({c * z, c / z}, k, params, policy);
        if (std::abs(den) < 1e-280) throw pole_hit("wp_basis: denominator vanished");
        return qp_fact_multi({a * z, a / z}, k, params, policy) / den;
    }};
}

SymmetricFunction WcnElement::to_function(const EllipticParams& params,
                                          const TruncationPolicy& policy) const {
    // Basis values built incrementally: step k -> k+1 appends one theta pair
    // to numerator and denominator.
    WcnElement self = *this;
    return SymmetricFunction{[self, params, policy](cx z) {
        const cx q = params.q();
        const cx p = params.p();
        cx num(1.0, 0.0), den(1.0, 0.0);
        cx na1 = self.a * z, na2 = self.a / z;
        cx da1 = self.c * z, da2 = self.c / z;
        kahan_sum acc;
        for (long k = 0; k <= self.n; ++k) {
            if (k > 0) {
                num *= theta(na1, p, policy) * theta(na2, p, policy);
                const cx f = theta(da1, p, policy) * theta(da2, p, policy);
                if (std::abs(f) < 1e-280) throw pole_hit("WcnElement: basis pole");
                den *= f;
                na1 *= q; na2 *= q; da1 *= q; da2 *= q;
            }
            acc.add(self.coeffs[static_cast<std::size_t>(k)] * num / den);
        }
        return acc.value();
    }};
}

namespace {

// Operator prefactor 2 q^{1/2} z theta(czq^{-1/2}, czq^{1/2}, cq^{-1/2}/z,
// cq^{1/2}/z;p) / theta(q, z^2;p).
cx d_prefactor(cx z, cx c, const EllipticParams& params, const TruncationPolicy& policy) {
    const cx p = params.p();
    const cx qh = params.q_half();
    const cx th_z2 = theta(z * z, p, policy);
    if (std::abs(th_z2) < 1e-280)
        throw pole_hit("apply_D: theta(z^2;p) vanished (z^2 on the p lattice)");
    const cx pre_num =
        theta_multi({c * z / qh, c * z * qh, c / (qh * z), c * qh / z}, p, policy);
    return 2.0 * qh * z * pre_num / (theta(params.q(), p, policy) * th_z2);
}

}  // namespace

SymmetricFunction apply_D(SymmetricFunction f, cx c, const EllipticParams& params,
                          const TruncationPolicy& policy) {
    return SymmetricFunction{[f = std::move(f), c, params, policy](cx z) {
        const cx qh = params.q_half();
        return d_prefactor(z, c, params, policy) * (f(qh * z) - f(z / qh));
    }};
}

SymmetricFunction apply_D_iter(SymmetricFunction f, cx c, long m,
                               const EllipticParams& params,
                               const TruncationPolicy& policy) {
    if (m < 0) throw error("apply_D_iter: m must be >= 0");
    SymmetricFunction g = std::move(f);
    cx cc = c;
    const cx shift = params.q_pow_half(3);  // c-parameter advances by q^{3/2}
    for (long i = 0; i < m; ++i) {
        g = apply_D(std::move(g), cc, params, policy);
        cc *= shift;
    }
    return g;
}

namespace {

struct CooperWeights {
    cx prefactor;
    std::vector<cx> weight;  // k = 0..m, without the f factor
    std::vector<cx> f_arg;   // q^{m/2-k} z
};

CooperWeights cooper_weights(cx c, long m, cx z, const EllipticParams& params,
                             const TruncationPolicy& policy) {
    const cx q = params.q();
    const cx p = params.p();
    CooperWeights w;
    w.prefactor = pow_int(-2.0 * z, m) * params.q_pow_quarter(m * (3 - m)) *
                  qp_fact_multi({c * params.q_pow_half(m - 2) * z,
                                 c * params.q_pow_half(m - 2) / z},
                                m + 1, params, policy) /
                  pow_int(theta(q, p, policy), m);
    for (long k = 0; k <= m; ++k) {
        const cx czp = c * params.q_pow_half(m - 2 * k) * z;
        const cx czm = c * params.q_pow_half(2 * k - m) / z;
        const cx den1 = qp_fact(params.q_pow(m - 2 * k + 1) * z * z, k, params, policy);
        const cx den2 =
            qp_fact(params.q_pow(2 * k - m + 1) / (z * z), m - k, params, policy);
        if (std::abs(den1) < 1e-280 || std::abs(den2) < 1e-280)
            throw pole_hit("cooper_explicit: z^2 factorial vanished at k=" +
                           std::to_string(k));
        w.weight.push_back(params.q_pow(k * (m - k)) *
                           elliptic_binomial(m, k, params, policy) *
                           pow_int(z, 2 * (k - m)) *
                           qp_fact_multi({czp, czm}, m - 1, params, policy) /
                           (den1 * den2));
        w.f_arg.push_back(params.q_pow_half(m - 2 * k) * z);
    }
    return w;
}

}  // namespace

cx cooper_explicit(const SymmetricFunction& f, cx c, long m, cx z,
                   const EllipticParams& params, const TruncationPolicy& policy,
                   double* cond_out) {
    if (m < 0) throw error("cooper_explicit: m must be >= 0");
    const CooperWeights w = cooper_weights(c, m, z, params, policy);
    kahan_sum acc;
    double max_term = 0.0;
    for (long k = 0; k <= m; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const cx term = w.weight[ku] * f(w.f_arg[ku]);
        acc.add(term);
        max_term = std::max(max_term, std::abs(term));
    }
    if (cond_out) *cond_out = max_term / std::max(std::abs(acc.value()), 1e-300);
    return w.prefactor * acc.value();
}

MultiSymmetricFunction apply_D_var(MultiSymmetricFunction f, cx c, std::size_t var,
                                   const EllipticParams& params,
                                   const TruncationPolicy& policy) {
    return MultiSymmetricFunction{
        [f = std::move(f), c, var, params, policy](const std::vector<cx>& zs) {
            const cx qh = params.q_half();
            const cx z = zs.at(var);
            std::vector<cx> zp = zs, zm = zs;
            zp[var] = qh * z;
            zm[var] = z / qh;
            return d_prefactor(z, c, params, policy) * (f(zp) - f(zm));
        }};
}

MultiSymmetricFunction apply_D_multi(MultiSymmetricFunction f, std::vector<cx> c,
                                     std::vector<long> k, const EllipticParams& params,
                                     const TruncationPolicy& policy) {
    if (c.size() != k.size()) throw error("apply_D_multi: c/k size mismatch");
    MultiSymmetricFunction g = std::move(f);
    const cx shift = params.q_pow_half(3);
    for (std::size_t i = 0; i < c.size(); ++i) {
        cx cc = c[i];
        for (long j = 0; j < k[i]; ++j) {
            g = apply_D_var(std::move(g), cc, i, params, policy);
            cc *= shift;
        }
    }
    return g;
}

bool advance_multi_index(std::vector<long>& idx, const std::vector<long>& bounds) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (++idx[i] <= bounds[i]) return true;
        idx[i] = 0;
    }
    return false;
}

cx cooper_explicit_multi(const MultiSymmetricFunction& f, const std::vector<cx>& c,
                         const std::vector<long>& k, const std::vector<cx>& z,
                         const EllipticParams& params, const TruncationPolicy& policy,
                         double* cond_out) {
    const std::size_t m = c.size();
    if (k.size() != m || z.size() != m)
        throw error("cooper_explicit_multi: dimension mismatch");
    if (m == 0) throw error("cooper_explicit_multi: no variables");

    std::vector<CooperWeights> w;
    w.reserve(m);
    cx prefactor(1.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        w.push_back(cooper_weights(c[i], k[i], z[i], params, policy));
        prefactor *= w.back().prefactor;
    }

    std::vector<long> idx(m, 0);
    std::vector<cx> args(m);
    kahan_sum acc;
    double max_term = 0.0;
    do {
        cx weight(1.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto ju = static_cast<std::size_t>(idx[i]);
            weight *= w[i].weight[ju];
            args[i] = w[i].f_arg[ju];
        }
        const cx term = weight * f(args);
        acc.add(term);
        max_term = std::max(max_term, std::abs(term));
    } while (advance_multi_index(idx, k));
    if (cond_out) *cond_out = max_term / std::max(std::abs(acc.value()), 1e-300);
    return prefactor * acc.value();
}

}  // namespace ellipsum
