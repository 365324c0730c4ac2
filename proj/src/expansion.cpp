#include "ellipsum/expansion.hpp"

#include <cmath>

namespace ellipsum {

namespace {

// Quadratic-basis numerator (q^{1/4}z, q^{1/4}/z;q^{1/2},p)_k.
cx quad_numerator(cx z, long k, const EllipticParams& params,
                  const TruncationPolicy& policy) {
    const cx qq = params.q_quarter();
    const cx qh = params.q_half();
    return qp_fact_multi_base({qq * z, qq / z}, k, qh, params.p(), policy);
}

}  // namespace

SymmetricFunction quadratic_basis(cx c, long k, const EllipticParams& params,
                                  const TruncationPolicy& policy) {
    if (k < 0) throw error("quadratic_basis: k must be >= 0");
    return SymmetricFunction{[=](cx z) {
        const cx den = qp_fact_multi({c * z, c / z}, k, params, policy);
        if (std::abs(den) < 1e-280) throw pole_hit("quadratic_basis: denominator vanished");
        return quad_numerator(z, k, params, policy) / den;
    }};
}

cx TaylorCoefficients::reconstruct(cx z, const EllipticParams& params,
                                   const TruncationPolicy& policy,
                                   double* cond_out) const {
    const cx q = params.q();
    const cx p = params.p();
    kahan_sum acc;
    cx num(1.0, 0.0), den(1.0, 0.0);
    cx na1, na2, nstep;
    if (basis == TaylorBasis::well_poised) {
        na1 = a * z;
        na2 = a / z;
        nstep = q;
    } else {
        na1 = params.q_quarter() * z;
        na2 = params.q_quarter() / z;
        nstep = params.q_half();
    }
    cx da1 = c * z, da2 = c / z;
    double max_term = 0.0;
    for (long k = 0; k <= n; ++k) {
        if (k > 0) {
            num *= theta(na1, p, policy) * theta(na2, p, policy);
            const cx fd = theta(da1, p, policy) * theta(da2, p, policy);
            if (std::abs(fd) < 1e-280) throw pole_hit("reconstruct: basis pole");
            den *= fd;
            na1 *= nstep;
            na2 *= nstep;
            da1 *= q;
            da2 *= q;
        }
        const cx term = f_k[static_cast<std::size_t>(k)] * num / den;
        acc.add(term);
        max_term = std::max(max_term, std::abs(term));
    }
    if (cond_out) *cond_out = max_term / std::max(std::abs(acc.value()), 1e-300);
    return acc.value();
}

namespace {

// Five fixed probe points (shifted on pole collisions) comparing f against
// its reconstruction; mismatch beyond 1e-6 * scale flags f outside W_c^n.
void probe_reconstruction(const SymmetricFunction& f, const TaylorCoefficients& co,
                          const EllipticParams& params, const TruncationPolicy& policy) {
    double worst = 0.0;
    double scale = 1.0;
    for (int j = 0; j < 5; ++j) {
        cx z = (0.85 + 0.07 * j) * std::exp(cx(0.0, 0.53 + 1.09 * j));
        for (int attempt = 0;; ++attempt) {
            try {
                const cx fv = f(z);
                const cx rv = co.reconstruct(z, params, policy);
                if (!is_finite(fv) || !is_finite(rv)) throw near_pole("probe");
                worst = std::max(worst, std::abs(fv - rv));
                scale = std::max(scale, std::abs(fv));
                break;
            } catch (const pole_hit&) {
            } catch (const near_pole&) {
            }
            if (attempt >= 100)
                throw sampler_exhausted("taylor_coeffs: probe points kept hitting poles");
            z *= 1.013 * std::exp(cx(0.0, 0.171));
        }
    }
    if (worst > 1e-6 * scale)
        throw degree_overflow("taylor_coeffs: reconstruction probe failed (f not in W_c^n?)");
}

}  // namespace

TaylorCoefficients taylor_coeffs(const SymmetricFunction& f, cx a, cx c, long n,
                                 const EllipticParams& params,
                                 const TruncationPolicy& policy, double* cond_out) {
    if (n < 0) throw error("taylor_coeffs: n must be >= 0");
    const cx p = params.p();
    const cx th_q = theta(params.q(), p, policy);
    TaylorCoefficients out;
    out.a = a;
    out.c = c;
    out.n = n;
    out.basis = TaylorBasis::well_poised;
    for (long k = 0; k <= n; ++k) {
        const cx den = qp_fact_multi({params.q(), c / a, a * c * params.q_pow(k - 1)}, k,
                                     params, policy);
        if (std::abs(den) < 1e-280)
            throw pole_hit("taylor_coeffs: coefficient denominator vanished");
        const cx sign = (k % 2 == 0) ? cx(1.0, 0.0) : cx(-1.0, 0.0);
        const cx factor = sign * params.q_pow_quarter(-k * (k - 1)) * pow_int(th_q, k) /
                          (pow_int(2.0 * a, k) * den);
        double cond = 0.0;
        const cx dval =
            cooper_explicit(f, c, k, a * params.q_pow_half(k), params, policy, &cond);
        if (cond_out) *cond_out = std::max(*cond_out, cond);
        out.f_k.push_back(factor * dval);
    }
    probe_reconstruction(f, out, params, policy);
    return out;
}

TaylorCoefficients quadratic_taylor_coeffs(const SymmetricFunction& f, cx c, long n,
                                           const EllipticParams& params,
                                           const TruncationPolicy& policy,
                                           double* cond_out) {
    if (n < 0) throw error("quadratic_taylor_coeffs: n must be >= 0");
    const cx p = params.p();
    const cx th_q = theta(params.q(), p, policy);
    const cx qq = params.q_quarter();
    TaylorCoefficients out;
    out.a = qq;
    out.c = c;
    out.n = n;
    out.basis = TaylorBasis::quadratic;
    for (long k = 0; k <= n; ++k) {
        // (cq^{k/2-3/4};q^{1/2},p)_{2k}; the argument is c t^{2k-3}.
        const cx den2 = qp_fact_base(c * params.q_pow_quarter(2 * k - 3), 2 * k,
                                     params.q_half(), p, policy);
        const cx den1 = qp_fact(params.q(), k, params, policy);
        if (std::abs(den1) < 1e-280 || std::abs(den2) < 1e-280)
            throw pole_hit("quadratic_taylor_coeffs: coefficient denominator vanished");
        const cx sign = (k % 2 == 0) ? cx(1.0, 0.0) : cx(-1.0, 0.0);
        const cx factor = sign * params.q_pow_quarter(-k) * pow_int(th_q, k) /
                          (pow_int(cx(2.0, 0.0), k) * den1 * den2);
        double cond = 0.0;
        out.f_k.push_back(factor * cooper_explicit(f, c, k, qq, params, policy, &cond));
        if (cond_out) *cond_out = std::max(*cond_out, cond);
    }
    probe_reconstruction(f, out, params, policy);
    return out;
}

cx interpolation_prefactor(cx a, cx c, long n, cx z, const EllipticParams& params,
                           const TruncationPolicy& policy) {
    const cx q = params.q();
    const cx num = qp_fact_multi({a * a * q, q, c * z, c / z}, n, params, policy);
    const cx den = qp_fact_multi({a * c, c / a, a * q * z, a * q / z}, n, params, policy);
    if (std::abs(den) < 1e-280) throw pole_hit("interpolation_prefactor: pole");
    return num / den;
}

cx interpolate(const SymmetricFunction& f, cx a, cx c, long n, cx z,
               const EllipticParams& params, const TruncationPolicy& policy,
               double* cond_out) {
    if (n < 0) throw error("interpolate: n must be >= 0");
    const cx q = params.q();
    const cx p = params.p();
    const cx th_a2 = theta(a * a, p, policy);

    cx num_args[6] = {params.q_pow(-n), a * a,     a * q / c,
                      a * c * params.q_pow(n),     a * z,     a / z};
    cx den_args[6] = {q,  a * a * params.q_pow(n + 1), a * c,
                      a * params.q_pow(1 - n) / c,     a * q * z, a * q / z};
    kahan_sum acc;
    double max_term = 0.0;
    scaled_cx core;  // the factorial quotient, kept scaled against overflow
    cx qk(1.0, 0.0), a2q2k = a * a, node = a;
    for (long k = 0; k <= n; ++k) {
        if (k > 0) {
            for (int i = 0; i < 6; ++i) {
                const cx fd = theta(den_args[i], p, policy);
                if (std::abs(fd) < 1e-280)
                    throw pole_hit("interpolate: weight denominator vanished at k=" +
                                   std::to_string(k));
                core *= theta(num_args[i], p, policy);
                core /= fd;
                num_args[i] *= q;
                den_args[i] *= q;
            }
            qk *= q;
            a2q2k *= q * q;
            node *= q;
        }
        scaled_cx st = core;
        st *= qk * theta(a2q2k, p, policy) / th_a2;
        st *= f(node);
        const cx term = st.value();
        acc.add(term);
        max_term = std::max(max_term, std::abs(term));
    }
    const cx total = acc.value();
    if (cond_out) *cond_out = max_term / std::max(std::abs(total), 1e-300);
    return total;
}

void MultivarConfig::validate() const {
    if (a.empty() || a.size() != c.size() || a.size() != n.size())
        throw error("MultivarConfig: vectors must share the variable count");
    for (long ni : n)
        if (ni < 0) throw error("MultivarConfig: degrees must be >= 0");
}

cx MultiTaylorCoefficients::at(const std::vector<long>& idx) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        flat = flat * static_cast<std::size_t>(cfg.n[i] + 1) + static_cast<std::size_t>(idx[i]);
    return f_k[flat];
}

cx MultiTaylorCoefficients::reconstruct(const std::vector<cx>& z,
                                        const EllipticParams& params,
                                        const TruncationPolicy& policy,
                                        double* cond_out) const {
    const std::size_t m = cfg.vars();
    // Per-variable basis tables, built once.
    std::vector<std::vector<cx>> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        basis[i].reserve(static_cast<std::size_t>(cfg.n[i]) + 1);
        cx num(1.0, 0.0), den(1.0, 0.0);
        cx na1 = cfg.a[i] * z[i], na2 = cfg.a[i] / z[i];
        cx da1 = cfg.c[i] * z[i], da2 = cfg.c[i] / z[i];
        for (long k = 0; k <= cfg.n[i]; ++k) {
            if (k > 0) {
                num *= theta(na1, params.p(), policy) * theta(na2, params.p(), policy);
                const cx fd = theta(da1, params.p(), policy) * theta(da2, params.p(), policy);
                if (std::abs(fd) < 1e-280) throw pole_hit("reconstruct_multi: basis pole");
                den *= fd;
                na1 *= params.q();
                na2 *= params.q();
                da1 *= params.q();
                da2 *= params.q();
            }
            basis[i].push_back(num / den);
        }
    }
    std::vector<long> idx(m, 0);
    kahan_sum acc;
    double max_term = 0.0;
    do {
        cx term = at(idx);
        for (std::size_t i = 0; i < m; ++i)
            term *= basis[i][static_cast<std::size_t>(idx[i])];
        acc.add(term);
        max_term = std::max(max_term, std::abs(term));
    } while (advance_multi_index(idx, cfg.n));
    if (cond_out) *cond_out = max_term / std::max(std::abs(acc.value()), 1e-300);
    return acc.value();
}

MultiTaylorCoefficients taylor_coeffs_multi(const MultiSymmetricFunction& f,
                                            const MultivarConfig& cfg,
                                            const EllipticParams& params,
                                            const TruncationPolicy& policy,
                                            double* cond_out) {
    cfg.validate();
    const std::size_t m = cfg.vars();
    const cx p = params.p();
    const cx th_q = theta(params.q(), p, policy);

    MultiTaylorCoefficients out;
    out.cfg = cfg;
    std::vector<long> idx(m, 0);
    std::vector<cx> zev(m);
    do {
        cx factor(1.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const long k = idx[i];
            const cx den = qp_fact_multi(
                {params.q(), cfg.c[i] / cfg.a[i], cfg.a[i] * cfg.c[i] * params.q_pow(k - 1)},
                k, params, policy);
            if (std::abs(den) < 1e-280)
                throw pole_hit("taylor_coeffs_multi: coefficient denominator vanished");
            const cx sign = (k % 2 == 0) ? cx(1.0, 0.0) : cx(-1.0, 0.0);
            factor *= sign * params.q_pow_quarter(-k * (k - 1)) * pow_int(th_q, k) /
                      (pow_int(2.0 * cfg.a[i], k) * den);
            zev[i] = cfg.a[i] * params.q_pow_half(k);
        }
        double cond = 0.0;
        out.f_k.push_back(factor * cooper_explicit_multi(f, cfg.c, idx, zev, params,
                                                         policy, &cond));
        if (cond_out) *cond_out = std::max(*cond_out, cond);
    } while (advance_multi_index(idx, cfg.n));

    // Row-major flattening above iterates the first variable fastest; rebuild
    // in index order expected by at().
    std::vector<cx> reordered(out.f_k.size());
    std::vector<long> idx2(m, 0);
    std::size_t pos = 0;
    do {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < m; ++i)
            flat = flat * static_cast<std::size_t>(cfg.n[i] + 1) +
                   static_cast<std::size_t>(idx2[i]);
        reordered[flat] = out.f_k[pos++];
    } while (advance_multi_index(idx2, cfg.n));
    out.f_k = std::move(reordered);
    return out;
}

cx interpolation_prefactor_multi(const MultivarConfig& cfg, const std::vector<cx>& z,
                                 const EllipticParams& params,
                                 const TruncationPolicy& policy) {
    cfg.validate();
    cx acc(1.0, 0.0);
    for (std::size_t i = 0; i < cfg.vars(); ++i)
        acc *= interpolation_prefactor(cfg.a[i], cfg.c[i], cfg.n[i], z[i], params, policy);
    return acc;
}

cx interpolate_multi(const MultiSymmetricFunction& f, const MultivarConfig& cfg,
                     const std::vector<cx>& z, const EllipticParams& params,
                     const TruncationPolicy& policy, double* cond_out) {
    cfg.validate();
    const std::size_t m = cfg.vars();
    const cx q = params.q();
    const cx p = params.p();

    // Per-variable weight tables w_i[k], k = 0..n_i.
    std::vector<std::vector<scaled_cx>> wt(m);
    for (std::size_t i = 0; i < m; ++i) {
        const cx a = cfg.a[i], c = cfg.c[i];
        const long n = cfg.n[i];
        const cx th_a2 = theta(a * a, p, policy);
        cx num_args[6] = {params.q_pow(-n), a * a,     a * q / c,
                          a * c * params.q_pow(n),     a * z[i],  a / z[i]};
        cx den_args[6] = {q,  a * a * params.q_pow(n + 1), a * c,
                          a * params.q_pow(1 - n) / c,     a * q * z[i], a * q / z[i]};
        scaled_cx core;
        cx qk(1.0, 0.0), a2q2k = a * a;
        for (long k = 0; k <= n; ++k) {
            if (k > 0) {
                for (int j = 0; j < 6; ++j) {
                    const cx fd = theta(den_args[j], p, policy);
                    if (std::abs(fd) < 1e-280)
                        throw pole_hit("interpolate_multi: weight denominator vanished");
                    core *= theta(num_args[j], p, policy);
                    core /= fd;
                    num_args[j] *= q;
                    den_args[j] *= q;
                }
                qk *= q;
                a2q2k *= q * q;
            }
            scaled_cx w = core;
            w *= qk * theta(a2q2k, p, policy) / th_a2;
            wt[i].push_back(w);
        }
    }

    std::vector<long> idx(m, 0);
    std::vector<cx> node(m);
    kahan_sum acc;
    double max_term = 0.0;
    do {
        scaled_cx weight;
        for (std::size_t i = 0; i < m; ++i) {
            weight *= wt[i][static_cast<std::size_t>(idx[i])];
            node[i] = cfg.a[i] * params.q_pow(idx[i]);
        }
        weight *= f(node);
        const cx term = weight.value();
        acc.add(term);
        max_term = std::max(max_term, std::abs(term));
    } while (advance_multi_index(idx, cfg.n));
    const cx total = acc.value();
    if (cond_out) *cond_out = max_term / std::max(std::abs(total), 1e-300);
    return total;
}

std::vector<long> KarlssonMintonConfig::degrees() const {
    std::vector<long> n(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (long vij : v[i]) n[i] += vij;
        for (std::size_t j = 0; j < i; ++j) n[i] += w[j][i];
        for (std::size_t j = i + 1; j < m; ++j) n[i] += w[i][j];
        for (std::size_t j = 0; j < i; ++j)
            for (long ul : u[j][i]) n[i] += 2 * ul;
        for (std::size_t j = i + 1; j < m; ++j)
            for (long ul : u[i][j]) n[i] += 2 * ul;
    }
    return n;
}

void KarlssonMintonConfig::validate() const {
    if (b.size() != m || v.size() != m || w.size() != m || alpha.size() != m ||
        u.size() != m)
        throw error("KarlssonMintonConfig: ragged shape");
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i].size() != v[i].size())
            throw error("KarlssonMintonConfig: b/v mismatch");
        if (w[i].size() != m || alpha[i].size() != m || u[i].size() != m)
            throw error("KarlssonMintonConfig: pair tables must be m x m");
        for (std::size_t j = 0; j < m; ++j)
            if (alpha[i][j].size() != u[i][j].size())
                throw error("KarlssonMintonConfig: alpha/u mismatch");
    }
}

cx km_lhs(const KarlssonMintonConfig& cfg, const std::vector<cx>& a,
          const std::vector<cx>& z, const EllipticParams& params,
          const TruncationPolicy& policy) {
    cfg.validate();
    const std::vector<long> n = cfg.degrees();
    const cx q = params.q();
    const cx p = params.p();
    scaled_cx acc;
    for (std::size_t i = 0; i < cfg.m; ++i) {
        acc *= qp_fact_scaled(a[i] * a[i] * q, n[i], q, p, policy);
        acc *= qp_fact_scaled(q, n[i], q, p, policy);
        acc /= qp_fact_scaled(a[i] * q * z[i], n[i], q, p, policy);
        acc /= qp_fact_scaled(a[i] * q / z[i], n[i], q, p, policy);
        for (std::size_t j = 0; j < cfg.b[i].size(); ++j) {
            const cx bij = cfg.b[i][j];
            const long vij = cfg.v[i][j];
            acc *= qp_fact_scaled(bij * z[i], vij, q, p, policy);
            acc *= qp_fact_scaled(bij / z[i], vij, q, p, policy);
            acc /= qp_fact_scaled(bij * a[i], vij, q, p, policy);
            acc /= qp_fact_scaled(bij / a[i], vij, q, p, policy);
        }
    }
    for (std::size_t i = 0; i < cfg.m; ++i) {
        for (std::size_t j = i + 1; j < cfg.m; ++j) {
            const long wij = cfg.w[i][j];
            if (wij > 0) {
                acc *= pow_int(a[i] / z[i], wij);
                acc *= pow_int(theta_multi({z[i] * z[j], z[i] / z[j]}, p, policy), wij);
            }
            for (std::size_t l = 0; l < cfg.alpha[i][j].size(); ++l) {
                const cx al = cfg.alpha[i][j][l];
                const long ul = cfg.u[i][j][l];
                for (cx arg : {al * z[i] * z[j], al * z[i] / z[j], al * z[j] / z[i],
                               al / (z[i] * z[j])})
                    acc *= qp_fact_scaled(arg, ul, q, p, policy);
                for (cx arg : {al * a[i] * a[j], al * a[i] / a[j], al * a[j] / a[i],
                               al / (a[i] * a[j])})
                    acc /= qp_fact_scaled(arg, ul, q, p, policy);
            }
        }
    }
    return acc.value();
}

cx km_rhs(const KarlssonMintonConfig& cfg, const std::vector<cx>& a,
          const std::vector<cx>& z, const EllipticParams& params,
          const TruncationPolicy& policy, double* cond_out) {
    cfg.validate();
    const std::vector<long> n = cfg.degrees();
    const cx q = params.q();
    const cx p = params.p();
    std::vector<long> idx(cfg.m, 0);
    kahan_sum acc;
    double max_term = 0.0;
    do {
        scaled_cx term;
        for (std::size_t i = 0; i < cfg.m; ++i) {
            const long k = idx[i];
            const cx ai = a[i];
            long vsum = 0;
            for (long vij : cfg.v[i]) vsum += vij;
            term *= params.q_pow(k * (1 + n[i] - vsum)) *
                    theta(ai * ai * params.q_pow(2 * k), p, policy) /
                    theta(ai * ai, p, policy);
            for (cx arg : {params.q_pow(-n[i]), ai * ai, ai * z[i], ai / z[i]})
                term *= qp_fact_scaled(arg, k, q, p, policy);
            for (cx arg : {q, ai * ai * params.q_pow(n[i] + 1), ai * q * z[i],
                           ai * q / z[i]}) {
                const auto fd = qp_fact_scaled(arg, k, q, p, policy);
                if (fd.is_zero()) throw pole_hit("km_rhs: pole");
                term /= fd;
            }
            for (std::size_t j = 0; j < cfg.b[i].size(); ++j) {
                const cx bij = cfg.b[i][j];
                const long vij = cfg.v[i][j];
                term *= qp_fact_scaled(ai * bij * params.q_pow(vij), k, q, p, policy);
                term *= qp_fact_scaled(ai * q / bij, k, q, p, policy);
                for (cx arg : {ai * bij, ai * params.q_pow(1 - vij) / bij}) {
                    const auto fd = qp_fact_scaled(arg, k, q, p, policy);
                    if (fd.is_zero()) throw pole_hit("km_rhs: pole");
                    term /= fd;
                }
            }
        }
        for (std::size_t i = 0; i < cfg.m; ++i) {
            for (std::size_t j = i + 1; j < cfg.m; ++j) {
                const long ki = idx[i], kj = idx[j];
                const cx ai = a[i], aj = a[j];
                for (std::size_t l = 0; l < cfg.alpha[i][j].size(); ++l) {
                    const cx al = cfg.alpha[i][j][l];
                    const long ul = cfg.u[i][j][l];
                    term *= params.q_pow(-2 * ul * ki);
                    term *= qp_fact_scaled(al * ai * aj * params.q_pow(ul), ki + kj, q, p,
                                           policy);
                    term *= qp_fact_scaled(q * ai * aj / al, ki + kj, q, p, policy);
                    term *= qp_fact_scaled(al * ai * params.q_pow(ul) / aj, ki - kj, q, p,
                                           policy);
                    term *= qp_fact_scaled(q * ai / (aj * al), ki - kj, q, p, policy);
                    for (cx arg : {al * ai * aj, params.q_pow(1 - ul) * ai * aj / al}) {
                        const auto fd = qp_fact_scaled(arg, ki + kj, q, p, policy);
                        if (fd.is_zero()) throw pole_hit("km_rhs: pole");
                        term /= fd;
                    }
                    for (cx arg : {al * ai / aj, params.q_pow(1 - ul) * ai / (aj * al)}) {
                        const auto fd = qp_fact_scaled(arg, ki - kj, q, p, policy);
                        if (fd.is_zero()) throw pole_hit("km_rhs: pole");
                        term /= fd;
                    }
                }
                const long wij = cfg.w[i][j];
                if (wij > 0) {
                    term *= params.q_pow(-wij * ki);
                    term *= pow_int(theta_multi({ai * aj * params.q_pow(ki + kj),
                                                 ai * params.q_pow(ki - kj) / aj},
                                                p, policy),
                                    wij);
                }
            }
        }
        const cx tval = term.value();
        acc.add(tval);
        max_term = std::max(max_term, std::abs(tval));
    } while (advance_multi_index(idx, n));
    const cx total = acc.value();
    if (cond_out) *cond_out = max_term / std::max(std::abs(total), 1e-300);
    return total;
}

cx km_theta_lhs(const KarlssonMintonConfig& cfg, const std::vector<cx>& a,
                const std::vector<cx>& z, const EllipticParams& params,
                const TruncationPolicy& policy) {
    cfg.validate();
    const std::vector<long> n = cfg.degrees();
    const cx q = params.q();
    const cx p = params.p();
    scaled_cx acc;
    for (std::size_t i = 0; i < cfg.m; ++i) {
        acc *= qp_fact_scaled(a[i] * a[i] * q, n[i], q, p, policy);
        acc *= qp_fact_scaled(q, n[i], q, p, policy);
        acc /= qp_fact_scaled(a[i] * q * z[i], n[i], q, p, policy);
        acc /= qp_fact_scaled(a[i] * q / z[i], n[i], q, p, policy);
        for (const cx bij : cfg.b[i]) {
            acc *= theta_multi({bij * z[i], bij / z[i]}, p, policy);
            acc /= theta_multi({bij * a[i], bij / a[i]}, p, policy);
        }
    }
    for (std::size_t i = 0; i < cfg.m; ++i) {
        for (std::size_t j = i + 1; j < cfg.m; ++j) {
            const long wij = cfg.w[i][j];
            if (wij > 0) {
                acc *= pow_int(a[i] / z[i], wij);
                acc *= pow_int(theta_multi({z[i] * z[j], z[i] / z[j]}, p, policy), wij);
            }
            for (const cx al : cfg.alpha[i][j]) {
                acc *= theta_multi({al * z[i] * z[j], al * z[i] / z[j], al * z[j] / z[i],
                                    al / (z[i] * z[j])},
                                   p, policy);
                acc /= theta_multi({al * a[i] * a[j], al * a[i] / a[j], al * a[j] / a[i],
                                    al / (a[i] * a[j])},
                                   p, policy);
            }
        }
    }
    return acc.value();
}

cx km_theta_rhs(const KarlssonMintonConfig& cfg, const std::vector<cx>& a,
                const std::vector<cx>& z, const EllipticParams& params,
                const TruncationPolicy& policy, double* cond_out) {
    cfg.validate();
    const std::vector<long> n = cfg.degrees();
    const cx q = params.q();
    const cx p = params.p();
    std::vector<long> idx(cfg.m, 0);
    kahan_sum acc;
    double max_term = 0.0;
    do {
        scaled_cx term;
        for (std::size_t i = 0; i < cfg.m; ++i) {
            const long k = idx[i];
            const cx ai = a[i];
            const long si = static_cast<long>(cfg.b[i].size());
            term *= params.q_pow(k * (1 + n[i] - si)) *
                    theta(ai * ai * params.q_pow(2 * k), p, policy) /
                    theta(ai * ai, p, policy);
            for (cx arg : {params.q_pow(-n[i]), ai * ai, ai * z[i], ai / z[i]})
                term *= qp_fact_scaled(arg, k, q, p, policy);
            for (cx arg : {q, ai * ai * params.q_pow(n[i] + 1), ai * q * z[i],
                           ai * q / z[i]}) {
                const auto fd = qp_fact_scaled(arg, k, q, p, policy);
                if (fd.is_zero()) throw pole_hit("km_theta_rhs: pole");
                term /= fd;
            }
            for (const cx bij : cfg.b[i]) {
                const cx dj = theta_multi({ai * bij, ai / bij}, p, policy);
                if (std::abs(dj) < 1e-280) throw pole_hit("km_theta_rhs: pole");
                term *= theta_multi({ai * bij * params.q_pow(k),
                                     ai * params.q_pow(k) / bij},
                                    p, policy);
                term /= dj;
            }
        }
        for (std::size_t i = 0; i < cfg.m; ++i) {
            for (std::size_t j = i + 1; j < cfg.m; ++j) {
                const long ki = idx[i], kj = idx[j];
                const cx ai = a[i], aj = a[j];
                for (const cx al : cfg.alpha[i][j]) {
                    const cx den = theta_multi(
                        {al * ai * aj, ai * aj / al, al * ai / aj, ai / (aj * al)}, p,
                        policy);
                    if (std::abs(den) < 1e-280) throw pole_hit("km_theta_rhs: pole");
                    term *= params.q_pow(-2 * ki) *
                            theta_multi({al * ai * aj * params.q_pow(ki + kj),
                                         params.q_pow(ki + kj) * ai * aj / al,
                                         al * ai * params.q_pow(ki - kj) / aj,
                                         params.q_pow(ki - kj) * ai / (aj * al)},
                                        p, policy);
                    term /= den;
                }
                const long wij = cfg.w[i][j];
                if (wij > 0) {
                    term *= params.q_pow(-wij * ki);
                    term *= pow_int(theta_multi({ai * aj * params.q_pow(ki + kj),
                                                 ai * params.q_pow(ki - kj) / aj},
                                                p, policy),
                                    wij);
                }
            }
        }
        const cx tval = term.value();
        acc.add(tval);
        max_term = std::max(max_term, std::abs(tval));
    } while (advance_multi_index(idx, n));
    const cx total = acc.value();
    if (cond_out) *cond_out = max_term / std::max(std::abs(total), 1e-300);
    return total;
}

}  // namespace ellipsum
