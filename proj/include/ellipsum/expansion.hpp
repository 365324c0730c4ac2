#ifndef ELLIPSUM_EXPANSION_HPP
#define ELLIPSUM_EXPANSION_HPP

#include "ellipsum/aw_operator.hpp"

namespace ellipsum {

enum class TaylorBasis {
    well_poised,  // (az,a/z;q,p)_k / (cz,c/z;q,p)_k
    quadratic,    // (q^{1/4}z,q^{1/4}/z;q^{1/2},p)_k / (cz,c/z;q,p)_k
};

struct TaylorCoefficients {
    std::vector<cx> f_k;  // length n+1
    cx a;                 // expansion point parameter (q^{1/4} for quadratic)
    cx c;
    long n = 0;
    TaylorBasis basis = TaylorBasis::well_poised;

    cx reconstruct(cx z, const EllipticParams& params,
                   const TruncationPolicy& policy = {},
                   double* cond_out = nullptr) const;
};

/// Quadratic basis element z -> (q^{1/4}z,q^{1/4}/z;q^{1/2},p)_k / (cz,c/z;q,p)_k.
SymmetricFunction quadratic_basis(cx c, long k, const EllipticParams& params,
                                  const TruncationPolicy& policy = {});

/// Taylor coefficients of f in W_c^n over the well-poised basis:
///   f_k = (-1)^k q^{-k(k-1)/4} theta(q;p)^k
///         / ((2a)^k (q, c/a, acq^{k-1};q,p)_k) * [D^{(k)}_c f](aq^{k/2}).
/// After the n+1 coefficients are computed, reconstruction is probed at five
/// fresh points; mismatch beyond 1e-6 * scale raises DegreeOverflow
/// (the f-not-in-W_c^n signal).
TaylorCoefficients taylor_coeffs(const SymmetricFunction& f, cx a, cx c, long n,
                                 const EllipticParams& params,
                                 const TruncationPolicy& policy = {},
                                 double* cond_out = nullptr);

/// Same over the quadratic basis (evaluation point q^{1/4}):
///   f_k = (-1)^k q^{-k/4} theta(q;p)^k
///         / (2^k (q;q,p)_k (cq^{k/2-3/4};q^{1/2},p)_{2k}) * [D^{(k)}_c f](q^{1/4}).
TaylorCoefficients quadratic_taylor_coeffs(const SymmetricFunction& f, cx c, long n,
                                           const EllipticParams& params,
                                           const TruncationPolicy& policy = {},
                                           double* cond_out = nullptr);

/// Interpolation prefactor (a^2 q, q, cz, c/z;q,p)_n / (ac, c/a, aqz, aq/z;q,p)_n.
cx interpolation_prefactor(cx a, cx c, long n, cx z, const EllipticParams& params,
                           const TruncationPolicy& policy = {});

/// Node-weighted sum over f(a), f(aq), ..., f(aq^n):
///   sum_k q^k theta(a^2 q^{2k};p)/theta(a^2;p)
///     (q^{-n}, a^2, aq/c, acq^n, az, a/z;q,p)_k
///     / (q, a^2 q^{n+1}, ac, aq^{1-n}/c, aqz, aq/z;q,p)_k * f(aq^k).
/// Equals interpolation_prefactor(...) * f(z) for f in W_c^n.
cx interpolate(const SymmetricFunction& f, cx a, cx c, long n, cx z,
               const EllipticParams& params, const TruncationPolicy& policy = {},
               double* cond_out = nullptr);

/// Per-variable expansion data for the multivariate Taylor/interpolation pair.
struct MultivarConfig {
    std::vector<cx> a;
    std::vector<cx> c;
    std::vector<long> n;

    std::size_t vars() const { return a.size(); }
    void validate() const;
};

struct MultiTaylorCoefficients {
    std::vector<cx> f_k;  // row-major over (n_i + 1) bounds
    MultivarConfig cfg;

    cx at(const std::vector<long>& idx) const;
    cx reconstruct(const std::vector<cx>& z, const EllipticParams& params,
                   const TruncationPolicy& policy = {},
                   double* cond_out = nullptr) const;
};

MultiTaylorCoefficients taylor_coeffs_multi(const MultiSymmetricFunction& f,
                                            const MultivarConfig& cfg,
                                            const EllipticParams& params,
                                            const TruncationPolicy& policy = {},
                                            double* cond_out = nullptr);

cx interpolation_prefactor_multi(const MultivarConfig& cfg, const std::vector<cx>& z,
                                 const EllipticParams& params,
                                 const TruncationPolicy& policy = {});

cx interpolate_multi(const MultiSymmetricFunction& f, const MultivarConfig& cfg,
                     const std::vector<cx>& z, const EllipticParams& params,
                     const TruncationPolicy& policy = {}, double* cond_out = nullptr);

/// Parameter shape for the multivariable Karlsson-Minton identities. The
/// degrees n_i are always derived from the balance constraint
///   n_i = sum_j v_ij + sum_{j<i} w_ji + sum_{j>i} w_ij + 2 sum u(over pairs with i).
struct KarlssonMintonConfig {
    std::size_t m = 0;
    std::vector<std::vector<cx>> b;     // b[i][j], j < s_i
    std::vector<std::vector<long>> v;   // v[i][j]
    std::vector<std::vector<long>> w;   // w[i][j], used for i < j
    // alpha[i][j] / u[i][j] lists for pairs i < j (r_ij = list length)
    std::vector<std::vector<std::vector<cx>>> alpha;
    std::vector<std::vector<std::vector<long>>> u;

    std::vector<long> degrees() const;
    void validate() const;
};

/// LHS/RHS of the multivariable Karlsson-Minton identity (factorial form).
/// The RHS per-variable prefactor is q^{k_i (1 + n_i - sum_j v_ij)}.
cx km_lhs(const KarlssonMintonConfig& cfg, const std::vector<cx>& a,
          const std::vector<cx>& z, const EllipticParams& params,
          const TruncationPolicy& policy = {});
cx km_rhs(const KarlssonMintonConfig& cfg, const std::vector<cx>& a,
          const std::vector<cx>& z, const EllipticParams& params,
          const TruncationPolicy& policy = {}, double* cond_out = nullptr);

/// Theta form (all v_ij = u = 1): n_i = s_i + sum w + 2 sum r, RHS
/// per-variable prefactor q^{k_i (1 + n_i - s_i)}.
cx km_theta_lhs(const KarlssonMintonConfig& cfg, const std::vector<cx>& a,
                const std::vector<cx>& z, const EllipticParams& params,
                const TruncationPolicy& policy = {});
cx km_theta_rhs(const KarlssonMintonConfig& cfg, const std::vector<cx>& a,
                const std::vector<cx>& z, const EllipticParams& params,
                const TruncationPolicy& policy = {}, double* cond_out = nullptr);

}  // namespace ellipsum

#endif
