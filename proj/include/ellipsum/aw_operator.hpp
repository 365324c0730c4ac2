#ifndef ELLIPSUM_AW_OPERATOR_HPP
#define ELLIPSUM_AW_OPERATOR_HPP

#include <functional>
#include <vector>

#include "ellipsum/pochhammer.hpp"

namespace ellipsum {

/// Evaluator contract for functions with f(z) = f(1/z). Symmetry is a
/// semantic property of the wrapped callable; probe it, don't assume it.
struct SymmetricFunction {
    std::function<cx(cx)> eval;
    cx operator()(cx z) const { return eval(z); }
};

/// Multivariate counterpart: symmetric in each z_i <-> 1/z_i separately.
struct MultiSymmetricFunction {
    std::function<cx(const std::vector<cx>&)> eval;
    cx operator()(const std::vector<cx>& zs) const { return eval(zs); }
};

/// Well-poised monomial z -> (az,a/z;q,p)_k / (cz,c/z;q,p)_k.
SymmetricFunction wp_basis(cx a, cx c, long k, const EllipticParams& params,
                           const TruncationPolicy& policy = {});

/// Member of W_c^n as an explicit coefficient vector over wp_basis(a,c,k).
struct WcnElement {
    std::vector<cx> coeffs;  // length n+1
    cx a;
    cx c;
    long n = 0;

    SymmetricFunction to_function(const EllipticParams& params,
                                  const TruncationPolicy& policy = {}) const;
};

/// Elliptic Askey-Wilson divided-difference operator
///   (D_c f)(z) = 2 q^{1/2} z
///       theta(czq^{-1/2}, czq^{1/2}, cq^{-1/2}/z, cq^{1/2}/z;p) / theta(q,z^2;p)
///       (f(q^{1/2}z) - f(q^{-1/2}z)).
/// PoleHit when theta(z^2;p) vanishes (z^2 on the p-power lattice).
SymmetricFunction apply_D(SymmetricFunction f, cx c, const EllipticParams& params,
                          const TruncationPolicy& policy = {});

/// m-fold iterate D^{(m)}_c = D_{cq^{3(m-1)/2}} ... D_{cq^{3/2}} D_c;
/// m = 0 is the identity.
SymmetricFunction apply_D_iter(SymmetricFunction f, cx c, long m,
                               const EllipticParams& params,
                               const TruncationPolicy& policy = {});

/// Explicit single-sum form of D^{(m)}_c f at z (m+1 evaluations of f):
///   (-2z)^m q^{m(3-m)/4} (cq^{m/2-1}z, cq^{m/2-1}/z;q,p)_{m+1} / theta(q;p)^m
///   * sum_k q^{k(m-k)} [m k]_{p,q}
///       z^{2(k-m)} (cq^{m/2-k}z, cq^{-m/2+k}/z;q,p)_{m-1}
///       / ((q^{m-2k+1}z^2;q,p)_k (q^{2k-m+1}z^{-2};q,p)_{m-k})
///     * f(q^{m/2-k}z).
cx cooper_explicit(const SymmetricFunction& f, cx c, long m, cx z,
                   const EllipticParams& params, const TruncationPolicy& policy = {},
                   double* cond_out = nullptr);

/// Per-variable operator D_{c,q,p;z_i} acting on variable `var`.
MultiSymmetricFunction apply_D_var(MultiSymmetricFunction f, cx c, std::size_t var,
                                   const EllipticParams& params,
                                   const TruncationPolicy& policy = {});

/// Composition over variables: k[i]-fold iterate in z_i with parameter c[i].
MultiSymmetricFunction apply_D_multi(MultiSymmetricFunction f, std::vector<cx> c,
                                     std::vector<long> k, const EllipticParams& params,
                                     const TruncationPolicy& policy = {});

/// Multivariate explicit form: per-variable prefactors and weights, f
/// evaluated on the shifted grid q^{k_i/2 - j_i} z_i.
cx cooper_explicit_multi(const MultiSymmetricFunction& f, const std::vector<cx>& c,
                         const std::vector<long>& k, const std::vector<cx>& z,
                         const EllipticParams& params,
                         const TruncationPolicy& policy = {},
                         double* cond_out = nullptr);

/// Odometer over multi-indices 0 <= idx[i] <= bounds[i]; returns false once
/// the full range has been visited.
bool advance_multi_index(std::vector<long>& idx, const std::vector<long>& bounds);

}  // namespace ellipsum

#endif
