#ifndef ELLIPSUM_POCHHAMMER_HPP
#define ELLIPSUM_POCHHAMMER_HPP

#include <span>
#include <vector>

#include "ellipsum/params.hpp"
#include "ellipsum/theta.hpp"

namespace ellipsum {

/// Theta shifted factorial (a;base,p)_n for any integer n:
///   n > 0 : prod_{k=0}^{n-1} theta(a base^k;p)
///   n = 0 : 1
///   n < 0 : 1 / prod_{k=0}^{-n-1} theta(a base^{n+k};p)
/// Successive arguments are produced by repeated multiplication with base,
/// never by fractional powers. PoleHit if a reciprocal factor vanishes.
cx qp_fact_base(cx a, long n, cx base, cx p, const TruncationPolicy& policy = {});

/// (a;q,p)_n with the base taken from params.
cx qp_fact(cx a, long n, const EllipticParams& params, const TruncationPolicy& policy = {});

/// (a_1,...,a_m;q,p)_n = prod_k (a_k;q,p)_n; empty list is 1.
cx qp_fact_multi(std::span<const cx> as, long n, const EllipticParams& params,
                 const TruncationPolicy& policy = {});
cx qp_fact_multi(std::initializer_list<cx> as, long n, const EllipticParams& params,
                 const TruncationPolicy& policy = {});
cx qp_fact_multi_base(std::initializer_list<cx> as, long n, cx base, cx p,
                      const TruncationPolicy& policy = {});

/// (a;base,p)_n accumulated factor by factor into a scaled product, immune
/// to intermediate over/underflow of long theta ladders.
scaled_cx qp_fact_scaled(cx a, long n, cx base, cx p, const TruncationPolicy& policy = {});

/// Relative residual of (pa;q,p)_n = (-1)^n a^{-n} q^{-C(n,2)} (a;q,p)_n, n >= 0.
double qp_fact_pshift_residual(cx a, long n, const EllipticParams& params,
                               const TruncationPolicy& policy = {});

/// Elliptic binomial [m k]_{p,q} = (q^{1+k};q,p)_{m-k} / (q;q,p)_{m-k}.
cx elliptic_binomial(long m, long k, const EllipticParams& params,
                     const TruncationPolicy& policy = {});

}  // namespace ellipsum

#endif
