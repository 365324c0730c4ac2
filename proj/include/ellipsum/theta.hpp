#ifndef ELLIPSUM_THETA_HPP
#define ELLIPSUM_THETA_HPP

#include <span>
#include <vector>

#include "ellipsum/params.hpp"

namespace ellipsum {

/// Modified Jacobi theta function
///   theta(x;p) = prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x),   |p| < 1.
/// The partial product stops once both current perturbations |p^j x| and
/// |p^{j+1}/x| have stayed below tail_tol for three consecutive factors.
/// p = 0 short-circuits to the exact value 1 - x.
cx theta(cx x, cx p, const TruncationPolicy& policy = {});

/// theta(x_1,...,x_m;p) = prod_k theta(x_k;p); empty list is 1.
cx theta_multi(std::span<const cx> xs, cx p, const TruncationPolicy& policy = {});
cx theta_multi(std::initializer_list<cx> xs, cx p, const TruncationPolicy& policy = {});

/// Relative residual of the inversion law theta(x;p) = -x theta(1/x;p).
double theta_inversion_residual(cx x, cx p, const TruncationPolicy& policy = {});

/// Relative residual of the nome shift theta(px;p) = -(1/x) theta(x;p).
/// Requires p != 0 (at p = 0 the left side has argument 0).
double theta_p_shift_residual(cx x, cx p, const TruncationPolicy& policy = {});

/// Relative residual of the three-term addition formula
///   theta(xy,x/y,uv,u/v;p) - theta(xv,x/v,uy,u/y;p)
///     = (u/y) theta(yv,y/v,xu,x/u;p),
/// measured against the largest of the three terms.
double addition_formula_residual(cx x, cx y, cx u, cx v, cx p,
                                 const TruncationPolicy& policy = {});

/// prod_{j>=0} (1 - a base^j), |base| < 1. (Euler-type infinite product.)
cx euler_infinite_product(cx a, cx base, const TruncationPolicy& policy = {});

}  // namespace ellipsum

#endif
