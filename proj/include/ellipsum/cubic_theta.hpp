#ifndef ELLIPSUM_CUBIC_THETA_HPP
#define ELLIPSUM_CUBIC_THETA_HPP

#include <array>
#include <vector>

#include "ellipsum/pochhammer.hpp"

namespace ellipsum {

/// Arguments of the cubic theta function together with the nome primitive s
/// (p = s^6), which fixes p^{1/2} = s^3 and p^{1/3} = s^2 exactly.
struct CubicThetaArgs {
    cx z;
    cx a;
    cx s;

    CubicThetaArgs(cx z_, cx a_, cx s_);
    cx p() const { return pow_int(s, 6); }
};

/// Bhargava's two-variable cubic theta function
///   gamma(z,a;p) = sum_{k,l in Z} p^{k^2+kl+l^2} a^{k+l} z^{k-l}.
/// Arguments are first reduced into the fundamental annulus by the exact
/// integer-power functional equation, then summed over ascending shells of
/// the quadratic form; the sum stops after three consecutive nonempty shells
/// contribute below tail_tol relative. Terms are evaluated as
/// exp(N log p + (k+l) log a + (k-l) log z), single-valued for integer
/// exponents and immune to intermediate over/underflow.
cx gamma_cubic(cx z, cx a, cx p, const TruncationPolicy& policy = {});
cx gamma_cubic(const CubicThetaArgs& args, const TruncationPolicy& policy = {});

/// Residuals of the four structural laws, in order:
///   gamma(1/z,a) = gamma(z,a);  gamma(z,1/a) = gamma(z,a);
///   gamma(pz,a) = gamma(z,a)/(p z^2);  gamma(z,p^3 a) = gamma(z,a)/(p^3 a^2).
std::array<double, 4> gamma_symmetry_residuals(cx z, cx a, cx p,
                                               const TruncationPolicy& policy = {});

/// Residual of the two-parameter functional equation (lambda, mu integers):
///   gamma(z,a;p) = p^{3l^2+3lm+m^2} a^{2l+m} z^m
///                  gamma(p^{m/2} z, p^{3(2l+m)/2} a; p),
/// with the half-powers of p taken from the primitive s (p = s^6).
double gamma_functional_eq_residual(cx z, cx a, cx s, long lambda, long mu,
                                    const TruncationPolicy& policy = {});

/// Residuals of the two splitting laws (p = s^6). First, the cube split over
/// the residue classes of the quadratic form mod 3, with u = sqrt(az^3) and
/// the partner root paired as a^2/u (never an independent root):
///   gamma(z,a;p) = gamma(u, a^2/u; p^3) + p a z^{-1} gamma(u, p^3 a^2/u; p^3)
///                  + p a z gamma(u', p^3 a^2/u'; p^3),  u' = sqrt(a/z^3).
/// Second, the even/odd split in the z-exponent:
///   gamma(z,a;p) = (p^6;p^6)oo (p^2;p^2)oo
///       [ theta(-p^3 a^2;p^6) theta(-p z^2;p^2)
///         + p a z theta(-p^6 a^2;p^6) theta(-p^2 z^2;p^2) ].
std::array<double, 2> gamma_splitting_residuals(cx z, cx a, cx s,
                                                const TruncationPolicy& policy = {});

/// Three-term addition formula mixing gamma and theta (same nome):
///   gamma(z1,al;p) theta(z3/z2, z2 z3;p) - gamma(z2,al;p) theta(z3/z1, z1 z3;p)
///     = (z3/z1) gamma(z3,al;p) theta(z1/z2, z1 z2;p).
double cooper_toh_residual_1(cx z1, cx z2, cx z3, cx alpha, cx p,
                             const TruncationPolicy& policy = {});

/// Companion formula with gamma at nome p^{1/3} = s^2 and theta at p = s^6:
///   gamma(z,a1;p^{1/3}) theta(a3/a2, a2 a3;p)
///     - gamma(z,a2;p^{1/3}) theta(a3/a1, a1 a3;p)
///     = (a3/a1) gamma(z,a3;p^{1/3}) theta(a1/a2, a1 a2;p).
double cooper_toh_residual_2(cx z, cx a1, cx a2, cx a3, cx s,
                             const TruncationPolicy& policy = {});

/// First cubic shifted factorial
///   <az, a/z;q,p>_n = prod_{j=0}^{n-1} gamma(z q^{(1-n)/2+j}, a q^{(n-1)/2}; p),
/// half-powers of q from the primitive t.
cx cubic_fact_1(cx a, cx z, long n, const EllipticParams& params,
                const TruncationPolicy& policy = {});

/// Second cubic shifted factorial, with the gamma slots swapped and nome
/// p^{1/3} = s^2:
///   <<az, a/z;q,p^{1/3}>>_n
///     = prod_{j=0}^{n-1} gamma(a q^{(n-1)/2}, z q^{(1-n)/2+j}; p^{1/3}).
cx cubic_fact_2(cx a, cx z, long n, const EllipticParams& params,
                const TruncationPolicy& policy = {});

enum class DegenerationFamily { first, second };

struct DegenerationReport {
    std::vector<double> residuals;      // one per p value
    std::vector<double> ratios;         // residual[i] / residual[i+1]
    double empirical_order = 0.0;       // slope of log residual vs log p
    bool strictly_decreasing = false;
};

/// p -> 0 convergence study of the scaled cubic factorials against the
/// classical q-shifted factorial (az,a/z;q)_n. Substitution
///   a -> -a / (p^{1 or 1/3} (1 + a^2 q^{n-1})), scaling (1 + a^2 q^{n-1})^n.
/// q enters through its quarter-power primitive t (q = t^4); each p value is
/// a small positive real, p^{1/6} taken real positive.
DegenerationReport degeneration_check(DegenerationFamily family, cx a, cx z, cx t,
                                      long n, const std::vector<double>& p_values,
                                      const TruncationPolicy& policy = {});

}  // namespace ellipsum

#endif
