#ifndef ELLIPSUM_SERIES_HPP
#define ELLIPSUM_SERIES_HPP

#include <vector>

#include "ellipsum/pochhammer.hpp"

namespace ellipsum {

/// Terminating very-well-poised series _{s+1}V_s(a1; a6,...,a_{s+1};q,p).
/// uppers holds a6..a_{s+1}; the last entry must be q^{-n}. The elliptic
/// balancing condition q^2 prod uppers^2 = (a1 q)^{s-5} is required.
struct VwpSpec {
    cx a1;
    std::vector<cx> uppers;
    long n = 0;
    cx z_arg{1.0, 0.0};
};

/// Throws balance_violation unless the series data is admissible
/// (termination parameter within 1e-12 relative, balancing within 1e-10).
void validate(const VwpSpec& spec, const EllipticParams& params);

/// Sum of the n+1 terms
///   theta(a1 q^{2k};p)/theta(a1;p)
///     * (a1, a6,...,a_{s+1};q,p)_k / (q, a1 q/a6,...,a1 q/a_{s+1};q,p)_k
///     * (q z)^k
/// with compensated accumulation. cond_out, when given, receives
/// max|term| / |sum| (a conditioning estimate for the caller).
cx vwp_sum(const VwpSpec& spec, const EllipticParams& params,
           const TruncationPolicy& policy = {}, double* cond_out = nullptr);

/// Balanced parameter set of the terminating _{10}V_9: a^2 q^{n+1} = bcde,
/// with e always the solved slot.
struct BalancedQuintuple {
    cx a, b, c, d, e;
    long n = 0;
};

/// Solve e from the balancing condition.
BalancedQuintuple make_balanced_quintuple(cx a, cx b, cx c, cx d, long n,
                                          const EllipticParams& params);

void validate(const BalancedQuintuple& q5, const EllipticParams& params);

/// The corresponding _{10}V_9 series data (uppers b,c,d,e,q^{-n}; z = 1).
VwpSpec to_vwp(const BalancedQuintuple& q5, const EllipticParams& params);

/// Frenkel-Turaev closed form
///   (aq, aq/bc, aq/bd, aq/cd;q,p)_n / (aq/b, aq/c, aq/d, aq/bcd;q,p)_n.
cx ft_rhs(const BalancedQuintuple& q5, const EllipticParams& params,
          const TruncationPolicy& policy = {});

/// Relative residual of Jackson's 8phi7 summation at p = 0, evaluated with an
/// independent basic-q term loop against the closed form.
double jackson_8phi7_residual(const BalancedQuintuple& q5, cx q,
                              const TruncationPolicy& policy = {});

}  // namespace ellipsum

#endif
