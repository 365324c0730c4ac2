#ifndef ELLIPSUM_PARAMS_HPP
#define ELLIPSUM_PARAMS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace ellipsum {

using cx = std::complex<double>;

// Error kinds raised by the kernels. near_pole is retryable: the sampling
// engine resamples the trial point; everything else is a hard contract
// violation.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};
struct zero_argument : error {
    explicit zero_argument(const std::string& w) : error(w) {}
};
struct nome_out_of_range : error {
    explicit nome_out_of_range(const std::string& w) : error(w) {}
};
struct truncation_exhausted : error {
    explicit truncation_exhausted(const std::string& w) : error(w) {}
};
struct pole_hit : error {
    explicit pole_hit(const std::string& w) : error(w) {}
};
struct near_pole : error {
    explicit near_pole(const std::string& w) : error(w) {}
};
struct balance_violation : error {
    explicit balance_violation(const std::string& w) : error(w) {}
};
struct degree_overflow : error {
    explicit degree_overflow(const std::string& w) : error(w) {}
};
struct unknown_identity : error {
    explicit unknown_identity(const std::string& w) : error(w) {}
};
struct sampler_exhausted : error {
    explicit sampler_exhausted(const std::string& w) : error(w) {}
};

/// x^n for integer n by binary powering (no root extraction, no branch cuts).
cx pow_int(cx x, long n);

/// Primitive roots fixing every fractional power downstream: q = t^4 and
/// p = s^6, so q^{1/2} = t^2, q^{1/4} = t, p^{1/2} = s^3, p^{1/3} = s^2 are
/// exact powers of the primitives. No kernel ever extracts a root of q or p
/// on its own.
struct EllipticParams {
    cx t;  // q = t^4
    cx s;  // p = s^6

    EllipticParams(cx t_, cx s_);

    cx q() const { return ((t * t) * t) * t; }
    cx q_half() const { return t * t; }
    cx q_quarter() const { return t; }
    cx p() const { return pow_int(s, 6); }
    cx p_half() const { return ((s * s) * s); }
    cx p_third() const { return s * s; }

    /// q^{j/4} = t^j, any integer j.
    cx q_pow_quarter(long j) const { return pow_int(t, j); }
    /// q^{j/2} = t^{2j}.
    cx q_pow_half(long j) const { return pow_int(t, 2 * j); }
    /// q^n, integer n.
    cx q_pow(long n) const { return pow_int(t, 4 * n); }
    /// p^{j/6} = s^j.
    cx p_pow_sixth(long j) const { return pow_int(s, j); }
    /// p^n, integer n.
    cx p_pow(long n) const { return pow_int(s, 6 * n); }
};

/// Tail tolerance and hard caps for the infinite products / double sums.
/// Accuracy note: |p| (and the gamma nome) are admissible up to 0.99, but
/// truncated products lose accuracy rapidly above |p| ~ 0.9.
struct TruncationPolicy {
    double tail_tol = 1e-15;
    int max_factors = 10000;
};

/// |a-b| / max(|a|,|b|,floor); the acceptance metric everywhere.
double rel_residual(cx a, cx b);

/// Neumaier-compensated accumulator for complex sums whose terms span many
/// orders of magnitude.
class kahan_sum {
  public:
    void add(cx term);
    cx value() const { return sum_ + comp_; }

  private:
    cx sum_{0.0, 0.0};
    cx comp_{0.0, 0.0};
};

bool is_finite(cx v);

/// Complex value carried as mantissa * 2^exponent. Long products of theta
/// ladders routinely pass 1e+-308 while the final term is moderate; factors
/// are multiplied in here and the exponent renormalized, so only the true
/// value can over- or underflow.
class scaled_cx {
  public:
    scaled_cx() = default;
    explicit scaled_cx(cx v) : m_(v) { normalize(); }

    scaled_cx& operator*=(cx f) {
        m_ *= f;
        normalize();
        return *this;
    }
    scaled_cx& operator/=(cx f) {
        m_ /= f;
        normalize();
        return *this;
    }
    scaled_cx& operator*=(const scaled_cx& o) {
        m_ *= o.m_;
        e_ += o.e_;
        normalize();
        return *this;
    }
    scaled_cx& operator/=(const scaled_cx& o) {
        m_ /= o.m_;
        e_ -= o.e_;
        normalize();
        return *this;
    }

    cx value() const;
    bool is_zero() const { return m_ == cx(0.0, 0.0); }
    /// log2 of the magnitude (for guards), -inf when zero.
    double log2_abs() const;

  private:
    void normalize();

    cx m_{1.0, 0.0};
    long e_ = 0;
};

}  // namespace ellipsum

#endif
