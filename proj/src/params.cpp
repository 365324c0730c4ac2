#include "ellipsum/params.hpp"

#include <cmath>
#include <limits>

namespace ellipsum {

cx pow_int(cx x, long n) {
    if (n < 0) return 1.0 / pow_int(x, -n);
    cx acc(1.0, 0.0);
    cx base = x;
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

EllipticParams::EllipticParams(cx t_, cx s_) : t(t_), s(s_) {
    if (t == cx(0.0, 0.0)) throw zero_argument("EllipticParams: t must be nonzero");
    if (std::abs(s) >= 1.0) throw nome_out_of_range("EllipticParams: |s|^6 = |p| must be < 1");
}

double rel_residual(cx a, cx b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

void kahan_sum::add(cx term) {
    const cx t = sum_ + term;
    double cr = comp_.real();
    double ci = comp_.imag();
    if (std::abs(sum_.real()) >= std::abs(term.real()))
        cr += (sum_.real() - t.real()) + term.real();
    else
        cr += (term.real() - t.real()) + sum_.real();
    if (std::abs(sum_.imag()) >= std::abs(term.imag()))
        ci += (sum_.imag() - t.imag()) + term.imag();
    else
        ci += (term.imag() - t.imag()) + sum_.imag();
    comp_ = cx(cr, ci);
    sum_ = t;
}

bool is_finite(cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void scaled_cx::normalize() {
    const double mag = std::max(std::abs(m_.real()), std::abs(m_.imag()));
    if (mag == 0.0) {
        e_ = 0;
        return;
    }
    int ex = 0;
    std::frexp(mag, &ex);
    if (ex > 128 || ex < -128) {
        m_ = cx(std::ldexp(m_.real(), -ex), std::ldexp(m_.imag(), -ex));
        e_ += ex;
    }
}

cx scaled_cx::value() const {
    if (e_ > 2000 || e_ < -2000) {
        // Out of double range either way; the sign pattern is meaningless at
        // that point, so report underflow as zero and overflow as infinity.
        if (e_ < 0) return cx(0.0, 0.0);
        const double inf = std::numeric_limits<double>::infinity();
        return cx(inf, inf);
    }
    return cx(std::ldexp(m_.real(), static_cast<int>(e_)),
              std::ldexp(m_.imag(), static_cast<int>(e_)));
}

double scaled_cx::log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(m_)) + static_cast<double>(e_);
}

}  // namespace ellipsum
