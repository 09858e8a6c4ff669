#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "hermband/numeric.hpp"

namespace hermband {

// Magnitude-scaled real number: value = mantissa * 2^exponent with
// |mantissa| in [1,2) when nonzero. Keeps h_n computable where the naive
// e^{-x^2/2} seed would be subnormal or underflow entirely.
struct HermiteValue {
    double mantissa = 0.0;
    std::int64_t exponent = 0;

    static HermiteValue normalized(double value, std::int64_t block_exponent) {
        if (value == 0.0 || !std::isfinite(value)) return {value, 0};
        int e = 0;
        double f = std::frexp(value, &e);  // value = f * 2^e, |f| in [0.5,1)
        return {2.0 * f, block_exponent + e - 1};
    }

    bool is_zero() const { return mantissa == 0.0; }

    double to_double() const {
        if (mantissa == 0.0) return mantissa;
        if (exponent > 1100) return mantissa * std::numeric_limits<double>::infinity();
        if (exponent < -1150) return mantissa * 0.0;
        return std::ldexp(mantissa, static_cast<int>(exponent));
    }
};

// Seed h_0(x) = pi^{-1/4} e^{-x^2/2} directly in scaled form. Computing the
// exponential in double first loses all precision once e^{-x^2/2} goes
// subnormal (|x| ~ 38), which would poison the whole recurrence. Split x^2
// exactly, multiply by log2(e) in double-double, and put the integer part of
// the base-2 exponent into the scale.
inline HermiteValue hermite_seed(double x) {
    double s = x * x;
    double c = std::fma(x, x, -s);  // x^2 = s + c exactly
    double a = 0.5 * s;
    const double log2e_hi = 1.4426950408889634;
    const double log2e_lo = 2.0355273740931033e-17;
    double t_hi = a * log2e_hi;
    double t_lo = std::fma(a, log2e_hi, -t_hi) + a * log2e_lo;
    double k = std::nearbyint(t_hi);
    double r = (t_hi - k) + t_lo;  // exact: |t_hi| << 2^52
    double m = inv_pi_quarter * std::exp2(-r) * (1.0 - 0.5 * c);
    return HermiteValue::normalized(m, -static_cast<std::int64_t>(k));
}

namespace detail {

// Rescale a working pair of block-scaled doubles whenever the magnitude
// leaves [2^-512, 2^512]; plain floating point otherwise.
inline void maybe_rescale(double& a, double& b, std::int64_t& block) {
    double m = std::max(std::abs(a), std::abs(b));
    if (m == 0.0) return;
    if (m > 0x1p512 || m < 0x1p-512) {
        int e = 0;
        std::frexp(m, &e);
        a = std::ldexp(a, -e);
        b = std::ldexp(b, -e);
        block += e;
    }
}

}  // namespace detail

}  // namespace hermband
